#include "convsel/learn/model_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "convsel/errors.hpp"
#include "convsel/text.hpp"

namespace convsel {

namespace {

struct Line {
  std::string_view text;
  std::size_t number;
};

/// Non-blank lines with their 1-based numbers; one trailing '\r' stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0;
  std::size_t number = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    ++number;
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (!trim(line).empty()) {
      lines.push_back(Line{trim(line), number});
    }
    if (nl == text.size()) {
      break;
    }
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
      ++i;
    }
    if (i > start) {
      tokens.push_back(line.substr(start, i - start));
    }
  }
  return tokens;
}

/// Reads a `key: value` line, enforcing the key.
std::string_view keyed_value(const Line& line, std::string_view key) {
  const std::size_t colon = line.text.find(':');
  if (colon == std::string_view::npos || trim(line.text.substr(0, colon)) != key) {
    throw ParseError("expected '" + std::string(key) + ":' line", line.number);
  }
  return trim(line.text.substr(colon + 1));
}

class LineCursor {
 public:
  explicit LineCursor(const std::vector<Line>& lines) : lines_(lines) {}

  const Line& next(std::string_view what) {
    if (pos_ >= lines_.size()) {
      throw ParseError("unexpected end of model file, expected " + std::string(what),
                       lines_.empty() ? 1 : lines_.back().number + 1);
    }
    return lines_[pos_++];
  }

  bool done() const noexcept { return pos_ >= lines_.size(); }
  const Line& current() const { return lines_[pos_]; }

 private:
  const std::vector<Line>& lines_;
  std::size_t pos_ = 0;
};

ConvMethod method_from_code_field(std::string_view field, std::size_t line_no) {
  const long code = parse_int_field(field, line_no, "class code");
  if (code < 0 || code >= kMethodCount) {
    throw ParseError("class code out of range: " + std::string(field), line_no);
  }
  return static_cast<ConvMethod>(code);
}

std::string serialize_dt(const DecisionTreeModel& model) {
  std::string out;
  out += "kind: dt\n";
  out += "max_depth: " + std::to_string(model.params().max_depth) + "\n";
  out += "min_samples_split: " + std::to_string(model.params().min_samples_split) + "\n";
  out += "nodes: " + std::to_string(model.nodes().size()) + "\n";
  for (std::size_t i = 0; i < model.nodes().size(); ++i) {
    const TreeNode& node = model.nodes()[i];
    out += "node " + std::to_string(i);
    if (node.is_leaf()) {
      out += " leaf " + std::to_string(method_code(node.class_label));
      for (std::uint64_t c : node.class_counts) {
        out += ' ';
        out += std::to_string(c);
      }
    } else {
      out += " split " + std::to_string(node.feature_index) + ' ' +
             format_double(node.threshold) + ' ' + std::to_string(node.left) + ' ' +
             std::to_string(node.right);
    }
    out += '\n';
  }
  return out;
}

std::string serialize_nb(const NaiveBayesModel& model) {
  std::string out;
  out += "kind: nb\n";
  out += "variance_floor: " + format_double(model.variance_floor()) + "\n";
  for (int c = 0; c < kMethodCount; ++c) {
    out += "prior " + std::to_string(c) + ' ' + format_double(model.class_priors()[c]) + "\n";
  }
  for (int c = 0; c < kMethodCount; ++c) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      out += "stat " + std::to_string(c) + ' ' + std::to_string(f) + ' ' +
             format_double(model.means()[c][f]) + ' ' +
             format_double(model.variances()[c][f]) + "\n";
    }
  }
  return out;
}

DecisionTreeModel parse_dt(LineCursor& cursor) {
  DecisionTreeParams params;
  params.max_depth = static_cast<int>(parse_int_field(
      keyed_value(cursor.next("max_depth"), "max_depth"), 0, "max_depth"));
  params.min_samples_split = static_cast<int>(parse_int_field(
      keyed_value(cursor.next("min_samples_split"), "min_samples_split"), 0,
      "min_samples_split"));
  const Line& count_line = cursor.next("nodes");
  const long count = parse_int_field(keyed_value(count_line, "nodes"), count_line.number,
                                     "node count");
  if (count < 1) {
    throw ParseError("node count must be at least 1", count_line.number);
  }

  std::vector<TreeNode> nodes;
  nodes.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const Line& line = cursor.next("node line");
    const auto tokens = split_ws(line.text);
    if (tokens.size() < 3 || tokens[0] != "node") {
      throw ParseError("expected a node line", line.number);
    }
    if (parse_int_field(tokens[1], line.number, "node index") != i) {
      throw ParseError("node lines must be numbered consecutively from 0", line.number);
    }
    TreeNode node;
    if (tokens[2] == "split") {
      if (tokens.size() != 7) {
        throw ParseError("split line needs: node I split FEATURE THRESHOLD LEFT RIGHT",
                         line.number);
      }
      node.feature_index =
          static_cast<int>(parse_int_field(tokens[3], line.number, "feature index"));
      if (node.feature_index < 0) {
        throw ParseError("feature index must be non-negative", line.number);
      }
      node.threshold = parse_double_field(tokens[4], line.number, "threshold");
      node.left = static_cast<int>(parse_int_field(tokens[5], line.number, "left child"));
      node.right = static_cast<int>(parse_int_field(tokens[6], line.number, "right child"));
    } else if (tokens[2] == "leaf") {
      if (tokens.size() != 7) {
        throw ParseError("leaf line needs: node I leaf LABEL C_GEMM C_DIRECT C_WINOGRAD",
                         line.number);
      }
      node.class_label = method_from_code_field(tokens[3], line.number);
      for (int c = 0; c < kMethodCount; ++c) {
        const long n = parse_int_field(tokens[4 + c], line.number, "class count");
        if (n < 0) {
          throw ParseError("class counts must be non-negative", line.number);
        }
        node.class_counts[c] = static_cast<std::uint64_t>(n);
      }
    } else {
      throw ParseError("node kind must be split or leaf", line.number);
    }
    nodes.push_back(node);
  }
  return DecisionTreeModel(std::move(nodes), params);
}

NaiveBayesModel parse_nb(LineCursor& cursor) {
  const Line& floor_line = cursor.next("variance_floor");
  const double floor = parse_double_field(keyed_value(floor_line, "variance_floor"),
                                          floor_line.number, "variance_floor");
  std::array<double, kMethodCount> priors{};
  for (int c = 0; c < kMethodCount; ++c) {
    const Line& line = cursor.next("prior line");
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 3 || tokens[0] != "prior") {
      throw ParseError("expected: prior CLASS_CODE VALUE", line.number);
    }
    if (method_code(method_from_code_field(tokens[1], line.number)) != c) {
      throw ParseError("prior lines must cover class codes 0,1,2 in order", line.number);
    }
    priors[c] = parse_double_field(tokens[2], line.number, "prior");
  }
  NaiveBayesModel::FeatureStats means{};
  NaiveBayesModel::FeatureStats variances{};
  for (int c = 0; c < kMethodCount; ++c) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const Line& line = cursor.next("stat line");
      const auto tokens = split_ws(line.text);
      if (tokens.size() != 5 || tokens[0] != "stat") {
        throw ParseError("expected: stat CLASS_CODE FEATURE_INDEX MEAN VARIANCE", line.number);
      }
      if (method_code(method_from_code_field(tokens[1], line.number)) != c ||
          parse_int_field(tokens[2], line.number, "feature index") !=
              static_cast<long>(f)) {
        throw ParseError("stat lines must cover (class, feature) pairs in order",
                         line.number);
      }
      means[c][f] = parse_double_field(tokens[3], line.number, "mean");
      variances[c][f] = parse_double_field(tokens[4], line.number, "variance");
    }
  }
  return NaiveBayesModel(priors, means, variances, floor);
}

}  // namespace

ConvMethod predict(const ClassifierModel& model, const FeatureVector& features) {
  if (const auto* dt = std::get_if<DecisionTreeModel>(&model)) {
    return dt->predict(features);
  }
  return std::get<NaiveBayesModel>(model).predict(features).label;
}

void save_model(const ClassifierModel& model, const std::string& path) {
  std::string out;
  out += kModelMagic;
  out += '\n';
  if (const auto* dt = std::get_if<DecisionTreeModel>(&model)) {
    out += serialize_dt(*dt);
  } else {
    out += serialize_nb(std::get<NaiveBayesModel>(model));
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open for writing: " + path);
  }
  file << out;
  file.flush();
  if (!file) {
    throw IoError("write failed: " + path);
  }
}

ClassifierModel load_model(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open: " + path);
  }
  std::ostringstream buf;
  buf << file.rdbuf();
  if (file.bad()) {
    throw IoError("read failed: " + path);
  }
  const std::string text = std::move(buf).str();

  const auto lines = content_lines(text);
  LineCursor cursor(lines);
  if (lines.empty() || lines.front().text != kModelMagic) {
    throw FormatVersionMismatch("not a " + std::string(kModelMagic) + " file: " + path);
  }
  cursor.next("magic header");

  const std::string_view kind = keyed_value(cursor.next("kind"), "kind");
  ClassifierModel model = [&]() -> ClassifierModel {
    if (kind == "dt") {
      return parse_dt(cursor);
    }
    if (kind == "nb") {
      return parse_nb(cursor);
    }
    throw ParseError("unknown model kind: " + std::string(kind), 2);
  }();
  if (!cursor.done()) {
    throw ParseError("unexpected content after the model body", cursor.current().number);
  }
  return model;
}

}  // namespace convsel
