#include "convsel/bench/dataset.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include "convsel/errors.hpp"
#include "convsel/text.hpp"

namespace convsel {

namespace {

constexpr std::string_view kFeaturesHeader = "W,H,C_IN,KERNEL_SIZE,C_OUT,PRECISION,LABEL";
constexpr std::string_view kRankingHeader =
    "W,H,C_IN,KERNEL_SIZE,C_OUT,gemm_us,gemm_status,direct_us,direct_status,"
    "winograd_us,winograd_status";

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

void append_shape_fields(std::string& row, const LayerShape& s) {
  row += std::to_string(s.width());
  row += ',';
  row += std::to_string(s.height());
  row += ',';
  row += std::to_string(s.in_channels());
  row += ',';
  row += std::to_string(s.kernel_size());
  row += ',';
  row += std::to_string(s.out_channels());
}

std::string feature_row(const BenchmarkRecord& r) {
  std::string row;
  append_shape_fields(row, r.shape);
  row += ',';
  row += r.precision;
  row += ',';
  row += method_name(r.label);
  row += '\n';
  return row;
}

LayerShape parse_shape_fields(const std::vector<std::string_view>& fields,
                              std::size_t line) {
  const int w = static_cast<int>(parse_int_field(fields[0], line, "W"));
  const int h = static_cast<int>(parse_int_field(fields[1], line, "H"));
  const int cin = static_cast<int>(parse_int_field(fields[2], line, "C_IN"));
  const int k = static_cast<int>(parse_int_field(fields[3], line, "KERNEL_SIZE"));
  const int cout = static_cast<int>(parse_int_field(fields[4], line, "C_OUT"));
  try {
    return LayerShape(w, h, cin, k, cout);
  } catch (const Error& e) {
    throw ParseError(e.what(), line);
  }
}

ConvMethod parse_label(std::string_view token, std::size_t line) {
  const auto method = method_from_name(token);
  if (!method) {
    throw ParseError("unknown class token: " + std::string(token), line);
  }
  return *method;
}

std::string read_whole_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failed: " + path);
  }
  return std::move(buf).str();
}

/// Splits into lines; strips one trailing '\r' per line, drops a final
/// empty line caused by a trailing newline.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    lines.push_back(line);
    if (nl == text.size()) {
      break;
    }
    start = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) {
    lines.pop_back();
  }
  return lines;
}

std::vector<FeatureRow> parse_feature_rows(const std::vector<std::string_view>& lines,
                                           std::size_t first_data_line,
                                           const std::string& path) {
  std::vector<FeatureRow> rows;
  for (std::size_t i = first_data_line; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = trim(lines[i]);
    if (line.empty()) {
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw ParseError("expected 7 fields, got " + std::to_string(fields.size()), line_no);
    }
    LayerShape shape = parse_shape_fields(fields, line_no);
    const std::string_view precision = trim(fields[5]);
    if (precision != "fp32") {
      throw ParseError("unknown precision token: " + std::string(precision), line_no);
    }
    const ConvMethod label = parse_label(trim(fields[6]), line_no);
    rows.push_back(FeatureRow{shape, std::string(precision), label});
  }
  if (rows.empty()) {
    throw EmptyDataset("no data rows in " + path);
  }
  return rows;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

DatasetPaths DatasetPaths::in_dir(const std::string& dir) {
  const std::string base = dir.empty() || dir.back() == '/' ? dir : dir + "/";
  return DatasetPaths{base + "features.csv", base + "dataset.arff", base + "ranking.csv"};
}

void write_dataset(const std::vector<BenchmarkRecord>& records, const DatasetPaths& paths) {
  if (records.empty()) {
    throw EmptyDataset("refusing to write an empty dataset");
  }

  std::string features;
  features += kFeaturesHeader;
  features += '\n';
  for (const BenchmarkRecord& r : records) {
    features += feature_row(r);
  }
  write_file(paths.features_csv, features);

  std::string arff;
  arff +=
      "@relation convsel\n"
      "@attribute W numeric\n"
      "@attribute H numeric\n"
      "@attribute C_IN numeric\n"
      "@attribute KERNEL_SIZE numeric\n"
      "@attribute C_OUT numeric\n"
      "@attribute PRECISION {fp32}\n"
      "@attribute LABEL {gemm,direct,winograd}\n"
      "@data\n";
  for (const BenchmarkRecord& r : records) {
    arff += feature_row(r);
  }
  write_file(paths.arff, arff);

  std::string ranking;
  ranking += kRankingHeader;
  ranking += '\n';
  for (const BenchmarkRecord& r : records) {
    std::string row;
    append_shape_fields(row, r.shape);
    for (ConvMethod m : kAllMethods) {
      const TimingResult& t = r.timings[method_code(m)];
      row += ',';
      if (t.status == RunStatus::Ok) {
        row += format_double(t.micros);
        row += ",ok";
      } else {
        row += ",failed";
      }
    }
    row += '\n';
    ranking += row;
  }
  write_file(paths.ranking_csv, ranking);
}

std::vector<BenchmarkRecord> read_ranking_csv(const std::string& path) {
  const std::string text = read_whole_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) {
    throw ParseError("empty ranking file: " + path, 1);
  }
  if (trim(lines[0]) != kRankingHeader) {
    throw ParseError("bad ranking header in " + path, 1);
  }
  std::vector<BenchmarkRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = trim(lines[i]);
    if (line.empty()) {
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 11) {
      throw ParseError("expected 11 fields, got " + std::to_string(fields.size()), line_no);
    }
    LayerShape shape = parse_shape_fields(fields, line_no);
    MethodTimings timings;
    for (ConvMethod m : kAllMethods) {
      const std::string_view time_field = trim(fields[5 + 2 * method_code(m)]);
      const std::string_view status_field = trim(fields[6 + 2 * method_code(m)]);
      if (status_field == "ok") {
        const double micros =
            parse_double_field(time_field, line_no, std::string(method_name(m)) + "_us");
        if (micros < 0) {
          throw ParseError("negative time for " + std::string(method_name(m)), line_no);
        }
        timings[method_code(m)] = TimingResult::ok(m, micros);
      } else if (status_field == "failed") {
        if (!time_field.empty()) {
          throw ParseError("failed entry must leave the time empty", line_no);
        }
        timings[method_code(m)] = TimingResult::failed(m);
      } else {
        throw ParseError("unknown status token: " + std::string(status_field), line_no);
      }
    }
    try {
      records.push_back(label_record(shape, timings));
    } catch (const AllMethodsFailed&) {
      throw ParseError("row has no successful method", line_no);
    }
  }
  if (records.empty()) {
    throw EmptyDataset("no data rows in " + path);
  }
  return records;
}

std::vector<FeatureRow> read_features_csv(const std::string& path) {
  const std::string text = read_whole_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) {
    throw ParseError("empty features file: " + path, 1);
  }
  if (trim(lines[0]) != kFeaturesHeader) {
    throw ParseError("bad features header in " + path, 1);
  }
  return parse_feature_rows(lines, 1, path);
}

std::vector<FeatureRow> read_features_arff(const std::string& path) {
  const std::string text = read_whole_file(path);
  const auto lines = split_lines(text);
  std::size_t data_start = lines.size();
  bool saw_relation = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    if (line.empty() || line.front() == '%') {
      continue;
    }
    if (line.front() != '@') {
      throw ParseError("expected an @ declaration before @data", i + 1);
    }
    const std::size_t space = line.find_first_of(" \t");
    const std::string_view keyword = line.substr(0, space);
    if (iequals(keyword, "@relation")) {
      saw_relation = true;
    } else if (iequals(keyword, "@attribute")) {
      // Attribute order is fixed by the writer; rows are validated below.
    } else if (iequals(keyword, "@data")) {
      data_start = i + 1;
      break;
    } else {
      throw ParseError("unknown ARFF declaration: " + std::string(keyword), i + 1);
    }
  }
  if (!saw_relation || data_start >= lines.size()) {
    throw ParseError("ARFF file has no @data section: " + path, 1);
  }
  // '%' comment lines are legal inside @data as well.
  std::vector<std::string_view> cleaned(lines.begin(), lines.begin() + data_start);
  for (std::size_t i = data_start; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    cleaned.push_back(line.empty() || line.front() == '%' ? std::string_view{} : lines[i]);
  }
  return parse_feature_rows(cleaned, data_start, path);
}

std::vector<FeatureRow> read_features_auto(const std::string& path) {
  const std::string text = read_whole_file(path);
  for (const std::string_view line : split_lines(text)) {
    const std::string_view t = trim(line);
    if (t.empty()) {
      continue;
    }
    return t.front() == '@' ? read_features_arff(path) : read_features_csv(path);
  }
  throw ParseError("empty dataset file: " + path, 1);
}

std::vector<BenchmarkRecord> read_dataset(const DatasetPaths& paths) {
  const std::vector<FeatureRow> features = read_features_csv(paths.features_csv);
  std::vector<BenchmarkRecord> records = read_ranking_csv(paths.ranking_csv);
  if (features.size() != records.size()) {
    throw ParseError("features and ranking files disagree on the record count (" +
                     std::to_string(features.size()) + " vs " +
                     std::to_string(records.size()) + ")");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::size_t line_no = i + 2;
    if (!(features[i].shape == records[i].shape)) {
      throw ParseError("features and ranking files disagree on the shape", line_no);
    }
    if (features[i].label != records[i].label) {
      throw ParseError("stored label does not minimize the recorded times", line_no);
    }
    records[i].precision = features[i].precision;
  }
  return records;
}

}  // namespace convsel
