#include "convsel/eval/network.hpp"

#include <fstream>
#include <sstream>

#include "convsel/errors.hpp"
#include "convsel/text.hpp"

namespace convsel {

namespace {

constexpr std::string_view kNetworkHeader = "W,H,C_IN,KERNEL_SIZE,C_OUT";

std::string file_stem(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  const std::size_t start = slash == std::string::npos ? 0 : slash + 1;
  const std::size_t dot = path.find_last_of('.');
  const std::size_t end = dot == std::string::npos || dot < start ? path.size() : dot;
  return path.substr(start, end - start);
}

}  // namespace

NetworkSpec read_network_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failed: " + path);
  }
  const std::string text = std::move(buf).str();

  NetworkSpec spec;
  spec.name = file_stem(path);

  std::size_t start = 0;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      nl = text.size();
    }
    ++line_no;
    std::string_view line{text.data() + start, nl - start};
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    const std::string_view trimmed = trim(line);
    const bool at_end = nl == text.size();
    start = nl + 1;
    if (trimmed.empty() || trimmed.front() == '#') {
      if (at_end) break;
      continue;
    }
    if (!saw_header) {
      if (trimmed != kNetworkHeader) {
        throw ParseError("bad network header in " + path, line_no);
      }
      saw_header = true;
      if (at_end) break;
      continue;
    }
    const auto fields = split_csv_line(trimmed);
    if (fields.size() != 5) {
      throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), line_no);
    }
    const int w = static_cast<int>(parse_int_field(fields[0], line_no, "W"));
    const int h = static_cast<int>(parse_int_field(fields[1], line_no, "H"));
    const int cin = static_cast<int>(parse_int_field(fields[2], line_no, "C_IN"));
    const int k = static_cast<int>(parse_int_field(fields[3], line_no, "KERNEL_SIZE"));
    const int cout = static_cast<int>(parse_int_field(fields[4], line_no, "C_OUT"));
    try {
      spec.layers.emplace_back(w, h, cin, k, cout);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
    if (at_end) break;
  }
  if (!saw_header) {
    throw ParseError("empty network file: " + path, 1);
  }
  if (spec.layers.empty()) {
    throw EmptyDataset("network has no layers: " + path);
  }
  return spec;
}

}  // namespace convsel
