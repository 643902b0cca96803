#include "convsel/bench/grid.hpp"

#include <fstream>
#include <string>

#include "convsel/errors.hpp"
#include "convsel/text.hpp"

namespace convsel {

GridConfig GridConfig::defaults() {
  GridConfig c;
  c.widths = {7, 128, 256};
  c.heights = {7, 128, 256};
  c.in_channels = {3, 32, 64, 128, 256, 384, 512, 768, 1024, 2048};
  c.kernel_sizes = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  c.out_channels = {8, 16, 32, 64, 128, 256, 384, 512, 768, 1024};
  return c;
}

std::size_t GridConfig::grid_size() const noexcept {
  return widths.size() * heights.size() * in_channels.size() * kernel_sizes.size() *
         out_channels.size();
}

std::vector<LayerShape> generate_shape_grid(const GridConfig& config) {
  const struct {
    const char* name;
    const std::vector<int>& values;
  } lists[] = {
      {"W", config.widths},           {"H", config.heights},
      {"C_IN", config.in_channels},   {"KERNEL_SIZE", config.kernel_sizes},
      {"C_OUT", config.out_channels},
  };
  for (const auto& l : lists) {
    if (l.values.empty()) {
      throw EmptyGrid(std::string("grid list ") + l.name + " is empty");
    }
  }

  std::vector<LayerShape> shapes;
  shapes.reserve(config.grid_size());
  for (int w : config.widths) {
    for (int h : config.heights) {
      for (int cin : config.in_channels) {
        for (int k : config.kernel_sizes) {
          for (int cout : config.out_channels) {
            shapes.emplace_back(w, h, cin, k, cout);
          }
        }
      }
    }
  }
  return shapes;
}

namespace {

std::vector<int> parse_value_list(std::string_view text, std::size_t line,
                                  std::string_view key) {
  std::vector<int> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) {
      comma = text.size();
    }
    const std::string_view field = trim(text.substr(start, comma - start));
    if (field.empty()) {
      throw ParseError(std::string("empty value in list for ") + std::string(key), line);
    }
    values.push_back(static_cast<int>(parse_int_field(field, line, key)));
    if (comma == text.size()) {
      break;
    }
    start = comma + 1;
  }
  return values;
}

}  // namespace

GridConfig load_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open grid file: " + path);
  }
  GridConfig config = GridConfig::defaults();
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key = value1,value2,...", line_no);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "W") {
      config.widths = parse_value_list(value, line_no, key);
    } else if (key == "H") {
      config.heights = parse_value_list(value, line_no, key);
    } else if (key == "C_IN") {
      config.in_channels = parse_value_list(value, line_no, key);
    } else if (key == "KERNEL_SIZE") {
      config.kernel_sizes = parse_value_list(value, line_no, key);
    } else if (key == "C_OUT") {
      config.out_channels = parse_value_list(value, line_no, key);
    } else if (key == "REPETITIONS") {
      config.repetitions = static_cast<int>(parse_int_field(value, line_no, key));
      if (config.repetitions < 1) {
        throw ParseError("REPETITIONS must be at least 1", line_no);
      }
    } else if (key == "WARMUPS") {
      config.warmups = static_cast<int>(parse_int_field(value, line_no, key));
      if (config.warmups < 0) {
        throw ParseError("WARMUPS must be non-negative", line_no);
      }
    } else {
      throw ParseError("unknown grid key: " + std::string(key), line_no);
    }
  }
  return config;
}

}  // namespace convsel
