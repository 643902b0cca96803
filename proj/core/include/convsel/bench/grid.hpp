#pragma once

#include <string>
#include <vector>

#include "convsel/layer_shape.hpp"

namespace convsel {

/// Value lists for the five layer parameters plus the timing protocol.
struct GridConfig {
  std::vector<int> widths;
  std::vector<int> heights;
  std::vector<int> in_channels;
  std::vector<int> kernel_sizes;
  std::vector<int> out_channels;
  int repetitions = 5;
  int warmups = 1;

  /// The stock sweep: W,H in {7,128,256}, C_IN in {3,32,64,128,256,384,
  /// 512,768,1024,2048}, K in 1..11, C_OUT in {8,16,32,64,128,256,384,
  /// 512,768,1024}. 3*3*10*11*10 = 9900 shapes.
  static GridConfig defaults();

  std::size_t grid_size() const noexcept;
};

/// Cartesian product of the five lists in fixed nesting order: W outermost,
/// then H, C_IN, K, C_OUT innermost. Throws EmptyGrid when a list is empty
/// and UnsupportedShape when a value is below 1.
std::vector<LayerShape> generate_shape_grid(const GridConfig& config);

/// Reads a grid override file: `key = v1,v2,...` lines with keys W, H,
/// C_IN, KERNEL_SIZE, C_OUT, REPETITIONS, WARMUPS. Blank lines and lines
/// starting with '#' are ignored. Keys not present keep their default.
/// Throws IoError when unreadable, ParseError on malformed lines.
GridConfig load_grid_file(const std::string& path);

}  // namespace convsel
