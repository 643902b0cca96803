#pragma once

#include <string>
#include <vector>

#include "convsel/layer_shape.hpp"

namespace convsel {

/// An ordered list of convolution layers to dispatch over.
struct NetworkSpec {
  std::string name;
  std::vector<LayerShape> layers;
};

/// Reads a network CSV: header W,H,C_IN,KERNEL_SIZE,C_OUT, one row per
/// layer in network order. The returned name is the file stem. Throws
/// IoError, ParseError, and EmptyDataset when the file has no layers.
NetworkSpec read_network_csv(const std::string& path);

}  // namespace convsel
