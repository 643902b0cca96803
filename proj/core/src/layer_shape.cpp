#include "convsel/layer_shape.hpp"

#include <tuple>

#include "convsel/errors.hpp"

namespace convsel {

LayerShape::LayerShape(int width, int height, int in_channels, int kernel_size,
                       int out_channels, int stride, int pad)
    : width_(width),
      height_(height),
      in_channels_(in_channels),
      kernel_size_(kernel_size),
      out_channels_(out_channels) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw UnsupportedShape(what);
  };
  require(width >= 1, "layer width must be >= 1");
  require(height >= 1, "layer height must be >= 1");
  require(in_channels >= 1, "input channel count must be >= 1");
  require(kernel_size >= 1, "kernel size must be >= 1");
  require(out_channels >= 1, "output channel count must be >= 1");
  require(stride == 1, "only stride 1 is supported");
  require(pad == 1, "only padding 1 is supported");
}

double LayerShape::macs() const noexcept {
  if (!output_valid()) return 0.0;
  return static_cast<double>(out_channels_) * in_channels_ * kernel_size_ * kernel_size_ *
         out_height() * out_width();
}

std::string LayerShape::to_string() const {
  return "(" + std::to_string(width_) + "," + std::to_string(height_) + "," +
         std::to_string(in_channels_) + "," + std::to_string(kernel_size_) + "," +
         std::to_string(out_channels_) + ")";
}

bool operator<(const LayerShape& a, const LayerShape& b) noexcept {
  return std::tie(a.width_, a.height_, a.in_channels_, a.kernel_size_, a.out_channels_) <
         std::tie(b.width_, b.height_, b.in_channels_, b.kernel_size_, b.out_channels_);
}

}  // namespace convsel
