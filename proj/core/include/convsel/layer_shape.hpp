#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace convsel {

/// Low-level convolution geometry. Unlike LayerShape it permits pad 0,
/// which the backends accept; stride other than 1 is rejected by every
/// backend. Output extents may come out non-positive for kernels larger
/// than the padded image; backends refuse such geometry.
struct ConvGeometry {
  int width = 1;
  int height = 1;
  int in_channels = 1;
  int kernel_size = 1;
  int out_channels = 1;
  int stride = 1;
  int pad = 1;

  int out_height() const noexcept { return height + 2 * pad - kernel_size + 1; }
  int out_width() const noexcept { return width + 2 * pad - kernel_size + 1; }
  bool output_valid() const noexcept { return out_height() >= 1 && out_width() >= 1; }
};

/// The 5-feature descriptor of a convolution layer: width, height, input
/// channels, square kernel side, output channels. Stride and padding are
/// fixed to 1; construction rejects any other value. All five fields must
/// be at least 1.
///
/// Kernels larger than the padded image (out_height()/out_width() < 1) are
/// representable so that sweeps can enumerate and label them; every backend
/// refuses to run them, and output_valid() reports the condition.
class LayerShape {
 public:
  LayerShape(int width, int height, int in_channels, int kernel_size, int out_channels,
             int stride = 1, int pad = 1);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int in_channels() const noexcept { return in_channels_; }
  int kernel_size() const noexcept { return kernel_size_; }
  int out_channels() const noexcept { return out_channels_; }
  int stride() const noexcept { return 1; }
  int pad() const noexcept { return 1; }

  int out_height() const noexcept { return height_ + 2 - kernel_size_ + 1; }
  int out_width() const noexcept { return width_ + 2 - kernel_size_ + 1; }
  bool output_valid() const noexcept { return out_height() >= 1 && out_width() >= 1; }

  ConvGeometry geometry() const noexcept {
    return ConvGeometry{width_, height_, in_channels_, kernel_size_, out_channels_, 1, 1};
  }

  /// Feature vector in the fixed order W, H, C_IN, KERNEL_SIZE, C_OUT.
  std::array<double, 5> features() const noexcept {
    return {static_cast<double>(width_), static_cast<double>(height_),
            static_cast<double>(in_channels_), static_cast<double>(kernel_size_),
            static_cast<double>(out_channels_)};
  }

  /// Multiply-accumulate count of one forward pass; 0 for degenerate output.
  double macs() const noexcept;

  std::string to_string() const;

  /// Collision-free ordering key (each field fits in 16 bits in practice,
  /// but the key is built from full comparisons, not bit packing).
  friend bool operator==(const LayerShape& a, const LayerShape& b) noexcept {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.in_channels_ == b.in_channels_ && a.kernel_size_ == b.kernel_size_ &&
           a.out_channels_ == b.out_channels_;
  }
  friend bool operator!=(const LayerShape& a, const LayerShape& b) noexcept {
    return !(a == b);
  }
  friend bool operator<(const LayerShape& a, const LayerShape& b) noexcept;

 private:
  int width_;
  int height_;
  int in_channels_;
  int kernel_size_;
  int out_channels_;
};

}  // namespace convsel
