#include <algorithm>
#include <string>

#include "convsel/conv/backends.hpp"
#include "convsel/errors.hpp"

namespace convsel {

namespace detail {

void check_conv_args(const Tensor& input, const Tensor& kernels, const ConvGeometry& g) {
  if (g.stride != 1) {
    throw UnsupportedShape("backends require stride 1");
  }
  if (g.pad < 0) {
    throw UnsupportedShape("padding must be non-negative");
  }
  const std::vector<int> want_in = {g.in_channels, g.height, g.width};
  if (input.dims() != want_in) {
    throw DimensionMismatch("input tensor does not match geometry [C_IN,H,W]");
  }
  const std::vector<int> want_k = {g.out_channels, g.in_channels, g.kernel_size,
                                   g.kernel_size};
  if (kernels.dims() != want_k) {
    throw DimensionMismatch("kernel tensor does not match geometry [C_OUT,C_IN,K,K]");
  }
  if (!g.output_valid()) {
    throw UnsupportedShape("kernel size " + std::to_string(g.kernel_size) +
                           " exceeds the padded image extents");
  }
}

}  // namespace detail

Tensor direct_conv(const Tensor& input, const Tensor& kernels, const ConvGeometry& g) {
  detail::check_conv_args(input, kernels, g);
  const int h_out = g.out_height();
  const int w_out = g.out_width();
  const int kk = g.kernel_size;
  Tensor out({g.out_channels, h_out, w_out});

  const float* in = input.data();
  const float* ker = kernels.data();
  float* dst = out.data();

  for (int o = 0; o < g.out_channels; ++o) {
    for (int y = 0; y < h_out; ++y) {
      // Rows of the kernel that land inside the unpadded image.
      const int i_lo = std::max(0, g.pad - y);
      const int i_hi = std::min(kk, g.height + g.pad - y);
      for (int x = 0; x < w_out; ++x) {
        const int j_lo = std::max(0, g.pad - x);
        const int j_hi = std::min(kk, g.width + g.pad - x);
        float acc = 0.0f;
        // Taps accumulate in (c, i, j) order; skipped taps are exact zeros.
        for (int c = 0; c < g.in_channels; ++c) {
          const float* in_c = in + (static_cast<std::size_t>(c) * g.height) * g.width;
          const float* ker_oc =
              ker + ((static_cast<std::size_t>(o) * g.in_channels + c) * kk) * kk;
          for (int i = i_lo; i < i_hi; ++i) {
            const float* in_row = in_c + static_cast<std::size_t>(y + i - g.pad) * g.width;
            const float* ker_row = ker_oc + static_cast<std::size_t>(i) * kk;
            for (int j = j_lo; j < j_hi; ++j) {
              acc += in_row[x + j - g.pad] * ker_row[j];
            }
          }
        }
        dst[(static_cast<std::size_t>(o) * h_out + y) * w_out + x] = acc;
      }
    }
  }
  return out;
}

Tensor direct_conv(const Tensor& input, const Tensor& kernels, const LayerShape& shape) {
  return direct_conv(input, kernels, shape.geometry());
}

}  // namespace convsel
