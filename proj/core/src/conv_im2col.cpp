#include <algorithm>
#include <cstddef>

#include "convsel/conv/backends.hpp"
#include "convsel/errors.hpp"
#include "convsel/matrix.hpp"

namespace convsel {

namespace detail {
void check_conv_args(const Tensor& input, const Tensor& kernels, const ConvGeometry& g);
}  // namespace detail

Matrix im2col(const Tensor& input, const ConvGeometry& g) {
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
  if (!g.output_valid()) {
    throw UnsupportedShape("kernel size exceeds the padded image extents");
  }

  const int h_out = g.out_height();
  const int w_out = g.out_width();
  const int kk = g.kernel_size;
  const int rows = g.in_channels * kk * kk;
  const int cols = h_out * w_out;
  Matrix m(rows, cols);

  const float* in = input.data();
  // Output positions are visited column by column: column index = x * h_out + y.
  for (int x = 0; x < w_out; ++x) {
    for (int y = 0; y < h_out; ++y) {
      const int col = x * h_out + y;
      for (int c = 0; c < g.in_channels; ++c) {
        const float* in_c = in + (static_cast<std::size_t>(c) * g.height) * g.width;
        for (int i = 0; i < kk; ++i) {
          const int src_y = y + i - g.pad;
          const bool row_in = src_y >= 0 && src_y < g.height;
          for (int j = 0; j < kk; ++j) {
            const int src_x = x + j - g.pad;
            float v = 0.0f;
            if (row_in && src_x >= 0 && src_x < g.width) {
              v = in_c[static_cast<std::size_t>(src_y) * g.width + src_x];
            }
            m.at((c * kk + i) * kk + j, col) = v;
          }
        }
      }
    }
  }
  return m;
}

Matrix im2col(const Tensor& input, const LayerShape& shape) {
  return im2col(input, shape.geometry());
}

Tensor im2col_gemm_conv(const Tensor& input, const Tensor& kernels,
                        const ConvGeometry& g) {
  detail::check_conv_args(input, kernels, g);
  const int h_out = g.out_height();
  const int w_out = g.out_width();
  const int kk = g.kernel_size;

  const Matrix cols = im2col(input, g);
  // Kernels are already contiguous as [C_OUT, C_IN*K*K] in (c, i, j) order.
  Matrix filt(g.out_channels, g.in_channels * kk * kk);
  std::copy(kernels.data(), kernels.data() + filt.size(), filt.data());

  const Matrix prod = gemm(filt, cols);

  Tensor out({g.out_channels, h_out, w_out});
  float* dst = out.data();
  for (int o = 0; o < g.out_channels; ++o) {
    const float* prow = prod.row(o);
    for (int x = 0; x < w_out; ++x) {
      for (int y = 0; y < h_out; ++y) {
        dst[(static_cast<std::size_t>(o) * h_out + y) * w_out + x] = prow[x * h_out + y];
      }
    }
  }
  return out;
}

Tensor im2col_gemm_conv(const Tensor& input, const Tensor& kernels,
                        const LayerShape& shape) {
  return im2col_gemm_conv(input, kernels, shape.geometry());
}

}  // namespace convsel
