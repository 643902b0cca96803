#include <array>
#include <cstddef>
#include <vector>

#include "convsel/conv/backends.hpp"
#include "convsel/errors.hpp"
#include "convsel/matrix.hpp"

namespace convsel {

namespace detail {
void check_conv_args(const Tensor& input, const Tensor& kernels, const ConvGeometry& g);
}  // namespace detail

namespace {

// F(2x2, 3x3): each 4x4 input tile yields a 2x2 output patch.
constexpr int kTileIn = 4;
constexpr int kTileOut = 2;

// V = B^T d B for one 4x4 tile, d already gathered (zero outside the image).
void transform_input_tile(const float d[kTileIn][kTileIn], float v[kTileIn][kTileIn]) {
  float w[kTileIn][kTileIn];
  for (int j = 0; j < kTileIn; ++j) {
    w[0][j] = d[0][j] - d[2][j];
    w[1][j] = d[1][j] + d[2][j];
    w[2][j] = d[2][j] - d[1][j];
    w[3][j] = d[1][j] - d[3][j];
  }
  for (int i = 0; i < kTileIn; ++i) {
    v[i][0] = w[i][0] - w[i][2];
    v[i][1] = w[i][1] + w[i][2];
    v[i][2] = w[i][2] - w[i][1];
    v[i][3] = w[i][1] - w[i][3];
  }
}

// U = G g G^T for one 3x3 filter.
void transform_filter(const float* g, float u[kTileIn][kTileIn]) {
  float t[kTileIn][3];
  for (int j = 0; j < 3; ++j) {
    const float g0 = g[0 * 3 + j];
    const float g1 = g[1 * 3 + j];
    const float g2 = g[2 * 3 + j];
    t[0][j] = g0;
    t[1][j] = 0.5f * (g0 + g1 + g2);
    t[2][j] = 0.5f * (g0 - g1 + g2);
    t[3][j] = g2;
  }
  for (int i = 0; i < kTileIn; ++i) {
    u[i][0] = t[i][0];
    u[i][1] = 0.5f * (t[i][0] + t[i][1] + t[i][2]);
    u[i][2] = 0.5f * (t[i][0] - t[i][1] + t[i][2]);
    u[i][3] = t[i][2];
  }
}

// y = A^T m A for one transformed 4x4 product tile.
void transform_output_tile(const float m[kTileIn][kTileIn],
                           float y[kTileOut][kTileOut]) {
  float t[kTileOut][kTileIn];
  for (int j = 0; j < kTileIn; ++j) {
    t[0][j] = m[0][j] + m[1][j] + m[2][j];
    t[1][j] = m[1][j] - m[2][j] - m[3][j];
  }
  for (int i = 0; i < kTileOut; ++i) {
    y[i][0] = t[i][0] + t[i][1] + t[i][2];
    y[i][1] = t[i][1] - t[i][2] - t[i][3];
  }
}

}  // namespace

Tensor winograd_conv(const Tensor& input, const Tensor& kernels, const ConvGeometry& g) {
  detail::check_conv_args(input, kernels, g);
  if (g.kernel_size != 3) {
    throw UnsupportedShape("winograd F(2x2,3x3) requires a 3x3 kernel");
  }

  const int h_out = g.out_height();
  const int w_out = g.out_width();
  // Edge tiles read past the padded image and write past the output; both
  // directions are zero-extended / clipped.
  const int tiles_y = (h_out + kTileOut - 1) / kTileOut;
  const int tiles_x = (w_out + kTileOut - 1) / kTileOut;
  const int n_tiles = tiles_y * tiles_x;

  // U[xi][nu]: one [C_OUT x C_IN] matrix per transform-domain coordinate.
  std::vector<Matrix> u_mats;
  u_mats.reserve(kTileIn * kTileIn);
  for (int i = 0; i < kTileIn * kTileIn; ++i) {
    u_mats.emplace_back(g.out_channels, g.in_channels);
  }
  const float* ker = kernels.data();
  for (int o = 0; o < g.out_channels; ++o) {
    for (int c = 0; c < g.in_channels; ++c) {
      float u[kTileIn][kTileIn];
      transform_filter(ker + ((static_cast<std::size_t>(o) * g.in_channels + c) * 9), u);
      for (int xi = 0; xi < kTileIn; ++xi) {
        for (int nu = 0; nu < kTileIn; ++nu) {
          u_mats[xi * kTileIn + nu].at(o, c) = u[xi][nu];
        }
      }
    }
  }

  // V[xi][nu]: one [C_IN x n_tiles] matrix per transform-domain coordinate.
  std::vector<Matrix> v_mats;
  v_mats.reserve(kTileIn * kTileIn);
  for (int i = 0; i < kTileIn * kTileIn; ++i) {
    v_mats.emplace_back(g.in_channels, n_tiles);
  }
  const float* in = input.data();
  for (int c = 0; c < g.in_channels; ++c) {
    const float* in_c = in + (static_cast<std::size_t>(c) * g.height) * g.width;
    for (int ty = 0; ty < tiles_y; ++ty) {
      for (int tx = 0; tx < tiles_x; ++tx) {
        const int tile = ty * tiles_x + tx;
        float d[kTileIn][kTileIn];
        for (int i = 0; i < kTileIn; ++i) {
          const int src_y = ty * kTileOut + i - g.pad;
          const bool row_in = src_y >= 0 && src_y < g.height;
          for (int j = 0; j < kTileIn; ++j) {
            const int src_x = tx * kTileOut + j - g.pad;
            d[i][j] = (row_in && src_x >= 0 && src_x < g.width)
                          ? in_c[static_cast<std::size_t>(src_y) * g.width + src_x]
                          : 0.0f;
          }
        }
        float v[kTileIn][kTileIn];
        transform_input_tile(d, v);
        for (int xi = 0; xi < kTileIn; ++xi) {
          for (int nu = 0; nu < kTileIn; ++nu) {
            v_mats[xi * kTileIn + nu].at(c, tile) = v[xi][nu];
          }
        }
      }
    }
  }

  // 16 batched multiplies: M[xi][nu] = U[xi][nu] * V[xi][nu].
  std::vector<Matrix> m_mats;
  m_mats.reserve(kTileIn * kTileIn);
  for (int i = 0; i < kTileIn * kTileIn; ++i) {
    m_mats.push_back(gemm(u_mats[i], v_mats[i]));
  }

  Tensor out({g.out_channels, h_out, w_out});
  float* dst = out.data();
  for (int o = 0; o < g.out_channels; ++o) {
    for (int ty = 0; ty < tiles_y; ++ty) {
      for (int tx = 0; tx < tiles_x; ++tx) {
        const int tile = ty * tiles_x + tx;
        float m[kTileIn][kTileIn];
        for (int xi = 0; xi < kTileIn; ++xi) {
          for (int nu = 0; nu < kTileIn; ++nu) {
            m[xi][nu] = m_mats[xi * kTileIn + nu].at(o, tile);
          }
        }
        float y[kTileOut][kTileOut];
        transform_output_tile(m, y);
        for (int i = 0; i < kTileOut; ++i) {
          const int dst_y = ty * kTileOut + i;
          if (dst_y >= h_out) {
            continue;
          }
          for (int j = 0; j < kTileOut; ++j) {
            const int dst_x = tx * kTileOut + j;
            if (dst_x >= w_out) {
              continue;
            }
            dst[(static_cast<std::size_t>(o) * h_out + dst_y) * w_out + dst_x] = y[i][j];
          }
        }
      }
    }
  }
  return out;
}

Tensor winograd_conv(const Tensor& input, const Tensor& kernels, const LayerShape& shape) {
  return winograd_conv(input, kernels, shape.geometry());
}

Tensor convolve(ConvMethod method, const Tensor& input, const Tensor& kernels,
                const ConvGeometry& g) {
  switch (method) {
    case ConvMethod::Gemm:
      return im2col_gemm_conv(input, kernels, g);
    case ConvMethod::Direct:
      return direct_conv(input, kernels, g);
    case ConvMethod::Winograd:
      return winograd_conv(input, kernels, g);
  }
  throw UnsupportedShape("unknown convolution method");
}

Tensor convolve(ConvMethod method, const Tensor& input, const Tensor& kernels,
                const LayerShape& shape) {
  return convolve(method, input, kernels, shape.geometry());
}

}  // namespace convsel
