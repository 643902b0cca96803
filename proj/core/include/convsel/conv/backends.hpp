#pragma once

#include "convsel/conv_method.hpp"
#include "convsel/layer_shape.hpp"
#include "convsel/matrix.hpp"
#include "convsel/tensor.hpp"

namespace convsel {

// All backends compute the same cross-correlation: no kernel flip, zero
// padding, stride 1. Input is [C_IN, H, W], kernels [C_OUT, C_IN, K, K],
// output [C_OUT, H_out, W_out]. They throw DimensionMismatch when tensor
// dims disagree with the geometry and UnsupportedShape when the geometry
// cannot be run (non-positive output extent; for Winograd, any K != 3).

/// Direct evaluation of the convolution sum. Per output element the taps
/// accumulate in (channel, kernel row, kernel col) order.
Tensor direct_conv(const Tensor& input, const Tensor& kernels, const ConvGeometry& g);
Tensor direct_conv(const Tensor& input, const Tensor& kernels, const LayerShape& shape);

/// Patch-to-column lowering. The result has C_IN*K*K rows and one column
/// per output position; positions are traversed column-wise (x outer, y
/// inner), so column index = x * out_height + y. Within a column the patch
/// is flattened in (channel, kernel row, kernel col) order.
Matrix im2col(const Tensor& input, const ConvGeometry& g);
Matrix im2col(const Tensor& input, const LayerShape& shape);

/// Convolution as one matrix product: kernels reshaped to
/// [C_OUT, C_IN*K*K] times the im2col matrix.
Tensor im2col_gemm_conv(const Tensor& input, const Tensor& kernels, const ConvGeometry& g);
Tensor im2col_gemm_conv(const Tensor& input, const Tensor& kernels, const LayerShape& shape);

/// F(2x2,3x3) Winograd convolution: 4x4 input tiles produce 2x2 output
/// tiles through the canonical B/G/A transforms; the element-wise stage
/// runs as 16 GEMMs over [C_OUT x C_IN] x [C_IN x tiles]. Edge tiles are
/// zero-extended and cropped. Only K = 3 with stride 1 is supported.
Tensor winograd_conv(const Tensor& input, const Tensor& kernels, const ConvGeometry& g);
Tensor winograd_conv(const Tensor& input, const Tensor& kernels, const LayerShape& shape);

/// Runs the backend selected by `method`.
Tensor convolve(ConvMethod method, const Tensor& input, const Tensor& kernels,
                const ConvGeometry& g);
Tensor convolve(ConvMethod method, const Tensor& input, const Tensor& kernels,
                const LayerShape& shape);

}  // namespace convsel
