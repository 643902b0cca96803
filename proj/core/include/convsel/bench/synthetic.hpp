#pragma once

#include "convsel/bench/timing.hpp"
#include "convsel/layer_shape.hpp"

namespace convsel {

// Deterministic analytic stand-in for wall-clock timing, so the whole
// pipeline (sweep, labeling, training, evaluation) can run reproducibly
// on any machine. Times are in microseconds. With P = H_out * W_out output
// positions (0 when the kernel exceeds the padded image), MACS =
// C_OUT * C_IN * K^2 * P, and T = ceil(H_out/2) * ceil(W_out/2) 4x4 tiles:
//
//   gemm     = 2.0e-5 * MACS + 1.2e-5 * (C_IN * K^2 * P) + 25.0
//              (multiply cost, im2col traffic, setup)
//   direct   = 5.4e-5 * MACS + 4.0
//              (same flops at a worse rate, negligible setup)
//   winograd = 2.0e-5 * (16 * C_OUT * C_IN * T)
//              + 4.0e-5 * (16 * T * (C_IN + C_OUT) + 16 * C_OUT * C_IN)
//              + 60.0, Failed unless K = 3
//              (16 batched multiplies, tile transform traffic, setup)
//
// The constants are frozen: the classifier tests and the bundled network
// reports depend on the exact label distribution this model induces.

/// Cost of one method on one shape. Pure function; same arguments always
/// produce the same result. Never throws: shapes no method can run still
/// get finite gemm/direct costs (the setup constants).
TimingResult synthetic_cost(const LayerShape& shape, ConvMethod method);

/// All three methods at once, indexed by method code.
MethodTimings synthetic_costs(const LayerShape& shape);

}  // namespace convsel
