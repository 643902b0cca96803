#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "convsel/bench/timing.hpp"
#include "convsel/layer_shape.hpp"

namespace convsel {

struct MeasureOptions {
  int repetitions = 5;
  int warmups = 1;
  /// Base seed; the tensor contents for a shape are derived from this and
  /// the shape itself, so a given (seed, shape) pair is rerun-comparable.
  std::uint64_t seed = 42;
};

/// Runs the backend on pseudo-random tensors and reports the median of
/// `repetitions` wall-clock times (monotonic clock, microseconds), after
/// discarding `warmups` runs. A backend that cannot run the shape yields
/// status Failed instead of throwing; measurement never aborts a sweep.
TimingResult measure_layer(const LayerShape& shape, ConvMethod method,
                           const MeasureOptions& options);

struct SweepOptions {
  MeasureOptions measure;
  bool synthetic = false;
  /// Measured mode skips shapes whose multiply-accumulate count exceeds
  /// this budget (large grid shapes are far too slow for a CPU sweep).
  /// Non-positive disables the cap. Ignored in synthetic mode.
  double max_flops = 2e8;
  /// Receives one line per skipped shape; may be empty.
  std::function<void(const std::string&)> log;
};

/// Times every shape with every method and labels the fastest. Shapes are
/// skipped (with a log line) when they exceed the flops budget or when all
/// three methods fail; the returned records therefore may be fewer than
/// the input shapes. Synthetic mode is exhaustive and bit-deterministic.
std::vector<BenchmarkRecord> run_sweep(const std::vector<LayerShape>& shapes,
                                       const SweepOptions& options);

}  // namespace convsel
