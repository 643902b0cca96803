#pragma once

#include <array>
#include <string>

#include "convsel/conv_method.hpp"
#include "convsel/layer_shape.hpp"

namespace convsel {

enum class RunStatus { Ok, Failed };

/// One method's measurement on one shape. micros is meaningful only when
/// status is Ok; Failed results carry no usable time.
struct TimingResult {
  ConvMethod method = ConvMethod::Gemm;
  double micros = 0.0;
  RunStatus status = RunStatus::Failed;

  static TimingResult ok(ConvMethod m, double micros) {
    return {m, micros, RunStatus::Ok};
  }
  static TimingResult failed(ConvMethod m) { return {m, 0.0, RunStatus::Failed}; }
};

/// Timings for all three methods, indexed by method code.
using MethodTimings = std::array<TimingResult, kMethodCount>;

/// One row of the benchmark dataset: a shape, all three timings, and the
/// label naming the fastest method whose run succeeded.
struct BenchmarkRecord {
  LayerShape shape;
  std::string precision = "fp32";
  MethodTimings timings;
  ConvMethod label = ConvMethod::Gemm;
};

/// Fastest method among Ok timings; ties go to the lowest method code
/// (gemm before direct before winograd). Throws AllMethodsFailed when no
/// timing is Ok. Shared by dataset labeling and oracle choice so the two
/// can never disagree.
ConvMethod fastest_ok(const MethodTimings& timings);

/// Builds the labeled record for a shape. Each timings slot must describe
/// the method of its own index. Throws AllMethodsFailed when every method
/// failed.
BenchmarkRecord label_record(const LayerShape& shape, const MethodTimings& timings);

}  // namespace convsel
