#include "convsel/bench/timing.hpp"

#include "convsel/errors.hpp"

namespace convsel {

ConvMethod fastest_ok(const MethodTimings& timings) {
  bool found = false;
  ConvMethod best = ConvMethod::Gemm;
  double best_micros = 0.0;
  for (ConvMethod m : kAllMethods) {
    const TimingResult& t = timings[method_code(m)];
    if (t.status != RunStatus::Ok) {
      continue;
    }
    // Strict comparison keeps the lowest code on ties.
    if (!found || t.micros < best_micros) {
      found = true;
      best = m;
      best_micros = t.micros;
    }
  }
  if (!found) {
    throw AllMethodsFailed("no method produced a successful timing");
  }
  return best;
}

BenchmarkRecord label_record(const LayerShape& shape, const MethodTimings& timings) {
  for (ConvMethod m : kAllMethods) {
    if (timings[method_code(m)].method != m) {
      throw DimensionMismatch("timing slots must be indexed by method code");
    }
  }
  BenchmarkRecord record{shape, "fp32", timings, fastest_ok(timings)};
  return record;
}

}  // namespace convsel
