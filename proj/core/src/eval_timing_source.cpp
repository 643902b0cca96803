#include "convsel/eval/timing_source.hpp"

#include "convsel/bench/dataset.hpp"
#include "convsel/bench/synthetic.hpp"
#include "convsel/errors.hpp"

namespace convsel {

MethodTimings SyntheticTimingSource::timings(const LayerShape& shape) {
  return synthetic_costs(shape);
}

MethodTimings MeasuredTimingSource::timings(const LayerShape& shape) {
  MethodTimings timings;
  for (ConvMethod m : kAllMethods) {
    timings[method_code(m)] = measure_layer(shape, m, options_);
  }
  return timings;
}

RankingFileTimingSource::RankingFileTimingSource(const std::string& path) : path_(path) {
  for (const BenchmarkRecord& record : read_ranking_csv(path)) {
    by_shape_[record.shape] = record.timings;
  }
}

MethodTimings RankingFileTimingSource::timings(const LayerShape& shape) {
  const auto it = by_shape_.find(shape);
  if (it == by_shape_.end()) {
    throw MissingShape("ranking file " + path_ + " has no row for " + shape.to_string());
  }
  return it->second;
}

}  // namespace convsel
