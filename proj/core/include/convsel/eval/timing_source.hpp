#pragma once

#include <map>
#include <string>
#include <string_view>

#include "convsel/bench/measure.hpp"
#include "convsel/bench/timing.hpp"
#include "convsel/layer_shape.hpp"

namespace convsel {

/// Where evaluation gets its per-layer timings from.
class TimingSource {
 public:
  virtual ~TimingSource() = default;
  virtual MethodTimings timings(const LayerShape& shape) = 0;
  virtual std::string_view name() const = 0;
};

/// Closed-form costs; deterministic and instant.
class SyntheticTimingSource final : public TimingSource {
 public:
  MethodTimings timings(const LayerShape& shape) override;
  std::string_view name() const override { return "synthetic"; }
};

/// Times the real backends on the calling machine.
class MeasuredTimingSource final : public TimingSource {
 public:
  explicit MeasuredTimingSource(MeasureOptions options) : options_(options) {}
  MethodTimings timings(const LayerShape& shape) override;
  std::string_view name() const override { return "measured"; }

 private:
  MeasureOptions options_;
};

/// Replays a previously written ranking CSV. Throws MissingShape when a
/// requested layer shape has no row.
class RankingFileTimingSource final : public TimingSource {
 public:
  explicit RankingFileTimingSource(const std::string& path);
  MethodTimings timings(const LayerShape& shape) override;
  std::string_view name() const override { return "ranking"; }

 private:
  std::map<LayerShape, MethodTimings> by_shape_;
  std::string path_;
};

}  // namespace convsel
