#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "convsel/learn/model_io.hpp"

namespace convsel {

/// Classification quality on one dataset. The confusion matrix is indexed
/// [actual][predicted]; each row sums to that class's sample count.
struct TrainReport {
  double training_accuracy = 0.0;
  std::optional<double> holdout_accuracy;
  std::array<std::array<std::uint64_t, kMethodCount>, kMethodCount> confusion{};
  /// Per-class precision and recall; 0 when the denominator is empty.
  std::array<double, kMethodCount> precision{};
  std::array<double, kMethodCount> recall{};
  std::uint64_t total = 0;
};

/// Accuracy, confusion matrix, and per-class precision/recall of `model`
/// on `samples` (reported in training_accuracy; holdout_accuracy is left
/// empty for the caller). Throws EmptyDataset.
TrainReport evaluate_accuracy(const ClassifierModel& model,
                              const std::vector<LabeledSample>& samples);

}  // namespace convsel
