#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "convsel/bench/dataset.hpp"
#include "convsel/bench/timing.hpp"
#include "convsel/conv_method.hpp"

namespace convsel {

/// Layer features in the fixed order W, H, C_IN, KERNEL_SIZE, C_OUT.
using FeatureVector = std::array<double, 5>;

inline constexpr std::size_t kFeatureCount = 5;

inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "W", "H", "C_IN", "KERNEL_SIZE", "C_OUT"};

struct LabeledSample {
  FeatureVector features;
  ConvMethod label;
};

std::vector<LabeledSample> to_samples(const std::vector<BenchmarkRecord>& records);
std::vector<LabeledSample> to_samples(const std::vector<FeatureRow>& rows);

/// Reads a trainer dataset (features CSV or ARFF, detected by content).
std::vector<LabeledSample> read_labeled_samples(const std::string& path);

/// Seeded shuffle split, returned as {training set, holdout set}. The
/// holdout takes floor(n * holdout_fraction) samples; the rest train.
/// Both halves keep the shuffled order. The fraction must lie in [0, 1).
std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>> split_dataset(
    const std::vector<LabeledSample>& samples, double holdout_fraction, std::uint64_t seed);

}  // namespace convsel
