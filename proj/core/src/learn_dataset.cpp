#include "convsel/learn/dataset.hpp"

#include "convsel/errors.hpp"
#include "convsel/rng.hpp"

namespace convsel {

std::vector<LabeledSample> to_samples(const std::vector<BenchmarkRecord>& records) {
  std::vector<LabeledSample> samples;
  samples.reserve(records.size());
  for (const BenchmarkRecord& r : records) {
    samples.push_back(LabeledSample{r.shape.features(), r.label});
  }
  return samples;
}

std::vector<LabeledSample> to_samples(const std::vector<FeatureRow>& rows) {
  std::vector<LabeledSample> samples;
  samples.reserve(rows.size());
  for (const FeatureRow& r : rows) {
    samples.push_back(LabeledSample{r.shape.features(), r.label});
  }
  return samples;
}

std::vector<LabeledSample> read_labeled_samples(const std::string& path) {
  return to_samples(read_features_auto(path));
}

std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>> split_dataset(
    const std::vector<LabeledSample>& samples, double holdout_fraction, std::uint64_t seed) {
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) {
    throw Error("holdout fraction must lie in [0, 1)");
  }
  std::vector<std::size_t> order(samples.size());
  shuffled_indices(order, seed);
  const auto holdout_count =
      static_cast<std::size_t>(holdout_fraction * static_cast<double>(samples.size()));

  std::vector<LabeledSample> holdout;
  holdout.reserve(holdout_count);
  std::vector<LabeledSample> train;
  train.reserve(samples.size() - holdout_count);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < holdout_count ? holdout : train).push_back(samples[order[i]]);
  }
  return {std::move(train), std::move(holdout)};
}

}  // namespace convsel
