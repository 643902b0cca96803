#pragma once

#include <array>
#include <vector>

#include "convsel/learn/dataset.hpp"

namespace convsel {

/// Gaussian naive Bayes over the five numeric layer features.
///
/// Training fits class priors (relative frequencies) and a per-class,
/// per-feature mean and population variance. Variances are floored at
/// variance_floor = 1e-9 * the largest whole-dataset feature variance
/// (1e-12 when every feature is constant), which keeps single-sample and
/// constant-feature classes usable. A class absent from the training set
/// keeps prior 0 and is skipped at prediction time.
class NaiveBayesModel {
 public:
  struct Prediction {
    ConvMethod label;
    /// Normalized class posterior, indexed by method code; sums to 1.
    std::array<double, kMethodCount> posterior;
  };

  using FeatureStats = std::array<std::array<double, kFeatureCount>, kMethodCount>;

  /// Throws EmptyDataset.
  static NaiveBayesModel train(const std::vector<LabeledSample>& samples);

  /// Rebuilds a model from serialized parameters.
  NaiveBayesModel(std::array<double, kMethodCount> priors, FeatureStats means,
                  FeatureStats variances, double variance_floor);

  /// Log-space scoring: log prior plus the sum of log Gaussian densities,
  /// normalized with log-sum-exp. The label is the posterior argmax, ties
  /// broken toward the lowest method code.
  Prediction predict(const FeatureVector& features) const;

  const std::array<double, kMethodCount>& class_priors() const noexcept { return priors_; }
  const FeatureStats& means() const noexcept { return means_; }
  const FeatureStats& variances() const noexcept { return variances_; }
  double variance_floor() const noexcept { return variance_floor_; }

 private:
  NaiveBayesModel() = default;
  void validate() const;

  std::array<double, kMethodCount> priors_{};
  FeatureStats means_{};
  FeatureStats variances_{};
  double variance_floor_ = 0.0;
};

}  // namespace convsel
