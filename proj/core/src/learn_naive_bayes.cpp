#include "convsel/learn/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convsel/errors.hpp"

namespace convsel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kRelativeFloor = 1e-9;
constexpr double kAbsoluteFloor = 1e-12;

}  // namespace

NaiveBayesModel NaiveBayesModel::train(const std::vector<LabeledSample>& samples) {
  if (samples.empty()) {
    throw EmptyDataset("cannot train naive Bayes on an empty dataset");
  }
  const double n = static_cast<double>(samples.size());

  NaiveBayesModel model;
  std::array<double, kMethodCount> class_n{};
  for (const LabeledSample& s : samples) {
    class_n[method_code(s.label)] += 1.0;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      model.means_[method_code(s.label)][f] += s.features[f];
    }
  }
  for (int c = 0; c < kMethodCount; ++c) {
    model.priors_[c] = class_n[c] / n;
    if (class_n[c] > 0) {
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        model.means_[c][f] /= class_n[c];
      }
    }
  }
  for (const LabeledSample& s : samples) {
    const int c = method_code(s.label);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const double d = s.features[f] - model.means_[c][f];
      model.variances_[c][f] += d * d;
    }
  }

  // Floor: a fixed fraction of the largest whole-dataset feature variance,
  // so degenerate (constant or single-sample) columns stay well-defined.
  std::array<double, kFeatureCount> total_mean{};
  for (const LabeledSample& s : samples) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      total_mean[f] += s.features[f];
    }
  }
  double max_total_variance = 0.0;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    total_mean[f] /= n;
  }
  std::array<double, kFeatureCount> total_variance{};
  for (const LabeledSample& s : samples) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const double d = s.features[f] - total_mean[f];
      total_variance[f] += d * d;
    }
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    max_total_variance = std::max(max_total_variance, total_variance[f] / n);
  }
  model.variance_floor_ = max_total_variance > 0.0 ? kRelativeFloor * max_total_variance
                                                   : kAbsoluteFloor;

  for (int c = 0; c < kMethodCount; ++c) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const double var = class_n[c] > 0 ? model.variances_[c][f] / class_n[c] : 0.0;
      model.variances_[c][f] = std::max(var, model.variance_floor_);
    }
  }
  return model;
}

NaiveBayesModel::NaiveBayesModel(std::array<double, kMethodCount> priors, FeatureStats means,
                                 FeatureStats variances, double variance_floor) {
  priors_ = priors;
  means_ = means;
  variances_ = variances;
  variance_floor_ = variance_floor;
  validate();
}

void NaiveBayesModel::validate() const {
  if (!(variance_floor_ > 0.0)) {
    throw ParseError("variance floor must be positive");
  }
  double prior_sum = 0.0;
  for (int c = 0; c < kMethodCount; ++c) {
    if (!(priors_[c] >= 0.0) || !std::isfinite(priors_[c])) {
      throw ParseError("class priors must be non-negative and finite");
    }
    prior_sum += priors_[c];
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      if (!std::isfinite(means_[c][f]) || !(variances_[c][f] >= variance_floor_)) {
        throw ParseError("per-class feature statistics are malformed");
      }
    }
  }
  if (std::abs(prior_sum - 1.0) > 1e-9) {
    throw ParseError("class priors must sum to 1");
  }
}

NaiveBayesModel::Prediction NaiveBayesModel::predict(const FeatureVector& features) const {
  std::array<double, kMethodCount> log_score;
  log_score.fill(-std::numeric_limits<double>::infinity());
  for (int c = 0; c < kMethodCount; ++c) {
    if (priors_[c] <= 0.0) {
      continue;
    }
    double score = std::log(priors_[c]);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const double var = variances_[c][f];
      const double d = features[f] - means_[c][f];
      score += -0.5 * std::log(kTwoPi * var) - (d * d) / (2.0 * var);
    }
    log_score[c] = score;
  }

  // log-sum-exp normalization; classes with prior 0 keep posterior 0.
  const double max_score = *std::max_element(log_score.begin(), log_score.end());
  Prediction out;
  out.posterior.fill(0.0);
  double denom = 0.0;
  for (int c = 0; c < kMethodCount; ++c) {
    if (std::isinf(log_score[c])) {
      continue;
    }
    out.posterior[c] = std::exp(log_score[c] - max_score);
    denom += out.posterior[c];
  }
  int best = 0;
  for (int c = 0; c < kMethodCount; ++c) {
    out.posterior[c] /= denom;
    // Strict comparison keeps the lowest code on ties.
    if (log_score[c] > log_score[best]) {
      best = c;
    }
  }
  out.label = static_cast<ConvMethod>(best);
  return out;
}

}  // namespace convsel
