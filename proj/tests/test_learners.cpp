#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "convsel/errors.hpp"
#include "convsel/learn/dataset.hpp"
#include "convsel/learn/decision_tree.hpp"
#include "convsel/learn/metrics.hpp"
#include "convsel/learn/model_io.hpp"
#include "convsel/learn/naive_bayes.hpp"
#include "convsel/rng.hpp"

using namespace convsel;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::path(CONVSEL_SCRATCH) / "learn";
  fs::create_directories(dir);
  return dir;
}

LabeledSample sample(double f0, ConvMethod label, double f1 = 0.0, double f2 = 0.0,
                     double f3 = 0.0, double f4 = 0.0) {
  return LabeledSample{{f0, f1, f2, f3, f4}, label};
}

FeatureVector features(double f0, double f1 = 0.0, double f2 = 0.0, double f3 = 0.0,
                       double f4 = 0.0) {
  return {f0, f1, f2, f3, f4};
}

/// Random 3-class dataset with one cluster per class and no repeated
/// feature vector across classes, so an unlimited-depth tree can fit it.
std::vector<LabeledSample> clustered_samples(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<LabeledSample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int cls = static_cast<int>(i % 3);
    FeatureVector f{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      f[j] = static_cast<double>(rng.next_below(50)) + 100.0 * cls;
    }
    samples.push_back({f, static_cast<ConvMethod>(cls)});
  }
  return samples;
}

}  // namespace

TEST_CASE("gini index on hand-computed distributions") {
  const std::array<std::uint64_t, 3> pure = {5, 0, 0};
  CHECK(gini_index(pure) == 0.0);
  const std::array<std::uint64_t, 3> half = {1, 1, 0};
  CHECK(gini_index(half) == 0.5);
  const std::array<std::uint64_t, 3> uniform = {1, 1, 1};
  CHECK(gini_index(uniform) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  const std::array<std::uint64_t, 3> skewed = {2, 1, 1};
  CHECK(gini_index(skewed) == doctest::Approx(0.625).epsilon(1e-12));
  const std::array<std::uint64_t, 3> empty = {0, 0, 0};
  CHECK_THROWS_AS(gini_index(empty), EmptyNode);
}

TEST_CASE("decision tree fits a linearly separable toy exactly") {
  std::vector<LabeledSample> samples;
  for (double x : {0.0, 1.0, 2.0, 3.0, 4.0}) samples.push_back(sample(x, ConvMethod::Gemm));
  for (double x : {5.0, 6.0, 7.0, 8.0, 9.0}) samples.push_back(sample(x, ConvMethod::Direct));
  for (double x : {10.0, 11.0, 12.0}) samples.push_back(sample(x, ConvMethod::Winograd));
  DecisionTreeParams params;
  params.max_depth = 0;  // unlimited
  const DecisionTreeModel model = DecisionTreeModel::train(samples, params);
  for (const LabeledSample& s : samples) {
    CHECK(model.predict(s.features) == s.label);
  }
  CHECK(model.predict(features(-3.0)) == ConvMethod::Gemm);
  CHECK(model.predict(features(7.2)) == ConvMethod::Direct);
  CHECK(model.predict(features(250.0)) == ConvMethod::Winograd);
}

TEST_CASE("split thresholds are midpoints and equality routes right") {
  const std::vector<LabeledSample> samples = {sample(1.0, ConvMethod::Gemm),
                                              sample(3.0, ConvMethod::Direct)};
  const DecisionTreeModel model = DecisionTreeModel::train(samples, DecisionTreeParams{});
  REQUIRE(model.nodes().size() == 3);
  const TreeNode& root = model.nodes()[0];
  REQUIRE_FALSE(root.is_leaf());
  CHECK(root.feature_index == 0);
  CHECK(root.threshold == 2.0);
  CHECK(model.predict(features(1.999)) == ConvMethod::Gemm);
  // A value exactly on the threshold is not < threshold, so it goes right.
  CHECK(model.predict(features(2.0)) == ConvMethod::Direct);
}

TEST_CASE("zero-gain splits still let the tree reach purity") {
  // Either single split of this XOR layout leaves impurity unchanged; the
  // tree must take one anyway and finish the job one level down.
  const std::vector<LabeledSample> samples = {
      sample(0.0, ConvMethod::Gemm, 0.0), sample(0.0, ConvMethod::Direct, 1.0),
      sample(1.0, ConvMethod::Direct, 0.0), sample(1.0, ConvMethod::Gemm, 1.0)};
  DecisionTreeParams params;
  params.max_depth = 0;
  const DecisionTreeModel model = DecisionTreeModel::train(samples, params);
  for (const LabeledSample& s : samples) {
    CHECK(model.predict(s.features) == s.label);
  }
  CHECK(model.depth() == 2);
  CHECK(model.leaf_count() == 4);
}

TEST_CASE("unlimited depth reaches training accuracy 1 on contradiction-free data") {
  const std::vector<LabeledSample> samples = clustered_samples(240, 9001);
  DecisionTreeParams params;
  params.max_depth = 0;
  const DecisionTreeModel model = DecisionTreeModel::train(samples, params);
  const TrainReport report = evaluate_accuracy(model, samples);
  CHECK(report.training_accuracy == 1.0);
}

TEST_CASE("depth and split-size limits stop growth") {
  const std::vector<LabeledSample> samples = clustered_samples(120, 77);
  DecisionTreeParams stump_params;
  stump_params.max_depth = 1;
  const DecisionTreeModel stump = DecisionTreeModel::train(samples, stump_params);
  CHECK(stump.depth() <= 1);
  CHECK(stump.nodes().size() <= 3);

  DecisionTreeParams no_split;
  no_split.min_samples_split = static_cast<int>(samples.size()) + 1;
  const DecisionTreeModel leaf_only = DecisionTreeModel::train(samples, no_split);
  REQUIRE(leaf_only.nodes().size() == 1);
  CHECK(leaf_only.nodes()[0].is_leaf());
}

TEST_CASE("leaf majority ties break toward the lowest method code") {
  DecisionTreeParams no_split;
  no_split.min_samples_split = 100;
  const std::vector<LabeledSample> gemm_vs_direct = {
      sample(0.0, ConvMethod::Gemm), sample(1.0, ConvMethod::Gemm),
      sample(2.0, ConvMethod::Direct), sample(3.0, ConvMethod::Direct),
      sample(4.0, ConvMethod::Winograd)};
  const DecisionTreeModel a = DecisionTreeModel::train(gemm_vs_direct, no_split);
  REQUIRE(a.nodes().size() == 1);
  CHECK(a.nodes()[0].class_label == ConvMethod::Gemm);
  CHECK(a.nodes()[0].class_counts == std::array<std::uint64_t, 3>{2, 2, 1});

  const std::vector<LabeledSample> direct_vs_wino = {
      sample(0.0, ConvMethod::Direct), sample(1.0, ConvMethod::Direct),
      sample(2.0, ConvMethod::Winograd), sample(3.0, ConvMethod::Winograd),
      sample(4.0, ConvMethod::Gemm)};
  const DecisionTreeModel b = DecisionTreeModel::train(direct_vs_wino, no_split);
  CHECK(b.nodes()[0].class_label == ConvMethod::Direct);
}

TEST_CASE("training is deterministic for a fixed sample order") {
  const std::vector<LabeledSample> samples = clustered_samples(150, 123);
  const DecisionTreeModel a = DecisionTreeModel::train(samples, DecisionTreeParams{});
  const DecisionTreeModel b = DecisionTreeModel::train(samples, DecisionTreeParams{});
  CHECK(a.nodes() == b.nodes());
}

TEST_CASE("training rejects an empty dataset") {
  CHECK_THROWS_AS(DecisionTreeModel::train({}, DecisionTreeParams{}), EmptyDataset);
  CHECK_THROWS_AS(NaiveBayesModel::train({}), EmptyDataset);
}

TEST_CASE("reduced-error pruning collapses subtrees the holdout does not support") {
  // Training data has a single odd sample at x = 3; the holdout says the
  // region is all gemm, so pruning must fold the tree into one leaf.
  const std::vector<LabeledSample> train = {
      sample(0.0, ConvMethod::Gemm), sample(1.0, ConvMethod::Gemm),
      sample(2.0, ConvMethod::Gemm), sample(3.0, ConvMethod::Direct)};
  DecisionTreeParams params;
  params.max_depth = 0;
  DecisionTreeModel model = DecisionTreeModel::train(train, params);
  REQUIRE(model.nodes().size() == 3);
  REQUIRE(model.predict(features(3.0)) == ConvMethod::Direct);

  const std::vector<LabeledSample> holdout = {sample(0.0, ConvMethod::Gemm),
                                              sample(3.0, ConvMethod::Gemm)};
  model.prune_reduced_error(holdout);
  CHECK(model.nodes().size() == 1);
  CHECK(model.predict(features(3.0)) == ConvMethod::Gemm);
}

TEST_CASE("pruning never lowers holdout accuracy") {
  const std::vector<LabeledSample> all = clustered_samples(300, 5150);
  const auto [train, holdout] = split_dataset(all, 0.3, 99);
  DecisionTreeModel model = DecisionTreeModel::train(train, DecisionTreeParams{});
  const ClassifierModel before_model = model;
  const double before = evaluate_accuracy(before_model, holdout).training_accuracy;
  const std::size_t nodes_before = model.nodes().size();
  model.prune_reduced_error(holdout);
  const ClassifierModel after_model = model;
  const double after = evaluate_accuracy(after_model, holdout).training_accuracy;
  CHECK(after >= before);
  CHECK(model.nodes().size() <= nodes_before);
}

TEST_CASE("tree construction validates node tables") {
  // Child index pointing at or before the parent breaks the level-order
  // invariant.
  std::vector<TreeNode> cyclic(2);
  cyclic[0].feature_index = 0;
  cyclic[0].threshold = 1.0;
  cyclic[0].left = 1;
  cyclic[0].right = 0;
  cyclic[1] = TreeNode{};
  CHECK_THROWS_AS(DecisionTreeModel(cyclic, DecisionTreeParams{}), Error);

  std::vector<TreeNode> dangling(1);
  dangling[0].feature_index = 0;
  dangling[0].threshold = 1.0;
  dangling[0].left = 5;
  dangling[0].right = 6;
  CHECK_THROWS_AS(DecisionTreeModel(dangling, DecisionTreeParams{}), Error);
}

TEST_CASE("naive bayes computes hand-checked priors, means, and variances") {
  const std::vector<LabeledSample> samples = {
      sample(1.0, ConvMethod::Gemm), sample(3.0, ConvMethod::Gemm),
      sample(10.0, ConvMethod::Direct), sample(14.0, ConvMethod::Direct)};
  const NaiveBayesModel model = NaiveBayesModel::train(samples);
  CHECK(model.class_priors()[0] == 0.5);
  CHECK(model.class_priors()[1] == 0.5);
  CHECK(model.class_priors()[2] == 0.0);
  CHECK(model.means()[0][0] == 2.0);
  CHECK(model.variances()[0][0] == 1.0);  // population variance
  CHECK(model.means()[1][0] == 12.0);
  CHECK(model.variances()[1][0] == 4.0);
  // Whole-dataset variance of feature 0 is 27.5, so the floor is 2.75e-8;
  // the constant features sit exactly on it.
  CHECK(model.variance_floor() == doctest::Approx(2.75e-8).epsilon(1e-12));
  CHECK(model.variances()[0][1] == model.variance_floor());
  CHECK(model.variances()[1][4] == model.variance_floor());
}

TEST_CASE("naive bayes on a single-class dataset always predicts it") {
  const std::vector<LabeledSample> samples = {sample(1.0, ConvMethod::Winograd),
                                              sample(2.0, ConvMethod::Winograd)};
  const NaiveBayesModel model = NaiveBayesModel::train(samples);
  CHECK(model.class_priors()[2] == 1.0);
  const NaiveBayesModel::Prediction p = model.predict(features(100.0));
  CHECK(p.label == ConvMethod::Winograd);
  CHECK(p.posterior[2] == 1.0);
}

TEST_CASE("naive bayes separates well-spaced clusters") {
  std::vector<LabeledSample> samples;
  const double centers[3] = {-10.0, 0.0, 10.0};
  for (int c = 0; c < 3; ++c) {
    for (double offset : {-1.0, 0.0, 0.0, 1.0}) {
      samples.push_back(sample(centers[c] + offset, static_cast<ConvMethod>(c)));
    }
  }
  const NaiveBayesModel model = NaiveBayesModel::train(samples);
  CHECK(model.predict(features(-9.5)).label == ConvMethod::Gemm);
  CHECK(model.predict(features(0.4)).label == ConvMethod::Direct);
  CHECK(model.predict(features(11.0)).label == ConvMethod::Winograd);
}

TEST_CASE("naive bayes posterior ties break toward the lowest method code") {
  // Two classes mirrored around zero with equal priors and variances give
  // bitwise-identical scores at the midpoint.
  const std::vector<LabeledSample> samples = {
      sample(-2.0, ConvMethod::Gemm), sample(0.0, ConvMethod::Gemm),
      sample(0.0, ConvMethod::Direct), sample(2.0, ConvMethod::Direct)};
  const NaiveBayesModel model = NaiveBayesModel::train(samples);
  REQUIRE(model.means()[0][0] == -1.0);
  REQUIRE(model.means()[1][0] == 1.0);
  const NaiveBayesModel::Prediction p = model.predict(features(0.0));
  CHECK(p.posterior[0] == p.posterior[1]);
  CHECK(p.label == ConvMethod::Gemm);
}

TEST_CASE("naive bayes posteriors are normalized on 1000 random inputs") {
  const std::vector<LabeledSample> samples = clustered_samples(300, 333);
  const NaiveBayesModel model = NaiveBayesModel::train(samples);
  SplitMix64 rng(31337);
  for (int i = 0; i < 1000; ++i) {
    FeatureVector f{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      f[j] = rng.next_unit_double() * 400.0 - 50.0;
    }
    const NaiveBayesModel::Prediction p = model.predict(f);
    double sum = 0.0;
    double best = -1.0;
    int best_class = 0;
    for (int c = 0; c < kMethodCount; ++c) {
      REQUIRE(p.posterior[c] >= 0.0);
      REQUIRE(p.posterior[c] <= 1.0);
      sum += p.posterior[c];
      if (p.posterior[c] > best) {
        best = p.posterior[c];
        best_class = c;
      }
    }
    REQUIRE(std::abs(sum - 1.0) <= 1e-9);
    REQUIRE(p.label == static_cast<ConvMethod>(best_class));
  }
}

TEST_CASE("constant-feature datasets stay numerically sound") {
  // Every feature constant: the fallback floor kicks in and prediction
  // still returns finite, normalized posteriors.
  const std::vector<LabeledSample> samples = {sample(5.0, ConvMethod::Gemm),
                                              sample(5.0, ConvMethod::Direct)};
  const NaiveBayesModel model = NaiveBayesModel::train(samples);
  CHECK(model.variance_floor() == 1e-12);
  const NaiveBayesModel::Prediction p = model.predict(features(5.0));
  CHECK(std::isfinite(p.posterior[0]));
  CHECK(std::abs(p.posterior[0] + p.posterior[1] + p.posterior[2] - 1.0) <= 1e-9);
}

TEST_CASE("decision tree save and load round trips the node table") {
  const std::vector<LabeledSample> samples = clustered_samples(180, 2024);
  DecisionTreeParams params;
  params.max_depth = 7;
  params.min_samples_split = 4;
  const DecisionTreeModel model = DecisionTreeModel::train(samples, params);
  const fs::path path = scratch_dir() / "dt.model";
  save_model(ClassifierModel(model), path.string());
  const ClassifierModel loaded = load_model(path.string());
  const auto* dt = std::get_if<DecisionTreeModel>(&loaded);
  REQUIRE(dt != nullptr);
  CHECK(dt->nodes() == model.nodes());
  CHECK(dt->params().max_depth == 7);
  CHECK(dt->params().min_samples_split == 4);
}

TEST_CASE("naive bayes save and load round trips every parameter") {
  const std::vector<LabeledSample> samples = clustered_samples(210, 4711);
  const NaiveBayesModel model = NaiveBayesModel::train(samples);
  const fs::path path = scratch_dir() / "nb.model";
  save_model(ClassifierModel(model), path.string());
  const ClassifierModel loaded = load_model(path.string());
  const auto* nb = std::get_if<NaiveBayesModel>(&loaded);
  REQUIRE(nb != nullptr);
  CHECK(nb->variance_floor() == model.variance_floor());
  CHECK(nb->class_priors() == model.class_priors());
  CHECK(nb->means() == model.means());
  CHECK(nb->variances() == model.variances());
  SplitMix64 rng(515);
  for (int i = 0; i < 1000; ++i) {
    FeatureVector f{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      f[j] = rng.next_unit_double() * 500.0;
    }
    REQUIRE(nb->predict(f).label == model.predict(f).label);
  }
}

TEST_CASE("model loading rejects damaged files") {
  const fs::path dir = scratch_dir();
  const auto write = [&](const char* name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  };
  CHECK_THROWS_AS(load_model((dir / "absent.model").string()), IoError);
  CHECK_THROWS_AS(load_model(write("magic.model", "SOME-OTHER-FILE\nkind: dt\n")),
                  FormatVersionMismatch);
  CHECK_THROWS_AS(load_model(write("empty.model", "")), FormatVersionMismatch);
  CHECK_THROWS_AS(load_model(write("kind.model", "CONVSEL-MODEL v1\nkind: svm\n")),
                  ParseError);
  CHECK_THROWS_AS(
      load_model(write("truncated.model",
                       "CONVSEL-MODEL v1\nkind: dt\nmax_depth: 12\n"
                       "min_samples_split: 2\nnodes: 2\nnode 0 leaf 0 1 0 0\n")),
      ParseError);
  CHECK_THROWS_AS(
      load_model(write("trailing.model",
                       "CONVSEL-MODEL v1\nkind: dt\nmax_depth: 12\n"
                       "min_samples_split: 2\nnodes: 1\nnode 0 leaf 0 1 0 0\nextra\n")),
      ParseError);
}

TEST_CASE("split_dataset partitions without loss or overlap") {
  const std::vector<LabeledSample> all = clustered_samples(10, 8);
  const auto [train, holdout] = split_dataset(all, 0.2, 42);
  CHECK(train.size() == 8);
  CHECK(holdout.size() == 2);

  const auto key = [](const LabeledSample& s) {
    return std::make_pair(s.features, s.label);
  };
  std::map<std::pair<FeatureVector, ConvMethod>, int> counts;
  for (const auto& s : all) ++counts[key(s)];
  for (const auto& s : train) --counts[key(s)];
  for (const auto& s : holdout) --counts[key(s)];
  for (const auto& [k, v] : counts) {
    CHECK(v == 0);
  }

  const auto [train2, holdout2] = split_dataset(all, 0.2, 42);
  CHECK(train2.size() == train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    CHECK(train2[i].features == train[i].features);
  }

  const auto [all_train, none] = split_dataset(all, 0.0, 1);
  CHECK(all_train.size() == 10);
  CHECK(none.empty());

  CHECK_THROWS_AS(split_dataset(all, 1.0, 1), Error);
  CHECK_THROWS_AS(split_dataset(all, -0.1, 1), Error);
}

TEST_CASE("evaluate_accuracy fills the confusion matrix and per-class rates") {
  // A single-class model misclassifies everything that is not gemm.
  const std::vector<LabeledSample> train = {sample(0.0, ConvMethod::Gemm),
                                            sample(1.0, ConvMethod::Gemm)};
  const ClassifierModel model = NaiveBayesModel::train(train);
  const std::vector<LabeledSample> eval = {sample(0.5, ConvMethod::Gemm),
                                           sample(0.5, ConvMethod::Direct)};
  const TrainReport report = evaluate_accuracy(model, eval);
  CHECK(report.total == 2);
  CHECK(report.training_accuracy == 0.5);
  CHECK(report.confusion[0][0] == 1);  // actual gemm, predicted gemm
  CHECK(report.confusion[1][0] == 1);  // actual direct, predicted gemm
  CHECK(report.confusion[1][1] == 0);
  CHECK(report.precision[0] == 0.5);
  CHECK(report.recall[0] == 1.0);
  CHECK(report.precision[1] == 0.0);
  CHECK(report.recall[1] == 0.0);
  CHECK_THROWS_AS(evaluate_accuracy(model, {}), EmptyDataset);
}

TEST_CASE("to_samples carries features and labels through") {
  const LayerShape shape(128, 64, 32, 3, 16);
  const FeatureRow row{shape, "fp32", ConvMethod::Winograd};
  const std::vector<LabeledSample> samples = to_samples(std::vector<FeatureRow>{row});
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].features == FeatureVector{128, 64, 32, 3, 16});
  CHECK(samples[0].label == ConvMethod::Winograd);
}

TEST_CASE("read_labeled_samples accepts both trainer formats") {
  const fs::path csv = scratch_dir() / "train.csv";
  std::ofstream(csv, std::ios::binary)
      << "W,H,C_IN,KERNEL_SIZE,C_OUT,PRECISION,LABEL\n7,7,3,1,8,fp32,direct\n";
  const std::vector<LabeledSample> from_csv = read_labeled_samples(csv.string());
  REQUIRE(from_csv.size() == 1);
  CHECK(from_csv[0].label == ConvMethod::Direct);

  const fs::path arff = scratch_dir() / "train.arff";
  std::ofstream(arff, std::ios::binary)
      << "@relation convsel\n@attribute W numeric\n@attribute H numeric\n"
         "@attribute C_IN numeric\n@attribute KERNEL_SIZE numeric\n"
         "@attribute C_OUT numeric\n@attribute PRECISION {fp32}\n"
         "@attribute LABEL {gemm,direct,winograd}\n@data\n7,7,3,1,8,fp32,winograd\n";
  const std::vector<LabeledSample> from_arff = read_labeled_samples(arff.string());
  REQUIRE(from_arff.size() == 1);
  CHECK(from_arff[0].label == ConvMethod::Winograd);
}
