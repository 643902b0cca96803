#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "convsel/learn/dataset.hpp"

namespace convsel {

/// Node impurity 1 - sum(p_c^2): 0 for a pure node, 2/3 at the uniform
/// 3-class distribution. Throws EmptyNode when the counts sum to zero.
double gini_index(std::span<const std::uint64_t> class_counts);

struct DecisionTreeParams {
  /// Maximum split depth; a value below 1 means unlimited.
  int max_depth = 12;
  /// Nodes with fewer samples become leaves.
  int min_samples_split = 2;
};

/// One tree node. Internal nodes route `feature < threshold` to the left
/// child and everything else (including exact equality) to the right.
/// Leaves predict class_label, the count-majority label with ties broken
/// toward the lowest method code. class_counts is meaningful on leaves
/// only; internal nodes keep it zeroed.
struct TreeNode {
  int feature_index = -1;  // below 0 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  ConvMethod class_label = ConvMethod::Gemm;
  std::array<std::uint64_t, kMethodCount> class_counts{};

  bool is_leaf() const noexcept { return feature_index < 0; }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Greedy CART classifier. Split selection minimizes the count-weighted
/// child Gini over all features and over midpoints between consecutive
/// distinct sorted feature values; every tie (gain, feature, threshold)
/// breaks toward the lowest index or value, so training is deterministic
/// given the dataset order. A node splits even at zero gain as long as
/// some feature still varies, which lets an unlimited-depth tree reach
/// training accuracy 1.0 on any contradiction-free dataset.
class DecisionTreeModel {
 public:
  /// Throws EmptyDataset.
  static DecisionTreeModel train(const std::vector<LabeledSample>& samples,
                                 const DecisionTreeParams& params);

  /// Rebuilds a tree from its serialized node table.
  DecisionTreeModel(std::vector<TreeNode> nodes, DecisionTreeParams params);

  ConvMethod predict(const FeatureVector& features) const;

  /// Reduced-error pruning: bottom-up, a subtree collapses into a leaf
  /// whenever that does not lower accuracy on the holdout set. Node
  /// indices are renumbered level-order afterwards.
  void prune_reduced_error(const std::vector<LabeledSample>& holdout);

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const DecisionTreeParams& params() const noexcept { return params_; }
  int depth() const;
  std::size_t leaf_count() const;

 private:
  DecisionTreeModel() = default;
  void validate() const;

  std::vector<TreeNode> nodes_;
  DecisionTreeParams params_;
};

}  // namespace convsel
