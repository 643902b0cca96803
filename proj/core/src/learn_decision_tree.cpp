#include "convsel/learn/decision_tree.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <utility>

#include "convsel/errors.hpp"

namespace convsel {

double gini_index(std::span<const std::uint64_t> class_counts) {
  std::uint64_t total = 0;
  for (std::uint64_t c : class_counts) {
    total += c;
  }
  if (total == 0) {
    throw EmptyNode("gini index of an empty node is undefined");
  }
  double sum_sq = 0.0;
  for (std::uint64_t c : class_counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

namespace {

using Counts = std::array<std::uint64_t, kMethodCount>;

Counts count_labels(const std::vector<LabeledSample>& samples,
                    const std::vector<std::uint32_t>& members) {
  Counts counts{};
  for (std::uint32_t i : members) {
    ++counts[method_code(samples[i].label)];
  }
  return counts;
}

ConvMethod majority_label(const Counts& counts) {
  // Strict comparison keeps the lowest code on ties.
  int best = 0;
  for (int c = 1; c < kMethodCount; ++c) {
    if (counts[c] > counts[best]) {
      best = c;
    }
  }
  return static_cast<ConvMethod>(best);
}

bool is_pure(const Counts& counts) {
  int present = 0;
  for (std::uint64_t c : counts) {
    present += c > 0 ? 1 : 0;
  }
  return present <= 1;
}

double weighted_child_gini(const Counts& left, const Counts& right) {
  std::uint64_t nl = 0;
  std::uint64_t nr = 0;
  double left_sq = 0.0;
  double right_sq = 0.0;
  for (int c = 0; c < kMethodCount; ++c) {
    nl += left[c];
    nr += right[c];
  }
  for (int c = 0; c < kMethodCount; ++c) {
    const double pl = nl ? static_cast<double>(left[c]) / static_cast<double>(nl) : 0.0;
    const double pr = nr ? static_cast<double>(right[c]) / static_cast<double>(nr) : 0.0;
    left_sq += pl * pl;
    right_sq += pr * pr;
  }
  const double n = static_cast<double>(nl + nr);
  return (static_cast<double>(nl) * (1.0 - left_sq) +
          static_cast<double>(nr) * (1.0 - right_sq)) /
         n;
}

struct SplitChoice {
  bool found = false;
  int feature = 0;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
};

/// Best (feature, threshold) by weighted child Gini. Candidates are the
/// midpoints between consecutive distinct values of each feature; the
/// feature loop ascends and candidates are scanned in ascending threshold
/// order, with strictly-better acceptance, so ties settle on the lowest
/// feature index and threshold.
SplitChoice find_best_split(const std::vector<LabeledSample>& samples,
                            const std::vector<std::uint32_t>& members) {
  SplitChoice best;
  std::vector<std::pair<double, int>> column(members.size());
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      const LabeledSample& s = samples[members[i]];
      column[i] = {s.features[f], method_code(s.label)};
    }
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    Counts left{};
    Counts right = count_labels(samples, members);
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      ++left[column[i].second];
      --right[column[i].second];
      if (column[i].first == column[i + 1].first) {
        continue;
      }
      const double threshold = 0.5 * (column[i].first + column[i + 1].first);
      const double impurity = weighted_child_gini(left, right);
      if (impurity < best.impurity) {
        best = SplitChoice{true, static_cast<int>(f), threshold, impurity};
      }
    }
  }
  return best;
}

}  // namespace

DecisionTreeModel DecisionTreeModel::train(const std::vector<LabeledSample>& samples,
                                           const DecisionTreeParams& params) {
  if (samples.empty()) {
    throw EmptyDataset("cannot train a decision tree on an empty dataset");
  }

  DecisionTreeModel model;
  model.params_ = params;

  struct Pending {
    int node;
    std::vector<std::uint32_t> members;
    int depth;
  };

  std::vector<std::uint32_t> all(samples.size());
  std::iota(all.begin(), all.end(), 0u);

  // Nodes are numbered in breadth-first order of creation.
  std::deque<Pending> queue;
  model.nodes_.emplace_back();
  queue.push_back(Pending{0, std::move(all), 0});

  while (!queue.empty()) {
    Pending item = std::move(queue.front());
    queue.pop_front();

    const Counts counts = count_labels(samples, item.members);
    const bool depth_capped = params.max_depth >= 1 && item.depth >= params.max_depth;
    const bool too_small =
        item.members.size() < static_cast<std::size_t>(std::max(params.min_samples_split, 2));

    SplitChoice split;
    if (!is_pure(counts) && !depth_capped && !too_small) {
      split = find_best_split(samples, item.members);
    }

    TreeNode& node = model.nodes_[item.node];
    if (!split.found) {
      node.feature_index = -1;
      node.class_label = majority_label(counts);
      node.class_counts = counts;
      continue;
    }

    std::vector<std::uint32_t> left_members;
    std::vector<std::uint32_t> right_members;
    for (std::uint32_t i : item.members) {
      (samples[i].features[split.feature] < split.threshold ? left_members : right_members)
          .push_back(i);
    }

    node.feature_index = split.feature;
    node.threshold = split.threshold;
    node.left = static_cast<int>(model.nodes_.size());
    node.right = node.left + 1;
    node.class_label = ConvMethod::Gemm;
    node.class_counts = Counts{};
    const int left_index = node.left;
    const int right_index = node.right;
    model.nodes_.emplace_back();
    model.nodes_.emplace_back();
    queue.push_back(Pending{left_index, std::move(left_members), item.depth + 1});
    queue.push_back(Pending{right_index, std::move(right_members), item.depth + 1});
  }

  return model;
}

DecisionTreeModel::DecisionTreeModel(std::vector<TreeNode> nodes, DecisionTreeParams params) {
  nodes_ = std::move(nodes);
  params_ = params;
  validate();
}

void DecisionTreeModel::validate() const {
  if (nodes_.empty()) {
    throw ParseError("decision tree has no nodes");
  }
  const int n = static_cast<int>(nodes_.size());
  for (int i = 0; i < n; ++i) {
    const TreeNode& node = nodes_[i];
    if (node.is_leaf()) {
      continue;
    }
    if (node.feature_index >= static_cast<int>(kFeatureCount)) {
      throw ParseError("tree node references an invalid feature index");
    }
    // Breadth-first numbering puts children after their parent, which also
    // rules out cycles.
    if (node.left <= i || node.left >= n || node.right <= i || node.right >= n) {
      throw ParseError("tree node references an invalid child");
    }
  }
}

ConvMethod DecisionTreeModel::predict(const FeatureVector& features) const {
  int index = 0;
  while (!nodes_[index].is_leaf()) {
    const TreeNode& node = nodes_[index];
    index = features[node.feature_index] < node.threshold ? node.left : node.right;
  }
  return nodes_[index].class_label;
}

int DecisionTreeModel::depth() const {
  // Iterative depth over the explicit child links.
  int max_depth = 0;
  std::vector<std::pair<int, int>> stack = {{0, 0}};
  while (!stack.empty()) {
    const auto [index, d] = stack.back();
    stack.pop_back();
    max_depth = std::max(max_depth, d);
    const TreeNode& node = nodes_[index];
    if (!node.is_leaf()) {
      stack.push_back({node.left, d + 1});
      stack.push_back({node.right, d + 1});
    }
  }
  return max_depth;
}

std::size_t DecisionTreeModel::leaf_count() const {
  std::size_t leaves = 0;
  for (const TreeNode& node : nodes_) {
    leaves += node.is_leaf() ? 1 : 0;
  }
  return leaves;
}

namespace {

Counts subtree_counts(const std::vector<TreeNode>& nodes, int index) {
  const TreeNode& node = nodes[index];
  if (node.is_leaf()) {
    return node.class_counts;
  }
  Counts counts = subtree_counts(nodes, node.left);
  const Counts right = subtree_counts(nodes, node.right);
  for (int c = 0; c < kMethodCount; ++c) {
    counts[c] += right[c];
  }
  return counts;
}

std::uint64_t correct_on(const std::vector<TreeNode>& nodes,
                         const std::vector<LabeledSample>& holdout) {
  std::uint64_t correct = 0;
  for (const LabeledSample& s : holdout) {
    int index = 0;
    while (!nodes[index].is_leaf()) {
      const TreeNode& node = nodes[index];
      index = s.features[node.feature_index] < node.threshold ? node.left : node.right;
    }
    correct += nodes[index].class_label == s.label ? 1 : 0;
  }
  return correct;
}

}  // namespace

void DecisionTreeModel::prune_reduced_error(const std::vector<LabeledSample>& holdout) {
  if (holdout.empty()) {
    throw EmptyDataset("reduced-error pruning needs a non-empty holdout set");
  }

  // Deepest-first order so collapsed children make their parents eligible.
  std::vector<std::pair<int, int>> order;  // (depth, index)
  std::vector<std::pair<int, int>> stack = {{0, 0}};
  while (!stack.empty()) {
    const auto [index, d] = stack.back();
    stack.pop_back();
    order.push_back({d, index});
    if (!nodes_[index].is_leaf()) {
      stack.push_back({nodes_[index].left, d + 1});
      stack.push_back({nodes_[index].right, d + 1});
    }
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::uint64_t best_correct = correct_on(nodes_, holdout);
  for (const auto& [d, index] : order) {
    if (nodes_[index].is_leaf()) {
      continue;
    }
    TreeNode saved = nodes_[index];
    const Counts counts = subtree_counts(nodes_, index);
    TreeNode& node = nodes_[index];
    node.feature_index = -1;
    node.left = -1;
    node.right = -1;
    node.threshold = 0.0;
    node.class_label = majority_label(counts);
    node.class_counts = counts;
    const std::uint64_t collapsed_correct = correct_on(nodes_, holdout);
    if (collapsed_correct >= best_correct) {
      best_correct = collapsed_correct;
    } else {
      nodes_[index] = saved;
    }
  }

  // Renumber reachable nodes back into breadth-first order.
  std::vector<TreeNode> compact;
  compact.reserve(nodes_.size());
  std::deque<int> bfs = {0};
  std::vector<int> remap(nodes_.size(), -1);
  while (!bfs.empty()) {
    const int old_index = bfs.front();
    bfs.pop_front();
    remap[old_index] = static_cast<int>(compact.size());
    compact.push_back(nodes_[old_index]);
    if (!nodes_[old_index].is_leaf()) {
      bfs.push_back(nodes_[old_index].left);
      bfs.push_back(nodes_[old_index].right);
    }
  }
  for (TreeNode& node : compact) {
    if (!node.is_leaf()) {
      node.left = remap[node.left];
      node.right = remap[node.right];
    }
  }
  nodes_ = std::move(compact);
}

}  // namespace convsel
