#include "threadsec/learn/decision_tree.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "threadsec/error.hpp"

namespace threadsec::learn {

namespace {

struct Split {
  int dim = -1;
  double threshold = 0.0;
  double weighted_gini = std::numeric_limits<double>::infinity();
};

class Builder {
 public:
  Builder(const Dataset& data, const TreeParams& params) : data_(data), params_(params) {}

  std::vector<TreeNode> build() {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(data_.size()));
    std::iota(rows.begin(), rows.end(), Eigen::Index{0});
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  int grow(std::vector<Eigen::Index>& rows, int depth) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    const auto n = static_cast<double>(rows.size());
    double positives = 0;
    for (auto r : rows) positives += data_.y(r);

    TreeNode node;
    node.samples = static_cast<int>(rows.size());
    node.positive_fraction = positives / n;
    node.label = positives > n - positives ? 1 : 0;
    node.gini = gini_impurity(positives, n);

    const bool pure = positives == 0 || positives == n;
    if (pure || depth >= params_.max_depth || rows.size() < 2 * static_cast<std::size_t>(params_.min_leaf)) {
      nodes_[static_cast<std::size_t>(id)] = node;
      return id;
    }

    // Gini is concave, so the best split never exceeds the parent. A split
    // that only ties the parent is still taken so that impure nodes with
    // separable rows (XOR-like) keep splitting.
    const Split best = best_split(rows, positives);
    if (best.dim < 0) {
      nodes_[static_cast<std::size_t>(id)] = node;
      return id;
    }
    node.dim = best.dim;
    node.threshold = best.threshold;

    std::vector<Eigen::Index> left;
    std::vector<Eigen::Index> right;
    for (auto r : rows) (data_.X(r, best.dim) <= best.threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    nodes_[static_cast<std::size_t>(id)] = node;
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    nodes_[static_cast<std::size_t>(id)].left = l;
    nodes_[static_cast<std::size_t>(id)].right = r;
    return id;
  }

  Split best_split(const std::vector<Eigen::Index>& rows, double positives) const {
    Split best;
    const auto n = static_cast<double>(rows.size());
    const auto min_leaf = static_cast<std::size_t>(params_.min_leaf);
    std::vector<Eigen::Index> sorted(rows);
    for (Eigen::Index d = 0; d < data_.dimension(); ++d) {
      std::stable_sort(sorted.begin(), sorted.end(),
                       [&](Eigen::Index a, Eigen::Index b) { return data_.X(a, d) < data_.X(b, d); });
      double left_pos = 0;
      for (std::size_t k = 1; k < sorted.size(); ++k) {
        left_pos += data_.y(sorted[k - 1]);
        const double lo = data_.X(sorted[k - 1], d);
        const double hi = data_.X(sorted[k], d);
        if (!(lo < hi) || k < min_leaf || sorted.size() - k < min_leaf) continue;
        const auto nl = static_cast<double>(k);
        const double nr = n - nl;
        const double g = nl / n * gini_impurity(left_pos, nl) + nr / n * gini_impurity(positives - left_pos, nr);
        if (g < best.weighted_gini) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = {static_cast<int>(d), threshold, g};
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  const TreeParams& params_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

double gini_impurity(double positives, double total) {
  if (total <= 0) return 0.0;
  const double p = positives / total;
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

DecisionTree DecisionTree::fit(const Dataset& data, const TreeParams& params) {
  if (!data.has_both_classes()) throw ValidationError("decision tree training needs both classes");
  if (params.max_depth < 0 || params.min_leaf < 1) throw ValidationError("invalid decision tree parameters");
  DecisionTree tree;
  tree.nodes_ = Builder(data, params).build();
  return tree;
}

DecisionTree DecisionTree::from_nodes(std::vector<TreeNode> nodes) {
  const auto n = static_cast<int>(nodes.size());
  if (n == 0) throw ValidationError("decision tree has no nodes");
  for (const auto& node : nodes) {
    if (!node.is_leaf() && (node.left <= 0 || node.left >= n || node.right <= 0 || node.right >= n)) {
      throw ValidationError("decision tree node has an invalid child index");
    }
  }
  DecisionTree tree;
  tree.nodes_ = std::move(nodes);
  return tree;
}

const TreeNode& DecisionTree::leaf_for(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const TreeNode* node = &nodes_.front();
  while (!node->is_leaf()) {
    node = &nodes_[static_cast<std::size_t>(x(node->dim) <= node->threshold ? node->left : node->right)];
  }
  return *node;
}

double DecisionTree::score(const Eigen::Ref<const Eigen::VectorXd>& x) const { return leaf_for(x).positive_fraction; }

int DecisionTree::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const { return leaf_for(x).label; }

int DecisionTree::depth() const {
  std::function<int(int)> walk = [&](int id) -> int {
    const auto& node = nodes_[static_cast<std::size_t>(id)];
    return node.is_leaf() ? 0 : 1 + std::max(walk(node.left), walk(node.right));
  };
  return nodes_.empty() ? 0 : walk(0);
}

}  // namespace threadsec::learn
