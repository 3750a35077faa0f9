#pragma once

#include <vector>

#include <Eigen/Core>

#include "threadsec/learn/dataset.hpp"

namespace threadsec::learn {

struct TreeParams {
  int max_depth = 20;
  int min_leaf = 1;
};

/// Internal nodes route x[dim] <= threshold to `left`.
struct TreeNode {
  int dim = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;
  /// Fraction of class-1 training rows reaching this node.
  double positive_fraction = 0.0;
  int samples = 0;
  double gini = 0.0;

  bool is_leaf() const { return dim < 0; }
  double purity() const { return positive_fraction >= 0.5 ? positive_fraction : 1.0 - positive_fraction; }
};

/// CART classification tree with Gini impurity. Thresholds are midpoints
/// between consecutive distinct values; equal impurities prefer the lower
/// dimension, then the lower threshold.
class DecisionTree {
 public:
  static DecisionTree fit(const Dataset& data, const TreeParams& params = {});

  /// Class-1 fraction of the leaf reached by x.
  double score(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  int predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int depth() const;

  static DecisionTree from_nodes(std::vector<TreeNode> nodes);

 private:
  const TreeNode& leaf_for(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  std::vector<TreeNode> nodes_;
};

double gini_impurity(double positives, double total);

}  // namespace threadsec::learn
