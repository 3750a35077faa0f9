#pragma once

#include <Eigen/Core>

#include "threadsec/learn/dataset.hpp"

namespace threadsec::learn {

/// Gaussian naive Bayes over two classes. Row 0 holds class 0, row 1 class 1.
struct GaussianNaiveBayes {
  static constexpr double kVarianceFloor = 1e-9;

  Eigen::Matrix<double, 2, Eigen::Dynamic> means;
  Eigen::Matrix<double, 2, Eigen::Dynamic> variances;
  Eigen::Vector2d priors = Eigen::Vector2d::Zero();

  static GaussianNaiveBayes fit(const Dataset& data);

  /// Joint log-likelihood log p(c) + sum_d log N(x_d; mean, var) per class.
  Eigen::Vector2d log_joint(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Posterior probability of class 1.
  double score(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

}  // namespace threadsec::learn
