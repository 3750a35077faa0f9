#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace threadsec::learn {

/// Support-weighted precision/recall/F1 over both classes. Undefined ratios
/// (no predictions or no support for a class) count as 0 and add a warning.
struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Eigen::Array2d class_precision = Eigen::Array2d::Zero();
  Eigen::Array2d class_recall = Eigen::Array2d::Zero();
  Eigen::Array2d class_f1 = Eigen::Array2d::Zero();
  /// confusion(true, predicted)
  Eigen::Matrix2i confusion = Eigen::Matrix2i::Zero();
  std::vector<std::string> warnings;

  int total() const { return confusion.sum(); }
};

Metrics compute_metrics(const Eigen::Ref<const Eigen::VectorXi>& truth, const Eigen::Ref<const Eigen::VectorXi>& predicted);

}  // namespace threadsec::learn
