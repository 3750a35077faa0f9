#pragma once

#include <Eigen/Core>

namespace threadsec::learn {

/// Rows are samples; labels are 0 (non-target) / 1 (target).
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXi y;

  Eigen::Index size() const { return X.rows(); }
  Eigen::Index dimension() const { return X.cols(); }
  Eigen::Index positives() const { return y.count(); }
  bool has_both_classes() const { return size() > 0 && positives() > 0 && positives() < size(); }
};

/// Copies the rows named by `rows` (any integer range).
template <typename Indices>
Dataset take_rows(const Dataset& data, const Indices& rows) {
  Dataset out;
  out.X.resize(static_cast<Eigen::Index>(rows.size()), data.X.cols());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  Eigen::Index r = 0;
  for (auto idx : rows) {
    out.X.row(r) = data.X.row(static_cast<Eigen::Index>(idx));
    out.y(r) = data.y(static_cast<Eigen::Index>(idx));
    ++r;
  }
  return out;
}

}  // namespace threadsec::learn
