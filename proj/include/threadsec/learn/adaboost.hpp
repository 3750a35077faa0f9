#pragma once

#include <vector>

#include <Eigen/Core>

#include "threadsec/learn/dataset.hpp"

namespace threadsec::learn {

/// h(x) = polarity if x[dim] > threshold, else -polarity.
struct Stump {
  int dim = 0;
  double threshold = 0.0;
  int polarity = 1;
  double alpha = 0.0;
  double weighted_error = 0.0;

  int vote(const Eigen::Ref<const Eigen::VectorXd>& x) const { return x(dim) > threshold ? polarity : -polarity; }
};

struct AdaBoostParams {
  int rounds = 50;
};

/// Discrete AdaBoost over decision stumps with exponential reweighting.
/// Training stops early when the best stump's weighted error reaches 0.5
/// (stump rejected) or 0 (stump kept with a capped weight).
struct AdaBoost {
  static constexpr double kZeroErrorFloor = 1e-10;

  std::vector<Stump> stumps;

  static AdaBoost fit(const Dataset& data, const AdaBoostParams& params = {});

  /// Weighted margin mapped to [0,1]: (sum a*h + sum a) / (2 sum a); 0.5 when empty.
  double score(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

}  // namespace threadsec::learn
