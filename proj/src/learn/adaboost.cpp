#include "threadsec/learn/adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "threadsec/error.hpp"

namespace threadsec::learn {

namespace {

struct Candidate {
  int dim = -1;
  double threshold = 0.0;
  int polarity = 1;
  double error = std::numeric_limits<double>::infinity();
};

Candidate best_stump(const Dataset& data, const std::vector<std::vector<Eigen::Index>>& sorted,
                     const Eigen::VectorXd& w, const Eigen::VectorXi& sign) {
  Candidate best;
  double negative_weight = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (sign(i) < 0) negative_weight += w(i);
  }
  const double total = w.sum();
  for (std::size_t d = 0; d < sorted.size(); ++d) {
    const auto& order = sorted[d];
    const auto dim = static_cast<Eigen::Index>(d);
    // Polarity +1 error with every row on the right (predicted +1).
    double err = negative_weight;
    for (std::size_t k = 1; k < order.size(); ++k) {
      const Eigen::Index moved = order[k - 1];
      err += sign(moved) > 0 ? w(moved) : -w(moved);
      const double lo = data.X(moved, dim);
      const double hi = data.X(order[k], dim);
      if (!(lo < hi)) continue;
      double threshold = lo + (hi - lo) / 2.0;
      if (!(threshold < hi)) threshold = lo;
      if (err < best.error) best = {static_cast<int>(d), threshold, 1, err};
      if (total - err < best.error) best = {static_cast<int>(d), threshold, -1, total - err};
    }
  }
  return best;
}

}  // namespace

AdaBoost AdaBoost::fit(const Dataset& data, const AdaBoostParams& params) {
  if (!data.has_both_classes()) throw ValidationError("AdaBoost training needs both classes");
  const Eigen::Index n = data.size();
  std::vector<std::vector<Eigen::Index>> sorted(static_cast<std::size_t>(data.dimension()));
  for (Eigen::Index d = 0; d < data.dimension(); ++d) {
    auto& order = sorted[static_cast<std::size_t>(d)];
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return data.X(a, d) < data.X(b, d); });
  }
  const Eigen::VectorXi sign = (2 * data.y.array() - 1).matrix();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

  AdaBoost model;
  for (int round = 0; round < params.rounds; ++round) {
    const Candidate c = best_stump(data, sorted, w, sign);
    if (c.dim < 0 || c.error >= 0.5) break;
    const bool perfect = c.error <= kZeroErrorFloor;
    const double eps = std::max(c.error, kZeroErrorFloor);
    Stump s{c.dim, c.threshold, c.polarity, 0.5 * std::log((1.0 - eps) / eps), std::max(c.error, 0.0)};
    model.stumps.push_back(s);
    if (perfect) break;
    for (Eigen::Index i = 0; i < n; ++i) w(i) *= std::exp(-s.alpha * sign(i) * s.vote(data.X.row(i).transpose()));
    w /= w.sum();
  }
  return model;
}

double AdaBoost::score(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double margin = 0;
  double total = 0;
  for (const auto& s : stumps) {
    margin += s.alpha * s.vote(x);
    total += s.alpha;
  }
  if (total <= 0) return 0.5;
  return (margin + total) / (2.0 * total);
}

}  // namespace threadsec::learn
