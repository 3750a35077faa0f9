#include "threadsec/learn/smote.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "threadsec/error.hpp"

namespace threadsec::learn {

Eigen::MatrixXi nearest_neighbors(const Eigen::Ref<const Eigen::MatrixXd>& points, int k) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXi nn(n, k);
  std::vector<Eigen::Index> order;
  Eigen::VectorXd dist(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist = (points.rowwise() - points.row(i)).rowwise().squaredNorm();
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::erase(order, i);
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return dist(a) < dist(b) || (dist(a) == dist(b) && a < b);
    });
    for (int j = 0; j < k; ++j) nn(i, j) = static_cast<int>(order[static_cast<std::size_t>(j)]);
  }
  return nn;
}

Eigen::MatrixXd smote_samples(const Eigen::Ref<const Eigen::MatrixXd>& minority, int k, Eigen::Index n_samples,
                              std::uint64_t seed, std::optional<double> fixed_gap) {
  const Eigen::Index n = minority.rows();
  if (k < 1) throw ValidationError("SMOTE needs k >= 1");
  if (n <= k) {
    throw ValidationError("SMOTE needs more minority samples (" + std::to_string(n) + ") than k (" +
                          std::to_string(k) + "); use a smaller k");
  }
  const Eigen::MatrixXi nn = nearest_neighbors(minority, k);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gap_dist(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, k - 1);

  // Cycle through the minority rows in a shuffled order so amounts below 100%
  // draw a random subset and multiples of 100% use every row equally.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::shuffle(order.begin(), order.end(), rng);

  Eigen::MatrixXd out(n_samples, minority.cols());
  for (Eigen::Index s = 0; s < n_samples; ++s) {
    const Eigen::Index i = order[static_cast<std::size_t>(s % n)];
    const Eigen::Index j = nn(i, pick(rng));
    const double gap = fixed_gap ? *fixed_gap : gap_dist(rng);
    out.row(s) = minority.row(i) + gap * (minority.row(j) - minority.row(i));
  }
  return out;
}

Eigen::MatrixXd smote(const Eigen::Ref<const Eigen::MatrixXd>& minority, const SmoteParams& params) {
  if (params.amount_pct < 0) throw ValidationError("SMOTE amount must be non-negative");
  const Eigen::Index n_samples = minority.rows() * params.amount_pct / 100;
  return smote_samples(minority, params.k, n_samples, params.seed, params.fixed_gap);
}

}  // namespace threadsec::learn
