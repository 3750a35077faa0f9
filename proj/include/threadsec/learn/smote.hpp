#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

namespace threadsec::learn {

/// Indices of the k nearest other rows (Euclidean) for every row of `points`,
/// nearest first, ties by lower index.
Eigen::MatrixXi nearest_neighbors(const Eigen::Ref<const Eigen::MatrixXd>& points, int k);

struct SmoteParams {
  int k = 5;
  /// 100 emits |minority| samples, 200 twice that, and so on.
  int amount_pct = 100;
  std::uint64_t seed = 0;
  /// Overrides the random interpolation gap; used to pin outputs in tests.
  std::optional<double> fixed_gap;
};

/// Synthetic minority oversampling: each sample is x + gap * (nn - x) for a
/// minority row x and one of its k nearest minority neighbours nn, with gap
/// drawn from U(0,1). Throws ValidationError when |minority| <= k or k < 1.
Eigen::MatrixXd smote(const Eigen::Ref<const Eigen::MatrixXd>& minority, const SmoteParams& params);

/// Same as `smote` but with an explicit sample count.
Eigen::MatrixXd smote_samples(const Eigen::Ref<const Eigen::MatrixXd>& minority, int k, Eigen::Index n_samples,
                              std::uint64_t seed, std::optional<double> fixed_gap = std::nullopt);

}  // namespace threadsec::learn
