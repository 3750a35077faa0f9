#include "threadsec/learn/naive_bayes.hpp"

#include <cmath>
#include <numbers>

#include "threadsec/error.hpp"

namespace threadsec::learn {

GaussianNaiveBayes GaussianNaiveBayes::fit(const Dataset& data) {
  if (!data.has_both_classes()) throw ValidationError("naive Bayes training needs both classes");
  const Eigen::Index d = data.dimension();
  GaussianNaiveBayes model;
  model.means.setZero(2, d);
  model.variances.setZero(2, d);
  for (int c = 0; c < 2; ++c) {
    Eigen::Index count = 0;
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(d);
    for (Eigen::Index i = 0; i < data.size(); ++i) {
      if (data.y(i) == c) {
        sum += data.X.row(i);
        ++count;
      }
    }
    const Eigen::RowVectorXd mean = sum / static_cast<double>(count);
    Eigen::RowVectorXd sq = Eigen::RowVectorXd::Zero(d);
    for (Eigen::Index i = 0; i < data.size(); ++i) {
      if (data.y(i) == c) sq += (data.X.row(i) - mean).array().square().matrix();
    }
    model.means.row(c) = mean;
    model.variances.row(c) = (sq / static_cast<double>(count)).array().max(kVarianceFloor).matrix();
    model.priors(c) = static_cast<double>(count) / static_cast<double>(data.size());
  }
  return model;
}

Eigen::Vector2d GaussianNaiveBayes::log_joint(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::Vector2d out;
  for (int c = 0; c < 2; ++c) {
    const Eigen::ArrayXd var = variances.row(c).transpose().array();
    const Eigen::ArrayXd diff = x.array() - means.row(c).transpose().array();
    out(c) = std::log(priors(c)) - 0.5 * (2.0 * std::numbers::pi * var).log().sum() -
             0.5 * (diff.square() / var).sum();
  }
  return out;
}

double GaussianNaiveBayes::score(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::Vector2d lj = log_joint(x);
  // Logistic of the log-odds, evaluated on the stable side.
  const double z = lj(1) - lj(0);
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace threadsec::learn
