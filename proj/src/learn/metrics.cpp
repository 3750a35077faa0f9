#include "threadsec/learn/metrics.hpp"

#include "threadsec/error.hpp"

namespace threadsec::learn {

Metrics compute_metrics(const Eigen::Ref<const Eigen::VectorXi>& truth, const Eigen::Ref<const Eigen::VectorXi>& predicted) {
  if (truth.size() != predicted.size()) throw ValidationError("metrics: label vectors differ in length");
  if (truth.size() == 0) throw ValidationError("metrics: empty test set");
  Metrics m;
  for (Eigen::Index i = 0; i < truth.size(); ++i) ++m.confusion(truth(i) != 0 ? 1 : 0, predicted(i) != 0 ? 1 : 0);

  const double n = truth.size();
  for (int c = 0; c < 2; ++c) {
    const int tp = m.confusion(c, c);
    const int predicted_c = m.confusion.col(c).sum();
    const int support = m.confusion.row(c).sum();
    if (predicted_c == 0) {
      m.warnings.push_back("precision undefined for class " + std::to_string(c) + "; set to 0");
    } else {
      m.class_precision(c) = static_cast<double>(tp) / predicted_c;
    }
    if (support == 0) {
      m.warnings.push_back("recall undefined for class " + std::to_string(c) + " (no test rows); set to 0");
    } else {
      m.class_recall(c) = static_cast<double>(tp) / support;
    }
    const double p = m.class_precision(c);
    const double r = m.class_recall(c);
    m.class_f1(c) = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    const double weight = support / n;
    m.precision += weight * p;
    m.recall += weight * r;
    m.f1 += weight * m.class_f1(c);
  }
  return m;
}

}  // namespace threadsec::learn
