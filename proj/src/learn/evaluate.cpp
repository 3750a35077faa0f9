#include "threadsec/learn/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "threadsec/error.hpp"
#include "threadsec/io.hpp"
#include "threadsec/learn/smote.hpp"

namespace threadsec::learn {

Dataset prepare_training(const Dataset& train, const EvalParams& params, MinMaxScaler& scaler,
                         Eigen::Index* n_synthetic) {
  scaler = MinMaxScaler::fit(train.X);
  Dataset out{scaler.transform(train.X), train.y};
  if (n_synthetic) *n_synthetic = 0;
  if (!params.balance) return out;

  const Eigen::Index pos = out.positives();
  const Eigen::Index neg = out.size() - pos;
  const int minority_label = pos < neg ? 1 : 0;
  const Eigen::Index n_minor = std::min(pos, neg);
  const Eigen::Index needed = std::max(pos, neg) - n_minor;
  if (needed == 0 || n_minor < 2) return out;

  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out.y(i) == minority_label) rows.push_back(i);
  }
  const Eigen::MatrixXd minority = take_rows(out, rows).X;
  const int k = static_cast<int>(std::min<Eigen::Index>(params.smote_k, n_minor - 1));
  const Eigen::MatrixXd synthetic = smote_samples(minority, k, needed, params.seed + 1);

  Dataset balanced;
  balanced.X.resize(out.size() + needed, out.dimension());
  balanced.X << out.X, synthetic;
  balanced.y.resize(out.size() + needed);
  balanced.y << out.y, Eigen::VectorXi::Constant(needed, minority_label);
  if (n_synthetic) *n_synthetic = needed;
  return balanced;
}

EvalResult evaluate_split(const Dataset& data, const EvalParams& params) {
  if (data.size() < 8) throw ValidationError("evaluation needs at least 8 rows");
  if (!(params.train_frac > 0.0 && params.train_frac < 1.0)) throw ValidationError("train_frac must lie in (0,1)");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(data.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::mt19937_64 rng(params.seed);
  std::shuffle(order.begin(), order.end(), rng);

  auto n_train = static_cast<Eigen::Index>(std::llround(params.train_frac * static_cast<double>(data.size())));
  n_train = std::clamp<Eigen::Index>(n_train, 1, data.size() - 1);
  const auto split = order.begin() + n_train;
  const Dataset train_rows = take_rows(data, std::vector<Eigen::Index>(order.begin(), split));
  const Dataset test = take_rows(data, std::vector<Eigen::Index>(split, order.end()));
  if (!train_rows.has_both_classes()) throw ValidationError("training split contains a single class");

  EvalResult result;
  result.n_train = train_rows.size();
  result.n_test = test.size();
  const Dataset prepared = prepare_training(train_rows, params, result.scaler, &result.n_synthetic);
  const TrainedModel model = train(params.algorithm, prepared, params.hyper, params.seed);
  const Eigen::MatrixXd test_x = result.scaler.transform(test.X);
  result.metrics = compute_metrics(test.y, predict_labels(model, test_x));
  if (!test.has_both_classes()) result.warnings.push_back("test split contains a single class");
  result.warnings.insert(result.warnings.end(), result.metrics.warnings.begin(), result.metrics.warnings.end());
  return result;
}

std::vector<SweepPoint> sweep_horizon(const Corpus& corpus, const ThreadLabels& labels, const SweepParams& params) {
  std::vector<SweepPoint> out;
  for (int h : params.horizons) {
    validate(FeatureConfig{params.window_minutes, h, MacroMode::Censored});
    std::vector<FeatureVector> vectors;
    vectors.reserve(corpus.threads().size());
    for (const auto& t : corpus.threads()) {
      const PostThread censored = censor_thread(t, h);
      FeatureVector v;
      v.post_id = t.post.post_id;
      v.macro = macro_features(censored);
      v.dav = dav(censored, params.window_minutes, h);
      auto it = labels.is_target.find(t.post.post_id);
      v.is_target = it != labels.is_target.end() && it->second;
      vectors.push_back(std::move(v));
    }
    EvalParams eval = params.eval;
    eval.seed = params.eval.seed + static_cast<std::uint64_t>(h);
    out.push_back({h, evaluate_split(to_dataset(vectors, params.features), eval).metrics});
  }
  return out;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "horizon_min,precision,recall,f1\n";
  for (const auto& p : points) {
    out << p.horizon_minutes << ',' << io::format_double(p.metrics.precision) << ','
        << io::format_double(p.metrics.recall) << ',' << io::format_double(p.metrics.f1) << '\n';
  }
}

}  // namespace threadsec::learn
