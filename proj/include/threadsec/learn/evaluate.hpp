#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "threadsec/corpus.hpp"
#include "threadsec/features.hpp"
#include "threadsec/labeler.hpp"
#include "threadsec/learn/dataset.hpp"
#include "threadsec/learn/metrics.hpp"
#include "threadsec/learn/model.hpp"

namespace threadsec::learn {

struct EvalParams {
  Algorithm algorithm = Algorithm::DecisionTree;
  double train_frac = 0.75;
  bool balance = true;
  int smote_k = 5;
  std::uint64_t seed = 42;
  Hyperparams hyper;
};

struct EvalResult {
  Metrics metrics;
  Eigen::Index n_train = 0;
  Eigen::Index n_test = 0;
  Eigen::Index n_synthetic = 0;
  MinMaxScaler scaler;
  std::vector<std::string> warnings;
};

/// Seeded shuffle, train/test split, min-max statistics from the training
/// rows, optional SMOTE on the training rows only, then metrics on the
/// untouched test rows. Needs at least 8 rows and both classes in training.
EvalResult evaluate_split(const Dataset& data, const EvalParams& params);

/// Training-side preprocessing shared with `train` in the CLI: fits the scaler
/// and balances with SMOTE when requested. Returns the transformed data.
Dataset prepare_training(const Dataset& train, const EvalParams& params, MinMaxScaler& scaler,
                         Eigen::Index* n_synthetic = nullptr);

struct SweepParams {
  std::vector<int> horizons = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60};
  int window_minutes = 5;
  FeatureSet features = FeatureSet::Micro;
  EvalParams eval;
};

struct SweepPoint {
  int horizon_minutes = 0;
  Metrics metrics;
};

/// For each horizon h: censor every thread at h, rebuild DAVs with t_final = h
/// (and censored macro features if requested), evaluate with seed + h.
std::vector<SweepPoint> sweep_horizon(const Corpus& corpus, const ThreadLabels& labels, const SweepParams& params);

/// `horizon_min,precision,recall,f1`
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

}  // namespace threadsec::learn
