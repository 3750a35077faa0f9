#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include <Eigen/Core>
#include <json.hpp>

#include "threadsec/learn/adaboost.hpp"
#include "threadsec/learn/dataset.hpp"
#include "threadsec/learn/decision_tree.hpp"
#include "threadsec/learn/naive_bayes.hpp"

namespace threadsec::learn {

enum class Algorithm { NaiveBayes, DecisionTree, AdaBoost };

std::string_view to_string(Algorithm algorithm);
/// Accepts "naive_bayes"/"nb", "decision_tree"/"tree", "adaboost".
Algorithm parse_algorithm(std::string_view name);

struct Hyperparams {
  TreeParams tree;
  AdaBoostParams boost;
};

struct TrainedModel {
  std::variant<GaussianNaiveBayes, DecisionTree, AdaBoost> variant;
  Eigen::Index dimension = 0;

  Algorithm algorithm() const;
};

struct Prediction {
  bool is_target = false;
  double score = 0.0;
};

/// All three learners are deterministic; `seed` is accepted for a uniform
/// signature. Throws ValidationError on single-class data.
TrainedModel train(Algorithm algorithm, const Dataset& data, const Hyperparams& hyper = {}, std::uint64_t seed = 0);

/// Throws ValidationError on a dimension mismatch.
Prediction predict(const TrainedModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::VectorXi predict_labels(const TrainedModel& model, const Eigen::Ref<const Eigen::MatrixXd>& X);

/// Self-describing document: {"variant": ..., "dimension": ..., "params": {...}}.
nlohmann::json to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& doc);

}  // namespace threadsec::learn
