#include "threadsec/learn/model.hpp"

#include <string>
#include <vector>

#include "threadsec/error.hpp"

namespace threadsec::learn {

namespace {

using nlohmann::json;

template <typename Derived>
json to_array(const Eigen::DenseBase<Derived>& m) {
  json arr = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    arr.push_back(std::move(row));
  }
  return arr;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> two_row_matrix(const json& arr, Eigen::Index dim) {
  if (!arr.is_array() || arr.size() != 2) throw ValidationError("model JSON: expected a 2-row matrix");
  Eigen::Matrix<double, 2, Eigen::Dynamic> m(2, dim);
  for (Eigen::Index r = 0; r < 2; ++r) {
    const auto& row = arr.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw ValidationError("model JSON: matrix row has the wrong width");
    }
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::NaiveBayes: return "naive_bayes";
    case Algorithm::DecisionTree: return "decision_tree";
    case Algorithm::AdaBoost: return "adaboost";
  }
  return "decision_tree";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "naive_bayes" || name == "nb" || name == "gaussian_naive_bayes") return Algorithm::NaiveBayes;
  if (name == "decision_tree" || name == "tree" || name == "dt") return Algorithm::DecisionTree;
  if (name == "adaboost" || name == "ada") return Algorithm::AdaBoost;
  throw ValidationError("unknown algorithm '" + std::string(name) + "' (naive_bayes|decision_tree|adaboost)");
}

Algorithm TrainedModel::algorithm() const { return static_cast<Algorithm>(variant.index()); }

TrainedModel train(Algorithm algorithm, const Dataset& data, const Hyperparams& hyper, std::uint64_t /*seed*/) {
  if (!data.has_both_classes()) throw ValidationError("training data must contain both classes");
  TrainedModel model;
  model.dimension = data.dimension();
  switch (algorithm) {
    case Algorithm::NaiveBayes: model.variant = GaussianNaiveBayes::fit(data); break;
    case Algorithm::DecisionTree: model.variant = DecisionTree::fit(data, hyper.tree); break;
    case Algorithm::AdaBoost: model.variant = AdaBoost::fit(data, hyper.boost); break;
  }
  return model;
}

Prediction predict(const TrainedModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.dimension) {
    throw ValidationError("feature dimension " + std::to_string(x.size()) + " does not match model dimension " +
                          std::to_string(model.dimension));
  }
  return std::visit(
      [&](const auto& m) -> Prediction {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, DecisionTree>) {
          return {m.predict(x) == 1, m.score(x)};
        } else {
          const double s = m.score(x);
          return {s > 0.5, s};
        }
      },
      model.variant);
}

Eigen::VectorXi predict_labels(const TrainedModel& model, const Eigen::Ref<const Eigen::MatrixXd>& X) {
  Eigen::VectorXi out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out(i) = predict(model, X.row(i).transpose()).is_target ? 1 : 0;
  return out;
}

json to_json(const TrainedModel& model) {
  json doc;
  doc["variant"] = to_string(model.algorithm());
  doc["dimension"] = model.dimension;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        json p;
        if constexpr (std::is_same_v<M, GaussianNaiveBayes>) {
          p["means"] = to_array(m.means);
          p["variances"] = to_array(m.variances);
          p["priors"] = {m.priors(0), m.priors(1)};
        } else if constexpr (std::is_same_v<M, DecisionTree>) {
          json nodes = json::array();
          for (const auto& n : m.nodes()) {
            nodes.push_back({{"dim", n.dim},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"label", n.label},
                             {"positive_fraction", n.positive_fraction},
                             {"samples", n.samples},
                             {"gini", n.gini}});
          }
          p["nodes"] = std::move(nodes);
        } else {
          json stumps = json::array();
          for (const auto& s : m.stumps) {
            stumps.push_back({{"dim", s.dim},
                              {"threshold", s.threshold},
                              {"polarity", s.polarity},
                              {"alpha", s.alpha},
                              {"weighted_error", s.weighted_error}});
          }
          p["stumps"] = std::move(stumps);
        }
        doc["params"] = std::move(p);
      },
      model.variant);
  return doc;
}

TrainedModel model_from_json(const json& doc) {
  try {
    TrainedModel model;
    model.dimension = doc.at("dimension").get<Eigen::Index>();
    const auto& p = doc.at("params");
    switch (parse_algorithm(doc.at("variant").get<std::string>())) {
      case Algorithm::NaiveBayes: {
        GaussianNaiveBayes nb;
        nb.means = two_row_matrix(p.at("means"), model.dimension);
        nb.variances = two_row_matrix(p.at("variances"), model.dimension);
        nb.priors << p.at("priors").at(0).get<double>(), p.at("priors").at(1).get<double>();
        model.variant = std::move(nb);
        break;
      }
      case Algorithm::DecisionTree: {
        std::vector<TreeNode> nodes;
        for (const auto& n : p.at("nodes")) {
          TreeNode t;
          t.dim = n.at("dim").get<int>();
          t.threshold = n.at("threshold").get<double>();
          t.left = n.at("left").get<int>();
          t.right = n.at("right").get<int>();
          t.label = n.at("label").get<int>();
          t.positive_fraction = n.at("positive_fraction").get<double>();
          t.samples = n.at("samples").get<int>();
          t.gini = n.at("gini").get<double>();
          if (t.dim >= model.dimension) throw ValidationError("model JSON: tree node dimension out of range");
          nodes.push_back(t);
        }
        model.variant = DecisionTree::from_nodes(std::move(nodes));
        break;
      }
      case Algorithm::AdaBoost: {
        AdaBoost boost;
        for (const auto& s : p.at("stumps")) {
          Stump st{s.at("dim").get<int>(), s.at("threshold").get<double>(), s.at("polarity").get<int>(),
                   s.at("alpha").get<double>(), s.at("weighted_error").get<double>()};
          if (st.dim < 0 || st.dim >= model.dimension) throw ValidationError("model JSON: stump dimension out of range");
          boost.stumps.push_back(st);
        }
        model.variant = std::move(boost);
        break;
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace threadsec::learn
