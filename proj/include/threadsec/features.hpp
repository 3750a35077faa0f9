#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "threadsec/corpus.hpp"
#include "threadsec/labeler.hpp"
#include "threadsec/learn/dataset.hpp"

namespace threadsec {

/// Whole-thread popularity statistics.
struct MacroFeatures {
  double spanning_time_days = 0.0;
  std::int64_t n_comments = 0;
  std::int64_t n_participants = 0;
  std::int64_t n_post_likes = 0;
  std::int64_t n_comment_likes = 0;

  static constexpr int kDimension = 5;
  Eigen::Matrix<double, kDimension, 1> as_vector() const;
};

/// Per-window comment counts over the first t_final minutes of a thread.
struct DavVector {
  int window_minutes = 5;
  int t_final_minutes = 60;
  Eigen::VectorXi bins;

  /// Comments seen up to the end of bin i (0-based).
  std::int64_t cumulative(Eigen::Index i) const { return bins.head(i + 1).sum(); }
};

enum class FeatureSet { Macro, Micro, Mixed };
enum class MacroMode { Full, Censored };

std::string_view to_string(FeatureSet set);
FeatureSet parse_feature_set(std::string_view name);
MacroMode parse_macro_mode(std::string_view name);

struct FeatureConfig {
  int window_minutes = 5;
  int t_final_minutes = 60;
  /// Censored computes macro features from the first t_final minutes only.
  MacroMode macro_mode = MacroMode::Full;
};

/// Throws ValidationError unless window > 0 and window divides t_final.
void validate(const FeatureConfig& config);

struct FeatureVector {
  std::string post_id;
  std::optional<MacroFeatures> macro;
  std::optional<DavVector> dav;
  bool is_target = false;
};

MacroFeatures macro_features(const PostThread& thread);

/// Bin i counts comments with i*window <= minutes since post < (i+1)*window.
DavVector dav(const PostThread& thread, int window_minutes = 5, int t_final_minutes = 60);

/// Copy of the thread keeping comments strictly before `horizon_minutes`.
PostThread censor_thread(const PostThread& thread, double horizon_minutes);

/// One vector per thread in corpus order.
std::vector<FeatureVector> extract_features(const Corpus& corpus, const ThreadLabels& labels,
                                            const FeatureConfig& config);

/// Feature row for the requested set; throws if the vector lacks a needed part.
Eigen::VectorXd feature_row(const FeatureVector& v, FeatureSet set);
learn::Dataset to_dataset(std::span<const FeatureVector> vectors, FeatureSet set);

/// Column-wise min-max scaling to [0,1]. Constant columns map to 0; values
/// outside the fitted range are clamped.
struct MinMaxScaler {
  Eigen::VectorXd min;
  Eigen::VectorXd max;

  template <typename Derived>
  static MinMaxScaler fit(const Eigen::MatrixBase<Derived>& X) {
    MinMaxScaler s;
    s.min = X.colwise().minCoeff().transpose();
    s.max = X.colwise().maxCoeff().transpose();
    return s;
  }

  template <typename Derived>
  Eigen::MatrixXd transform(const Eigen::MatrixBase<Derived>& X) const {
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      const double range = max(j) - min(j);
      if (range <= 0.0) {
        out.col(j).setZero();
      } else {
        out.col(j) = ((X.col(j).array() - min(j)) / range).cwiseMax(0.0).cwiseMin(1.0).matrix();
      }
    }
    return out;
  }
};

/// Fits the scaler on the whole dataset and applies it. Requires a non-empty dataset.
std::pair<Eigen::MatrixXd, MinMaxScaler> normalize_features(std::span<const FeatureVector> vectors, FeatureSet set);

// Feature matrix CSV:
// post_id,is_target,span_days,n_comments,n_participants,post_likes,comment_likes,dav_1..dav_K
void write_feature_csv(std::ostream& out, std::span<const FeatureVector> vectors);
std::vector<FeatureVector> read_feature_csv(std::istream& in);
std::vector<FeatureVector> read_feature_csv(const std::filesystem::path& path);

}  // namespace threadsec
