#include "threadsec/features.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "threadsec/error.hpp"
#include "threadsec/io.hpp"

namespace threadsec {

namespace {

constexpr Timestamp kSecondsPerDay = 86400;

template <typename T>
T parse_number(const std::string& field, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ValidationError("feature CSV line " + std::to_string(line_no) + ": bad number '" + field + "'");
  }
  return value;
}

}  // namespace

Eigen::Matrix<double, MacroFeatures::kDimension, 1> MacroFeatures::as_vector() const {
  Eigen::Matrix<double, kDimension, 1> v;
  v << spanning_time_days, static_cast<double>(n_comments), static_cast<double>(n_participants),
      static_cast<double>(n_post_likes), static_cast<double>(n_comment_likes);
  return v;
}

std::string_view to_string(FeatureSet set) {
  switch (set) {
    case FeatureSet::Macro: return "macro";
    case FeatureSet::Micro: return "micro";
    case FeatureSet::Mixed: return "mixed";
  }
  return "mixed";
}

FeatureSet parse_feature_set(std::string_view name) {
  if (name == "macro") return FeatureSet::Macro;
  if (name == "micro") return FeatureSet::Micro;
  if (name == "mixed") return FeatureSet::Mixed;
  throw ValidationError("unknown feature set '" + std::string(name) + "' (macro|micro|mixed)");
}

MacroMode parse_macro_mode(std::string_view name) {
  if (name == "full" || name == "macro-full") return MacroMode::Full;
  if (name == "censored" || name == "macro-censored") return MacroMode::Censored;
  throw ValidationError("unknown macro mode '" + std::string(name) + "' (full|censored)");
}

void validate(const FeatureConfig& config) {
  if (config.window_minutes <= 0 || config.t_final_minutes <= 0) {
    throw ValidationError("window and t_final must be positive");
  }
  if (config.t_final_minutes % config.window_minutes != 0) {
    throw ValidationError("window " + std::to_string(config.window_minutes) + " does not divide t_final " +
                          std::to_string(config.t_final_minutes));
  }
}

MacroFeatures macro_features(const PostThread& thread) {
  MacroFeatures f;
  f.n_post_likes = thread.post.like_count;
  f.n_comments = static_cast<std::int64_t>(thread.comments.size());
  std::unordered_set<std::string_view> authors;
  Timestamp last = 0;
  for (const auto& c : thread.comments) {
    authors.insert(c.author_id);
    f.n_comment_likes += c.like_count;
    last = std::max(last, seconds_since_post(thread.post, c));
  }
  f.n_participants = static_cast<std::int64_t>(authors.size());
  f.spanning_time_days = static_cast<double>(last) / static_cast<double>(kSecondsPerDay);
  return f;
}

DavVector dav(const PostThread& thread, int window_minutes, int t_final_minutes) {
  validate(FeatureConfig{window_minutes, t_final_minutes, MacroMode::Full});
  DavVector v{window_minutes, t_final_minutes, Eigen::VectorXi::Zero(t_final_minutes / window_minutes)};
  const Timestamp window_s = 60LL * window_minutes;
  const Timestamp final_s = 60LL * t_final_minutes;
  for (const auto& c : thread.comments) {
    const Timestamp s = seconds_since_post(thread.post, c);
    if (s < final_s) ++v.bins(static_cast<Eigen::Index>(s / window_s));
  }
  return v;
}

PostThread censor_thread(const PostThread& thread, double horizon_minutes) {
  if (!(horizon_minutes > 0.0)) throw ValidationError("censoring horizon must be positive");
  PostThread out{thread.post, {}};
  const double limit = horizon_minutes * 60.0;
  for (const auto& c : thread.comments) {
    if (static_cast<double>(seconds_since_post(thread.post, c)) < limit) out.comments.push_back(c);
  }
  return out;
}

std::vector<FeatureVector> extract_features(const Corpus& corpus, const ThreadLabels& labels,
                                            const FeatureConfig& config) {
  validate(config);
  std::vector<FeatureVector> out;
  out.reserve(corpus.threads().size());
  for (const auto& t : corpus.threads()) {
    FeatureVector v;
    v.post_id = t.post.post_id;
    v.macro = config.macro_mode == MacroMode::Full ? macro_features(t)
                                                   : macro_features(censor_thread(t, config.t_final_minutes));
    v.dav = dav(t, config.window_minutes, config.t_final_minutes);
    auto it = labels.is_target.find(t.post.post_id);
    v.is_target = it != labels.is_target.end() && it->second;
    out.push_back(std::move(v));
  }
  return out;
}

Eigen::VectorXd feature_row(const FeatureVector& v, FeatureSet set) {
  const bool want_macro = set != FeatureSet::Micro;
  const bool want_dav = set != FeatureSet::Macro;
  if ((want_macro && !v.macro) || (want_dav && !v.dav)) {
    throw ValidationError("feature vector " + v.post_id + " lacks features for set " + std::string(to_string(set)));
  }
  const Eigen::Index n_macro = want_macro ? MacroFeatures::kDimension : 0;
  const Eigen::Index n_dav = want_dav ? v.dav->bins.size() : 0;
  Eigen::VectorXd row(n_macro + n_dav);
  if (want_macro) row.head(n_macro) = v.macro->as_vector();
  if (want_dav) row.tail(n_dav) = v.dav->bins.cast<double>();
  return row;
}

learn::Dataset to_dataset(std::span<const FeatureVector> vectors, FeatureSet set) {
  learn::Dataset data;
  if (vectors.empty()) return data;
  const auto first = feature_row(vectors.front(), set);
  data.X.resize(static_cast<Eigen::Index>(vectors.size()), first.size());
  data.y.resize(static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    auto row = feature_row(vectors[i], set);
    if (row.size() != first.size()) throw ValidationError("feature vectors have inconsistent dimensions");
    data.X.row(static_cast<Eigen::Index>(i)) = row.transpose();
    data.y(static_cast<Eigen::Index>(i)) = vectors[i].is_target ? 1 : 0;
  }
  return data;
}

std::pair<Eigen::MatrixXd, MinMaxScaler> normalize_features(std::span<const FeatureVector> vectors, FeatureSet set) {
  if (vectors.empty()) throw ValidationError("cannot normalize an empty dataset");
  auto data = to_dataset(vectors, set);
  auto scaler = MinMaxScaler::fit(data.X);
  return {scaler.transform(data.X), std::move(scaler)};
}

void write_feature_csv(std::ostream& out, std::span<const FeatureVector> vectors) {
  const Eigen::Index k = vectors.empty() || !vectors.front().dav ? 0 : vectors.front().dav->bins.size();
  out << "post_id,is_target,span_days,n_comments,n_participants,post_likes,comment_likes";
  for (Eigen::Index i = 1; i <= k; ++i) out << ",dav_" << i;
  out << '\n';
  for (const auto& v : vectors) {
    const MacroFeatures m = v.macro.value_or(MacroFeatures{});
    out << v.post_id << ',' << (v.is_target ? 1 : 0) << ',' << io::format_double(m.spanning_time_days) << ','
        << m.n_comments << ',' << m.n_participants << ',' << m.n_post_likes << ',' << m.n_comment_likes;
    for (Eigen::Index i = 0; i < k; ++i) out << ',' << (v.dav ? v.dav->bins(i) : 0);
    out << '\n';
  }
}

std::vector<FeatureVector> read_feature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  auto header = io::split(line, ',');
  if (header.size() < 7 || header[0] != "post_id" || header[1] != "is_target") {
    throw ValidationError("feature CSV has an unexpected header");
  }
  const std::size_t k = header.size() - 7;
  std::vector<FeatureVector> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = io::split(line, ',');
    if (f.size() != header.size()) {
      throw ValidationError("feature CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields");
    }
    FeatureVector v;
    v.post_id = f[0];
    v.is_target = parse_number<int>(f[1], line_no) != 0;
    MacroFeatures m;
    m.spanning_time_days = parse_number<double>(f[2], line_no);
    m.n_comments = parse_number<std::int64_t>(f[3], line_no);
    m.n_participants = parse_number<std::int64_t>(f[4], line_no);
    m.n_post_likes = parse_number<std::int64_t>(f[5], line_no);
    m.n_comment_likes = parse_number<std::int64_t>(f[6], line_no);
    v.macro = m;
    if (k > 0) {
      DavVector d;
      d.bins.resize(static_cast<Eigen::Index>(k));
      for (std::size_t i = 0; i < k; ++i) d.bins(static_cast<Eigen::Index>(i)) = parse_number<int>(f[7 + i], line_no);
      d.window_minutes = 0;  // not recorded in the CSV
      d.t_final_minutes = 0;
      v.dav = std::move(d);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<FeatureVector> read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read feature CSV " + path.string());
  return read_feature_csv(in);
}

}  // namespace threadsec
