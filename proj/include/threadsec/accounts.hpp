#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "threadsec/corpus.hpp"
#include "threadsec/ecdf.hpp"
#include "threadsec/labeler.hpp"

namespace threadsec {

struct AccountFootprint {
  std::string account_id;
  std::int64_t n_pages = 0;
  std::int64_t n_posts = 0;
  std::int64_t n_comments = 0;
  std::int64_t n_likes = 0;
  /// False when the account has no comments in the corpus.
  bool known = true;
};

/// Per-account comment index over a corpus.
class AccountIndex {
 public:
  explicit AccountIndex(const Corpus& corpus);

  AccountFootprint footprint(const std::string& account_id) const;
  /// Comments of the account ordered by (created_ts, comment_id).
  std::vector<CommentRef> comments_of(const std::string& account_id) const;
  /// Distinct commenters per page, page_id -> sorted account ids.
  const std::map<std::string, std::vector<std::string>>& commenters_by_page() const { return by_page_; }
  std::vector<std::string> accounts() const;

 private:
  const Corpus& corpus_;
  std::map<std::string, std::vector<CommentRef>> by_account_;
  std::map<std::string, std::vector<std::string>> by_page_;
};

std::vector<AccountFootprint> footprint(const Corpus& corpus, std::span<const std::string> account_ids);

/// Seeded, page-stratified sample of commenters outside `attackers`: up to
/// `per_page` accounts from each page (pages in id order), never repeating an
/// account. Result is sorted.
std::vector<std::string> sample_normal_accounts(const Corpus& corpus, const std::set<std::string>& attackers,
                                                std::size_t per_page, std::uint64_t seed);

/// ECDFs of every footprint field, grouped "<group>:<field>".
GroupedEcdf footprint_ecdfs(std::span<const AccountFootprint> attackers, std::span<const AccountFootprint> normals);

/// Fraction of footprints with zero likes.
double zero_like_fraction(std::span<const AccountFootprint> footprints);

/// `account_id,group,n_pages,n_posts,n_comments,n_likes`
void write_footprint_csv(std::ostream& out, std::span<const AccountFootprint> attackers,
                         std::span<const AccountFootprint> normals);

struct ResponseStats {
  std::string account_id;
  std::vector<double> times;  ///< minutes since post, in comment order
  double mean = 0.0;
  double std = 0.0;           ///< population standard deviation
};

/// Mean and population std of a vector of response times.
ResponseStats response_stats_from_times(std::string account_id, std::vector<double> times);
/// Throws ValidationError when the account has no comments.
ResponseStats response_stats(const Corpus& corpus, const std::string& account_id);
ResponseStats response_stats(const Corpus& corpus, const AccountIndex& index, const std::string& account_id);

struct CampaignCluster {
  std::string url;
  std::int64_t occurrences = 0;  ///< distinct labeled comments carrying the URL
  std::set<std::string> accounts;
};

/// Groups labels by exact URL. Accounts come from the observation of the same
/// (comment, url); labels without a URL are skipped. Sorted by occurrences
/// descending, then URL.
std::vector<CampaignCluster> cluster_campaigns(std::span<const MaliciousLabel> labels,
                                               std::span<const UrlObservation> observations);

/// Same, resolving accounts through the corpus instead of observations.
std::vector<CampaignCluster> cluster_campaigns(std::span<const MaliciousLabel> labels, const Corpus& corpus);

struct ScatterPoint {
  std::string url_hash;
  std::int64_t n_accounts = 0;
  std::int64_t occurrences = 0;
  std::string flag;  ///< "", "synchronized multi-account" or "single-account repetition"
};

std::vector<ScatterPoint> campaign_scatter(std::span<const CampaignCluster> clusters, std::int64_t threshold_hi = 10);

/// `url_hash,n_accounts,occurrences,flag`
void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points);

}  // namespace threadsec
