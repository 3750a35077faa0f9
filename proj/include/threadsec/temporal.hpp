#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "threadsec/corpus.hpp"
#include "threadsec/ecdf.hpp"
#include "threadsec/labeler.hpp"

namespace threadsec {

/// A labeled malicious comment placed in time and in its thread.
struct AttackEvent {
  std::string comment_id;
  std::string post_id;
  std::string page_id;
  std::string account_id;
  Category category = Category::Ads;
  Region region = Region::Other;
  Timestamp ts = 0;
  double minutes_since_post = 0.0;
  double relative_position = 0.0;
};

/// rank / (n - 1) for a 0-based rank among n comments; 0 when n == 1.
double relative_position(std::size_t rank, std::size_t n);

/// One event per label, ordered by (comment_id, category). Throws
/// ValidationError for labels whose comment is not in the corpus.
std::vector<AttackEvent> build_attack_events(const Corpus& corpus, std::span<const MaliciousLabel> labels);

/// One event per malicious comment (the first category in event order).
std::vector<AttackEvent> unique_attacks(std::span<const AttackEvent> events);

/// Group names used by the analyses below.
std::string region_group(Region region);
std::string category_group(Category category);

/// ECDFs of relative position: "all" and "region:*" count each comment once,
/// "category:*" counts each (comment, category).
GroupedEcdf relative_positions(std::span<const AttackEvent> events);

struct SincePostAnalysis {
  GroupedEcdf ecdf;
  /// Fraction of events at most one day (1440 minutes) after their post, per group.
  std::map<std::string, double> within_day;
};

SincePostAnalysis time_since_post(std::span<const AttackEvent> events);

/// Consecutive gaps in minutes between malicious comments on the same page,
/// keyed by page_id. The first attack on a page contributes no gap.
std::map<std::string, std::vector<double>> page_gaps(std::span<const AttackEvent> events);

/// Gap ECDFs for "all", "page:<page_id>", "region:*" (page sequences) and
/// "category:*" (per page and category sequences).
GroupedEcdf inter_attack_intervals(std::span<const AttackEvent> events);

struct MonthlyHeatmap {
  std::vector<std::string> page_ids;
  std::vector<std::string> page_names;
  std::vector<std::string> months;  ///< "YYYY-MM", contiguous
  Eigen::MatrixXi counts;           ///< pages x months
};

/// "YYYY-MM" of a UTC timestamp.
std::string utc_month(Timestamp ts);

/// Unique attacks per page and UTC month over the corpus date range (extended
/// to cover every attack), zero-filled.
MonthlyHeatmap monthly_heatmap(const Corpus& corpus, std::span<const AttackEvent> events);

/// First column the page name, then one column per month.
void write_heatmap_csv(std::ostream& out, const MonthlyHeatmap& heatmap);

}  // namespace threadsec
