#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "threadsec/corpus.hpp"
#include "threadsec/labeler.hpp"
#include "threadsec/url.hpp"

namespace threadsec {

enum class Strategy { EarlyStage, LateStage, SyncBurst, SingleAccountRepeat };

std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view name);

/// Weights over the four strategies, in enum order.
struct StrategyMix {
  double early = 0.35;
  double late = 0.35;
  double sync = 0.2;
  double repeat = 0.1;
};

/// All generator knobs. Defaults are calibration constants, not measurements.
struct GeneratorConfig {
  std::uint64_t seed = 42;
  int n_pages = 10;
  int n_threads = 2000;
  double target_fraction = 0.1;

  // Arrival intensity A*(t/tau)*exp(1 - t/tau) per minute.
  double tau_minutes = 12.0;
  double amplitude = 1.278;
  int lifetime_minutes = 360;
  double trickle_mean = 1.0;   ///< comments after the lifetime, spread over trickle_days
  int trickle_days = 30;

  // Popularity.
  double popularity_sigma = 0.25;
  double comment_multiplier = 3.0;
  double like_multiplier = 3.0;
  double participant_multiplier = 3.0;
  double post_like_mean = 60.0;
  double comment_like_mean = 2.0;
  int crowd_size = 30;
  int page_pool = 5000;
  int global_pool = 2000;
  double cross_page_prob = 0.1;

  // Attacks.
  StrategyMix mix;
  std::array<double, 4> category_mix{0.25, 0.25, 0.25, 0.25};
  int solo_pool = 60;
  double late_fraction = 0.65;
  double late_delay_minutes = 720.0;
  int sync_k = 3;
  double sync_delta_minutes = 8.0;
  int sync_pool = 12;
  double sync_window_minutes = 120.0;
  int repeat_r = 10;
  double repeat_window_minutes = 180.0;
  double zero_like_prob = 0.75;
  double shortened_fraction = 0.2;
  int urls_per_category = 20;

  double benign_url_prob = 0.08;
  Timestamp start_ts = 1293840000;  ///< 2011-01-01
  Timestamp end_ts = 1420070400;    ///< 2015-01-01
  /// Region per page; empty uses the built-in 3/1/2/2/2 layout.
  std::vector<Region> page_regions;

  /// Throws ValidationError describing the first infeasible setting.
  void validate() const;
  std::size_t target_count() const;

  /// "default", "early", "late", "sync" or "repeat".
  static GeneratorConfig profile(std::string_view name);
};

struct PlantedAttack {
  std::string comment_id;
  Category category = Category::Ads;
  Strategy strategy = Strategy::EarlyStage;
  std::string account_id;
};

struct GeneratedCorpus {
  Corpus corpus;
  std::vector<BlacklistEntry> blacklist;                      ///< sorted
  std::vector<std::pair<std::string, std::string>> shortener_map;
  std::vector<std::string> shortener_hosts;
  std::vector<PlantedAttack> planted;                         ///< sorted by comment_id
  std::set<std::string> target_posts;

  ShortenerTable shortener_table() const;
};

/// Deterministic in the config, seed included.
GeneratedCorpus generate(const GeneratorConfig& config);

/// Expected comments in minutes [0, u) for a unit-popularity thread.
double intensity_mass(const GeneratorConfig& config, double u_minutes);

struct GeneratedPaths {
  std::filesystem::path corpus;
  std::filesystem::path blacklist;
  std::filesystem::path shorteners;
  std::filesystem::path shortener_hosts;
  std::filesystem::path planted;
};

/// Writes corpus.jsonl, blacklist.tsv, shorteners.tsv, shortener_hosts.txt and planted.jsonl.
GeneratedPaths write_generated(const GeneratedCorpus& data, const std::filesystem::path& dir);

void write_planted(std::ostream& out, std::span<const PlantedAttack> planted);
std::vector<PlantedAttack> read_planted(std::istream& in);
std::vector<PlantedAttack> read_planted(const std::filesystem::path& path);

struct PlantedReport {
  std::size_t planted = 0;
  std::size_t labels = 0;
  std::size_t true_positives = 0;
  std::size_t unknown_comments = 0;  ///< labels whose comment is not in the corpus
  double precision = 1.0;
  double recall = 1.0;
};

/// Compares (comment_id, category) pairs of the labels with the planted truth.
PlantedReport verify_planted(const Corpus& corpus, std::span<const MaliciousLabel> labels,
                             std::span<const PlantedAttack> planted);

}  // namespace threadsec
