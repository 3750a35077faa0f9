#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "threadsec/corpus.hpp"
#include "threadsec/url.hpp"

namespace threadsec {

enum class Category { Ads, Malware, Phishing, Porn };

std::string_view to_string(Category category);
/// Case-insensitive; throws ValidationError on anything outside the four names.
Category parse_category(std::string_view name);

/// One (comment, URL) pair after shortener expansion. Sort key is
/// (domain, url, ts, comment_id).
struct UrlObservation {
  std::string url;
  std::string domain;
  std::string host;
  std::string page_id;
  std::string post_id;
  std::string comment_id;
  std::string account_id;
  Timestamp ts = 0;
  ExpandFlag expand_flag = ExpandFlag::None;
};

bool observation_less(const UrlObservation& a, const UrlObservation& b);

enum class MatchKind { Domain, Url };

/// Keys containing '/' are URL keys; the rest are domain keys.
struct BlacklistEntry {
  std::string key;       ///< as written in the blacklist (lowercased)
  Category category = Category::Ads;
  MatchKind kind = MatchKind::Domain;
  std::string domain;    ///< registrable domain of the key; the merge key
  std::string match_url; ///< normalized URL for URL keys, empty otherwise
};

/// Builds an entry from a raw key. Throws ValidationError on an empty key.
BlacklistEntry make_blacklist_entry(std::string_view key, Category category);
/// Merge order: (domain, kind, match key, category).
bool blacklist_less(const BlacklistEntry& a, const BlacklistEntry& b);
void sort_blacklist(std::vector<BlacklistEntry>& entries);

/// Does `entry` match `obs`? Shared by the merge join and the brute-force check.
bool blacklist_matches(const BlacklistEntry& entry, const UrlObservation& obs);

struct MaliciousLabel {
  std::string comment_id;
  Category category = Category::Ads;
  std::string matched_key;
  MatchKind kind = MatchKind::Domain;
  std::string url;  ///< the observation URL that matched; empty when read back from TSV
};

bool operator==(const MaliciousLabel& a, const MaliciousLabel& b);

/// One observation per distinct (comment, expanded URL), sorted by observation_less.
std::vector<UrlObservation> collect_observations(const Corpus& corpus, const ShortenerTable& table);

/// Two-pointer merge over observations and blacklist, both sorted. Output is one
/// label per (comment_id, category), ordered by (comment_id, category). The
/// matching pair with the lowest blacklist position, then the lowest
/// observation position, provides matched_key and url.
/// Throws ValidationError naming the index of the first adjacent inversion.
std::vector<MaliciousLabel> join_blacklist(std::span<const UrlObservation> observations,
                                           std::span<const BlacklistEntry> blacklist);

struct ThreadLabels {
  std::map<std::string, bool> is_target;  ///< post_id -> target
  std::set<std::string> attackers;
  std::size_t target_count() const;
};

/// Throws ValidationError listing labels whose comment is not in the corpus.
ThreadLabels label_threads(const Corpus& corpus, std::span<const MaliciousLabel> labels);

/// Re-derives the exact URL of each label from its comment text: the first
/// extracted+expanded URL that satisfies the recorded key. Labels whose URL
/// cannot be recovered keep an empty url.
void recover_label_urls(const Corpus& corpus, const ShortenerTable& table, std::vector<MaliciousLabel>& labels);

// File formats.
std::vector<BlacklistEntry> read_blacklist(std::istream& in);
std::vector<BlacklistEntry> read_blacklist(const std::filesystem::path& path);
void write_blacklist(std::ostream& out, std::span<const BlacklistEntry> entries);

/// `short_url<TAB>target_url` lines into `table`.
void read_shortener_map(std::istream& in, ShortenerTable& table);
/// One host per line.
void read_shortener_hosts(std::istream& in, ShortenerTable& table);
/// Loads both files; with no hosts file, the hosts of the mapped short URLs are registered.
ShortenerTable load_shortener_table(const std::filesystem::path& map_path,
                                    const std::filesystem::path& hosts_path = {});

std::vector<MaliciousLabel> read_labels(std::istream& in);
std::vector<MaliciousLabel> read_labels(const std::filesystem::path& path);
void write_labels(std::ostream& out, std::span<const MaliciousLabel> labels);

}  // namespace threadsec
