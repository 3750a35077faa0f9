#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace threadsec {

/// Finds http(s) URLs in free text, including scheme-less `host.tld/path`
/// tokens (http assumed). Results are normalized and returned in text order.
std::vector<std::string> extract_urls(std::string_view raw_text);

/// Canonical form used everywhere downstream: lowercase scheme and host,
/// fragment removed, trailing punctuation and closing quotes/brackets removed.
/// A missing scheme becomes http. Returns nullopt when there is no usable host.
std::optional<std::string> normalize_url(std::string_view url);

/// Lowercase host of a normalized URL, without userinfo or port.
std::string url_host(std::string_view url);

/// Last two host labels, or three under co.uk / com.au / com.tw / co.jp.
/// IPv4 literals are returned unchanged.
std::string registrable_domain(std::string_view host);

enum class ExpandFlag { None, Cycle, ChainTooLong };

struct Expansion {
  std::string url;
  std::size_t hops = 0;
  ExpandFlag flag = ExpandFlag::None;
};

/// Offline replacement for resolving URL shorteners.
class ShortenerTable {
 public:
  static constexpr std::size_t kMaxHops = 5;

  void add_host(std::string_view host);
  /// Both sides are normalized; the short URL's host is not registered implicitly.
  void add_mapping(std::string_view short_url, std::string_view target_url);

  bool is_shortener(std::string_view host) const;
  const std::string* target(std::string_view normalized_url) const;

  std::size_t host_count() const { return hosts_.size(); }
  std::size_t mapping_count() const { return targets_.size(); }

 private:
  std::unordered_set<std::string> hosts_;
  std::unordered_map<std::string, std::string> targets_;
};

/// Follows shortener mappings up to kMaxHops. Cycles and over-long chains stop
/// at the last resolved URL and set the flag.
Expansion expand_url(std::string_view url, const ShortenerTable& table);

}  // namespace threadsec
