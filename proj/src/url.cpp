#include "threadsec/url.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace threadsec {

namespace {

constexpr std::array<std::string_view, 4> kMultiLabelSuffixes = {"co.uk", "com.au", "com.tw", "co.jp"};

bool is_trailing_junk(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case ')': case ']': case '}': case '>': case '"': case '\'':
      return true;
    default:
      return false;
  }
}

bool is_leading_junk(char c) {
  return c == '(' || c == '[' || c == '{' || c == '<' || c == '"' || c == '\'';
}

std::string_view trim_trailing(std::string_view s) {
  while (!s.empty() && is_trailing_junk(s.back())) s.remove_suffix(1);
  return s;
}

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (lower(s[i]) != prefix[i]) return false;
  }
  return true;
}

std::size_t find_ci(std::string_view s, std::string_view needle) {
  if (s.size() < needle.size()) return std::string_view::npos;
  for (std::size_t i = 0; i + needle.size() <= s.size(); ++i) {
    if (starts_with_ci(s.substr(i), needle)) return i;
  }
  return std::string_view::npos;
}

bool valid_host_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
}

std::string_view host_of_authority(std::string_view authority) {
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
  if (auto colon = authority.find(':'); colon != std::string_view::npos) authority = authority.substr(0, colon);
  return authority;
}

// host.tld with alphabetic TLD of length >= 2 and no empty labels.
bool looks_like_bare_host(std::string_view host) {
  if (host.empty() || host.find('.') == std::string_view::npos) return false;
  std::size_t start = 0;
  std::string_view last;
  while (start <= host.size()) {
    auto dot = host.find('.', start);
    auto label = host.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (label.empty()) return false;
    if (!std::all_of(label.begin(), label.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
        })) {
      return false;
    }
    last = label;
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return last.size() >= 2 &&
         std::all_of(last.begin(), last.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

std::string_view strip_scheme(std::string_view url) {
  auto p = url.find("://");
  return p == std::string_view::npos ? url : url.substr(p + 3);
}

}  // namespace

std::optional<std::string> normalize_url(std::string_view url) {
  url = trim_trailing(url);
  std::string scheme = "http";
  if (starts_with_ci(url, "https://")) {
    scheme = "https";
    url.remove_prefix(8);
  } else if (starts_with_ci(url, "http://")) {
    url.remove_prefix(7);
  } else if (url.find("://") != std::string_view::npos) {
    return std::nullopt;
  }

  auto authority_end = url.find_first_of("/?#");
  auto authority = url.substr(0, authority_end);
  std::string_view rest = authority_end == std::string_view::npos ? std::string_view{} : url.substr(authority_end);
  if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);

  std::string host_part = to_lower(authority);
  auto host = host_of_authority(host_part);
  while (!host.empty() && host.back() == '.') host.remove_suffix(1);
  if (host.empty() || !std::all_of(host.begin(), host.end(), valid_host_char)) return std::nullopt;

  std::string out = scheme + "://" + host_part;
  out.append(rest);
  // The fragment may have hidden more trailing punctuation.
  auto trimmed = trim_trailing(out);
  if (trimmed.size() <= scheme.size() + 3) return std::nullopt;
  out.resize(trimmed.size());
  if (url_host(out).empty()) return std::nullopt;
  return out;
}

std::vector<std::string> extract_urls(std::string_view raw_text) {
  std::vector<std::string> urls;
  std::size_t i = 0;
  while (i < raw_text.size()) {
    while (i < raw_text.size() && std::isspace(static_cast<unsigned char>(raw_text[i]))) ++i;
    std::size_t j = i;
    while (j < raw_text.size() && !std::isspace(static_cast<unsigned char>(raw_text[j]))) ++j;
    auto token = raw_text.substr(i, j - i);
    i = j;
    if (token.empty()) continue;

    std::optional<std::string> url;
    auto http = find_ci(token, "http://");
    auto https = find_ci(token, "https://");
    auto pos = std::min(http, https);
    if (pos != std::string_view::npos) {
      url = normalize_url(token.substr(pos));
    } else {
      while (!token.empty() && is_leading_junk(token.front())) token.remove_prefix(1);
      token = trim_trailing(token);
      if (token.find('@') != std::string_view::npos || token.find("://") != std::string_view::npos) continue;
      auto host = token.substr(0, token.find_first_of("/?#"));
      if (looks_like_bare_host(host)) url = normalize_url(std::string("http://").append(token));
    }
    if (url) urls.push_back(std::move(*url));
  }
  return urls;
}

std::string url_host(std::string_view url) {
  auto rest = strip_scheme(url);
  auto authority = rest.substr(0, rest.find_first_of("/?#"));
  auto host = host_of_authority(authority);
  while (!host.empty() && host.back() == '.') host.remove_suffix(1);
  return to_lower(host);
}

std::string registrable_domain(std::string_view host_in) {
  std::string host = to_lower(host_in);
  while (!host.empty() && host.back() == '.') host.pop_back();
  if (std::all_of(host.begin(), host.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; })) {
    return host;
  }
  auto last = host.rfind('.');
  if (last == std::string::npos || last == 0) return host;
  auto second = host.rfind('.', last - 1);
  if (second == std::string::npos) return host;
  std::string_view tail2 = std::string_view(host).substr(second + 1);
  bool multi = std::find(kMultiLabelSuffixes.begin(), kMultiLabelSuffixes.end(), tail2) != kMultiLabelSuffixes.end();
  if (!multi) return std::string(tail2);
  if (second == 0) return host;
  auto third = host.rfind('.', second - 1);
  return third == std::string::npos ? host : host.substr(third + 1);
}

void ShortenerTable::add_host(std::string_view host) {
  auto h = to_lower(host);
  while (!h.empty() && h.back() == '.') h.pop_back();
  if (!h.empty()) hosts_.insert(std::move(h));
}

void ShortenerTable::add_mapping(std::string_view short_url, std::string_view target_url) {
  auto from = normalize_url(short_url);
  auto to = normalize_url(target_url);
  if (!from || !to) return;
  targets_.insert_or_assign(std::string(strip_scheme(*from)), std::move(*to));
}

bool ShortenerTable::is_shortener(std::string_view host) const { return hosts_.contains(std::string(host)); }

const std::string* ShortenerTable::target(std::string_view normalized_url) const {
  auto it = targets_.find(std::string(strip_scheme(normalized_url)));
  return it == targets_.end() ? nullptr : &it->second;
}

Expansion expand_url(std::string_view url, const ShortenerTable& table) {
  Expansion result{std::string(url), 0, ExpandFlag::None};
  if (auto n = normalize_url(url)) result.url = std::move(*n);
  std::unordered_set<std::string> visited{std::string(strip_scheme(result.url))};
  while (table.is_shortener(url_host(result.url))) {
    const std::string* next = table.target(result.url);
    if (next == nullptr) break;
    if (result.hops == ShortenerTable::kMaxHops) {
      result.flag = ExpandFlag::ChainTooLong;
      break;
    }
    result.url = *next;
    ++result.hops;
    if (!visited.insert(std::string(strip_scheme(result.url))).second) {
      result.flag = ExpandFlag::Cycle;
      break;
    }
  }
  return result;
}

}  // namespace threadsec
