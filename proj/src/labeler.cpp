#include "threadsec/labeler.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>
#include <unordered_set>

#include "threadsec/error.hpp"

namespace threadsec {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

// Calls fn(line_no, fields) for each non-blank, non-comment line.
template <typename Fn>
void for_each_tsv_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    fn(line_no, split_tabs(line));
  }
}

std::ifstream open_or_throw(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw IoError(std::string("cannot read ") + what + " " + path.string());
  return in;
}

struct Candidate {
  const UrlObservation* obs;
  const BlacklistEntry* entry;
};

}  // namespace

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Ads: return "ads";
    case Category::Malware: return "malware";
    case Category::Phishing: return "phishing";
    case Category::Porn: return "porn";
  }
  return "ads";
}

Category parse_category(std::string_view name) {
  auto n = lowercase(trim(name));
  if (n == "ads") return Category::Ads;
  if (n == "malware") return Category::Malware;
  if (n == "phishing") return Category::Phishing;
  if (n == "porn") return Category::Porn;
  throw ValidationError("unknown blacklist category '" + std::string(name) + "'");
}

bool observation_less(const UrlObservation& a, const UrlObservation& b) {
  return std::tie(a.domain, a.url, a.ts, a.comment_id) < std::tie(b.domain, b.url, b.ts, b.comment_id);
}

BlacklistEntry make_blacklist_entry(std::string_view raw_key, Category category) {
  auto key = trim(raw_key);
  if (key.empty()) throw ValidationError("empty blacklist key");
  BlacklistEntry e;
  e.category = category;
  if (key.find('/') != std::string_view::npos) {
    auto url = normalize_url(key);
    if (!url) throw ValidationError("unparseable blacklist URL key '" + std::string(key) + "'");
    e.kind = MatchKind::Url;
    e.key = std::string(key);
    e.match_url = std::move(*url);
    e.domain = registrable_domain(url_host(e.match_url));
  } else {
    e.kind = MatchKind::Domain;
    e.key = lowercase(key);
    while (!e.key.empty() && e.key.back() == '.') e.key.pop_back();
    if (e.key.empty()) throw ValidationError("empty blacklist key");
    e.domain = registrable_domain(e.key);
  }
  return e;
}

bool blacklist_less(const BlacklistEntry& a, const BlacklistEntry& b) {
  const auto& ka = a.kind == MatchKind::Url ? a.match_url : a.key;
  const auto& kb = b.kind == MatchKind::Url ? b.match_url : b.key;
  return std::tie(a.domain, a.kind, ka, a.category) < std::tie(b.domain, b.kind, kb, b.category);
}

void sort_blacklist(std::vector<BlacklistEntry>& entries) {
  std::stable_sort(entries.begin(), entries.end(), blacklist_less);
}

bool blacklist_matches(const BlacklistEntry& entry, const UrlObservation& obs) {
  if (entry.kind == MatchKind::Url) return entry.match_url == obs.url;
  if (entry.domain != obs.domain) return false;
  if (entry.key == obs.domain || entry.key == obs.host) return true;
  return obs.host.size() > entry.key.size() && obs.host.ends_with(entry.key) &&
         obs.host[obs.host.size() - entry.key.size() - 1] == '.';
}

bool operator==(const MaliciousLabel& a, const MaliciousLabel& b) {
  return std::tie(a.comment_id, a.category, a.matched_key, a.kind, a.url) ==
         std::tie(b.comment_id, b.category, b.matched_key, b.kind, b.url);
}

std::vector<UrlObservation> collect_observations(const Corpus& corpus, const ShortenerTable& table) {
  std::vector<UrlObservation> out;
  for (const auto& thread : corpus.threads()) {
    for (const auto& c : thread.comments) {
      auto urls = extract_urls(c.raw_text);
      if (urls.empty()) continue;
      std::unordered_set<std::string> seen;
      for (const auto& raw : urls) {
        auto expanded = expand_url(raw, table);
        if (!seen.insert(expanded.url).second) continue;
        UrlObservation obs;
        obs.host = url_host(expanded.url);
        obs.domain = registrable_domain(obs.host);
        obs.url = std::move(expanded.url);
        obs.page_id = thread.post.page_id;
        obs.post_id = thread.post.post_id;
        obs.comment_id = c.comment_id;
        obs.account_id = c.author_id;
        obs.ts = c.created_ts;
        obs.expand_flag = expanded.flag;
        out.push_back(std::move(obs));
      }
    }
  }
  std::sort(out.begin(), out.end(), observation_less);
  return out;
}

std::vector<MaliciousLabel> join_blacklist(std::span<const UrlObservation> obs,
                                           std::span<const BlacklistEntry> blacklist) {
  for (std::size_t i = 1; i < obs.size(); ++i) {
    if (observation_less(obs[i], obs[i - 1])) {
      throw ValidationError("observations not sorted at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 1; i < blacklist.size(); ++i) {
    if (blacklist_less(blacklist[i], blacklist[i - 1])) {
      throw ValidationError("blacklist not sorted at index " + std::to_string(i));
    }
  }

  std::vector<Candidate> hits;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < obs.size() && j < blacklist.size()) {
    int cmp = obs[i].domain.compare(blacklist[j].domain);
    if (cmp < 0) {
      ++i;
      continue;
    }
    if (cmp > 0) {
      ++j;
      continue;
    }
    const auto& domain = obs[i].domain;
    std::size_t i_end = i;
    while (i_end < obs.size() && obs[i_end].domain == domain) ++i_end;
    std::size_t j_url = j;
    while (j_url < blacklist.size() && blacklist[j_url].domain == domain &&
           blacklist[j_url].kind == MatchKind::Domain) {
      ++j_url;
    }
    std::size_t j_end = j_url;
    while (j_end < blacklist.size() && blacklist[j_end].domain == domain) ++j_end;

    // Domain keys: usually one per group, each checked against every observation.
    for (std::size_t d = j; d < j_url; ++d) {
      for (std::size_t o = i; o < i_end; ++o) {
        if (blacklist_matches(blacklist[d], obs[o])) hits.push_back({&obs[o], &blacklist[d]});
      }
    }
    // URL keys: inner merge, both sides sorted by URL within the group.
    std::size_t o = i;
    std::size_t u = j_url;
    while (o < i_end && u < j_end) {
      int c = obs[o].url.compare(blacklist[u].match_url);
      if (c < 0) {
        ++o;
      } else if (c > 0) {
        ++u;
      } else {
        std::size_t u_end = u;
        while (u_end < j_end && blacklist[u_end].match_url == obs[o].url) ++u_end;
        for (; o < i_end && obs[o].url == blacklist[u].match_url; ++o) {
          for (std::size_t k = u; k < u_end; ++k) hits.push_back({&obs[o], &blacklist[k]});
        }
        u = u_end;
      }
    }
    i = i_end;
    j = j_end;
  }

  std::stable_sort(hits.begin(), hits.end(), [](const Candidate& a, const Candidate& b) {
    if (a.obs->comment_id != b.obs->comment_id) return a.obs->comment_id < b.obs->comment_id;
    if (a.entry->category != b.entry->category) return a.entry->category < b.entry->category;
    // Both point into the sorted inputs, so address order is position order.
    return std::less<>{}(a.entry, b.entry) || (a.entry == b.entry && std::less<>{}(a.obs, b.obs));
  });
  std::vector<MaliciousLabel> labels;
  for (const auto& h : hits) {
    if (!labels.empty() && labels.back().comment_id == h.obs->comment_id &&
        labels.back().category == h.entry->category) {
      continue;
    }
    labels.push_back({h.obs->comment_id, h.entry->category, h.entry->key, h.entry->kind, h.obs->url});
  }
  return labels;
}

std::size_t ThreadLabels::target_count() const {
  return static_cast<std::size_t>(std::count_if(is_target.begin(), is_target.end(), [](const auto& kv) { return kv.second; }));
}

ThreadLabels label_threads(const Corpus& corpus, std::span<const MaliciousLabel> labels) {
  ThreadLabels out;
  for (const auto& t : corpus.threads()) out.is_target.emplace(t.post.post_id, false);
  std::vector<std::string> unknown;
  for (const auto& l : labels) {
    auto ref = corpus.find_comment(l.comment_id);
    if (!ref) {
      unknown.push_back(l.comment_id);
      continue;
    }
    const auto& c = corpus.comment(*ref);
    out.is_target[c.post_id] = true;
    out.attackers.insert(c.author_id);
  }
  if (!unknown.empty()) {
    std::string msg = "labels reference unknown comments:";
    for (const auto& id : unknown) msg += " " + id;
    throw ValidationError(msg);
  }
  return out;
}

void recover_label_urls(const Corpus& corpus, const ShortenerTable& table, std::vector<MaliciousLabel>& labels) {
  for (auto& label : labels) {
    if (!label.url.empty()) continue;
    auto ref = corpus.find_comment(label.comment_id);
    if (!ref) continue;
    const auto entry = make_blacklist_entry(label.matched_key, label.category);
    for (const auto& raw : extract_urls(corpus.comment(*ref).raw_text)) {
      UrlObservation obs;
      obs.url = expand_url(raw, table).url;
      obs.host = url_host(obs.url);
      obs.domain = registrable_domain(obs.host);
      if (blacklist_matches(entry, obs)) {
        label.url = obs.url;
        label.kind = entry.kind;
        break;
      }
    }
  }
}

std::vector<BlacklistEntry> read_blacklist(std::istream& in) {
  std::vector<BlacklistEntry> entries;
  for_each_tsv_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() < 2) throw ValidationError("blacklist line " + std::to_string(line_no) + ": expected key<TAB>category");
    try {
      entries.push_back(make_blacklist_entry(f[0], parse_category(f[1])));
    } catch (const ValidationError& e) {
      throw ValidationError("blacklist line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  sort_blacklist(entries);
  return entries;
}

std::vector<BlacklistEntry> read_blacklist(const std::filesystem::path& path) {
  auto in = open_or_throw(path, "blacklist");
  return read_blacklist(in);
}

void write_blacklist(std::ostream& out, std::span<const BlacklistEntry> entries) {
  for (const auto& e : entries) out << e.key << '\t' << to_string(e.category) << '\n';
}

void read_shortener_map(std::istream& in, ShortenerTable& table) {
  for_each_tsv_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() < 2) {
      throw ValidationError("shortener map line " + std::to_string(line_no) + ": expected short_url<TAB>target_url");
    }
    table.add_mapping(trim(f[0]), trim(f[1]));
  });
}

void read_shortener_hosts(std::istream& in, ShortenerTable& table) {
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (!t.empty() && t.front() != '#') table.add_host(t);
  }
}

ShortenerTable load_shortener_table(const std::filesystem::path& map_path, const std::filesystem::path& hosts_path) {
  ShortenerTable table;
  if (map_path.empty()) return table;
  auto in = open_or_throw(map_path, "shortener map");
  if (hosts_path.empty()) {
    // Register the short URLs' own hosts.
    std::vector<std::string> shorts;
    for_each_tsv_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      if (f.size() < 2) {
        throw ValidationError("shortener map line " + std::to_string(line_no) + ": expected short_url<TAB>target_url");
      }
      table.add_mapping(trim(f[0]), trim(f[1]));
      if (auto n = normalize_url(trim(f[0]))) table.add_host(url_host(*n));
    });
  } else {
    read_shortener_map(in, table);
    auto hosts = open_or_throw(hosts_path, "shortener host list");
    read_shortener_hosts(hosts, table);
  }
  return table;
}

std::vector<MaliciousLabel> read_labels(std::istream& in) {
  std::vector<MaliciousLabel> labels;
  for_each_tsv_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() < 3) {
      throw ValidationError("labels line " + std::to_string(line_no) + ": expected comment_id<TAB>category<TAB>matched_key");
    }
    MaliciousLabel l;
    l.comment_id = std::string(f[0]);
    l.category = parse_category(f[1]);
    l.matched_key = std::string(f[2]);
    l.kind = l.matched_key.find('/') != std::string::npos ? MatchKind::Url : MatchKind::Domain;
    labels.push_back(std::move(l));
  });
  return labels;
}

std::vector<MaliciousLabel> read_labels(const std::filesystem::path& path) {
  auto in = open_or_throw(path, "labels");
  return read_labels(in);
}

void write_labels(std::ostream& out, std::span<const MaliciousLabel> labels) {
  for (const auto& l : labels) out << l.comment_id << '\t' << to_string(l.category) << '\t' << l.matched_key << '\n';
}

}  // namespace threadsec
