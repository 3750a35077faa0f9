#pragma once

// Brute-force reference join and random instance generator for the labeler.

#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "threadsec/labeler.hpp"

namespace oracle {

// Matching rule written out independently of the library: full-URL keys
// (containing '/') match the http form of the key exactly; domain keys match
// the host itself or any subdomain of it.
inline bool matches(const threadsec::BlacklistEntry& e, const threadsec::UrlObservation& o) {
  if (e.key.find('/') != std::string::npos) return o.url == "http://" + e.key;
  if (o.host == e.key) return true;
  const std::string suffix = "." + e.key;
  return o.host.size() > suffix.size() && o.host.compare(o.host.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// O(mn) nested loop. Per (comment, category) the pair with the lowest blacklist
// index, then lowest observation index, is reported.
inline std::vector<threadsec::MaliciousLabel> nested_loop_join(std::span<const threadsec::UrlObservation> obs,
                                                               std::span<const threadsec::BlacklistEntry> bl) {
  std::map<std::pair<std::string, threadsec::Category>, std::pair<std::size_t, std::size_t>> best;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = 0; j < bl.size(); ++j) {
      if (!matches(bl[j], obs[i])) continue;
      auto key = std::make_pair(obs[i].comment_id, bl[j].category);
      auto it = best.find(key);
      if (it == best.end() || std::make_pair(j, i) < std::make_pair(it->second.second, it->second.first)) {
        best[key] = {i, j};
      }
    }
  }
  std::vector<threadsec::MaliciousLabel> out;
  for (const auto& [key, pair] : best) {
    const auto& e = bl[pair.second];
    out.push_back({key.first, key.second, e.key, e.kind, obs[pair.first].url});
  }
  return out;
}

struct Instance {
  std::vector<threadsec::UrlObservation> observations;  // sorted
  std::vector<threadsec::BlacklistEntry> blacklist;     // sorted
};

// Hosts and URLs over a small domain pool so that keys collide often.
inline Instance random_instance(std::mt19937_64& rng, std::size_t m, std::size_t n, std::size_t n_domains,
                                std::size_t n_comments, std::size_t n_paths = 6) {
  using namespace threadsec;
  std::uniform_int_distribution<std::size_t> dom(0, n_domains - 1);
  std::uniform_int_distribution<std::size_t> path(0, n_paths - 1);
  std::uniform_int_distribution<std::size_t> comment(0, n_comments - 1);
  std::uniform_int_distribution<int> shape(0, 5);
  std::uniform_int_distribution<int> cat(0, 3);
  auto domain_name = [](std::size_t d) {
    return d % 7 == 3 ? "site" + std::to_string(d) + ".co.uk" : "d" + std::to_string(d) + ".com";
  };
  auto host_for = [&](std::size_t d, int s) {
    const auto base = domain_name(d);
    if (s == 0) return "www." + base;
    if (s == 1) return "a.b." + base;
    if (s == 2) return "cdn.www." + base;
    return base;
  };

  Instance inst;
  for (std::size_t k = 0; k < m; ++k) {
    UrlObservation o;
    const int s = shape(rng);
    o.host = host_for(dom(rng), s);
    o.url = (s == 5 ? "https://" : "http://") + o.host + "/p" + std::to_string(path(rng));
    o.domain = registrable_domain(o.host);
    o.comment_id = "c" + std::to_string(comment(rng));
    o.ts = static_cast<Timestamp>(comment(rng));
    inst.observations.push_back(std::move(o));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto d = dom(rng);
    const int s = shape(rng);
    std::string key;
    if (s <= 1) {
      key = host_for(d, s == 0 ? 3 : 0);
    } else if (s <= 3) {
      key = host_for(d, s == 2 ? 0 : 3) + "/p" + std::to_string(path(rng));
    } else {
      key = host_for(d, 3);
    }
    inst.blacklist.push_back(make_blacklist_entry(key, static_cast<Category>(cat(rng))));
  }
  std::sort(inst.observations.begin(), inst.observations.end(), observation_less);
  sort_blacklist(inst.blacklist);
  return inst;
}

}  // namespace oracle
