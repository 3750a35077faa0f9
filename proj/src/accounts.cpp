#include "threadsec/accounts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <tuple>
#include <unordered_set>

#include "threadsec/error.hpp"
#include "threadsec/io.hpp"

namespace threadsec {

AccountIndex::AccountIndex(const Corpus& corpus) : corpus_(corpus) {
  std::map<std::string, std::set<std::string>> page_sets;
  const auto& threads = corpus.threads();
  for (std::size_t t = 0; t < threads.size(); ++t) {
    for (std::size_t c = 0; c < threads[t].comments.size(); ++c) {
      const auto& comment = threads[t].comments[c];
      by_account_[comment.author_id].push_back({t, c});
      page_sets[threads[t].post.page_id].insert(comment.author_id);
    }
  }
  for (auto& [account, refs] : by_account_) {
    std::sort(refs.begin(), refs.end(), [&](CommentRef a, CommentRef b) {
      const auto& ca = corpus_.comment(a);
      const auto& cb = corpus_.comment(b);
      return std::tie(ca.created_ts, ca.comment_id) < std::tie(cb.created_ts, cb.comment_id);
    });
  }
  for (auto& [page, set] : page_sets) by_page_[page].assign(set.begin(), set.end());
}

AccountFootprint AccountIndex::footprint(const std::string& account_id) const {
  AccountFootprint f;
  f.account_id = account_id;
  auto it = by_account_.find(account_id);
  if (it == by_account_.end()) {
    f.known = false;
    return f;
  }
  std::unordered_set<std::string_view> pages;
  std::unordered_set<std::string_view> posts;
  for (auto ref : it->second) {
    const auto& thread = corpus_.threads()[ref.thread];
    pages.insert(thread.post.page_id);
    posts.insert(thread.post.post_id);
    f.n_likes += thread.comments[ref.index].like_count;
  }
  f.n_pages = static_cast<std::int64_t>(pages.size());
  f.n_posts = static_cast<std::int64_t>(posts.size());
  f.n_comments = static_cast<std::int64_t>(it->second.size());
  return f;
}

std::vector<CommentRef> AccountIndex::comments_of(const std::string& account_id) const {
  auto it = by_account_.find(account_id);
  return it == by_account_.end() ? std::vector<CommentRef>{} : it->second;
}

std::vector<std::string> AccountIndex::accounts() const {
  std::vector<std::string> out;
  out.reserve(by_account_.size());
  for (const auto& [account, refs] : by_account_) out.push_back(account);
  return out;
}

std::vector<AccountFootprint> footprint(const Corpus& corpus, std::span<const std::string> account_ids) {
  AccountIndex index(corpus);
  std::vector<AccountFootprint> out;
  out.reserve(account_ids.size());
  for (const auto& id : account_ids) out.push_back(index.footprint(id));
  return out;
}

std::vector<std::string> sample_normal_accounts(const Corpus& corpus, const std::set<std::string>& attackers,
                                                std::size_t per_page, std::uint64_t seed) {
  AccountIndex index(corpus);
  std::mt19937_64 rng(seed);
  std::set<std::string> chosen;
  for (const auto& [page, commenters] : index.commenters_by_page()) {
    std::vector<std::string> pool;
    for (const auto& a : commenters) {
      if (!attackers.contains(a) && !chosen.contains(a)) pool.push_back(a);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    if (pool.size() > per_page) pool.resize(per_page);
    chosen.insert(pool.begin(), pool.end());
  }
  return {chosen.begin(), chosen.end()};
}

GroupedEcdf footprint_ecdfs(std::span<const AccountFootprint> attackers, std::span<const AccountFootprint> normals) {
  std::map<std::string, std::vector<double>> values;
  auto add = [&](const std::string& group, std::span<const AccountFootprint> fs) {
    for (const auto& f : fs) {
      values[group + ":n_pages"].push_back(static_cast<double>(f.n_pages));
      values[group + ":n_posts"].push_back(static_cast<double>(f.n_posts));
      values[group + ":n_comments"].push_back(static_cast<double>(f.n_comments));
      values[group + ":n_likes"].push_back(static_cast<double>(f.n_likes));
    }
  };
  add("attacker", attackers);
  add("normal", normals);
  return ecdf_by_group(values);
}

double zero_like_fraction(std::span<const AccountFootprint> footprints) {
  if (footprints.empty()) return 0.0;
  const auto zero = std::count_if(footprints.begin(), footprints.end(), [](const auto& f) { return f.n_likes == 0; });
  return static_cast<double>(zero) / static_cast<double>(footprints.size());
}

void write_footprint_csv(std::ostream& out, std::span<const AccountFootprint> attackers,
                         std::span<const AccountFootprint> normals) {
  out << "account_id,group,n_pages,n_posts,n_comments,n_likes\n";
  auto rows = [&](const char* group, std::span<const AccountFootprint> fs) {
    for (const auto& f : fs) {
      out << io::csv_field(f.account_id) << ',' << group << ',' << f.n_pages << ',' << f.n_posts << ','
          << f.n_comments << ',' << f.n_likes << '\n';
    }
  };
  rows("attacker", attackers);
  rows("normal", normals);
}

ResponseStats response_stats_from_times(std::string account_id, std::vector<double> times) {
  if (times.empty()) throw ValidationError("account " + account_id + " has no comments");
  ResponseStats s{std::move(account_id), std::move(times), 0.0, 0.0};
  // Welford's running update.
  double m2 = 0.0;
  std::size_t n = 0;
  for (double x : s.times) {
    ++n;
    const double delta = x - s.mean;
    s.mean += delta / static_cast<double>(n);
    m2 += delta * (x - s.mean);
  }
  s.std = std::sqrt(std::max(0.0, m2 / static_cast<double>(n)));
  return s;
}

ResponseStats response_stats(const Corpus& corpus, const AccountIndex& index, const std::string& account_id) {
  std::vector<double> times;
  for (auto ref : index.comments_of(account_id)) {
    times.push_back(minutes_since_post(corpus.threads()[ref.thread].post, corpus.comment(ref)));
  }
  return response_stats_from_times(account_id, std::move(times));
}

ResponseStats response_stats(const Corpus& corpus, const std::string& account_id) {
  return response_stats(corpus, AccountIndex(corpus), account_id);
}

namespace {

template <typename AccountOf>
std::vector<CampaignCluster> cluster_by_url(std::span<const MaliciousLabel> labels, AccountOf&& account_of) {
  std::map<std::string, std::pair<std::set<std::string>, std::set<std::string>>> groups;  // url -> (comments, accounts)
  for (const auto& l : labels) {
    if (l.url.empty()) continue;
    auto& [comments, accounts] = groups[l.url];
    comments.insert(l.comment_id);
    if (auto account = account_of(l)) accounts.insert(*account);
  }
  std::vector<CampaignCluster> out;
  for (auto& [url, g] : groups) {
    out.push_back({url, static_cast<std::int64_t>(g.first.size()), std::move(g.second)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CampaignCluster& a, const CampaignCluster& b) { return a.occurrences > b.occurrences; });
  return out;
}

}  // namespace

std::vector<CampaignCluster> cluster_campaigns(std::span<const MaliciousLabel> labels,
                                               std::span<const UrlObservation> observations) {
  std::map<std::pair<std::string_view, std::string_view>, std::string_view> account;
  for (const auto& o : observations) account.emplace(std::pair{std::string_view(o.comment_id), std::string_view(o.url)}, o.account_id);
  return cluster_by_url(labels, [&](const MaliciousLabel& l) -> std::optional<std::string> {
    auto it = account.find({l.comment_id, l.url});
    if (it == account.end()) return std::nullopt;
    return std::string(it->second);
  });
}

std::vector<CampaignCluster> cluster_campaigns(std::span<const MaliciousLabel> labels, const Corpus& corpus) {
  return cluster_by_url(labels, [&](const MaliciousLabel& l) -> std::optional<std::string> {
    auto ref = corpus.find_comment(l.comment_id);
    if (!ref) return std::nullopt;
    return corpus.comment(*ref).author_id;
  });
}

std::vector<ScatterPoint> campaign_scatter(std::span<const CampaignCluster> clusters, std::int64_t threshold_hi) {
  std::vector<ScatterPoint> out;
  for (const auto& c : clusters) {
    ScatterPoint p{io::hex64(io::fnv1a64(c.url)), static_cast<std::int64_t>(c.accounts.size()), c.occurrences, ""};
    if (p.n_accounts >= threshold_hi) {
      p.flag = "synchronized multi-account";
    } else if (p.n_accounts == 1 && p.occurrences >= threshold_hi) {
      p.flag = "single-account repetition";
    }
    out.push_back(std::move(p));
  }
  return out;
}

void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points) {
  out << "url_hash,n_accounts,occurrences,flag\n";
  for (const auto& p : points) out << p.url_hash << ',' << p.n_accounts << ',' << p.occurrences << ',' << p.flag << '\n';
}

}  // namespace threadsec
