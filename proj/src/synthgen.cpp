#include "threadsec/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "threadsec/error.hpp"
#include "threadsec/io.hpp"

namespace threadsec {

namespace {

constexpr std::array<std::string_view, 4> kStrategyNames{"EarlyStage", "LateStage", "SyncBurst", "SingleAccountRepeat"};

constexpr std::array<Region, 10> kDefaultRegions{Region::MiddleEast, Region::MiddleEast, Region::MiddleEast,
                                                 Region::Asia,       Region::Europe,     Region::Europe,
                                                 Region::USNews,     Region::USNews,     Region::USPolitics,
                                                 Region::USPolitics};

// Blacklisted registrable domains per category (enum order).
const std::array<std::vector<std::string>, 4> kBadDomains{{
    {"adclick.biz", "promo-deals.com", "cheap-offers.net", "bestbuyz.biz", "clickpays.com"},
    {"flash-update.ru", "codec-download.net", "free-antivirus.info", "driverfix.cn", "apkmirrorz.com"},
    {"secure-login-verify.com", "account-check.net", "fb-security.info", "bank-update.co.uk", "id-confirm.com"},
    {"hotcams.xxx", "adultdate.com", "xxxvideos.tv", "singles-nearby.net", "livecamz.com"},
}};
// Host whose individual paths are blacklisted as URL keys.
constexpr std::string_view kFreeHost = "sites.freehost.net";

const std::vector<std::string> kBenignDomains{"bbc.co.uk",   "nytimes.com",     "youtube.com", "en.wikipedia.org",
                                              "cnn.com",     "aljazeera.com",   "reuters.com", "theguardian.com"};
const std::vector<std::string> kShortenerHosts{"bit.ly", "goo.gl", "tinyurl.com", "ow.ly"};

const std::vector<std::string> kWords{
    "the",   "news",  "today", "people", "government", "vote",   "war",    "peace", "why",    "this",
    "is",    "not",   "true",  "great",  "story",      "sad",    "agree",  "never", "again",  "what",
    "about", "money", "they",  "we",     "should",     "think",  "report", "wow",   "really", "country"};
const std::vector<std::string> kLures{"check this", "free gift", "click here", "you must see", "win now",
                                      "hot video", "verify your account", "update required"};

struct AttackPlan {
  Strategy strategy = Strategy::EarlyStage;
  Category category = Category::Ads;
  std::vector<std::string> accounts;  // one per attack comment
  std::vector<std::string> urls;      // parallel to accounts
  std::vector<bool> late_half;        // LateStage only
  std::vector<bool> shortened;
};

struct ThreadOutput {
  Post post;
  std::vector<Comment> comments;
  std::vector<PlantedAttack> planted;
  std::vector<std::pair<std::string, std::string>> short_links;
};

std::string padded(std::size_t value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

std::string short_code(char prefix, std::string_view seed_text) {
  return prefix + io::hex64(io::fnv1a64(seed_text)).substr(0, 10);
}

std::string campaign_url(Category category, int index) {
  const auto c = static_cast<std::size_t>(category);
  // Every fifth URL sits on the shared host and is blacklisted by exact URL.
  if (index % 5 == 4) {
    return "http://" + std::string(kFreeHost) + "/" + std::string(to_string(category)) + "/" + std::to_string(index);
  }
  const auto& domains = kBadDomains[c];
  const auto& domain = domains[static_cast<std::size_t>(index) % domains.size()];
  const std::string host = index % 3 == 0 ? "www." + domain : domain;
  return "http://" + host + "/p/" + std::to_string(index);
}

template <typename Rng>
std::string random_words(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> count(lo, hi);
  std::uniform_int_distribution<std::size_t> pick(0, kWords.size() - 1);
  std::string text;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    if (i) text += ' ';
    text += kWords[pick(rng)];
  }
  return text;
}

template <typename Rng>
std::int64_t poisson(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::int64_t>(mean)(rng);
}

}  // namespace

std::string_view to_string(Strategy strategy) { return kStrategyNames[static_cast<std::size_t>(strategy)]; }

Strategy parse_strategy(std::string_view name) {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
    if (kStrategyNames[i] == name) return static_cast<Strategy>(i);
  }
  throw ValidationError("unknown strategy: " + std::string(name));
}

void GeneratorConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ValidationError("generator config: " + what);
  };
  require(n_pages > 0, "n_pages must be positive");
  require(n_threads > 0, "n_threads must be positive");
  require(target_fraction > 0.0 && target_fraction < 1.0, "target_fraction must lie in (0,1)");
  require(tau_minutes > 0.0 && amplitude > 0.0, "tau and amplitude must be positive");
  require(lifetime_minutes > 0 && trickle_mean >= 0.0 && trickle_days * 1440 > lifetime_minutes,
          "lifetime/trickle settings inconsistent");
  require(popularity_sigma >= 0.0, "popularity_sigma must be non-negative");
  require(comment_multiplier > 0.0 && like_multiplier > 0.0 && participant_multiplier > 0.0,
          "multipliers must be positive");
  require(crowd_size > 0 && page_pool > 0 && global_pool > 0, "account pools must be positive");
  require(cross_page_prob >= 0.0 && cross_page_prob <= 1.0, "cross_page_prob must lie in [0,1]");
  const std::array<double, 4> weights{mix.early, mix.late, mix.sync, mix.repeat};
  require(std::all_of(weights.begin(), weights.end(), [](double w) { return w >= 0.0; }) &&
              std::abs(std::accumulate(weights.begin(), weights.end(), 0.0) - 1.0) < 1e-9,
          "strategy weights must be non-negative and sum to 1");
  require(std::all_of(category_mix.begin(), category_mix.end(), [](double w) { return w >= 0.0; }) &&
              std::abs(std::accumulate(category_mix.begin(), category_mix.end(), 0.0) - 1.0) < 1e-9,
          "category weights must be non-negative and sum to 1");
  require(solo_pool > 0, "solo_pool must be positive");
  require(late_fraction >= 0.0 && late_fraction <= 1.0, "late_fraction must lie in [0,1]");
  require(late_delay_minutes > 0.0, "late_delay_minutes must be positive");
  require(sync_k > 0 && sync_pool > 0, "sync_k and sync_pool must be positive");
  require(sync_k <= sync_pool, "SyncBurst k (" + std::to_string(sync_k) + ") exceeds account pool (" +
                                   std::to_string(sync_pool) + ")");
  require(sync_delta_minutes >= 0.0 && sync_window_minutes >= 0.0, "sync timings must be non-negative");
  require(repeat_r > 0 && repeat_window_minutes > 0.0, "repeat settings must be positive");
  require(zero_like_prob >= 0.0 && zero_like_prob <= 1.0, "zero_like_prob must lie in [0,1]");
  require(shortened_fraction >= 0.0 && shortened_fraction <= 1.0, "shortened_fraction must lie in [0,1]");
  require(benign_url_prob >= 0.0 && benign_url_prob <= 1.0, "benign_url_prob must lie in [0,1]");
  require(urls_per_category > 0, "urls_per_category must be positive");
  require(start_ts < end_ts, "start_ts must precede end_ts");
  require(page_regions.empty() || static_cast<int>(page_regions.size()) == n_pages,
          "page_regions must be empty or have n_pages entries");
}

std::size_t GeneratorConfig::target_count() const {
  return static_cast<std::size_t>(std::llround(target_fraction * n_threads));
}

GeneratorConfig GeneratorConfig::profile(std::string_view name) {
  GeneratorConfig c;
  if (name == "default") return c;
  if (name == "early") {
    c.mix = {1.0, 0.0, 0.0, 0.0};
  } else if (name == "late") {
    c.mix = {0.0, 1.0, 0.0, 0.0};
  } else if (name == "sync") {
    c.mix = {0.0, 0.0, 1.0, 0.0};
  } else if (name == "repeat") {
    c.mix = {0.0, 0.0, 0.0, 1.0};
  } else {
    throw ValidationError("unknown generator profile: " + std::string(name));
  }
  return c;
}

double intensity_mass(const GeneratorConfig& config, double u) {
  if (u <= 0.0) return 0.0;
  const double tau = config.tau_minutes;
  return config.amplitude * tau * std::exp(1.0) * (1.0 - (1.0 + u / tau) * std::exp(-u / tau));
}

ShortenerTable GeneratedCorpus::shortener_table() const {
  ShortenerTable table;
  for (const auto& h : shortener_hosts) table.add_host(h);
  for (const auto& [from, to] : shortener_map) table.add_mapping(from, to);
  return table;
}

GeneratedCorpus generate(const GeneratorConfig& config) {
  config.validate();
  std::mt19937_64 plan_rng(config.seed);

  // Pages.
  std::vector<Page> pages;
  std::map<Region, int> region_seen;
  for (int p = 0; p < config.n_pages; ++p) {
    const Region region = config.page_regions.empty() ? kDefaultRegions[static_cast<std::size_t>(p) % kDefaultRegions.size()]
                                                      : config.page_regions[static_cast<std::size_t>(p)];
    const int ordinal = ++region_seen[region];
    pages.push_back({"pg" + padded(static_cast<std::size_t>(p), 2),
                     std::string(to_string(region)) + " page " + std::to_string(ordinal), region});
  }

  // Targets: an exact count chosen by seeded shuffle.
  const auto n_threads = static_cast<std::size_t>(config.n_threads);
  std::vector<std::size_t> order(n_threads);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), plan_rng);
  std::vector<std::size_t> targets(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(config.target_count()));
  std::sort(targets.begin(), targets.end());

  // Attacker accounts and their like behaviour.
  std::vector<std::string> solo, sync;
  for (int i = 0; i < config.solo_pool; ++i) solo.push_back("a" + padded(static_cast<std::size_t>(i), 3));
  for (int i = 0; i < config.sync_pool; ++i) sync.push_back("s" + padded(static_cast<std::size_t>(i), 3));

  // Strategy and campaign per target thread.
  std::discrete_distribution<int> pick_strategy({config.mix.early, config.mix.late, config.mix.sync, config.mix.repeat});
  std::discrete_distribution<int> pick_category(config.category_mix.begin(), config.category_mix.end());
  std::uniform_int_distribution<int> pick_url(0, config.urls_per_category - 1);
  std::uniform_int_distribution<std::size_t> pick_solo(0, solo.size() - 1);
  std::bernoulli_distribution shorten(config.shortened_fraction);
  std::uniform_int_distribution<int> early_count(1, 2);

  std::map<std::size_t, AttackPlan> plans;
  std::vector<std::size_t> late_attacks;  // (thread) for quota assignment
  std::vector<std::string> repeat_accounts;
  std::size_t repeat_in_group = 0;
  std::string repeat_url;
  Category repeat_category = Category::Ads;
  for (auto t : targets) {
    AttackPlan plan;
    plan.strategy = static_cast<Strategy>(pick_strategy(plan_rng));
    plan.category = static_cast<Category>(pick_category(plan_rng));
    switch (plan.strategy) {
      case Strategy::EarlyStage: {
        const int n = early_count(plan_rng);
        for (int i = 0; i < n; ++i) {
          plan.accounts.push_back(solo[pick_solo(plan_rng)]);
          plan.urls.push_back(campaign_url(plan.category, pick_url(plan_rng)));
        }
        break;
      }
      case Strategy::LateStage:
        plan.accounts.push_back(solo[pick_solo(plan_rng)]);
        plan.urls.push_back(campaign_url(plan.category, pick_url(plan_rng)));
        late_attacks.push_back(t);
        break;
      case Strategy::SyncBurst: {
        std::vector<std::string> chosen;
        std::sample(sync.begin(), sync.end(), std::back_inserter(chosen), config.sync_k, plan_rng);
        std::shuffle(chosen.begin(), chosen.end(), plan_rng);
        const auto url = campaign_url(plan.category, pick_url(plan_rng));
        for (auto& a : chosen) {
          plan.accounts.push_back(std::move(a));
          plan.urls.push_back(url);
        }
        break;
      }
      case Strategy::SingleAccountRepeat: {
        // Consecutive repeat threads share one account and one URL, r copies per account.
        if (repeat_in_group == 0) {
          repeat_accounts.push_back("r" + padded(repeat_accounts.size(), 3));
          repeat_category = plan.category;
          repeat_url = campaign_url(repeat_category, pick_url(plan_rng));
        }
        plan.category = repeat_category;
        plan.accounts.push_back(repeat_accounts.back());
        plan.urls.push_back(repeat_url);
        repeat_in_group = (repeat_in_group + 1) % static_cast<std::size_t>(config.repeat_r);
        break;
      }
    }
    for (std::size_t i = 0; i < plan.accounts.size(); ++i) plan.shortened.push_back(shorten(plan_rng));
    plans.emplace(t, std::move(plan));
  }
  // Exact quota of late-half placements among LateStage attacks.
  std::shuffle(late_attacks.begin(), late_attacks.end(), plan_rng);
  const auto late_quota = static_cast<std::size_t>(std::llround(config.late_fraction * static_cast<double>(late_attacks.size())));
  for (std::size_t i = 0; i < late_attacks.size(); ++i) plans[late_attacks[i]].late_half.push_back(i < late_quota);

  // Zero-like accounts: an exact share of the attacker accounts actually used,
  // chosen uniformly, so every account is zero-like with probability zero_like_prob.
  std::set<std::string> used;
  for (const auto& [t, plan] : plans) used.insert(plan.accounts.begin(), plan.accounts.end());
  std::vector<std::string> used_order(used.begin(), used.end());
  std::shuffle(used_order.begin(), used_order.end(), plan_rng);
  const auto n_zero = static_cast<std::size_t>(std::llround(config.zero_like_prob * static_cast<double>(used_order.size())));
  std::map<std::string, bool> zero_likes;
  for (std::size_t i = 0; i < used_order.size(); ++i) zero_likes[used_order[i]] = i < n_zero;

  // Per-minute slot masses of the unit-popularity intensity.
  std::vector<double> slot_mass(static_cast<std::size_t>(config.lifetime_minutes));
  for (int s = 0; s < config.lifetime_minutes; ++s) {
    slot_mass[static_cast<std::size_t>(s)] = intensity_mass(config, s + 1.0) - intensity_mass(config, s);
  }

  const double sigma = config.popularity_sigma;
  std::vector<ThreadOutput> outputs(n_threads);
  for (std::size_t idx = 0; idx < n_threads; ++idx) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed & 0xffffffffu), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(idx)};
    std::mt19937_64 rng(seq);
    auto plan_it = plans.find(idx);
    const bool is_target = plan_it != plans.end();
    const auto page_index = idx % static_cast<std::size_t>(config.n_pages);
    const auto& page = pages[page_index];

    ThreadOutput& out = outputs[idx];
    const std::string post_id = "p" + padded(idx, 6);
    const double popularity = std::lognormal_distribution<double>(-0.5 * sigma * sigma, sigma)(rng);
    const double comment_scale = popularity * (is_target ? config.comment_multiplier : 1.0);
    const double like_scale = popularity * (is_target ? config.like_multiplier : 1.0);

    out.post.post_id = post_id;
    out.post.page_id = page.page_id;
    out.post.author_id = page.page_id;
    out.post.created_ts = std::uniform_int_distribution<Timestamp>(config.start_ts, config.end_ts - 1)(rng);
    out.post.like_count = poisson(rng, config.post_like_mean * like_scale);
    out.post.raw_text = random_words(rng, 5, 15);

    // Arrival times in seconds since the post.
    std::vector<Timestamp> times;
    std::uniform_int_distribution<Timestamp> within_minute(0, 59);
    for (std::size_t s = 0; s < slot_mass.size(); ++s) {
      const auto k = poisson(rng, slot_mass[s] * comment_scale);
      for (std::int64_t j = 0; j < k; ++j) times.push_back(static_cast<Timestamp>(s) * 60 + within_minute(rng));
    }
    const auto trickle = poisson(rng, config.trickle_mean * comment_scale);
    std::uniform_int_distribution<Timestamp> trickle_time(static_cast<Timestamp>(config.lifetime_minutes) * 60,
                                                          static_cast<Timestamp>(config.trickle_days) * 86400 - 1);
    for (std::int64_t j = 0; j < trickle; ++j) times.push_back(trickle_time(rng));
    std::sort(times.begin(), times.end());

    // Commenters: a thread crowd drawn from the page's pool plus a shared global pool.
    const auto crowd_n = std::max<std::int64_t>(
        2, std::llround(config.crowd_size * popularity * (is_target ? config.participant_multiplier : 1.0)));
    std::vector<std::string> crowd;
    std::bernoulli_distribution cross_page(config.cross_page_prob);
    std::uniform_int_distribution<int> page_member(0, config.page_pool - 1);
    std::uniform_int_distribution<int> global_member(0, config.global_pool - 1);
    for (std::int64_t i = 0; i < crowd_n; ++i) {
      if (cross_page(rng)) {
        crowd.push_back("g" + padded(static_cast<std::size_t>(global_member(rng)), 5));
      } else {
        crowd.push_back("u" + page.page_id.substr(2) + "_" + padded(static_cast<std::size_t>(page_member(rng)), 5));
      }
    }
    std::uniform_int_distribution<std::size_t> pick_author(0, crowd.size() - 1);
    std::exponential_distribution<double> like_spread(1.0);
    std::bernoulli_distribution has_url(config.benign_url_prob);
    std::bernoulli_distribution shorten_benign(config.shortened_fraction);
    std::uniform_int_distribution<std::size_t> benign_domain(0, kBenignDomains.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_host(0, kShortenerHosts.size() - 1);
    std::uniform_int_distribution<int> article(1, 99999);

    for (std::size_t j = 0; j < times.size(); ++j) {
      Comment c;
      c.comment_id = "c" + padded(idx, 6) + "_" + padded(j, 5);
      c.post_id = post_id;
      c.author_id = crowd[pick_author(rng)];
      c.created_ts = out.post.created_ts + times[j];
      c.like_count = poisson(rng, config.comment_like_mean * (is_target ? config.like_multiplier : 1.0) * like_spread(rng));
      c.raw_text = random_words(rng, 3, 12);
      if (has_url(rng)) {
        const std::string target_url =
            "https://www." + kBenignDomains[benign_domain(rng)] + "/news/" + std::to_string(article(rng));
        if (shorten_benign(rng)) {
          const auto short_url = "http://" + kShortenerHosts[pick_host(rng)] + "/" + short_code('b', c.comment_id);
          out.short_links.emplace_back(short_url, target_url);
          c.raw_text += " " + short_url;
        } else {
          c.raw_text += " " + target_url;
        }
      }
      out.comments.push_back(std::move(c));
    }

    if (is_target) {
      const AttackPlan& plan = plan_it->second;
      const Timestamp tau_s = static_cast<Timestamp>(std::ceil(config.tau_minutes * 60.0));
      std::uniform_int_distribution<Timestamp> early_time(0, tau_s - 1);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::exponential_distribution<double> late_delay(1.0 / (config.late_delay_minutes * 60.0));
      const double burst_start = unit(rng) * config.sync_window_minutes * 60.0;
      std::uniform_int_distribution<std::size_t> pick_lure(0, kLures.size() - 1);

      for (std::size_t a = 0; a < plan.accounts.size(); ++a) {
        Timestamp offset = 0;
        switch (plan.strategy) {
          case Strategy::EarlyStage:
            offset = std::min<Timestamp>(early_time(rng), tau_s - 1);
            break;
          case Strategy::LateStage: {
            // Insert at rank r among the n benign comments so the position is r/n.
            const std::size_t n = times.size();
            std::size_t r = 0;
            if (n > 0) {
              const std::size_t mid = n / 2;
              r = plan.late_half[a] ? std::uniform_int_distribution<std::size_t>(mid + 1, n)(rng)
                                    : std::uniform_int_distribution<std::size_t>(0, mid)(rng);
            }
            if (n == 0) {
              offset = std::uniform_int_distribution<Timestamp>(0, config.lifetime_minutes * 60 - 1)(rng);
            } else if (r == n) {
              offset = times.back() + 1 + static_cast<Timestamp>(late_delay(rng));
            } else {
              const Timestamp lo = r == 0 ? 0 : times[r - 1] + 1;
              const Timestamp hi = std::max(lo, times[r] - 1);
              offset = std::uniform_int_distribution<Timestamp>(lo, hi)(rng);
            }
            break;
          }
          case Strategy::SyncBurst:
            offset = static_cast<Timestamp>(burst_start + static_cast<double>(a) * config.sync_delta_minutes * 60.0) +
                     within_minute(rng);
            break;
          case Strategy::SingleAccountRepeat:
            offset = static_cast<Timestamp>(unit(rng) * config.repeat_window_minutes * 60.0);
            break;
        }
        Comment c;
        c.comment_id = "c" + padded(idx, 6) + "_x" + std::to_string(a);
        c.post_id = post_id;
        c.author_id = plan.accounts[a];
        c.created_ts = out.post.created_ts + offset;
        c.like_count = zero_likes.at(plan.accounts[a]) ? 0 : poisson(rng, 0.5 * config.comment_like_mean);
        std::string link = plan.urls[a];
        if (plan.shortened[a]) {
          link = "http://" + kShortenerHosts[pick_host(rng)] + "/" + short_code('m', c.comment_id);
          out.short_links.emplace_back(link, plan.urls[a]);
        }
        c.raw_text = kLures[pick_lure(rng)] + " " + link;
        out.planted.push_back({c.comment_id, plan.category, plan.strategy, c.author_id});
        out.comments.push_back(std::move(c));
      }
    }
  }

  GeneratedCorpus result;
  std::vector<Post> posts;
  std::vector<Comment> comments;
  for (auto& o : outputs) {
    if (!o.planted.empty()) result.target_posts.insert(o.post.post_id);
    posts.push_back(std::move(o.post));
    std::move(o.comments.begin(), o.comments.end(), std::back_inserter(comments));
    std::move(o.planted.begin(), o.planted.end(), std::back_inserter(result.planted));
    std::move(o.short_links.begin(), o.short_links.end(), std::back_inserter(result.shortener_map));
  }
  auto threads = build_threads(posts, comments);
  result.corpus = Corpus(std::move(pages), std::move(threads));
  std::sort(result.planted.begin(), result.planted.end(),
            [](const auto& a, const auto& b) { return a.comment_id < b.comment_id; });

  for (std::size_t c = 0; c < kBadDomains.size(); ++c) {
    const auto category = static_cast<Category>(c);
    for (const auto& d : kBadDomains[c]) result.blacklist.push_back(make_blacklist_entry(d, category));
    for (int i = 4; i < config.urls_per_category; i += 5) {
      const auto url = campaign_url(category, i);
      result.blacklist.push_back(make_blacklist_entry(url.substr(std::string_view("http://").size()), category));
    }
  }
  sort_blacklist(result.blacklist);
  result.shortener_hosts = kShortenerHosts;
  std::sort(result.shortener_hosts.begin(), result.shortener_hosts.end());
  return result;
}

void write_planted(std::ostream& out, std::span<const PlantedAttack> planted) {
  for (const auto& p : planted) {
    nlohmann::ordered_json j;
    j["comment_id"] = p.comment_id;
    j["category"] = std::string(to_string(p.category));
    j["strategy"] = std::string(to_string(p.strategy));
    j["account_id"] = p.account_id;
    out << j.dump() << '\n';
  }
}

std::vector<PlantedAttack> read_planted(std::istream& in) {
  std::vector<PlantedAttack> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("comment_id").get<std::string>(), parse_category(j.at("category").get<std::string>()),
                     parse_strategy(j.at("strategy").get<std::string>()), j.at("account_id").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("planted line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<PlantedAttack> read_planted(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return read_planted(in);
}

GeneratedPaths write_generated(const GeneratedCorpus& data, const std::filesystem::path& dir) {
  GeneratedPaths paths{dir / "corpus.jsonl", dir / "blacklist.tsv", dir / "shorteners.tsv",
                       dir / "shortener_hosts.txt", dir / "planted.jsonl"};
  {
    auto out = io::open_output(paths.corpus);
    write_jsonl(out, data.corpus);
  }
  {
    auto out = io::open_output(paths.blacklist);
    write_blacklist(out, data.blacklist);
  }
  {
    auto out = io::open_output(paths.shorteners);
    for (const auto& [from, to] : data.shortener_map) out << from << '\t' << to << '\n';
  }
  {
    auto out = io::open_output(paths.shortener_hosts);
    for (const auto& h : data.shortener_hosts) out << h << '\n';
  }
  {
    auto out = io::open_output(paths.planted);
    write_planted(out, data.planted);
  }
  return paths;
}

PlantedReport verify_planted(const Corpus& corpus, std::span<const MaliciousLabel> labels,
                             std::span<const PlantedAttack> planted) {
  std::set<std::pair<std::string, Category>> truth;
  for (const auto& p : planted) truth.emplace(p.comment_id, p.category);
  std::set<std::pair<std::string, Category>> found;
  PlantedReport report;
  for (const auto& l : labels) {
    if (!corpus.find_comment(l.comment_id)) ++report.unknown_comments;
    found.emplace(l.comment_id, l.category);
  }
  report.planted = truth.size();
  report.labels = found.size();
  for (const auto& f : found) report.true_positives += truth.contains(f);
  if (report.labels) report.precision = static_cast<double>(report.true_positives) / static_cast<double>(report.labels);
  if (report.planted) report.recall = static_cast<double>(report.true_positives) / static_cast<double>(report.planted);
  return report;
}

}  // namespace threadsec
