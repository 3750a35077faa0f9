#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support.hpp"
#include "threadsec/accounts.hpp"
#include "threadsec/error.hpp"

using namespace threadsec;

namespace {

// Two-pass population mean/std, written independently of the library.
std::pair<double, double> two_pass(const std::vector<double>& v) {
  double sum = 0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size()))};
}

UrlObservation observation(std::string comment, std::string url, std::string account) {
  UrlObservation o;
  o.comment_id = std::move(comment);
  o.url = std::move(url);
  o.account_id = std::move(account);
  return o;
}

MaliciousLabel label(std::string comment, std::string url, Category c = Category::Ads) {
  return {std::move(comment), c, "k", MatchKind::Domain, std::move(url)};
}

}  // namespace

TEST_CASE("footprint by hand; unknown account is zero and flagged") {
  auto c = testsupport::corpus({{"P1", "a", Region::Asia}, {"P2", "b", Region::Asia}},
                               {testsupport::post("p1", "P1", 0), testsupport::post("p2", "P2", 0)},
                               {testsupport::comment("c1", "p1", "A", 10, 0), testsupport::comment("c2", "p1", "A", 20, 1),
                                testsupport::comment("c3", "p2", "A", 30, 2), testsupport::comment("c4", "p2", "B", 40, 5)});
  std::vector<std::string> ids{"A", "nobody"};
  auto f = footprint(c, ids);
  CHECK(f[0].n_pages == 2);
  CHECK(f[0].n_posts == 2);
  CHECK(f[0].n_comments == 3);
  CHECK(f[0].n_likes == 3);
  CHECK(f[0].known);
  CHECK(f[1].n_comments == 0);
  CHECK(f[1].n_likes == 0);
  CHECK_FALSE(f[1].known);
}

TEST_CASE("response stats: single comment, equal times, no comments") {
  auto c = testsupport::corpus({{"P", "a", Region::Asia}}, {testsupport::post("p", "P", 1000)},
                               {testsupport::comment("c1", "p", "A", 1000 + 7 * 60)});
  auto s = response_stats(c, "A");
  CHECK(s.mean == 7.0);
  CHECK(s.std == 0.0);
  CHECK(response_stats_from_times("E", {4, 4, 4, 4}).std == 0.0);
  CHECK_THROWS_AS(response_stats(c, "ghost"), ValidationError);
}

TEST_CASE("response stats on the reference commenting-time vector") {
  std::vector<double> v{6194, 5650, 1, 8, 9, 11, 12, 13, 14, 18};
  auto s = response_stats_from_times("user", v);
  CHECK(s.mean == 1193.0);
  const auto [mean, sd] = two_pass(v);
  CHECK(std::abs(s.std - sd) <= 0.1);
  CHECK(std::abs(s.std - 2367.6) <= 0.1);
  CHECK(mean == 1193.0);
}

TEST_CASE("property: Welford agrees with the two-pass formula") {
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> x(3, 2);
  std::uniform_int_distribution<int> n(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(n(rng)));
    for (auto& e : v) e = x(rng);
    auto s = response_stats_from_times("u", v);
    const auto [mean, sd] = two_pass(v);
    CHECK(s.mean == doctest::Approx(mean).epsilon(1e-9));
    CHECK(s.std == doctest::Approx(sd).epsilon(1e-9).scale(mean));
    CHECK(s.std >= 0.0);
  }
}

TEST_CASE("campaign clustering by exact URL") {
  CHECK(cluster_campaigns({}, std::span<const UrlObservation>{}).empty());

  std::vector<UrlObservation> obs{observation("c1", "http://u.com/a", "A"), observation("c2", "http://u.com/a", "B"),
                                  observation("c3", "http://u.com/a", "A"), observation("c4", "http://u.com/b", "A")};
  std::vector<MaliciousLabel> labels{label("c1", "http://u.com/a"), label("c2", "http://u.com/a"),
                                     label("c3", "http://u.com/a"), label("c4", "http://u.com/b")};
  auto clusters = cluster_campaigns(labels, obs);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].url == "http://u.com/a");
  CHECK(clusters[0].occurrences == 3);
  CHECK(clusters[0].accounts.size() == 2);
  CHECK(clusters[1].url == "http://u.com/b");
}

TEST_CASE("scatter flags") {
  CampaignCluster small{"http://x/1", 3, {"A", "B"}};
  CampaignCluster repeat{"http://x/2", 15, {"A"}};
  CampaignCluster sync{"http://x/3", 12, {}};
  for (int i = 0; i < 12; ++i) sync.accounts.insert("s" + std::to_string(i));
  std::vector<CampaignCluster> clusters{small, repeat, sync};
  auto pts = campaign_scatter(clusters);
  CHECK(pts[0].n_accounts == 2);
  CHECK(pts[0].occurrences == 3);
  CHECK(pts[0].flag.empty());
  CHECK(pts[1].flag == "single-account repetition");
  CHECK(pts[2].flag == "synchronized multi-account");
  std::ostringstream out;
  write_scatter_csv(out, pts);
  CHECK(out.str().rfind("url_hash,n_accounts,occurrences,flag\n", 0) == 0);
}

TEST_CASE("property: clusters, footprints and samples are consistent") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> author(0, 30), post_pick(0, 9), url(0, 6), likes(0, 3);
  std::bernoulli_distribution bad(0.3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Post> posts;
    for (int p = 0; p < 10; ++p) posts.push_back(testsupport::post("p" + std::to_string(p), "P" + std::to_string(p % 3), 0));
    std::vector<Comment> comments;
    std::vector<MaliciousLabel> labels;
    std::int64_t like_total = 0;
    for (int i = 0; i < 150; ++i) {
      const auto cid = "c" + std::to_string(i);
      const int l = likes(rng);
      like_total += l;
      comments.push_back(testsupport::comment(cid, "p" + std::to_string(post_pick(rng)), "u" + std::to_string(author(rng)), i, l));
      if (bad(rng)) labels.push_back(label(cid, "http://m.com/" + std::to_string(url(rng))));
    }
    auto c = testsupport::corpus({{"P0", "", Region::Other}, {"P1", "", Region::Other}, {"P2", "", Region::Other}}, posts, comments);
    auto clusters = cluster_campaigns(labels, c);
    std::int64_t occ = 0;
    for (const auto& cl : clusters) {
      occ += cl.occurrences;
      CHECK(static_cast<std::int64_t>(cl.accounts.size()) <= cl.occurrences);
      CHECK(cl.occurrences >= 1);
    }
    CHECK(occ == static_cast<std::int64_t>(labels.size()));
    for (std::size_t i = 1; i < clusters.size(); ++i) CHECK(clusters[i - 1].occurrences >= clusters[i].occurrences);

    AccountIndex index(c);
    std::int64_t n_comments = 0, n_likes = 0;
    for (const auto& a : index.accounts()) {
      auto f = index.footprint(a);
      CHECK(f.n_pages <= f.n_posts);
      CHECK(f.n_posts <= f.n_comments);
      n_comments += f.n_comments;
      n_likes += f.n_likes;
    }
    CHECK(n_comments == 150);
    CHECK(n_likes == like_total);

    std::set<std::string> attackers{"u1", "u2", "u3"};
    auto sample = sample_normal_accounts(c, attackers, 4, 11);
    CHECK(sample == sample_normal_accounts(c, attackers, 4, 11));
    CHECK(sample.size() <= 12);
    for (const auto& a : sample) CHECK_FALSE(attackers.contains(a));
  }
}
