#include <doctest.h>

#include <random>
#include <sstream>

#include "support.hpp"
#include "threadsec/ecdf.hpp"
#include "threadsec/temporal.hpp"

using namespace threadsec;

namespace {

using Points = std::vector<std::pair<double, double>>;

// Page P1 (Europe) and P2 (Asia); p1 has 11 comments a0..a10 one minute apart.
Corpus fixture() {
  std::vector<Comment> comments;
  for (int i = 0; i < 11; ++i) {
    comments.push_back(testsupport::comment("a" + std::to_string(i), "p1", "u" + std::to_string(i), 60 * i));
  }
  comments.push_back(testsupport::comment("b0", "p2", "x", 1'000'000 + 600));
  comments.push_back(testsupport::comment("b1", "p2", "y", 1'000'000 + 3000));
  return testsupport::corpus({{"P1", "Euro", Region::Europe}, {"P2", "Asia", Region::Asia}},
                             {testsupport::post("p1", "P1", 0), testsupport::post("p2", "P2", 1'000'000)}, comments);
}

MaliciousLabel label(std::string id, Category c = Category::Ads) { return {std::move(id), c, "k", MatchKind::Domain, ""}; }

void check_ecdf_shape(const EcdfTable& t) {
  REQUIRE_FALSE(t.empty());
  for (std::size_t i = 1; i < t.points.size(); ++i) {
    CHECK(t.points[i].first > t.points[i - 1].first);
    CHECK(t.points[i].second >= t.points[i - 1].second);
  }
  CHECK(t.points.back().second == 1.0);
}

}  // namespace

TEST_CASE("ECDF by hand") {
  std::vector<double> v{1, 2, 2, 4};
  CHECK(ecdf(v).points == Points{{1, 0.25}, {2, 0.75}, {4, 1.0}});
  std::vector<double> one{3.5};
  CHECK(ecdf(one).points == Points{{3.5, 1.0}});
  CHECK(ecdf(std::vector<double>{}).empty());
  auto t = ecdf(v);
  CHECK(t.at(0) == 0.0);
  CHECK(t.at(2.5) == 0.75);
  CHECK(t.at(100) == 1.0);
}

TEST_CASE("property: ECDF is non-decreasing and ends at one") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> n(1, 200);
  std::normal_distribution<double> x(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(n(rng)));
    for (auto& e : v) e = std::round(x(rng) * 2) / 2;
    check_ecdf_shape(ecdf(v));
  }
}

TEST_CASE("ECDF CSV layout") {
  GroupedEcdf g{{"b", ecdf(std::vector<double>{1})}, {"a", ecdf(std::vector<double>{0.5, 2})}};
  std::ostringstream out;
  write_ecdf_csv(out, g);
  CHECK(out.str() == "group,x,F\na,0.5,0.5\na,2,1\nb,1,1\n");
}

TEST_CASE("relative position endpoints and midpoint") {
  CHECK(relative_position(0, 11) == 0.0);
  CHECK(relative_position(5, 11) == 0.5);
  CHECK(relative_position(10, 11) == 1.0);
  CHECK(relative_position(0, 1) == 0.0);

  auto c = fixture();
  std::vector<MaliciousLabel> labels{label("a0"), label("a5"), label("a5", Category::Porn), label("b1")};
  auto events = build_attack_events(c, labels);
  REQUIRE(events.size() == 4);
  CHECK(events[0].relative_position == 0.0);
  CHECK(events[1].relative_position == 0.5);
  CHECK(events[3].relative_position == 1.0);
  CHECK(events[3].region == Region::Asia);
  CHECK(events[3].minutes_since_post == doctest::Approx(50.0));

  auto pos = relative_positions(events);
  CHECK(pos.at("all").points.size() == 3);  // a5 counted once
  CHECK(pos.at("category:porn").points == Points{{0.5, 1.0}});
  CHECK(pos.at("region:Europe").points == Points{{0.0, 0.5}, {0.5, 1.0}});
}

TEST_CASE("time since post: within-day fraction") {
  std::vector<AttackEvent> events;
  for (double m : {10.0, 50.0, 200.0, 2000.0}) {
    AttackEvent e;
    e.comment_id = "c" + std::to_string(events.size());
    e.minutes_since_post = m;
    e.region = Region::Europe;
    events.push_back(e);
  }
  auto r = time_since_post(events);
  CHECK(r.within_day.at("all") == doctest::Approx(0.75));

  std::vector<AttackEvent> zero(3);
  for (std::size_t i = 0; i < 3; ++i) zero[i].comment_id = "z" + std::to_string(i);
  CHECK(time_since_post(zero).ecdf.at("all").at(0) == 1.0);
}

TEST_CASE("inter-attack gaps per page") {
  std::vector<AttackEvent> events;
  for (double m : {0.0, 5.0, 30.0}) {
    AttackEvent e;
    e.comment_id = "c" + std::to_string(events.size());
    e.page_id = "P";
    e.ts = static_cast<Timestamp>(m * 60);
    events.push_back(e);
  }
  AttackEvent lone;
  lone.comment_id = "q";
  lone.page_id = "Q";
  events.push_back(lone);
  auto gaps = page_gaps(events);
  CHECK(gaps.at("P") == std::vector<double>{5.0, 25.0});
  CHECK((gaps.count("Q") == 0 || gaps.at("Q").empty()));
  auto tables = inter_attack_intervals(events);
  CHECK(tables.at("all").points == Points{{5.0, 0.5}, {25.0, 1.0}});
  CHECK(tables.count("page:Q") == 0);
}

TEST_CASE("heatmap buckets by UTC month and zero-fills") {
  CHECK(utc_month(0) == "1970-01");
  CHECK(utc_month(1391212800) == "2014-02");  // 2014-02-01T00:00:00Z
  CHECK(utc_month(1391212799) == "2014-01");

  const Timestamp feb = 1391212800, mar = 1393632000;
  std::vector<Comment> comments{testsupport::comment("a", "p", "u", feb + 10), testsupport::comment("b", "p", "u", feb + 20),
                                testsupport::comment("c", "p", "u", feb + 30), testsupport::comment("d", "p", "u", mar + 5),
                                testsupport::comment("e", "q", "u", mar + 5)};
  auto c = testsupport::corpus({{"P", "Page P", Region::Europe}, {"Q", "Page Q", Region::Asia}},
                               {testsupport::post("p", "P", feb), testsupport::post("q", "Q", feb - 40 * 86400)}, comments);
  std::vector<MaliciousLabel> labels{label("a"), label("b"), label("c"), label("d")};
  auto h = monthly_heatmap(c, build_attack_events(c, labels));
  CHECK(h.months == std::vector<std::string>{"2013-12", "2014-01", "2014-02", "2014-03"});
  CHECK(h.counts(0, 2) == 3);
  CHECK(h.counts(0, 3) == 1);
  CHECK(h.counts.row(1).sum() == 0);
  CHECK(h.counts.sum() == 4);

  auto empty = monthly_heatmap(c, {});
  CHECK(empty.counts.sum() == 0);
  CHECK(empty.months.size() == 4);

  std::ostringstream out;
  write_heatmap_csv(out, h);
  CHECK(out.str().rfind("page,2013-12,2014-01,2014-02,2014-03\nPage P,0,0,3,1\n", 0) == 0);
}

TEST_CASE("property: positions stay in [0,1]; gaps per page = attacks - 1; heatmap total = attacks") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Post> posts;
    std::vector<Comment> comments;
    std::vector<MaliciousLabel> labels;
    std::uniform_int_distribution<int> n(1, 25);
    std::uniform_int_distribution<Timestamp> ts(0, 400 * 86400);
    std::bernoulli_distribution attack(0.2);
    for (int p = 0; p < 6; ++p) {
      const auto pid = "p" + std::to_string(p);
      posts.push_back({pid, p % 2 ? "A" : "B", "x", ts(rng), 0, ""});
      const int k = n(rng);
      for (int i = 0; i < k; ++i) {
        const auto cid = pid + "_" + std::to_string(i);
        comments.push_back(testsupport::comment(cid, pid, "u", posts.back().created_ts + ts(rng) / 50));
        if (attack(rng)) labels.push_back(label(cid, static_cast<Category>(i % 4)));
      }
    }
    auto c = testsupport::corpus({{"A", "a", Region::USNews}, {"B", "b", Region::Europe}}, posts, comments);
    auto events = build_attack_events(c, labels);
    for (const auto& e : events) {
      CHECK(e.relative_position >= 0.0);
      CHECK(e.relative_position <= 1.0);
      CHECK(e.minutes_since_post >= 0.0);
    }
    std::map<std::string, int> per_page;
    for (const auto& e : unique_attacks(events)) ++per_page[e.page_id];
    auto gaps = page_gaps(events);
    for (const auto& [page, count] : per_page) {
      const auto it = gaps.find(page);
      CHECK((it == gaps.end() ? 0 : static_cast<int>(it->second.size())) == count - 1);
    }
    CHECK(monthly_heatmap(c, events).counts.sum() == static_cast<int>(unique_attacks(events).size()));
    for (const auto& [name, table] : relative_positions(events)) check_ecdf_shape(table);
    for (const auto& [name, table] : inter_attack_intervals(events)) check_ecdf_shape(table);
  }
}
