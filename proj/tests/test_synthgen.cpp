#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracle.hpp"
#include "support.hpp"
#include "threadsec/error.hpp"
#include "threadsec/features.hpp"
#include "threadsec/synthgen.hpp"

using namespace threadsec;

namespace {

GeneratorConfig small(int threads = 400) {
  GeneratorConfig c;
  c.n_threads = threads;
  return c;
}

std::vector<MaliciousLabel> label_all(const GeneratedCorpus& g, std::span<const BlacklistEntry> blacklist) {
  auto obs = collect_observations(g.corpus, g.shortener_table());
  return join_blacklist(obs, blacklist);
}

std::string corpus_text(const Corpus& c) {
  std::ostringstream out;
  write_jsonl(out, c);
  return out.str();
}

}  // namespace

TEST_CASE("same seed gives byte-identical output; another seed differs") {
  auto a = generate(small());
  auto b = generate(small());
  CHECK(corpus_text(a.corpus) == corpus_text(b.corpus));
  std::ostringstream pa, pb;
  write_planted(pa, a.planted);
  write_planted(pb, b.planted);
  CHECK(pa.str() == pb.str());
  auto cfg = small();
  cfg.seed = 43;
  CHECK(corpus_text(generate(cfg).corpus) != corpus_text(a.corpus));
}

TEST_CASE("exact number of target threads") {
  GeneratorConfig c;
  c.n_threads = 1000;
  c.target_fraction = 0.1;
  auto g = generate(c);
  CHECK(g.target_posts.size() == 100);
  CHECK(c.target_count() == 100);
}

TEST_CASE("early-stage attacks land before tau") {
  auto c = GeneratorConfig::profile("early");
  c.n_threads = 500;
  auto g = generate(c);
  REQUIRE_FALSE(g.planted.empty());
  for (const auto& p : g.planted) {
    CHECK(p.strategy == Strategy::EarlyStage);
    auto ref = g.corpus.find_comment(p.comment_id);
    REQUIRE(ref);
    const auto& thread = g.corpus.threads()[ref->thread];
    CHECK(minutes_since_post(thread.post, g.corpus.comment(*ref)) < c.tau_minutes);
  }
}

TEST_CASE("sync bursts use k distinct accounts spaced by delta") {
  auto c = GeneratorConfig::profile("sync");
  c.n_threads = 300;
  auto g = generate(c);
  std::map<std::string, std::vector<const PlantedAttack*>> by_post;
  for (const auto& p : g.planted) by_post[g.corpus.comment(*g.corpus.find_comment(p.comment_id)).post_id].push_back(&p);
  for (const auto& [post, attacks] : by_post) {
    CHECK(attacks.size() == static_cast<std::size_t>(c.sync_k));
    std::set<std::string> accounts;
    for (const auto* a : attacks) accounts.insert(a->account_id);
    CHECK(accounts.size() == attacks.size());
  }
}

TEST_CASE("repeat accounts post the same campaign r times") {
  auto c = GeneratorConfig::profile("repeat");
  c.n_threads = 1000;
  auto g = generate(c);
  std::map<std::string, int> per_account;
  for (const auto& p : g.planted) ++per_account[p.account_id];
  for (const auto& [account, n] : per_account) CHECK(n == c.repeat_r);
}

TEST_CASE("infeasible configurations are rejected") {
  auto c = small();
  c.sync_k = 20;
  CHECK_THROWS_WITH_AS(generate(c), doctest::Contains("exceeds account pool"), ValidationError);
  c = small();
  c.mix = {0.5, 0.5, 0.5, 0.0};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small();
  c.target_fraction = 1.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small();
  c.n_threads = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  CHECK_THROWS_AS(GeneratorConfig::profile("chaos"), ValidationError);
}

TEST_CASE("untampered labeling reproduces the planted truth") {
  auto g = generate(small(600));
  auto labels = label_all(g, g.blacklist);
  auto report = verify_planted(g.corpus, labels, g.planted);
  CHECK(report.planted == g.planted.size());
  CHECK(report.precision == 1.0);
  CHECK(report.recall == 1.0);
  CHECK(report.unknown_comments == 0);
}

TEST_CASE("halving the blacklist halves recall and keeps precision") {
  auto g = generate(small(600));
  std::vector<BlacklistEntry> half;
  for (std::size_t i = 0; i < g.blacklist.size(); i += 2) half.push_back(g.blacklist[i]);
  auto report = verify_planted(g.corpus, label_all(g, half), g.planted);
  CHECK(report.precision == 1.0);

  // Recount: planted comments whose expanded URL still matches a kept key.
  auto table = g.shortener_table();
  std::size_t expected = 0;
  for (const auto& p : g.planted) {
    const auto& text = g.corpus.comment(*g.corpus.find_comment(p.comment_id)).raw_text;
    bool hit = false;
    for (const auto& raw : extract_urls(text)) {
      UrlObservation o;
      o.url = expand_url(raw, table).url;
      o.host = url_host(o.url);
      for (const auto& e : half) hit = hit || (e.category == p.category && oracle::matches(e, o));
    }
    expected += hit;
  }
  CHECK(report.true_positives == expected);
  CHECK(report.recall == doctest::Approx(static_cast<double>(expected) / static_cast<double>(g.planted.size())));
  CHECK(report.recall > 0.3);
  CHECK(report.recall < 0.7);
}

TEST_CASE("corpus without injections yields no labels") {
  auto g = generate(small(300));
  auto records = g.corpus.to_records();
  std::set<std::string> attack_ids;
  for (const auto& p : g.planted) attack_ids.insert(p.comment_id);
  std::erase_if(records.comments, [&](const Comment& c) { return attack_ids.contains(c.comment_id); });
  auto clean = validate(std::move(records)).corpus;
  auto labels = join_blacklist(collect_observations(clean, g.shortener_table()), g.blacklist);
  CHECK(labels.empty());
  CHECK(verify_planted(clean, labels, {}).recall == 1.0);
}

TEST_CASE("property: non-target per-bin means follow the intensity within 3 standard errors") {
  auto cfg = small(1500);
  auto g = generate(cfg);
  std::vector<Eigen::VectorXd> rows;
  for (const auto& t : g.corpus.threads()) {
    if (g.target_posts.contains(t.post.post_id)) continue;
    rows.push_back(dav(t, 5, 60).bins.cast<double>());
  }
  REQUIRE(rows.size() >= 500);
  const double n = static_cast<double>(rows.size());
  for (int b = 0; b < 12; ++b) {
    double sum = 0, sq = 0;
    for (const auto& r : rows) {
      sum += r(b);
      sq += r(b) * r(b);
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    const double expected = intensity_mass(cfg, 5.0 * (b + 1)) - intensity_mass(cfg, 5.0 * b);
    CHECK(std::abs(mean - expected) <= 3 * se);
  }
}

TEST_CASE("property: targets have a larger first-hour mean") {
  auto g = generate(small(1500));
  double target = 0, other = 0;
  int n_target = 0, n_other = 0;
  for (const auto& t : g.corpus.threads()) {
    const double first_hour = dav(t, 5, 60).bins.sum();
    if (g.target_posts.contains(t.post.post_id)) {
      target += first_hour;
      ++n_target;
    } else {
      other += first_hour;
      ++n_other;
    }
  }
  CHECK(target / n_target > other / n_other);
  CHECK(other / n_other == doctest::Approx(40.0).epsilon(0.1));
}

TEST_CASE("files round-trip through the readers") {
  auto g = generate(small(200));
  auto dir = testsupport::scratch("synth_files");
  auto paths = write_generated(g, dir);
  auto corpus = ingest(paths.corpus).corpus;
  auto table = load_shortener_table(paths.shorteners, paths.shortener_hosts);
  auto labels = join_blacklist(collect_observations(corpus, table), read_blacklist(paths.blacklist));
  auto planted = read_planted(paths.planted);
  CHECK(planted.size() == g.planted.size());
  auto report = verify_planted(corpus, labels, planted);
  CHECK(report.precision == 1.0);
  CHECK(report.recall == 1.0);
}
