#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "support.hpp"
#include "threadsec/cli.hpp"
#include "threadsec/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = threadsec::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) n += !line.empty();
  return n;
}

// One synthetic corpus shared by the tests below.
const fs::path& fixture() {
  static const fs::path dir = [] {
    auto d = testsupport::scratch("cli_fixture");
    REQUIRE(run({"synth", "--out", d.string(), "--threads", "400"}).code == 0);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("help exits 0 with usage") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("synth") != std::string::npos);
  CHECK(r.out.find("sweep") != std::string::npos);
  CHECK(run({"label", "--help"}).code == 0);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  auto r = run({"synth", "--out", "x", "--bogus"});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"label", "--corpus", "/nonexistent.jsonl", "--blacklist", "/nonexistent.tsv", "--out", "x"}).code == 1);
}

TEST_CASE("label count equals planted count and prints the summary line") {
  const auto& d = fixture();
  auto r = run({"label", "--corpus", (d / "corpus.jsonl").string(), "--blacklist", (d / "blacklist.tsv").string(),
                "--shorteners", (d / "shorteners.tsv").string(), "--shortener-hosts", (d / "shortener_hosts.txt").string(),
                "--planted", (d / "planted.jsonl").string(), "--out", (d / "labels.tsv").string()});
  REQUIRE(r.code == 0);
  CHECK(std::regex_match(r.out, std::regex(R"(label ok: \d+ in, \d+ out, \d+\.\d+s\n)")));
  CHECK(line_count(d / "labels.tsv") == line_count(d / "planted.jsonl"));
  auto verify = nlohmann::json::parse(threadsec::io::read_file(d / "verify.json"));
  CHECK(verify["precision"] == 1.0);
  CHECK(verify["recall"] == 1.0);
}

TEST_CASE("featurize, train, eval, sweep, temporal, accounts") {
  const auto& d = fixture();
  const auto corpus = (d / "corpus.jsonl").string();
  const auto labels = (d / "labels.tsv").string();
  REQUIRE(run({"label", "--corpus", corpus, "--blacklist", (d / "blacklist.tsv").string(), "--shorteners",
               (d / "shorteners.tsv").string(), "--out", labels})
              .code == 0);
  REQUIRE(run({"featurize", "--corpus", corpus, "--labels", labels, "--out", (d / "features.csv").string()}).code == 0);
  CHECK(line_count(d / "features.csv") == 401);

  CHECK(run({"train", "--features", (d / "features.csv").string(), "--algorithm", "adaboost", "--out",
             (d / "model.json").string()})
            .code == 0);
  auto model = nlohmann::json::parse(threadsec::io::read_file(d / "model.json"));
  CHECK(model["model"]["variant"] == "adaboost");
  CHECK(model["scaler"]["min"].size() == 17);

  CHECK(run({"eval", "--features", (d / "features.csv").string(), "--algorithm", "all", "--out", (d / "eval.json").string()})
            .code == 0);
  auto eval = nlohmann::json::parse(threadsec::io::read_file(d / "eval.json"));
  CHECK(eval["results"].size() == 3);

  CHECK(run({"sweep", "--corpus", corpus, "--labels", labels, "--out", (d / "sweep.csv").string()}).code == 0);
  CHECK(line_count(d / "sweep.csv") == 13);

  CHECK(run({"temporal", "--corpus", corpus, "--labels", labels, "--out", (d / "temporal").string()}).code == 0);
  for (auto f : {"relative_position_ecdf.csv", "time_since_post_ecdf.csv", "interval_ecdf.csv", "heatmap.csv"}) {
    CHECK(fs::exists(d / "temporal" / f));
  }
  CHECK(run({"accounts", "--corpus", corpus, "--labels", labels, "--shorteners", (d / "shorteners.tsv").string(),
             "--per-page", "50", "--out", (d / "accounts").string()})
            .code == 0);
  CHECK(fs::exists(d / "accounts" / "campaign_scatter.csv"));
  CHECK(threadsec::io::read_file(d / "accounts" / "footprints.csv").rfind("account_id,group,n_pages,n_posts,n_comments,n_likes\n", 0) == 0);
}

TEST_CASE("validation errors exit 1, I/O errors exit 2") {
  const auto& d = fixture();
  const auto corpus = (d / "corpus.jsonl").string();
  std::ofstream(d / "empty_labels.tsv").close();
  CHECK(run({"featurize", "--corpus", corpus, "--labels", (d / "empty_labels.tsv").string(), "--window", "7", "--out",
             (d / "f.csv").string()})
            .code == 1);
  std::ofstream(d / "blocker").put('x');
  CHECK(run({"featurize", "--corpus", corpus, "--labels", (d / "empty_labels.tsv").string(), "--out",
             (d / "blocker" / "f.csv").string()})
            .code == 2);
}

TEST_CASE("config file supplies values and flags override them") {
  auto d = testsupport::scratch("cli_config");
  std::ofstream(d / "run.ini") << "[synth]\nthreads=120\npages=4\n";
  REQUIRE(run({"--config", (d / "run.ini").string(), "synth", "--out", (d / "a").string()}).code == 0);
  auto a = threadsec::ingest(d / "a" / "corpus.jsonl");
  CHECK(a.stats.posts == 120);
  CHECK(a.stats.pages == 4);
  REQUIRE(run({"--config", (d / "run.ini").string(), "synth", "--out", (d / "b").string(), "--threads", "80"}).code == 0);
  CHECK(threadsec::ingest(d / "b" / "corpus.jsonl").stats.posts == 80);
}

TEST_CASE("reruns are byte-identical") {
  const auto& d = fixture();
  auto args = [&](const std::string& out) {
    return std::vector<std::string>{"featurize", "--corpus", (d / "corpus.jsonl").string(), "--labels",
                                    (d / "labels.tsv").string(), "--out", out};
  };
  REQUIRE(run(args((d / "r1.csv").string())).code == 0);
  REQUIRE(run(args((d / "r2.csv").string())).code == 0);
  CHECK(threadsec::io::read_file(d / "r1.csv") == threadsec::io::read_file(d / "r2.csv"));
}
