#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "support.hpp"
#include "threadsec/error.hpp"

using namespace threadsec;

namespace {

const char* kFixture =
    R"({"kind":"page","id":"P1","name":"World","region":"Europe"}
{"kind":"post","id":"p1","page_id":"P1","author_id":"P1","created_ts":1000,"like_count":3,"text":"a"}
{"kind":"post","id":"p2","page_id":"P1","author_id":"P1","created_ts":2000,"like_count":0,"text":"b"}
{"kind":"comment","id":"c1","post_id":"p1","author_id":"u1","created_ts":1010,"like_count":1,"text":"x"}
{"kind":"comment","id":"c2","post_id":"p1","author_id":"u2","created_ts":1020,"like_count":0,"text":"y"}
{"kind":"comment","id":"c3","post_id":"p2","author_id":"u1","created_ts":2050,"like_count":0,"text":"z"}
{"kind":"comment","id":"c4","post_id":"p2","author_id":"u3","created_ts":2060,"like_count":2,"text":"w"}
{"kind":"comment","id":"c5","post_id":"missing","author_id":"u3","created_ts":2060,"like_count":2,"text":"w"}
)";

}  // namespace

TEST_CASE("empty input gives an empty corpus") {
  std::istringstream in("");
  auto r = ingest(in);
  CHECK(r.corpus.pages().empty());
  CHECK(r.corpus.threads().empty());
  CHECK(r.stats.dropped == 0);
}

TEST_CASE("comment with unknown post is dropped") {
  std::istringstream in(kFixture);
  auto r = ingest(in);
  CHECK(r.corpus.threads().size() == 2);
  CHECK(r.corpus.comment_count() == 4);
  CHECK(r.stats.comments == 4);
  CHECK(r.stats.dropped == 1);
}

TEST_CASE("duplicate comment id keeps the first occurrence") {
  std::string text = kFixture;
  text += R"({"kind":"comment","id":"c1","post_id":"p2","author_id":"u9","created_ts":2100,"like_count":0,"text":"dup"})";
  text += "\n";
  std::istringstream in(text);
  auto r = ingest(in);
  CHECK(r.stats.dropped == 2);
  auto ref = r.corpus.find_comment("c1");
  REQUIRE(ref);
  CHECK(r.corpus.comment(*ref).author_id == "u1");
}

TEST_CASE("malformed lines are reported with their line number and skipped") {
  std::istringstream in("{\"kind\":\"page\",\"id\":\"P\",\"name\":\"n\",\"region\":\"Asia\"}\nnot json\n{\"kind\":\"post\"}\n");
  auto r = ingest(in);
  REQUIRE(r.stats.errors.size() == 2);
  CHECK(r.stats.errors[0].line == 2);
  CHECK(r.stats.errors[1].line == 3);
  CHECK(r.corpus.pages().size() == 1);
  CHECK(r.corpus.pages()[0].region == Region::Asia);
}

TEST_CASE("unreadable file is an I/O error") {
  CHECK_THROWS_AS(ingest(std::filesystem::path("/nonexistent/corpus.jsonl")), IoError);
}

TEST_CASE("regions parse case-insensitively and default to Other") {
  CHECK(parse_region("usnews") == Region::USNews);
  CHECK(parse_region("MiddleEast") == Region::MiddleEast);
  CHECK(parse_region("Mars") == Region::Other);
  CHECK(to_string(Region::USPolitics) == "USPolitics");
}

TEST_CASE("thread comments sort by timestamp then id") {
  using testsupport::comment;
  std::vector<Post> posts{testsupport::post("p", "P", 100)};
  std::vector<Comment> comments{comment("c3", "p", "a", 130), comment("c2", "p", "a", 110), comment("c1", "p", "a", 110)};
  auto threads = build_threads(posts, comments);
  REQUIRE(threads.size() == 1);
  std::vector<std::string> ids;
  for (const auto& c : threads[0].comments) ids.push_back(c.comment_id);
  CHECK(ids == std::vector<std::string>{"c1", "c2", "c3"});
}

TEST_CASE("post without comments yields an empty thread; threads ordered by post time") {
  std::vector<Post> posts{testsupport::post("late", "P", 500), testsupport::post("early", "P", 100)};
  auto threads = build_threads(posts, {});
  REQUIRE(threads.size() == 2);
  CHECK(threads[0].post.post_id == "early");
  CHECK(threads[1].comments.empty());
}

TEST_CASE("comments before their post are kept and clamped") {
  auto c = testsupport::corpus({{"P", "n", Region::Asia}}, {testsupport::post("p", "P", 1000)},
                               {testsupport::comment("c", "p", "u", 900)});
  const auto& t = c.threads()[0];
  CHECK(t.comments.size() == 1);
  CHECK(seconds_since_post(t.post, t.comments[0]) == 0);
  std::istringstream in(
      R"({"kind":"page","id":"P","name":"n","region":"Asia"}
{"kind":"post","id":"p","page_id":"P","author_id":"P","created_ts":1000,"like_count":0,"text":""}
{"kind":"comment","id":"c","post_id":"p","author_id":"u","created_ts":900,"like_count":0,"text":""}
)");
  CHECK(ingest(in).stats.clamped == 1);
}

TEST_CASE("property: shuffled input lines give identical threads") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Post> posts;
    std::vector<Comment> comments;
    std::uniform_int_distribution<int> n_comments(0, 30);
    std::uniform_int_distribution<Timestamp> ts(0, 50);
    for (int p = 0; p < 5; ++p) {
      posts.push_back(testsupport::post("p" + std::to_string(p), "P", ts(rng)));
      const int n = n_comments(rng);
      for (int c = 0; c < n; ++c) {
        comments.push_back(testsupport::comment("c" + std::to_string(p) + "_" + std::to_string(c),
                                                "p" + std::to_string(p), "u", ts(rng)));
      }
    }
    auto a = testsupport::corpus({{"P", "n", Region::Other}}, posts, comments);
    std::shuffle(posts.begin(), posts.end(), rng);
    std::shuffle(comments.begin(), comments.end(), rng);
    auto b = testsupport::corpus({{"P", "n", Region::Other}}, posts, comments);
    REQUIRE(a.threads().size() == b.threads().size());
    std::size_t total = 0;
    for (std::size_t t = 0; t < a.threads().size(); ++t) {
      const auto& ta = a.threads()[t];
      const auto& tb = b.threads()[t];
      CHECK(ta.post.post_id == tb.post.post_id);
      REQUIRE(ta.comments.size() == tb.comments.size());
      for (std::size_t i = 0; i < ta.comments.size(); ++i) {
        CHECK(ta.comments[i].comment_id == tb.comments[i].comment_id);
        if (i > 0) {
          const auto& prev = ta.comments[i - 1];
          const auto& cur = ta.comments[i];
          CHECK(std::tie(prev.created_ts, prev.comment_id) < std::tie(cur.created_ts, cur.comment_id));
        }
      }
      total += ta.comments.size();
    }
    CHECK(total == comments.size());
  }
}

TEST_CASE("write_jsonl round-trips through ingest") {
  std::istringstream in(kFixture);
  auto first = ingest(in);
  std::ostringstream out;
  write_jsonl(out, first.corpus);
  std::istringstream again(out.str());
  auto second = ingest(again);
  CHECK(second.stats.dropped == 0);
  std::ostringstream out2;
  write_jsonl(out2, second.corpus);
  CHECK(out.str() == out2.str());
}
