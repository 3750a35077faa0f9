#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace threadsec {

/// UTC epoch seconds.
using Timestamp = std::int64_t;

enum class Region { MiddleEast, Asia, Europe, USNews, USPolitics, Other };

std::string_view to_string(Region region);
/// Accepts the enum spelling case-insensitively; unknown names map to Other.
Region parse_region(std::string_view name);

struct Page {
  std::string page_id;
  std::string name;
  Region region = Region::Other;
};

struct Post {
  std::string post_id;
  std::string page_id;
  std::string author_id;
  Timestamp created_ts = 0;
  std::int64_t like_count = 0;
  std::string raw_text;
};

struct Comment {
  std::string comment_id;
  std::string post_id;
  std::string author_id;
  Timestamp created_ts = 0;
  std::int64_t like_count = 0;
  std::string raw_text;
};

/// A post with its comments ordered by (created_ts, comment_id).
struct PostThread {
  Post post;
  std::vector<Comment> comments;
};

/// Seconds between a comment and its post, clamped at zero for clock skew.
inline Timestamp seconds_since_post(const Post& post, const Comment& comment) {
  return comment.created_ts > post.created_ts ? comment.created_ts - post.created_ts : 0;
}

inline double minutes_since_post(const Post& post, const Comment& comment) {
  return static_cast<double>(seconds_since_post(post, comment)) / 60.0;
}

/// Flat record store as read from a corpus file.
struct CorpusRecords {
  std::vector<Page> pages;
  std::vector<Post> posts;
  std::vector<Comment> comments;
};

/// Groups comments under their posts. One thread per post, threads ordered by
/// (post created_ts, post_id), comments by (created_ts, comment_id). Comments
/// whose post is absent are ignored.
std::vector<PostThread> build_threads(std::span<const Post> posts, std::span<const Comment> comments);

/// Position of a comment inside the corpus.
struct CommentRef {
  std::size_t thread = 0;
  std::size_t index = 0;
};

/// Validated, immutable corpus with id lookups.
class Corpus {
 public:
  Corpus() = default;
  /// Records must already be referentially consistent (see `ingest`).
  Corpus(std::vector<Page> pages, std::vector<PostThread> threads);

  const std::vector<Page>& pages() const { return pages_; }
  const std::vector<PostThread>& threads() const { return threads_; }

  const Page* find_page(std::string_view page_id) const;
  const PostThread* find_thread(std::string_view post_id) const;
  std::optional<CommentRef> find_comment(std::string_view comment_id) const;
  const Comment& comment(CommentRef ref) const { return threads_[ref.thread].comments[ref.index]; }

  std::size_t comment_count() const;
  /// Smallest post timestamp and largest comment/post timestamp; nullopt when empty.
  std::optional<std::pair<Timestamp, Timestamp>> time_range() const;

  CorpusRecords to_records() const;

 private:
  std::vector<Page> pages_;
  std::vector<PostThread> threads_;
  std::unordered_map<std::string, std::size_t> page_index_;
  std::unordered_map<std::string, std::size_t> thread_index_;
  std::unordered_map<std::string, CommentRef> comment_index_;
};

struct LineError {
  std::size_t line = 0;  ///< 1-based; 0 for whole-record validation errors
  std::string message;
};

struct IngestStats {
  std::size_t pages = 0;
  std::size_t posts = 0;
  std::size_t comments = 0;
  std::size_t dropped = 0;
  /// Comments timestamped before their post; kept and clamped in relative-time math.
  std::size_t clamped = 0;
  std::vector<LineError> errors;
};

struct IngestResult {
  Corpus corpus;
  IngestStats stats;
};

/// Parses corpus JSONL and validates it. Malformed lines are recorded and skipped;
/// duplicates and records pointing at unknown parents are dropped.
IngestResult ingest(std::istream& in);
/// Throws IoError when the file cannot be read.
IngestResult ingest(const std::filesystem::path& path);
/// Several files merged in argument order, then validated together.
IngestResult ingest(std::span<const std::filesystem::path> paths);

/// Validation step shared by the ingest overloads. First occurrence of an id wins.
IngestResult validate(CorpusRecords records, std::vector<LineError> parse_errors = {});

/// Writes the corpus in the JSONL schema read by `ingest`.
void write_jsonl(std::ostream& out, const Corpus& corpus);

}  // namespace threadsec
