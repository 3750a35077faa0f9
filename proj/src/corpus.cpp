#include "threadsec/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

#include "threadsec/error.hpp"

namespace threadsec {

namespace {

using nlohmann::json;

constexpr Region kRegions[] = {Region::MiddleEast, Region::Asia,       Region::Europe,
                               Region::USNews,     Region::USPolitics, Region::Other};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

// Field accessors throw std::invalid_argument with a readable message.
std::string require_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw std::invalid_argument(std::string("missing or non-string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::int64_t require_int(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    throw std::invalid_argument(std::string("missing or non-integer field '") + key + "'");
  }
  return it->get<std::int64_t>();
}

std::string require_id(const json& obj) {
  auto id = require_string(obj, "id");
  if (id.empty()) throw std::invalid_argument("empty 'id'");
  return id;
}

std::int64_t require_likes(const json& obj) {
  auto likes = require_int(obj, "like_count");
  if (likes < 0) throw std::invalid_argument("negative 'like_count'");
  return likes;
}

void parse_line(std::string_view line, CorpusRecords& out) {
  json obj = json::parse(line);
  if (!obj.is_object()) throw std::invalid_argument("record is not a JSON object");
  auto kind = require_string(obj, "kind");
  if (kind == "page") {
    out.pages.push_back({require_id(obj), require_string(obj, "name"), parse_region(require_string(obj, "region"))});
  } else if (kind == "post") {
    out.posts.push_back({require_id(obj), require_string(obj, "page_id"), require_string(obj, "author_id"),
                         require_int(obj, "created_ts"), require_likes(obj), require_string(obj, "text")});
  } else if (kind == "comment") {
    out.comments.push_back({require_id(obj), require_string(obj, "post_id"), require_string(obj, "author_id"),
                            require_int(obj, "created_ts"), require_likes(obj), require_string(obj, "text")});
  } else {
    throw std::invalid_argument("unknown kind '" + kind + "'");
  }
}

void parse_stream(std::istream& in, CorpusRecords& records, std::vector<LineError>& errors,
                  const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    try {
      parse_line(line, records);
    } catch (const std::exception& e) {
      errors.push_back({line_no, source + e.what()});
    }
  }
}

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::MiddleEast: return "MiddleEast";
    case Region::Asia: return "Asia";
    case Region::Europe: return "Europe";
    case Region::USNews: return "USNews";
    case Region::USPolitics: return "USPolitics";
    case Region::Other: return "Other";
  }
  return "Other";
}

Region parse_region(std::string_view name) {
  for (Region r : kRegions) {
    if (iequals(name, to_string(r))) return r;
  }
  return Region::Other;
}

std::vector<PostThread> build_threads(std::span<const Post> posts, std::span<const Comment> comments) {
  std::vector<PostThread> threads;
  threads.reserve(posts.size());
  for (const auto& post : posts) threads.push_back({post, {}});
  std::sort(threads.begin(), threads.end(), [](const PostThread& a, const PostThread& b) {
    return std::tie(a.post.created_ts, a.post.post_id) < std::tie(b.post.created_ts, b.post.post_id);
  });

  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(threads.size());
  for (std::size_t i = 0; i < threads.size(); ++i) index.emplace(threads[i].post.post_id, i);

  for (const auto& c : comments) {
    auto it = index.find(c.post_id);
    if (it != index.end()) threads[it->second].comments.push_back(c);
  }
  for (auto& t : threads) {
    std::sort(t.comments.begin(), t.comments.end(), [](const Comment& a, const Comment& b) {
      return std::tie(a.created_ts, a.comment_id) < std::tie(b.created_ts, b.comment_id);
    });
  }
  return threads;
}

Corpus::Corpus(std::vector<Page> pages, std::vector<PostThread> threads)
    : pages_(std::move(pages)), threads_(std::move(threads)) {
  std::sort(pages_.begin(), pages_.end(), [](const Page& a, const Page& b) { return a.page_id < b.page_id; });
  for (std::size_t i = 0; i < pages_.size(); ++i) page_index_.emplace(pages_[i].page_id, i);
  for (std::size_t t = 0; t < threads_.size(); ++t) {
    thread_index_.emplace(threads_[t].post.post_id, t);
    const auto& comments = threads_[t].comments;
    for (std::size_t c = 0; c < comments.size(); ++c) comment_index_.emplace(comments[c].comment_id, CommentRef{t, c});
  }
}

const Page* Corpus::find_page(std::string_view page_id) const {
  auto it = page_index_.find(std::string(page_id));
  return it == page_index_.end() ? nullptr : &pages_[it->second];
}

const PostThread* Corpus::find_thread(std::string_view post_id) const {
  auto it = thread_index_.find(std::string(post_id));
  return it == thread_index_.end() ? nullptr : &threads_[it->second];
}

std::optional<CommentRef> Corpus::find_comment(std::string_view comment_id) const {
  auto it = comment_index_.find(std::string(comment_id));
  if (it == comment_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Corpus::comment_count() const { return comment_index_.size(); }

std::optional<std::pair<Timestamp, Timestamp>> Corpus::time_range() const {
  if (threads_.empty()) return std::nullopt;
  Timestamp lo = threads_.front().post.created_ts;
  Timestamp hi = lo;
  for (const auto& t : threads_) {
    lo = std::min(lo, t.post.created_ts);
    hi = std::max(hi, t.post.created_ts);
    if (!t.comments.empty()) hi = std::max(hi, t.comments.back().created_ts);
  }
  return std::pair{lo, hi};
}

CorpusRecords Corpus::to_records() const {
  CorpusRecords records;
  records.pages = pages_;
  for (const auto& t : threads_) {
    records.posts.push_back(t.post);
    records.comments.insert(records.comments.end(), t.comments.begin(), t.comments.end());
  }
  return records;
}

IngestResult validate(CorpusRecords records, std::vector<LineError> parse_errors) {
  IngestStats stats;
  stats.errors = std::move(parse_errors);
  auto drop = [&stats](std::string message) {
    ++stats.dropped;
    stats.errors.push_back({0, std::move(message)});
  };

  std::vector<Page> pages;
  std::unordered_set<std::string> page_ids;
  for (auto& p : records.pages) {
    if (!page_ids.insert(p.page_id).second) {
      drop("duplicate page id " + p.page_id);
      continue;
    }
    pages.push_back(std::move(p));
  }

  std::vector<Post> posts;
  std::unordered_map<std::string, Timestamp> post_ts;
  for (auto& p : records.posts) {
    if (!page_ids.contains(p.page_id)) {
      drop("post " + p.post_id + " references unknown page " + p.page_id);
      continue;
    }
    if (!post_ts.emplace(p.post_id, p.created_ts).second) {
      drop("duplicate post id " + p.post_id);
      continue;
    }
    posts.push_back(std::move(p));
  }

  std::vector<Comment> comments;
  std::unordered_set<std::string> comment_ids;
  for (auto& c : records.comments) {
    auto it = post_ts.find(c.post_id);
    if (it == post_ts.end()) {
      drop("comment " + c.comment_id + " references unknown post " + c.post_id);
      continue;
    }
    if (!comment_ids.insert(c.comment_id).second) {
      drop("duplicate comment id " + c.comment_id);
      continue;
    }
    if (c.created_ts < it->second) ++stats.clamped;
    comments.push_back(std::move(c));
  }

  stats.pages = pages.size();
  stats.posts = posts.size();
  stats.comments = comments.size();
  auto threads = build_threads(posts, comments);
  return {Corpus(std::move(pages), std::move(threads)), std::move(stats)};
}

IngestResult ingest(std::istream& in) {
  CorpusRecords records;
  std::vector<LineError> errors;
  parse_stream(in, records, errors, "");
  return validate(std::move(records), std::move(errors));
}

IngestResult ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus file " + path.string());
  return ingest(in);
}

IngestResult ingest(std::span<const std::filesystem::path> paths) {
  CorpusRecords records;
  std::vector<LineError> errors;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read corpus file " + path.string());
    parse_stream(in, records, errors, path.filename().string() + ": ");
  }
  return validate(std::move(records), std::move(errors));
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& p : corpus.pages()) {
    json j = {{"kind", "page"}, {"id", p.page_id}, {"name", p.name}, {"region", std::string(to_string(p.region))}};
    out << j.dump() << '\n';
  }
  for (const auto& t : corpus.threads()) {
    const auto& p = t.post;
    json j = {{"kind", "post"},          {"id", p.post_id},           {"page_id", p.page_id},
              {"author_id", p.author_id}, {"created_ts", p.created_ts}, {"like_count", p.like_count},
              {"text", p.raw_text}};
    out << j.dump() << '\n';
    for (const auto& c : t.comments) {
      json k = {{"kind", "comment"},         {"id", c.comment_id},        {"post_id", c.post_id},
                {"author_id", c.author_id},   {"created_ts", c.created_ts}, {"like_count", c.like_count},
                {"text", c.raw_text}};
      out << k.dump() << '\n';
    }
  }
}

}  // namespace threadsec
