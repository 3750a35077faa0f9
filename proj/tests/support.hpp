#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "threadsec/corpus.hpp"

namespace testsupport {

inline threadsec::Comment comment(std::string id, std::string post, std::string author, threadsec::Timestamp ts,
                                  std::int64_t likes = 0, std::string text = "") {
  return {std::move(id), std::move(post), std::move(author), ts, likes, std::move(text)};
}

inline threadsec::Post post(std::string id, std::string page, threadsec::Timestamp ts, std::int64_t likes = 0) {
  return {std::move(id), std::move(page), "author", ts, likes, ""};
}

inline threadsec::Corpus corpus(std::vector<threadsec::Page> pages, std::vector<threadsec::Post> posts,
                                std::vector<threadsec::Comment> comments) {
  return threadsec::validate({std::move(pages), std::move(posts), std::move(comments)}).corpus;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("threadsec_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testsupport
