#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace threadsec::io {

/// Shortest round-trip decimal form.
std::string format_double(double value);

std::vector<std::string> split(std::string_view line, char sep);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view field);

/// Throws IoError on failure; creates parent directories.
std::ofstream open_output(const std::filesystem::path& path);

/// FNV-1a 64-bit, used for stable identifiers and output fingerprints.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

std::string read_file(const std::filesystem::path& path);

}  // namespace threadsec::io
