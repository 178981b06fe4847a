#pragma once

#include <filesystem>
#include <string>

namespace radgab {

/// Locale-independent shortest form with 17 significant digits.
std::string format_double(double value);

/// Writes content to path via a sibling temporary file and a rename, so a
/// reader never observes a partially written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace radgab
