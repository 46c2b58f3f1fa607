#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace pc4pm {

// Both throw Error(kIo) on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Writes to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace pc4pm
