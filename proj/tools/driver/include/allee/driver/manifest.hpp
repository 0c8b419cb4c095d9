#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace allee::driver {

// Lowercase hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

// Writes "<sha256>  <path relative to root>" lines, sorted by path, to root/manifest.txt.
std::filesystem::path write_manifest(const std::filesystem::path& root, std::vector<std::filesystem::path> files);

}  // namespace allee::driver
