#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

namespace psmine::zip {

class ZipError : public std::runtime_error {
public:
    explicit ZipError(const std::string& what) : std::runtime_error(what) {}
};

/// Read every file entry of a zip archive into memory, keyed by entry name.
/// Supports the stored and deflate methods, which is all Slack exports use.
/// Directory entries are skipped.
std::map<std::string, std::string> read_zip_archive(const std::filesystem::path& path);

/// True when the file starts with a zip local-file-header signature.
bool looks_like_zip(const std::filesystem::path& path);

}  // namespace psmine::zip
