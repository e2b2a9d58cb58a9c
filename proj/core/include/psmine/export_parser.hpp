#pragma once

#include <filesystem>
#include <string>

#include "psmine/corpus.hpp"

namespace psmine {

/// Structured failure while reading an export archive. `where` names the
/// file (and record index, when known) that broke.
class ParseError : public CorpusError {
public:
    ParseError(std::string where, const std::string& what)
        : CorpusError(where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// Parse a Slack-style workspace export into a Corpus. `archive_path` may be
/// an unzipped export directory or a .zip archive; the layout is the standard
/// one: channels.json, users.json, one directory per channel with per-day
/// message files. The team id defaults to the archive's stem.
///
/// Normalization applied per message: HTML entity unescape, typographic
/// apostrophes to ASCII, url/file counts, edit flag, system subtype retained
/// but flagged. Channel lists come out strictly sorted by ts.
Corpus parse_export(const std::filesystem::path& archive_path);
Corpus parse_export(const std::filesystem::path& archive_path, const std::string& team_id);

}  // namespace psmine
