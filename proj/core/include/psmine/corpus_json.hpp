#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "psmine/corpus.hpp"

namespace psmine {

/// Normalized corpus dump: a single JSON document with stable key order.
/// corpus_from_json(corpus_to_json(c)) is deep-equal to c.
std::string corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(std::string_view text);

void write_corpus_json(const Corpus& corpus, const std::filesystem::path& path);
Corpus read_corpus_json(const std::filesystem::path& path);

}  // namespace psmine
