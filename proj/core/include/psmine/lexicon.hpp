#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "psmine/corpus.hpp"
#include "psmine/ratio.hpp"

namespace psmine {

class LexiconError : public std::runtime_error {
public:
    explicit LexiconError(const std::string& what) : std::runtime_error(what) {}
};

/// The five psychological-safety behaviour categories.
enum class Category { Voice, Supportive, Unsupportive, Learning, Familiarity };

std::string_view category_name(Category c);
std::optional<Category> category_from_name(std::string_view name);

/// One keyword pattern.
///  - word:   boundary-anchored literal, anchored at both ends ("ya" must not
///            fire inside "yard")
///  - prefix: boundary-anchored stem with any suffix (the table's ".*" stems)
///  - phrase: boundary-anchored multiword literal, anchored at both ends
///  - raw:    verbatim regular expression (ECMAScript), run on matchable text
struct PatternSpec {
    enum class Kind { Word, Prefix, Phrase, Raw };
    Kind kind = Kind::Word;
    std::string body;

    bool operator==(const PatternSpec&) const = default;
};

std::string_view pattern_kind_name(PatternSpec::Kind k);
std::optional<PatternSpec::Kind> pattern_kind_from_name(std::string_view name);

struct LexiconEntry {
    Category category = Category::Voice;
    std::string sub_category;
    std::vector<PatternSpec> patterns;

    bool operator==(const LexiconEntry&) const = default;
};

/// Compiled keyword lexicon. Entries keep document order; sub-category names
/// are unique across the whole lexicon. Immutable once compiled.
class Lexicon {
public:
    /// Validates and compiles. Throws LexiconError naming the offending entry
    /// on schema violations or non-compiling raw patterns.
    static Lexicon compile(std::vector<LexiconEntry> entries);

    const std::vector<LexiconEntry>& entries() const { return entries_; }
    std::optional<std::size_t> find_sub_category(std::string_view name) const;

    /// FNV-1a over the canonical serialization; embedded in reports so output
    /// is attributable to a lexicon revision.
    std::string hash() const;

    /// Compiled regex for a raw pattern, nullptr for the other kinds.
    const std::regex* raw_regex(std::size_t entry, std::size_t pattern) const;

    bool operator==(const Lexicon& other) const { return entries_ == other.entries_; }

private:
    Lexicon() = default;
    std::vector<LexiconEntry> entries_;
    // Parallel to entries_/patterns; raw patterns compile once here.
    std::vector<std::vector<std::shared_ptr<const std::regex>>> compiled_raw_;
};

/// The Table-1 lexicon: 5 categories, 11 sub-categories.
Lexicon default_lexicon();

/// Load a lexicon config document (JSON, human-editable; see README for the
/// schema). Unknown categories and empty pattern lists are rejected.
Lexicon load_lexicon(const std::filesystem::path& config_path);
Lexicon lexicon_from_json_text(std::string_view text, const std::string& origin);

/// Serialize in the config-document schema (stable key order).
std::string lexicon_to_json_text(const Lexicon& lexicon);

/// Half-open character range into the matchable text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const Span&) const = default;
    bool operator<(const Span& o) const {
        return begin != o.begin ? begin < o.begin : end < o.end;
    }
};

struct SubCategoryHit {
    Category category = Category::Voice;
    std::string sub_category;
    std::vector<Span> spans;  // sorted, deduplicated, non-empty

    bool operator==(const SubCategoryHit&) const = default;
};

struct MatchResult {
    std::string channel_id;
    SlackTs ts;
    std::string matchable_text;        // normalize_for_matching(message text)
    std::vector<SubCategoryHit> hits;  // lexicon entry order; at most one per sub-category

    bool has(std::string_view sub_category) const;

    bool operator==(const MatchResult&) const = default;
};

/// Run every lexicon pattern against one message. Matching is
/// case-insensitive and happens on normalize_for_matching(text); a message
/// may hit any number of sub-categories but each at most once.
MatchResult match_message(const Lexicon& lexicon, const Message& message);

struct KeywordTabulationRow {
    Category category = Category::Voice;
    std::string sub_category;
    std::int64_t message_count = 0;
    Ratio pct_of_total;  // message_count / total_messages

    bool operator==(const KeywordTabulationRow&) const = default;
};

struct KeywordTabulation {
    std::vector<KeywordTabulationRow> rows;  // lexicon entry order
    std::int64_t total_messages = 0;         // analytic messages

    bool operator==(const KeywordTabulation&) const = default;
};

/// Per-sub-category message counts over analytic messages. A message counts
/// once per sub-category regardless of occurrence count; sub-categories are
/// independent (no exclusivity).
KeywordTabulation tabulate_keywords(const Corpus& corpus, const Lexicon& lexicon);

struct ConcordanceEntry {
    Message matched;
    std::vector<Span> spans;         // within normalize_for_matching(matched.text)
    std::vector<Message> preceding;  // channel order, truncated at boundaries
    std::vector<Message> following;
};

/// Extract every analytic message hitting `sub_category`, with `context`
/// surrounding channel messages each side, ordered by (channel, ts).
/// Unknown sub-category throws LexiconError listing the valid names.
std::vector<ConcordanceEntry> concordance(const Corpus& corpus, const Lexicon& lexicon,
                                          std::string_view sub_category, std::size_t context);

/// Plain-text concordance report with «...» highlight markers.
std::string render_concordance_text(const std::vector<ConcordanceEntry>& entries,
                                    const Corpus& corpus);

/// JSON-lines form, one entry per line, stable key order.
std::string render_concordance_jsonl(const std::vector<ConcordanceEntry>& entries);

}  // namespace psmine
