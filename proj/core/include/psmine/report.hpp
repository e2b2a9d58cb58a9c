#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psmine/corpus.hpp"
#include "psmine/lexicon.hpp"
#include "psmine/metrics.hpp"

namespace psmine {

class ReportError : public std::runtime_error {
public:
    explicit ReportError(const std::string& what) : std::runtime_error(what) {}
};

enum class RenderFormat { MarkdownTable, Csv, Json };

/// Parse "markdown-table"/"md", "csv", "json". Unknown names throw ReportError.
RenderFormat render_format_from_name(std::string_view name);
std::string_view render_format_name(RenderFormat f);

/// Everything the published tabulations need for one team, derived from a
/// single corpus snapshot.
struct TeamReport {
    std::string team_id;
    std::string tool_version;
    std::string lexicon_hash;
    std::int64_t n_emoji = 10;
    std::string generated_at;  // ISO-8601 UTC

    UsageMetrics usage;
    KeywordTabulation keywords;
    EmojiRanking emoji;

    bool operator==(const TeamReport&) const = default;
};

struct ReportOptions {
    MetricsOptions metrics;
    std::size_t n_emoji = 10;
    std::optional<std::set<std::string>> custom_emoji;  // else bundled standard list
    /// Timestamp override for reproducible output; defaults to now (UTC).
    std::optional<std::string> generated_at;
};

TeamReport build_team_report(const Corpus& corpus, const Lexicon& lexicon,
                             const ReportOptions& options = {});

/// One side-by-side row of the comparison. Deltas are high minus low;
/// percentage deltas are percentage points; ratio is high/low where low > 0.
struct ComparisonRow {
    std::string id;     // stable key, e.g. "usage.reply_count"
    std::string label;  // table label
    std::string high_rendered;
    std::string low_rendered;
    std::string delta_rendered;
    std::string ratio_rendered;  // empty when undefined
};

struct ComparisonReport {
    TeamReport high;
    TeamReport low;
    std::vector<ComparisonRow> usage_rows;    // published usage-table row order
    std::vector<ComparisonRow> keyword_rows;  // lexicon entry order
};

/// Build the high/low comparison. Roles are assigned by the caller (from
/// select_extreme_teams). Mismatched lexicon hash or n_emoji throws.
ComparisonReport compare_teams(const TeamReport& high, const TeamReport& low);

std::string render_team_report(const TeamReport& report, RenderFormat format);
std::string render_comparison(const ComparisonReport& comparison, RenderFormat format);

/// Parse a team-report JSON document back (round-trip support).
TeamReport team_report_from_json_text(std::string_view text);

}  // namespace psmine
