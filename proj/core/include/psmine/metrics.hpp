#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psmine/corpus.hpp"
#include "psmine/ratio.hpp"

namespace psmine {

/// How inter-message gaps are aggregated across channels.
enum class GapMode {
    Pooled,      // every consecutive delta pooled into one mean (default)
    PerChannel,  // mean of per-channel means
};

struct MetricsOptions {
    GapMode gap_mode = GapMode::Pooled;
    /// Clamp each latency/gap sample to this many seconds before averaging.
    /// Disabled by default; the published averages are uncapped.
    std::optional<std::int64_t> duration_cap_seconds;

    bool operator==(const MetricsOptions&) const = default;
};

/// Platform-usage statistics for one corpus. Counts cover analytic
/// (non-system) messages only; every pct field is count/total_messages kept
/// exact until render time.
struct UsageMetrics {
    std::int64_t total_messages = 0;

    std::int64_t reply_count = 0;           // thread-reply messages
    std::int64_t replied_root_count = 0;    // roots with >=1 surviving reply
    Ratio pct_messages_with_reply;          // replied_root_count / total
    DurationStat avg_time_to_first_reply;   // mean (first reply ts - root ts)
    DurationStat avg_gap_between_channel_messages;

    std::int64_t file_share_count = 0;      // messages with files or URL tokens
    Ratio pct_file_share;
    std::int64_t edit_count = 0;
    Ratio pct_edited;

    std::int64_t reaction_instance_count = 0;  // sum of Reaction.count
    std::int64_t messages_with_reaction = 0;
    Ratio pct_messages_with_reaction;

    /// Population standard deviation of per-author shares of total messages,
    /// over consenting authors with at least one message. In [0, 0.5].
    double contribution_share_stddev = 0.0;
    std::int64_t contributing_authors = 0;

    std::int64_t channel_mention_count = 0;  // messages with an @channel/@here token
    Ratio pct_channel_mentions;
    std::int64_t user_mention_count = 0;     // messages with an @user token
    Ratio pct_user_mentions;

    bool operator==(const UsageMetrics&) const = default;
};

UsageMetrics compute_usage_metrics(const Corpus& corpus, const MetricsOptions& options = {});

struct EmojiRankingEntry {
    std::string name;
    std::int64_t instance_count = 0;
    Ratio pct_of_all_instances;
    bool is_custom = false;

    bool operator==(const EmojiRankingEntry&) const = default;
};

/// Top-n emoji reactions by instance count (ties broken lexicographically by
/// name). Percentages are against all reaction instances, not just the
/// listed ones.
struct EmojiRanking {
    std::vector<EmojiRankingEntry> entries;
    std::int64_t total_reaction_instances = 0;

    bool operator==(const EmojiRanking&) const = default;
};

/// `custom_set`, when given, decides is_custom directly; otherwise a name is
/// custom when it is not in the bundled standard-shortcode list.
EmojiRanking rank_emoji_reactions(const Corpus& corpus, std::size_t n,
                                  const std::optional<std::set<std::string>>& custom_set = std::nullopt);

/// Bundled standard emoji shortcodes (sorted). Mirrors core/data/standard_emoji.txt.
const std::set<std::string>& standard_emoji_names();

/// Load a one-name-per-line shortcode list ('#' comments and blanks ignored).
std::set<std::string> load_emoji_names(const std::filesystem::path& path);

bool is_standard_emoji(const std::string& name);

}  // namespace psmine
