#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psmine {

/// Error raised by corpus construction and loading; carries enough context
/// to name the offending file/channel/record.
class CorpusError : public std::runtime_error {
public:
    explicit CorpusError(const std::string& what) : std::runtime_error(what) {}
};

/// Slack message timestamp: epoch seconds with up to six fractional digits
/// ("1672531200.000100"). Stored as integer microseconds so ordering and
/// arithmetic are exact.
class SlackTs {
public:
    SlackTs() = default;
    explicit SlackTs(std::int64_t micros) : micros_(micros) {}

    /// Parse the decimal-string form. Throws CorpusError on anything that is
    /// not a non-negative decimal with <= 6 fractional digits.
    static SlackTs parse(std::string_view text);

    std::int64_t micros() const { return micros_; }

    /// Canonical "seconds.micros" rendering, always six fractional digits.
    std::string str() const;

    friend auto operator<=>(const SlackTs&, const SlackTs&) = default;

private:
    std::int64_t micros_ = 0;
};

struct Reaction {
    std::string name;                    // shortcode, no surrounding colons
    std::vector<std::string> user_ids;   // reacting users
    std::uint32_t count = 0;             // == user_ids.size() when users known

    bool operator==(const Reaction&) const = default;
};

struct Message {
    std::string channel_id;
    SlackTs ts;
    std::optional<std::string> author;
    std::string text;                    // corpus-normalized (see parse_export)
    std::optional<SlackTs> thread_parent;
    std::vector<Reaction> reactions;
    std::uint32_t file_count = 0;
    std::uint32_t url_count = 0;
    bool edited = false;
    std::optional<std::string> subtype;  // set => system message, excluded from totals

    /// True for human messages that enter analytic totals.
    bool analytic() const { return !subtype.has_value(); }

    /// True when this message is a reply inside someone else's thread.
    bool is_thread_reply() const {
        return thread_parent.has_value() && *thread_parent != ts;
    }

    bool operator==(const Message&) const = default;
};

struct UserInfo {
    std::string display_name;
    bool consented = true;

    bool operator==(const UserInfo&) const = default;
};

/// Normalized, immutable view of one team's workspace export. Channel message
/// lists are strictly sorted by ts; downstream computations are pure
/// functions of this structure.
struct Corpus {
    std::string team_id;
    std::map<std::string, UserInfo> users;        // user_id -> info
    std::map<std::string, std::string> channels;  // channel_id -> name
    std::map<std::string, std::vector<Message>> messages;  // channel_id -> sorted

    std::size_t total_message_count() const;
    std::size_t analytic_message_count() const;

    bool operator==(const Corpus&) const = default;
};

/// Remove every trace of the listed users: their messages (thread replies
/// included), their reaction participation, and mention tokens that target
/// them. Listed users are kept in the roster flagged non-consenting.
/// Unknown ids are no-ops; the operation is idempotent.
Corpus redact_users(const Corpus& corpus, const std::set<std::string>& user_ids);

/// Keep only messages and reaction participation of the listed authors.
/// Everyone else is removed as in redact_users.
Corpus restrict_to_authors(const Corpus& corpus, const std::set<std::string>& author_ids);

/// Prepare corpus-normalized text for keyword matching: <@U...> -> "@user",
/// <!channel>/<!here> -> "@channel", <http...> link tokens -> "URL", then
/// ASCII lower-casing.
std::string normalize_for_matching(std::string_view text);

/// Slack export entity unescape (&lt; &gt; &amp;) plus typographic
/// apostrophe normalization. Applied once at parse time.
std::string normalize_export_text(std::string_view raw);

/// Number of <http...> link tokens in raw (pre-unescape) export text.
std::uint32_t count_url_tokens(std::string_view raw);

}  // namespace psmine
