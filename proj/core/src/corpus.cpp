#include "psmine/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace psmine {

namespace {

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

// Mention tokens targeting redacted users are rewritten to this id. It can
// never collide with a real Slack id (those are alphanumeric).
constexpr std::string_view kRedactedMentionId = "REDACTED";

}  // namespace

SlackTs SlackTs::parse(std::string_view text) {
    if (text.empty())
        throw CorpusError("empty timestamp");

    std::string_view secs_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        secs_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
    }
    if (secs_part.empty() || frac_part.size() > 6)
        throw CorpusError("malformed timestamp '" + std::string(text) + "'");
    for (char c : secs_part)
        if (!is_ascii_digit(c))
            throw CorpusError("malformed timestamp '" + std::string(text) + "'");
    for (char c : frac_part)
        if (!is_ascii_digit(c))
            throw CorpusError("malformed timestamp '" + std::string(text) + "'");

    std::int64_t secs = 0;
    auto [p, ec] = std::from_chars(secs_part.data(), secs_part.data() + secs_part.size(), secs);
    if (ec != std::errc{} || p != secs_part.data() + secs_part.size())
        throw CorpusError("malformed timestamp '" + std::string(text) + "'");

    std::int64_t micros = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        micros *= 10;
        if (i < frac_part.size()) micros += frac_part[i] - '0';
    }
    if (secs > (INT64_MAX - micros) / 1000000)
        throw CorpusError("timestamp out of range '" + std::string(text) + "'");
    return SlackTs(secs * 1000000 + micros);
}

std::string SlackTs::str() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%06lld",
                  static_cast<long long>(micros_ / 1000000),
                  static_cast<long long>(micros_ % 1000000));
    return buf;
}

std::size_t Corpus::total_message_count() const {
    std::size_t n = 0;
    for (const auto& [_, msgs] : messages) n += msgs.size();
    return n;
}

std::size_t Corpus::analytic_message_count() const {
    std::size_t n = 0;
    for (const auto& [_, msgs] : messages)
        for (const auto& m : msgs)
            if (m.analytic()) ++n;
    return n;
}

std::uint32_t count_url_tokens(std::string_view raw) {
    std::uint32_t n = 0;
    std::size_t pos = 0;
    while ((pos = raw.find("<http", pos)) != std::string_view::npos) {
        ++n;
        pos += 5;
    }
    return n;
}

std::string normalize_export_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        // &lt; / &gt; first, then &amp;, so "&amp;lt;" unescapes exactly once.
        if (raw.compare(i, 4, "&lt;") == 0) {
            out += '<';
            i += 4;
        } else if (raw.compare(i, 4, "&gt;") == 0) {
            out += '>';
            i += 4;
        } else if (raw.compare(i, 5, "&amp;") == 0) {
            out += '&';
            i += 5;
        } else if (raw.compare(i, 3, "\xe2\x80\x99") == 0 ||
                   raw.compare(i, 3, "\xe2\x80\x98") == 0) {
            // U+2019 / U+2018 typographic apostrophes -> ASCII, so "don't"
            // matches in either form.
            out += '\'';
            i += 3;
        } else {
            out += raw[i];
            ++i;
        }
    }
    return out;
}

std::string normalize_for_matching(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '<') {
            auto close = text.find('>', i + 1);
            if (close != std::string_view::npos) {
                std::string_view token = text.substr(i + 1, close - i - 1);
                if (token.rfind("@", 0) == 0) {
                    out += "@user";
                    i = close + 1;
                    continue;
                }
                if (token.rfind("!channel", 0) == 0 || token.rfind("!here", 0) == 0) {
                    out += "@channel";
                    i = close + 1;
                    continue;
                }
                if (token.rfind("http", 0) == 0) {
                    out += "URL";
                    i = close + 1;
                    continue;
                }
            }
        }
        out += text[i];
        ++i;
    }
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

namespace {

// Rewrite <@id> (optionally <@id|label>) tokens targeting a redacted user.
std::string scrub_mentions(const std::string& text, const std::set<std::string>& user_ids) {
    if (text.find("<@") == std::string::npos) return text;
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text.compare(i, 2, "<@") == 0) {
            auto close = text.find('>', i + 2);
            if (close != std::string::npos) {
                std::string_view token{text.data() + i + 2, close - i - 2};
                std::string id{token.substr(0, token.find('|'))};
                if (user_ids.count(id)) {
                    out += "<@";
                    out += kRedactedMentionId;
                    out += '>';
                    i = close + 1;
                    continue;
                }
            }
        }
        out += text[i];
        ++i;
    }
    return out;
}

Corpus remove_users(const Corpus& corpus, const std::set<std::string>& user_ids,
                    bool mark_non_consenting) {
    Corpus out;
    out.team_id = corpus.team_id;
    out.channels = corpus.channels;
    out.users = corpus.users;
    if (mark_non_consenting) {
        for (const auto& id : user_ids) {
            auto it = out.users.find(id);
            if (it != out.users.end()) it->second.consented = false;
        }
    }

    for (const auto& [channel_id, msgs] : corpus.messages) {
        std::vector<Message> kept;
        kept.reserve(msgs.size());
        for (const auto& msg : msgs) {
            if (msg.author && user_ids.count(*msg.author)) continue;
            Message m = msg;
            m.text = scrub_mentions(m.text, user_ids);
            std::vector<Reaction> reactions;
            reactions.reserve(m.reactions.size());
            for (const auto& r : m.reactions) {
                Reaction nr;
                nr.name = r.name;
                for (const auto& uid : r.user_ids)
                    if (!user_ids.count(uid)) nr.user_ids.push_back(uid);
                if (!r.user_ids.empty()) {
                    nr.count = static_cast<std::uint32_t>(nr.user_ids.size());
                } else {
                    // Export carried only a count; without the user list the
                    // redacted share is unknowable, keep the count as-is.
                    nr.count = r.count;
                }
                if (nr.count > 0) reactions.push_back(std::move(nr));
            }
            m.reactions = std::move(reactions);
            kept.push_back(std::move(m));
        }
        out.messages.emplace(channel_id, std::move(kept));
    }
    return out;
}

}  // namespace

Corpus redact_users(const Corpus& corpus, const std::set<std::string>& user_ids) {
    if (user_ids.empty()) return corpus;
    return remove_users(corpus, user_ids, /*mark_non_consenting=*/true);
}

Corpus restrict_to_authors(const Corpus& corpus, const std::set<std::string>& author_ids) {
    std::set<std::string> excluded;
    for (const auto& [id, _] : corpus.users)
        if (!author_ids.count(id)) excluded.insert(id);
    return remove_users(corpus, excluded, /*mark_non_consenting=*/true);
}

}  // namespace psmine
