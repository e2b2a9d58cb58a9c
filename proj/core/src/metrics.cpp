#include "psmine/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace psmine {

namespace {

std::int64_t clamp_sample(std::int64_t micros, const std::optional<std::int64_t>& cap_seconds) {
    if (cap_seconds && micros > *cap_seconds * 1000000) return *cap_seconds * 1000000;
    return micros;
}

bool contains_token(const std::string& matchable, std::string_view token) {
    return matchable.find(token) != std::string::npos;
}

}  // namespace

UsageMetrics compute_usage_metrics(const Corpus& corpus, const MetricsOptions& options) {
    UsageMetrics m;

    std::map<std::string, std::int64_t> per_author;  // analytic messages per author
    std::int64_t pooled_gap_sum = 0, pooled_gap_count = 0;
    long double per_channel_mean_sum = 0.0L;
    std::int64_t channels_with_gaps = 0;

    for (const auto& [channel_id, msgs] : corpus.messages) {
        std::vector<const Message*> analytic;
        analytic.reserve(msgs.size());
        for (const auto& msg : msgs)
            if (msg.analytic()) analytic.push_back(&msg);

        m.total_messages += static_cast<std::int64_t>(analytic.size());

        // Thread roots: any analytic message some analytic reply points at.
        std::map<std::int64_t, const Message*> by_ts;
        for (const Message* msg : analytic) by_ts.emplace(msg->ts.micros(), msg);
        std::map<std::int64_t, std::int64_t> first_reply;  // root ts -> min reply ts

        for (const Message* msg : analytic) {
            if (msg->is_thread_reply()) {
                ++m.reply_count;
                auto parent = by_ts.find(msg->thread_parent->micros());
                if (parent != by_ts.end()) {
                    auto [it, inserted] = first_reply.emplace(parent->first, msg->ts.micros());
                    if (!inserted) it->second = std::min(it->second, msg->ts.micros());
                }
                // Orphan replies (parent redacted or out of export) still count
                // as replies but cannot enter the latency average.
            }

            if (msg->file_count + msg->url_count >= 1) ++m.file_share_count;
            if (msg->edited) ++m.edit_count;

            if (!msg->reactions.empty()) ++m.messages_with_reaction;
            for (const auto& r : msg->reactions) m.reaction_instance_count += r.count;

            const std::string matchable = normalize_for_matching(msg->text);
            if (contains_token(matchable, "@channel")) ++m.channel_mention_count;
            if (contains_token(matchable, "@user")) ++m.user_mention_count;

            if (msg->author) per_author[*msg->author] += 1;
        }

        m.replied_root_count += static_cast<std::int64_t>(first_reply.size());
        for (const auto& [root_ts, reply_ts] : first_reply) {
            m.avg_time_to_first_reply.sum_micros +=
                clamp_sample(reply_ts - root_ts, options.duration_cap_seconds);
            m.avg_time_to_first_reply.count += 1;
        }

        std::int64_t channel_gap_sum = 0, channel_gap_count = 0;
        for (std::size_t i = 1; i < analytic.size(); ++i) {
            channel_gap_sum += clamp_sample(analytic[i]->ts.micros() - analytic[i - 1]->ts.micros(),
                                            options.duration_cap_seconds);
            ++channel_gap_count;
        }
        pooled_gap_sum += channel_gap_sum;
        pooled_gap_count += channel_gap_count;
        if (channel_gap_count > 0) {
            per_channel_mean_sum += static_cast<long double>(channel_gap_sum) /
                                    static_cast<long double>(channel_gap_count);
            ++channels_with_gaps;
        }
    }

    if (options.gap_mode == GapMode::Pooled) {
        m.avg_gap_between_channel_messages = {pooled_gap_sum, pooled_gap_count};
    } else if (channels_with_gaps > 0) {
        // Mean of per-channel means; a single rounding to whole microseconds.
        const long double mean = per_channel_mean_sum / static_cast<long double>(channels_with_gaps);
        m.avg_gap_between_channel_messages = {static_cast<std::int64_t>(std::llroundl(mean)), 1};
    }

    m.pct_messages_with_reply = {m.replied_root_count, m.total_messages};
    m.pct_file_share = {m.file_share_count, m.total_messages};
    m.pct_edited = {m.edit_count, m.total_messages};
    m.pct_messages_with_reaction = {m.messages_with_reaction, m.total_messages};
    m.pct_channel_mentions = {m.channel_mention_count, m.total_messages};
    m.pct_user_mentions = {m.user_mention_count, m.total_messages};

    // Contribution equality: population stddev of per-author shares of total
    // messages, over consenting authors with at least one message. Authors
    // iterate in sorted order so the floating-point result is reproducible.
    std::vector<double> shares;
    for (const auto& [author, count] : per_author) {
        auto user = corpus.users.find(author);
        if (user != corpus.users.end() && !user->second.consented) continue;
        shares.push_back(static_cast<double>(count) / static_cast<double>(m.total_messages));
    }
    m.contributing_authors = static_cast<std::int64_t>(shares.size());
    if (!shares.empty()) {
        double mean = 0.0;
        for (double s : shares) mean += s;
        mean /= static_cast<double>(shares.size());
        double var = 0.0;
        for (double s : shares) var += (s - mean) * (s - mean);
        var /= static_cast<double>(shares.size());
        m.contribution_share_stddev = std::sqrt(var);
    }

    return m;
}

EmojiRanking rank_emoji_reactions(const Corpus& corpus, std::size_t n,
                                  const std::optional<std::set<std::string>>& custom_set) {
    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;
    for (const auto& [_, msgs] : corpus.messages) {
        for (const auto& msg : msgs) {
            if (!msg.analytic()) continue;
            for (const auto& r : msg.reactions) {
                counts[r.name] += r.count;
                total += r.count;
            }
        }
    }

    std::vector<std::pair<std::string, std::int64_t>> ordered(counts.begin(), counts.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    EmojiRanking ranking;
    ranking.total_reaction_instances = total;
    for (const auto& [name, count] : ordered) {
        if (ranking.entries.size() >= n) break;
        EmojiRankingEntry entry;
        entry.name = name;
        entry.instance_count = count;
        entry.pct_of_all_instances = {count, total};
        entry.is_custom = custom_set ? custom_set->count(name) > 0 : !is_standard_emoji(name);
        ranking.entries.push_back(std::move(entry));
    }
    return ranking;
}

std::set<std::string> load_emoji_names(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot read emoji list " + path.string());
    std::set<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        names.insert(line);
    }
    return names;
}

bool is_standard_emoji(const std::string& name) {
    return standard_emoji_names().count(name) > 0;
}

}  // namespace psmine
