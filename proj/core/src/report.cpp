#include "psmine/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>

#include <nlohmann/json.hpp>

#include "psmine/render.hpp"
#include "psmine/version.hpp"

namespace psmine {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string now_utc_iso8601() {
    std::time_t t = std::time(nullptr);
    // SOURCE_DATE_EPOCH pins report timestamps for reproducible runs.
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        long long v = std::strtoll(sde, &end, 10);
        if (end && *end == '\0') t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fixed9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

enum class RowKind { Count, CountPct, Pct, Duration, Share };

struct UsageRowSpec {
    const char* id;
    const char* label;
    RowKind kind;
};

// Published usage-table row order.
constexpr UsageRowSpec kUsageRows[] = {
    {"total_messages", "Total Number of Messages", RowKind::Count},
    {"reply_count", "Number of Replies", RowKind::Count},
    {"pct_messages_with_reply", "% of Messages With at Least One Reply", RowKind::Pct},
    {"avg_time_to_first_reply", "Average Time to Reply", RowKind::Duration},
    {"avg_gap_between_channel_messages", "Average Time Between Messages in a Channel",
     RowKind::Duration},
    {"file_share_count", "Number of File Shares", RowKind::CountPct},
    {"edit_count", "Number of Edits", RowKind::CountPct},
    {"reaction_instance_count", "Number of Emoji Reactions", RowKind::Count},
    {"pct_messages_with_reaction", "% of Messages With at Least One Emoji Reaction",
     RowKind::Pct},
    {"contribution_share_stddev", "Standard Deviation of % Contribution to Total Slack Messages",
     RowKind::Share},
    {"channel_mention_count", "Number of @Channel Mentions", RowKind::CountPct},
    {"user_mention_count", "Number of @User Mentions", RowKind::CountPct},
};

struct UsageRowValue {
    std::int64_t count = 0;
    Ratio ratio;
    DurationStat duration;
    double share = 0.0;
};

UsageRowValue usage_row_value(const UsageMetrics& u, std::string_view id) {
    UsageRowValue v;
    if (id == "total_messages") v.count = u.total_messages;
    else if (id == "reply_count") v.count = u.reply_count;
    else if (id == "pct_messages_with_reply") v.ratio = u.pct_messages_with_reply;
    else if (id == "avg_time_to_first_reply") v.duration = u.avg_time_to_first_reply;
    else if (id == "avg_gap_between_channel_messages") v.duration = u.avg_gap_between_channel_messages;
    else if (id == "file_share_count") { v.count = u.file_share_count; v.ratio = u.pct_file_share; }
    else if (id == "edit_count") { v.count = u.edit_count; v.ratio = u.pct_edited; }
    else if (id == "reaction_instance_count") v.count = u.reaction_instance_count;
    else if (id == "pct_messages_with_reaction") v.ratio = u.pct_messages_with_reaction;
    else if (id == "contribution_share_stddev") v.share = u.contribution_share_stddev;
    else if (id == "channel_mention_count") { v.count = u.channel_mention_count; v.ratio = u.pct_channel_mentions; }
    else if (id == "user_mention_count") { v.count = u.user_mention_count; v.ratio = u.pct_user_mentions; }
    return v;
}

std::string render_usage_cell(const UsageRowValue& v, RowKind kind) {
    switch (kind) {
        case RowKind::Count: return std::to_string(v.count);
        case RowKind::CountPct: return render_count_with_percent(v.count, v.ratio);
        case RowKind::Pct: return render_percent(v.ratio);
        case RowKind::Duration: return render_duration(v.duration);
        case RowKind::Share: return render_share(v.share);
    }
    return {};
}

std::string signed_int(std::int64_t v) {
    return v > 0 ? "+" + std::to_string(v) : std::to_string(v);
}

std::string signed_fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%+.*f", places, v);
    return buf;
}

std::string pp_delta(const Ratio& high, const Ratio& low) {
    if (!high.defined() || !low.defined()) return "—";
    return signed_fixed(100.0 * (high.value() - low.value()), 1) + " pp";
}

std::string ratio_of_counts(std::int64_t high, std::int64_t low) {
    if (low <= 0) return {};
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", static_cast<double>(high) / static_cast<double>(low));
    return buf;
}

std::string duration_delta(const DurationStat& high, const DurationStat& low) {
    if (!high.defined() || !low.defined()) return "—";
    const double secs = high.seconds() - low.seconds();
    const auto rounded = static_cast<std::int64_t>(std::llround(std::abs(secs)));
    std::string body = render_duration_seconds(rounded);
    return (secs < 0 ? "-" : "+") + body;
}

ordered_json ratio_to_json(const Ratio& r) {
    ordered_json j;
    j["num"] = r.num;
    j["den"] = r.den;
    j["rendered"] = render_percent(r);
    return j;
}

Ratio ratio_from_json(const ordered_json& j) {
    return Ratio{j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()};
}

ordered_json duration_to_json(const DurationStat& d) {
    ordered_json j;
    j["sum_micros"] = d.sum_micros;
    j["count"] = d.count;
    j["rendered"] = render_duration(d);
    return j;
}

DurationStat duration_from_json(const ordered_json& j) {
    return DurationStat{j.at("sum_micros").get<std::int64_t>(), j.at("count").get<std::int64_t>()};
}

std::string csv_escape(const std::string& s) {
    bool needs_quote = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += "\\|";
        else out += c;
    }
    return out;
}

}  // namespace

RenderFormat render_format_from_name(std::string_view name) {
    if (name == "markdown-table" || name == "md" || name == "markdown")
        return RenderFormat::MarkdownTable;
    if (name == "csv" || name == "CSV") return RenderFormat::Csv;
    if (name == "json" || name == "JSON") return RenderFormat::Json;
    throw ReportError("unknown render format '" + std::string(name) +
                      "' (markdown-table, csv or json)");
}

std::string_view render_format_name(RenderFormat f) {
    switch (f) {
        case RenderFormat::MarkdownTable: return "markdown-table";
        case RenderFormat::Csv: return "csv";
        case RenderFormat::Json: return "json";
    }
    return "json";
}

TeamReport build_team_report(const Corpus& corpus, const Lexicon& lexicon,
                             const ReportOptions& options) {
    TeamReport report;
    report.team_id = corpus.team_id;
    report.tool_version = kToolVersion;
    report.lexicon_hash = lexicon.hash();
    report.n_emoji = static_cast<std::int64_t>(options.n_emoji);
    report.generated_at = options.generated_at ? *options.generated_at : now_utc_iso8601();
    report.usage = compute_usage_metrics(corpus, options.metrics);
    report.keywords = tabulate_keywords(corpus, lexicon);
    report.emoji = rank_emoji_reactions(corpus, options.n_emoji, options.custom_emoji);
    return report;
}

ComparisonReport compare_teams(const TeamReport& high, const TeamReport& low) {
    if (high.lexicon_hash != low.lexicon_hash)
        throw ReportError("comparison needs reports built with the same lexicon (" +
                          high.lexicon_hash + " vs " + low.lexicon_hash + ")");
    if (high.n_emoji != low.n_emoji)
        throw ReportError("comparison needs reports built with the same emoji ranking depth");

    ComparisonReport comparison;
    comparison.high = high;
    comparison.low = low;

    for (const auto& spec : kUsageRows) {
        const UsageRowValue h = usage_row_value(high.usage, spec.id);
        const UsageRowValue l = usage_row_value(low.usage, spec.id);
        ComparisonRow row;
        row.id = std::string("usage.") + spec.id;
        row.label = spec.label;
        row.high_rendered = render_usage_cell(h, spec.kind);
        row.low_rendered = render_usage_cell(l, spec.kind);
        switch (spec.kind) {
            case RowKind::Count:
                row.delta_rendered = signed_int(h.count - l.count);
                row.ratio_rendered = ratio_of_counts(h.count, l.count);
                break;
            case RowKind::CountPct:
                row.delta_rendered = signed_int(h.count - l.count) + " (" +
                                     pp_delta(h.ratio, l.ratio) + ")";
                row.ratio_rendered = ratio_of_counts(h.count, l.count);
                break;
            case RowKind::Pct:
                row.delta_rendered = pp_delta(h.ratio, l.ratio);
                break;
            case RowKind::Duration:
                row.delta_rendered = duration_delta(h.duration, l.duration);
                break;
            case RowKind::Share:
                row.delta_rendered = signed_fixed(h.share - l.share, 3);
                break;
        }
        comparison.usage_rows.push_back(std::move(row));
    }

    if (high.keywords.rows.size() != low.keywords.rows.size())
        throw ReportError("comparison needs identical keyword tabulation shapes");
    for (std::size_t i = 0; i < high.keywords.rows.size(); ++i) {
        const auto& h = high.keywords.rows[i];
        const auto& l = low.keywords.rows[i];
        if (h.sub_category != l.sub_category)
            throw ReportError("keyword tabulation rows differ: " + h.sub_category + " vs " +
                              l.sub_category);
        ComparisonRow row;
        row.id = "keywords." + h.sub_category;
        row.label = std::string(category_name(h.category)) + " / " + h.sub_category;
        row.high_rendered = render_count_with_percent(h.message_count, h.pct_of_total);
        row.low_rendered = render_count_with_percent(l.message_count, l.pct_of_total);
        row.delta_rendered = signed_int(h.message_count - l.message_count) + " (" +
                             pp_delta(h.pct_of_total, l.pct_of_total) + ")";
        row.ratio_rendered = ratio_of_counts(h.message_count, l.message_count);
        comparison.keyword_rows.push_back(std::move(row));
    }

    return comparison;
}

namespace {

ordered_json team_report_to_json(const TeamReport& r) {
    ordered_json j;
    j["schema"] = kTeamReportSchema;
    j["team_id"] = r.team_id;
    j["tool_version"] = r.tool_version;
    j["lexicon_hash"] = r.lexicon_hash;
    j["n_emoji"] = r.n_emoji;
    j["generated_at"] = r.generated_at;

    ordered_json usage;
    usage["total_messages"] = r.usage.total_messages;
    usage["reply_count"] = r.usage.reply_count;
    usage["replied_root_count"] = r.usage.replied_root_count;
    usage["pct_messages_with_reply"] = ratio_to_json(r.usage.pct_messages_with_reply);
    usage["avg_time_to_first_reply"] = duration_to_json(r.usage.avg_time_to_first_reply);
    usage["avg_gap_between_channel_messages"] =
        duration_to_json(r.usage.avg_gap_between_channel_messages);
    usage["file_share_count"] = r.usage.file_share_count;
    usage["pct_file_share"] = ratio_to_json(r.usage.pct_file_share);
    usage["edit_count"] = r.usage.edit_count;
    usage["pct_edited"] = ratio_to_json(r.usage.pct_edited);
    usage["reaction_instance_count"] = r.usage.reaction_instance_count;
    usage["messages_with_reaction"] = r.usage.messages_with_reaction;
    usage["pct_messages_with_reaction"] = ratio_to_json(r.usage.pct_messages_with_reaction);
    usage["contribution_share_stddev"] = fixed9(r.usage.contribution_share_stddev);
    usage["contributing_authors"] = r.usage.contributing_authors;
    usage["channel_mention_count"] = r.usage.channel_mention_count;
    usage["pct_channel_mentions"] = ratio_to_json(r.usage.pct_channel_mentions);
    usage["user_mention_count"] = r.usage.user_mention_count;
    usage["pct_user_mentions"] = ratio_to_json(r.usage.pct_user_mentions);
    j["usage"] = std::move(usage);

    ordered_json keywords;
    keywords["total_messages"] = r.keywords.total_messages;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.keywords.rows) {
        ordered_json rj;
        rj["category"] = std::string(category_name(row.category));
        rj["sub_category"] = row.sub_category;
        rj["message_count"] = row.message_count;
        rj["pct"] = ratio_to_json(row.pct_of_total);
        rows.push_back(std::move(rj));
    }
    keywords["rows"] = std::move(rows);
    j["keywords"] = std::move(keywords);

    ordered_json emoji;
    emoji["total_reaction_instances"] = r.emoji.total_reaction_instances;
    ordered_json entries = ordered_json::array();
    for (const auto& e : r.emoji.entries) {
        ordered_json ej;
        ej["name"] = e.name;
        ej["instance_count"] = e.instance_count;
        ej["pct"] = ratio_to_json(e.pct_of_all_instances);
        ej["is_custom"] = e.is_custom;
        entries.push_back(std::move(ej));
    }
    emoji["entries"] = std::move(entries);
    j["emoji"] = std::move(emoji);

    return j;
}

TeamReport team_report_from_json(const ordered_json& j) {
    if (j.value("schema", std::string{}) != kTeamReportSchema)
        throw ReportError("team report: unexpected schema marker");
    TeamReport r;
    r.team_id = j.at("team_id").get<std::string>();
    r.tool_version = j.at("tool_version").get<std::string>();
    r.lexicon_hash = j.at("lexicon_hash").get<std::string>();
    r.n_emoji = j.at("n_emoji").get<std::int64_t>();
    r.generated_at = j.at("generated_at").get<std::string>();

    const ordered_json& usage = j.at("usage");
    r.usage.total_messages = usage.at("total_messages").get<std::int64_t>();
    r.usage.reply_count = usage.at("reply_count").get<std::int64_t>();
    r.usage.replied_root_count = usage.at("replied_root_count").get<std::int64_t>();
    r.usage.pct_messages_with_reply = ratio_from_json(usage.at("pct_messages_with_reply"));
    r.usage.avg_time_to_first_reply = duration_from_json(usage.at("avg_time_to_first_reply"));
    r.usage.avg_gap_between_channel_messages =
        duration_from_json(usage.at("avg_gap_between_channel_messages"));
    r.usage.file_share_count = usage.at("file_share_count").get<std::int64_t>();
    r.usage.pct_file_share = ratio_from_json(usage.at("pct_file_share"));
    r.usage.edit_count = usage.at("edit_count").get<std::int64_t>();
    r.usage.pct_edited = ratio_from_json(usage.at("pct_edited"));
    r.usage.reaction_instance_count = usage.at("reaction_instance_count").get<std::int64_t>();
    r.usage.messages_with_reaction = usage.at("messages_with_reaction").get<std::int64_t>();
    r.usage.pct_messages_with_reaction = ratio_from_json(usage.at("pct_messages_with_reaction"));
    r.usage.contribution_share_stddev =
        std::stod(usage.at("contribution_share_stddev").get<std::string>());
    r.usage.contributing_authors = usage.at("contributing_authors").get<std::int64_t>();
    r.usage.channel_mention_count = usage.at("channel_mention_count").get<std::int64_t>();
    r.usage.pct_channel_mentions = ratio_from_json(usage.at("pct_channel_mentions"));
    r.usage.user_mention_count = usage.at("user_mention_count").get<std::int64_t>();
    r.usage.pct_user_mentions = ratio_from_json(usage.at("pct_user_mentions"));

    const ordered_json& keywords = j.at("keywords");
    r.keywords.total_messages = keywords.at("total_messages").get<std::int64_t>();
    for (const auto& rj : keywords.at("rows")) {
        KeywordTabulationRow row;
        auto cat = category_from_name(rj.at("category").get<std::string>());
        if (!cat) throw ReportError("team report: unknown category in keyword row");
        row.category = *cat;
        row.sub_category = rj.at("sub_category").get<std::string>();
        row.message_count = rj.at("message_count").get<std::int64_t>();
        row.pct_of_total = ratio_from_json(rj.at("pct"));
        r.keywords.rows.push_back(std::move(row));
    }

    const ordered_json& emoji = j.at("emoji");
    r.emoji.total_reaction_instances = emoji.at("total_reaction_instances").get<std::int64_t>();
    for (const auto& ej : emoji.at("entries")) {
        EmojiRankingEntry e;
        e.name = ej.at("name").get<std::string>();
        e.instance_count = ej.at("instance_count").get<std::int64_t>();
        e.pct_of_all_instances = ratio_from_json(ej.at("pct"));
        e.is_custom = ej.at("is_custom").get<bool>();
        r.emoji.entries.push_back(std::move(e));
    }

    return r;
}

std::string team_report_to_csv(const TeamReport& r) {
    std::ostringstream out;
    out << "section,metric,count,numerator,denominator,rendered,extra\n";
    auto row = [&out](const std::string& section, const std::string& metric,
                      const std::string& count, const std::string& num, const std::string& den,
                      const std::string& rendered, const std::string& extra) {
        out << section << "," << csv_escape(metric) << "," << count << "," << num << "," << den
            << "," << csv_escape(rendered) << "," << extra << "\n";
    };

    row("meta", "team_id", "", "", "", r.team_id, "");
    row("meta", "tool_version", "", "", "", r.tool_version, "");
    row("meta", "lexicon_hash", "", "", "", r.lexicon_hash, "");

    for (const auto& spec : kUsageRows) {
        const UsageRowValue v = usage_row_value(r.usage, spec.id);
        switch (spec.kind) {
            case RowKind::Count:
                row("usage", spec.id, std::to_string(v.count), "", "", std::to_string(v.count), "");
                break;
            case RowKind::CountPct:
                row("usage", spec.id, std::to_string(v.count), std::to_string(v.ratio.num),
                    std::to_string(v.ratio.den), render_count_with_percent(v.count, v.ratio), "");
                break;
            case RowKind::Pct:
                row("usage", spec.id, "", std::to_string(v.ratio.num),
                    std::to_string(v.ratio.den), render_percent(v.ratio), "");
                break;
            case RowKind::Duration:
                row("usage", spec.id, "", std::to_string(v.duration.sum_micros),
                    std::to_string(v.duration.count), render_duration(v.duration), "");
                break;
            case RowKind::Share:
                row("usage", spec.id, "", "", "", fixed9(v.share), "");
                break;
        }
    }

    for (const auto& k : r.keywords.rows) {
        row("keywords", std::string(category_name(k.category)) + "/" + k.sub_category,
            std::to_string(k.message_count), std::to_string(k.pct_of_total.num),
            std::to_string(k.pct_of_total.den), render_percent(k.pct_of_total), "");
    }

    for (const auto& e : r.emoji.entries) {
        row("emoji", e.name, std::to_string(e.instance_count),
            std::to_string(e.pct_of_all_instances.num),
            std::to_string(e.pct_of_all_instances.den), render_percent(e.pct_of_all_instances),
            e.is_custom ? "custom" : "standard");
    }
    row("emoji", "total_reaction_instances", std::to_string(r.emoji.total_reaction_instances), "",
        "", std::to_string(r.emoji.total_reaction_instances), "");

    return out.str();
}

std::string team_report_to_markdown(const TeamReport& r) {
    std::ostringstream out;
    out << "# Team report: " << r.team_id << "\n\n";
    out << "- tool version: " << r.tool_version << "\n";
    out << "- lexicon: " << r.lexicon_hash << "\n";
    out << "- generated: " << r.generated_at << "\n\n";

    out << "## Platform usage\n\n";
    out << "| Metric | Value |\n|---|---|\n";
    for (const auto& spec : kUsageRows) {
        const UsageRowValue v = usage_row_value(r.usage, spec.id);
        out << "| " << spec.label << " | " << render_usage_cell(v, spec.kind) << " |\n";
    }

    out << "\n## Messages containing keywords\n\n";
    out << "| Category | Sub-category | Messages |\n|---|---|---|\n";
    for (const auto& k : r.keywords.rows) {
        out << "| " << category_name(k.category) << " | " << md_escape(k.sub_category) << " | "
            << render_count_with_percent(k.message_count, k.pct_of_total) << " |\n";
    }

    out << "\n## Top emoji reactions\n\n";
    out << "| Rank | Emoji | Instances |\n|---|---|---|\n";
    for (std::size_t i = 0; i < r.emoji.entries.size(); ++i) {
        const auto& e = r.emoji.entries[i];
        out << "| " << (i + 1) << " | :" << md_escape(e.name) << ":"
            << (e.is_custom ? " (custom)" : "") << " | "
            << render_count_with_percent(e.instance_count, e.pct_of_all_instances) << " |\n";
    }
    out << "\nTotal reaction instances: " << r.emoji.total_reaction_instances << "\n";
    return out.str();
}

}  // namespace

std::string render_team_report(const TeamReport& report, RenderFormat format) {
    switch (format) {
        case RenderFormat::Json: return team_report_to_json(report).dump(2) + "\n";
        case RenderFormat::Csv: return team_report_to_csv(report);
        case RenderFormat::MarkdownTable: return team_report_to_markdown(report);
    }
    throw ReportError("unknown render format");
}

TeamReport team_report_from_json_text(std::string_view text) {
    ordered_json j = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ReportError("team report: malformed JSON");
    return team_report_from_json(j);
}

std::string render_comparison(const ComparisonReport& comparison, RenderFormat format) {
    const TeamReport& high = comparison.high;
    const TeamReport& low = comparison.low;

    if (format == RenderFormat::Json) {
        ordered_json j;
        j["schema"] = kComparisonSchema;
        j["high"] = team_report_to_json(high);
        j["low"] = team_report_to_json(low);
        ordered_json deltas;
        for (const char* section : {"usage", "keywords"}) {
            ordered_json rows = ordered_json::array();
            const auto& src = std::string(section) == "usage" ? comparison.usage_rows
                                                              : comparison.keyword_rows;
            for (const auto& row : src) {
                ordered_json rj;
                rj["id"] = row.id;
                rj["label"] = row.label;
                rj["high"] = row.high_rendered;
                rj["low"] = row.low_rendered;
                rj["delta"] = row.delta_rendered;
                rj["ratio"] = row.ratio_rendered;
                rows.push_back(std::move(rj));
            }
            deltas[section] = std::move(rows);
        }
        j["deltas"] = std::move(deltas);
        return j.dump(2) + "\n";
    }

    if (format == RenderFormat::Csv) {
        std::ostringstream out;
        out << "section,metric,high,low,delta,ratio\n";
        for (const auto& rows : {comparison.usage_rows, comparison.keyword_rows}) {
            for (const auto& row : rows) {
                out << row.id.substr(0, row.id.find('.')) << "," << csv_escape(row.label) << ","
                    << csv_escape(row.high_rendered) << "," << csv_escape(row.low_rendered) << ","
                    << csv_escape(row.delta_rendered) << "," << csv_escape(row.ratio_rendered)
                    << "\n";
            }
        }
        return out.str();
    }

    // Markdown comparison.
    std::ostringstream out;
    out << "# Team comparison\n\n";
    out << "- high team: **" << high.team_id << "**\n";
    out << "- low team: **" << low.team_id << "**\n";
    out << "- lexicon: " << high.lexicon_hash << "\n\n";

    out << "## Platform usage\n\n";
    out << "| Slack Behaviour | High (" << high.team_id << ") | Low (" << low.team_id
        << ") | Δ (high − low) | High/Low |\n|---|---|---|---|---|\n";
    for (const auto& row : comparison.usage_rows) {
        out << "| " << row.label << " | " << row.high_rendered << " | " << row.low_rendered
            << " | " << row.delta_rendered << " | "
            << (row.ratio_rendered.empty() ? "—" : row.ratio_rendered) << " |\n";
    }

    out << "\n## Messages containing keywords\n\n";
    out << "| Sub-category | High (" << high.team_id << ") | Low (" << low.team_id
        << ") | Δ |\n|---|---|---|---|\n";
    for (const auto& row : comparison.keyword_rows) {
        out << "| " << row.label << " | " << row.high_rendered << " | " << row.low_rendered
            << " | " << row.delta_rendered << " |\n";
    }

    out << "\n## Top emoji reactions\n\n";
    out << "| Rank | High (" << high.team_id << ") | Low (" << low.team_id
        << ") |\n|---|---|---|\n";
    const std::size_t ranks = std::max(high.emoji.entries.size(), low.emoji.entries.size());
    auto emoji_cell = [](const TeamReport& r, std::size_t i) -> std::string {
        if (i >= r.emoji.entries.size()) return "—";
        const auto& e = r.emoji.entries[i];
        return ":" + md_escape(e.name) + ":" + (e.is_custom ? " (custom)" : "") + " " +
               render_count_with_percent(e.instance_count, e.pct_of_all_instances);
    };
    for (std::size_t i = 0; i < ranks; ++i) {
        out << "| " << (i + 1) << " | " << emoji_cell(high, i) << " | " << emoji_cell(low, i)
            << " |\n";
    }
    return out.str();
}

}  // namespace psmine
