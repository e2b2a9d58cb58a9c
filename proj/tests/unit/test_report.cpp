#include <doctest.h>

#include <random>

#include "psmine/export_parser.hpp"
#include "psmine/render.hpp"
#include "psmine/report.hpp"

#include "corpus_builder.hpp"

using namespace psmine;
using psmine::testing::MessageSpec;
using psmine::testing::build_corpus;
using psmine::testing::ts;

namespace {

const std::filesystem::path kFixtures = PSMINE_FIXTURES_DIR;

ReportOptions fixed_time_options() {
    ReportOptions opt;
    opt.generated_at = "2023-12-01T00:00:00Z";
    return opt;
}

Corpus reply_fixture(const std::string& team, int n_replies) {
    std::vector<MessageSpec> specs;
    std::string root_ts = ts(1000);
    specs.push_back({.channel_id = "C01", .ts = root_ts, .author = "U1", .text = "root",
                     .thread_parent = root_ts});
    for (int i = 0; i < n_replies; ++i)
        specs.push_back({.channel_id = "C01", .ts = ts(1010 + i), .author = "U2",
                         .text = "re " + std::to_string(i), .thread_parent = root_ts});
    return build_corpus(team, specs);
}

}  // namespace

TEST_CASE("percent rendering convention") {
    CHECK(render_percent(Ratio{4, 1000}) == "<1%");    // 0.4%
    CHECK(render_percent(Ratio{1876, 5494}) == "34%"); // 34.15%
    CHECK(render_percent(Ratio{0, 100}) == "0%");
    CHECK(render_percent(Ratio{100, 100}) == "100%");
    CHECK(render_percent(Ratio{1, 100}) == "1%");
    CHECK(render_percent(Ratio{0, 0}) == "—");
    // published triples
    CHECK(render_percent(Ratio{539, 5494}) == "10%");
    CHECK(render_percent(Ratio{160, 7496}) == "2%");
    CHECK(render_percent(Ratio{990, 5494}) == "18%");
    CHECK(render_percent(Ratio{243, 5494}) == "4%");
    CHECK(render_percent(Ratio{1657, 4857}) == "34%");
    CHECK(render_percent(Ratio{541, 2279}) == "24%");
    CHECK(render_percent(Ratio{32, 5494}) == "<1%");  // 0.58%, floored not rounded up
}

TEST_CASE("percent rounding correctness for numeric renders") {
    std::mt19937 rng(42);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 10000);
        const std::int64_t num = static_cast<std::int64_t>(rng() % (den + 1));
        std::string rendered = render_percent(Ratio{num, den});
        if (rendered == "<1%") {
            CHECK(100.0 * num / den < 1.0);
            continue;
        }
        REQUIRE(rendered.back() == '%');
        const double p = std::stod(rendered.substr(0, rendered.size() - 1));
        CHECK(std::abs(p - 100.0 * static_cast<double>(num) / static_cast<double>(den)) <= 0.5);
    }
}

TEST_CASE("duration rendering convention") {
    CHECK(render_duration(DurationStat{12959 * 1000000LL, 1}) == "3:35:59");
    // exact rational just below the second boundary still rounds to it
    CHECK(render_duration(DurationStat{12958999000LL, 1000}) == "3:35:59");
    CHECK(render_duration(DurationStat{1113 * 1000000LL, 1}) == "18:33");
    CHECK(render_duration(DurationStat{5 * 1000000LL, 1}) == "0:05");
    CHECK(render_duration(DurationStat{3600 * 1000000LL, 1}) == "1:00:00");
    CHECK(render_duration(DurationStat{0, 0}) == "—");
}

TEST_CASE("team report composition and determinism") {
    Corpus corpus = parse_export(kFixtures / "team_alpha");
    Lexicon lexicon = default_lexicon();

    SUBCASE("fields equal the independently computed module outputs") {
        TeamReport report = build_team_report(corpus, lexicon, fixed_time_options());
        CHECK(report.usage == compute_usage_metrics(corpus));
        CHECK(report.keywords == tabulate_keywords(corpus, lexicon));
        CHECK(report.emoji == rank_emoji_reactions(corpus, 10));
        CHECK(report.team_id == "team_alpha");
        CHECK(report.lexicon_hash == lexicon.hash());
    }

    SUBCASE("same corpus twice renders byte-identically at a pinned timestamp") {
        TeamReport a = build_team_report(corpus, lexicon, fixed_time_options());
        TeamReport b = build_team_report(corpus, lexicon, fixed_time_options());
        for (RenderFormat f : {RenderFormat::Json, RenderFormat::Csv, RenderFormat::MarkdownTable})
            CHECK(render_team_report(a, f) == render_team_report(b, f));
    }

    SUBCASE("empty corpus gives zero totals and undefined percentages") {
        TeamReport report = build_team_report(build_corpus("empty", {}), lexicon,
                                              fixed_time_options());
        CHECK(report.usage.total_messages == 0);
        CHECK_FALSE(report.usage.pct_messages_with_reply.defined());
        std::string md = render_team_report(report, RenderFormat::MarkdownTable);
        CHECK(md.find("—") != std::string::npos);
    }

    SUBCASE("JSON render round-trips byte-identically") {
        TeamReport report = build_team_report(corpus, lexicon, fixed_time_options());
        std::string rendered = render_team_report(report, RenderFormat::Json);
        TeamReport reparsed = team_report_from_json_text(rendered);
        CHECK(render_team_report(reparsed, RenderFormat::Json) == rendered);
    }
}

TEST_CASE("comparison") {
    Lexicon lexicon = default_lexicon();
    ReportOptions opt = fixed_time_options();

    SUBCASE("identity comparison has all-zero deltas") {
        TeamReport r = build_team_report(parse_export(kFixtures / "team_alpha"), lexicon, opt);
        ComparisonReport c = compare_teams(r, r);
        for (const auto& row : c.usage_rows) {
            CAPTURE(row.id);
            bool zeroish = row.delta_rendered.find("+0") == 0 ||
                           row.delta_rendered.find("0") == 0 ||
                           row.delta_rendered == "—";
            CHECK(zeroish);
        }
    }

    SUBCASE("reply delta of a 10-vs-4 fixture is +6") {
        TeamReport a = build_team_report(reply_fixture("a", 10), lexicon, opt);
        TeamReport b = build_team_report(reply_fixture("b", 4), lexicon, opt);
        ComparisonReport c = compare_teams(a, b);
        for (const auto& row : c.usage_rows)
            if (row.id == "usage.reply_count") CHECK(row.delta_rendered == "+6");
    }

    SUBCASE("usage rows follow the published table order") {
        TeamReport r = build_team_report(reply_fixture("a", 1), lexicon, opt);
        ComparisonReport c = compare_teams(r, r);
        const std::vector<std::string> expected = {
            "usage.total_messages",
            "usage.reply_count",
            "usage.pct_messages_with_reply",
            "usage.avg_time_to_first_reply",
            "usage.avg_gap_between_channel_messages",
            "usage.file_share_count",
            "usage.edit_count",
            "usage.reaction_instance_count",
            "usage.pct_messages_with_reaction",
            "usage.contribution_share_stddev",
            "usage.channel_mention_count",
            "usage.user_mention_count",
        };
        REQUIRE(c.usage_rows.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) CHECK(c.usage_rows[i].id == expected[i]);
    }

    SUBCASE("count deltas negate when roles swap") {
        TeamReport a = build_team_report(reply_fixture("a", 10), lexicon, opt);
        TeamReport b = build_team_report(reply_fixture("b", 4), lexicon, opt);
        ComparisonReport ab = compare_teams(a, b);
        ComparisonReport ba = compare_teams(b, a);
        auto find_row = [](const ComparisonReport& c, const std::string& id) {
            for (const auto& row : c.usage_rows)
                if (row.id == id) return row.delta_rendered;
            return std::string{};
        };
        CHECK(find_row(ab, "usage.reply_count") == "+6");
        CHECK(find_row(ba, "usage.reply_count") == "-6");
        CHECK(find_row(ab, "usage.total_messages") == "+6");
        CHECK(find_row(ba, "usage.total_messages") == "-6");
    }

    SUBCASE("mismatched lexicon hash refuses to compare") {
        TeamReport a = build_team_report(reply_fixture("a", 1), lexicon, opt);
        TeamReport b = a;
        b.lexicon_hash = "different";
        CHECK_THROWS_AS(compare_teams(a, b), ReportError);
    }

    SUBCASE("markdown comparison names both teams") {
        TeamReport a = build_team_report(reply_fixture("high_team", 10), lexicon, opt);
        TeamReport b = build_team_report(reply_fixture("low_team", 4), lexicon, opt);
        std::string md = render_comparison(compare_teams(a, b), RenderFormat::MarkdownTable);
        CHECK(md.find("high_team") != std::string::npos);
        CHECK(md.find("low_team") != std::string::npos);
        CHECK(md.find("Average Time to Reply") != std::string::npos);
    }
}

TEST_CASE("render format names") {
    CHECK(render_format_from_name("markdown-table") == RenderFormat::MarkdownTable);
    CHECK(render_format_from_name("md") == RenderFormat::MarkdownTable);
    CHECK(render_format_from_name("csv") == RenderFormat::Csv);
    CHECK(render_format_from_name("json") == RenderFormat::Json);
    CHECK_THROWS_AS(render_format_from_name("yaml"), ReportError);
}
