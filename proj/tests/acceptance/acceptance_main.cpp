// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Run via ctest (test name "acceptance") or directly.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "psmine/corpus.hpp"
#include "psmine/corpus_json.hpp"
#include "psmine/export_parser.hpp"
#include "psmine/lexicon.hpp"
#include "psmine/metrics.hpp"
#include "psmine/render.hpp"
#include "psmine/report.hpp"
#include "psmine/survey.hpp"

#include "corpus_builder.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using namespace psmine;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kFixtures = PSMINE_FIXTURES_DIR;
const char* kCliPath = PSMINE_CLI_PATH;

struct Checker {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename T, typename U>
    void expect_eq(const T& a, const U& b, const std::string& what) {
        if (!(a == b)) {
            std::ostringstream ss;
            ss << what << " (got '" << a << "', want '" << b << "')";
            failures.push_back(ss.str());
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int run_command(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    return rc < 0 ? rc : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_generated_at(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("generated_at") == std::string::npos &&
            line.find("- generated:") == std::string::npos)
            out << line << "\n";
    return out.str();
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("psmine_acceptance_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------- criterion 1

void criterion_oracle_equivalence(Checker& check) {
    const auto start = Clock::now();
    Lexicon lexicon = default_lexicon();
    for (const char* team : {"team_alpha", "team_beta", "team_gamma"}) {
        Corpus corpus = parse_export(kFixtures / team);
        const std::size_t n = corpus.total_message_count();
        check.expect(n >= 20 && n <= 200,
                     std::string(team) + ": fixture size out of the 20..200 range");

        for (GapMode mode : {GapMode::Pooled, GapMode::PerChannel}) {
            MetricsOptions options;
            options.gap_mode = mode;
            UsageMetrics got = compute_usage_metrics(corpus, options);
            UsageMetrics want = oracle::usage(corpus, options);
            check.expect(got == want, std::string(team) + ": usage metrics differ from oracle");
        }

        KeywordTabulation got_kw = tabulate_keywords(corpus, lexicon);
        KeywordTabulation want_kw = oracle::keywords(corpus, lexicon);
        check.expect(got_kw == want_kw, std::string(team) + ": keyword tabulation differs from oracle");

        for (std::size_t topn : {std::size_t{10}, std::size_t{1000}}) {
            EmojiRanking got_emoji = rank_emoji_reactions(corpus, topn);
            EmojiRanking want_emoji = oracle::emoji(corpus, topn);
            check.expect(got_emoji == want_emoji,
                         std::string(team) + ": emoji ranking differs from oracle");
        }
    }
    check.expect(seconds_since(start) < 1.0, "criterion 1 exceeded 1 s");
}

// ---------------------------------------------------------------- criterion 2

void criterion_rendering(Checker& check) {
    const struct { std::int64_t count, total; const char* want; } triples[] = {
        {539, 5494, "10%"}, {160, 7496, "2%"}, {990, 5494, "18%"}, {243, 5494, "4%"},
        {1657, 4857, "34%"}, {541, 2279, "24%"}, {1876, 5494, "34%"}, {32, 5494, "<1%"},
    };
    for (const auto& t : triples) {
        std::ostringstream what;
        what << "render_percent(" << t.count << "/" << t.total << ")";
        check.expect_eq(render_percent(Ratio{t.count, t.total}), std::string(t.want), what.str());
    }
}

// ---------------------------------------------------------------- criterion 3

Message quick_message(const std::string& text) {
    Message m;
    m.channel_id = "C";
    m.ts = SlackTs::parse("1.000000");
    m.text = text;
    return m;
}

void criterion_lexicon_regression(Checker& check) {
    const auto start = Clock::now();
    Lexicon lexicon = default_lexicon();

    auto hit_set = [&lexicon](const std::string& text) {
        std::set<std::string> names;
        for (const auto& h : match_message(lexicon, quick_message(text)).hits)
            names.insert(h.sub_category);
        return names;
    };

    check.expect(hit_set("I agree that we should buy all 4") == std::set<std::string>{"Agreement"},
                 "quoted agreement message must hit exactly Supportive/Agreement");
    check.expect(hit_set("We talked about so many things I got confused so sorry") ==
                     std::set<std::string>{"Mistakes"},
                 "quoted apology message must hit exactly Voice/Mistakes");
    {
        auto hits = hit_set("I disagree");
        check.expect(hits.count("Critiques") == 1 && hits.count("Agreement") == 0,
                     "'I disagree' must hit Critiques and not Agreement");
    }
    check.expect(hit_set("you're telling me I left RIGHT when this started :sob:")
                     .count("Emojis") == 1,
                 "quoted :sob: message must hit Familiarity/Emojis");
    check.expect(hit_set("").empty(), "empty message must not hit anything");

    // Generated adversarial boundary list: for every literal pattern, the
    // pattern embedded mid-word must not fire; for word/phrase kinds a glued
    // suffix must not fire either, while prefix stems must accept suffixes.
    for (const auto& entry : lexicon.entries()) {
        for (const auto& p : entry.patterns) {
            if (p.kind == PatternSpec::Kind::Raw) continue;
            const std::string embedded = "zz" + p.body + " filler";
            check.expect(hit_set(embedded).count(entry.sub_category) == 0,
                         entry.sub_category + ": '" + embedded + "' must not match");
            if (p.kind == PatternSpec::Kind::Word || p.kind == PatternSpec::Kind::Phrase) {
                const std::string glued = "x " + p.body + "zz y";
                check.expect(hit_set(glued).count(entry.sub_category) == 0,
                             entry.sub_category + ": '" + glued + "' must not match");
            } else {
                const std::string suffixed = "x " + p.body + "zz y";
                check.expect(hit_set(suffixed).count(entry.sub_category) == 1,
                             entry.sub_category + ": prefix '" + suffixed + "' must match");
            }
        }
    }
    check.expect(seconds_since(start) < 1.0, "criterion 3 exceeded 1 s");
}

// ---------------------------------------------------------------- criterion 4

Corpus random_corpus(std::mt19937& rng) {
    static const char* kTexts[] = {
        "yes that works", "sorry about the mess", "what if we pivot?", "thanks all",
        "plain update", "lol nice", "need help here", "shipping today",
        "ping <@U1> about it", "ping <@U2> about it", "<!channel> reminder",
        "docs at <https://x.example/doc>", "I don't know yet", "better this way",
    };
    static const char* kEmoji[] = {"heart", "thumbsup", "fire", "blob_dance", "eyes"};
    static const char* kSubtypes[] = {"channel_join", "channel_topic"};

    const int n_users = 2 + static_cast<int>(rng() % 7);
    std::vector<std::string> users;
    for (int i = 0; i < n_users; ++i) users.push_back("U" + std::to_string(i + 1));

    const int n_channels = 1 + static_cast<int>(rng() % 3);
    const int n_messages = 5 + static_cast<int>(rng() % 36);

    std::vector<psmine::testing::MessageSpec> specs;
    std::vector<std::string> roots_per_channel[3];
    std::int64_t t = 1000;
    for (int i = 0; i < n_messages; ++i) {
        t += 1 + static_cast<std::int64_t>(rng() % 900);
        const int ch = static_cast<int>(rng() % n_channels);
        psmine::testing::MessageSpec spec;
        spec.channel_id = "C0" + std::to_string(ch + 1);
        spec.ts = psmine::testing::ts(t, static_cast<int>(rng() % 1000000));
        spec.author = users[rng() % users.size()];
        spec.text = kTexts[rng() % (sizeof(kTexts) / sizeof(kTexts[0]))];
        if (rng() % 100 < 8) {
            spec.subtype = kSubtypes[rng() % 2];
        } else {
            if (rng() % 100 < 20 && !roots_per_channel[ch].empty())
                spec.thread_parent = roots_per_channel[ch][rng() % roots_per_channel[ch].size()];
            else if (rng() % 100 < 25) {
                spec.thread_parent = spec.ts;
                roots_per_channel[ch].push_back(spec.ts);
            }
            if (rng() % 100 < 15) spec.files = 1 + rng() % 3;
            if (rng() % 100 < 10) spec.urls = 1;
            if (rng() % 100 < 10) spec.edited = true;
            int n_reactions = static_cast<int>(rng() % 3);
            for (int r = 0; r < n_reactions; ++r) {
                Reaction reaction;
                reaction.name = kEmoji[rng() % 5];
                const int k = 1 + static_cast<int>(rng() % n_users);
                for (int u = 0; u < k; ++u) {
                    const std::string& uid = users[(rng() + u) % users.size()];
                    if (std::find(reaction.user_ids.begin(), reaction.user_ids.end(), uid) ==
                        reaction.user_ids.end())
                        reaction.user_ids.push_back(uid);
                }
                reaction.count = static_cast<std::uint32_t>(reaction.user_ids.size());
                bool dup = false;
                for (const auto& existing : spec.reactions)
                    if (existing.name == reaction.name) dup = true;
                if (!dup) spec.reactions.push_back(std::move(reaction));
            }
        }
        specs.push_back(std::move(spec));
    }
    return psmine::testing::build_corpus("rand", specs);
}

std::int64_t total_reaction_instances(const Corpus& corpus) {
    std::int64_t n = 0;
    for (const auto& [_, msgs] : corpus.messages)
        for (const auto& m : msgs)
            for (const auto& r : m.reactions) n += r.count;
    return n;
}

void criterion_redaction_properties(Checker& check) {
    std::mt19937 rng(20240101);
    Lexicon lexicon = default_lexicon();
    int violations = 0;

    for (int trial = 0; trial < 1000 && violations == 0; ++trial) {
        Corpus corpus = random_corpus(rng);

        std::set<std::string> targets;
        const int n_targets = static_cast<int>(rng() % 4);
        for (int i = 0; i < n_targets; ++i)
            targets.insert("U" + std::to_string(1 + rng() % 9));  // may name unknown users
        if (rng() % 10 == 0) targets.insert("UNKNOWN_USER");

        Corpus redacted = redact_users(corpus, targets);

        // never increases any count
        UsageMetrics before = compute_usage_metrics(corpus);
        UsageMetrics after = compute_usage_metrics(redacted);
        const std::int64_t befores[] = {before.total_messages, before.reply_count,
                                        before.replied_root_count, before.file_share_count,
                                        before.edit_count, before.reaction_instance_count,
                                        before.messages_with_reaction, before.channel_mention_count,
                                        before.user_mention_count};
        const std::int64_t afters[] = {after.total_messages, after.reply_count,
                                       after.replied_root_count, after.file_share_count,
                                       after.edit_count, after.reaction_instance_count,
                                       after.messages_with_reaction, after.channel_mention_count,
                                       after.user_mention_count};
        for (int i = 0; i < 9; ++i) {
            if (afters[i] > befores[i]) {
                check.expect(false, "trial " + std::to_string(trial) + ": usage count " +
                                        std::to_string(i) + " increased under redaction");
                ++violations;
            }
        }
        if (total_reaction_instances(redacted) > total_reaction_instances(corpus)) {
            check.expect(false, "trial " + std::to_string(trial) + ": reaction total increased");
            ++violations;
        }

        // idempotence
        if (!(redact_users(redacted, targets) == redacted)) {
            check.expect(false, "trial " + std::to_string(trial) + ": redaction not idempotent");
            ++violations;
        }

        // removed traces: authored messages, reaction participation, mention targets
        for (const auto& [_, msgs] : redacted.messages) {
            for (const auto& m : msgs) {
                if (m.author && targets.count(*m.author)) {
                    check.expect(false, "trial " + std::to_string(trial) + ": authored trace left");
                    ++violations;
                }
                for (const auto& r : m.reactions)
                    for (const auto& uid : r.user_ids)
                        if (targets.count(uid)) {
                            check.expect(false,
                                         "trial " + std::to_string(trial) + ": reaction trace left");
                            ++violations;
                        }
                for (const auto& target : targets)
                    if (m.text.find("<@" + target + ">") != std::string::npos) {
                        check.expect(false,
                                     "trial " + std::to_string(trial) + ": mention trace left");
                        ++violations;
                    }
            }
        }

        // keyword counts monotone (heavier, spot-checked every 10th trial)
        if (trial % 10 == 0) {
            KeywordTabulation kb = tabulate_keywords(corpus, lexicon);
            KeywordTabulation ka = tabulate_keywords(redacted, lexicon);
            for (std::size_t i = 0; i < kb.rows.size(); ++i)
                if (ka.rows[i].message_count > kb.rows[i].message_count) {
                    check.expect(false, "trial " + std::to_string(trial) +
                                            ": keyword count increased under redaction");
                    ++violations;
                }
        }
    }
}

// ---------------------------------------------------------------- criterion 5

void criterion_survey(Checker& check) {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> item(1, 7);

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SurveyResponse> batch;
        const int n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) {
            SurveyResponse r;
            r.team_id = "t";
            r.period = 1;
            r.respondent = "r" + std::to_string(i);
            for (auto& v : r.items) v = item(rng);
            batch.push_back(std::move(r));
        }
        const std::set<int> reverse = trial % 2 == 0 ? std::set<int>{} : std::set<int>{1, 3, 5};

        // independent oracle in long double
        long double sum_scores = 0;
        std::vector<long double> scores;
        for (const auto& r : batch) {
            long double s = 0;
            for (int i = 0; i < 7; ++i) {
                int v = r.items[static_cast<std::size_t>(i)];
                if (reverse.count(i + 1)) v = 8 - v;
                s += v;
            }
            scores.push_back(s / 7.0L);
            sum_scores += s / 7.0L;
        }
        const long double mean = sum_scores / scores.size();
        long double var = 0;
        for (long double s : scores) var += (s - mean) * (s - mean);
        var /= scores.size();
        const long double stddev = std::sqrt(static_cast<double>(var));

        PsScore got = score_period(batch, reverse);
        check.expect(std::abs(got.mean - static_cast<double>(mean)) < 1e-9,
                     "trial " + std::to_string(trial) + ": mean deviates from oracle");
        check.expect(std::abs(got.stddev - static_cast<double>(stddev)) < 1e-9,
                     "trial " + std::to_string(trial) + ": stddev deviates from oracle");

        // reversal involution
        std::vector<SurveyResponse> reversed = batch;
        for (auto& r : reversed)
            for (int idx : {1, 3, 5})
                r.items[static_cast<std::size_t>(idx - 1)] =
                    8 - r.items[static_cast<std::size_t>(idx - 1)];
        PsScore plain = score_period(batch, {});
        PsScore via = score_period(reversed, {1, 3, 5});
        check.expect(std::abs(plain.mean - via.mean) < 1e-12 &&
                         std::abs(plain.stddev - via.stddev) < 1e-12,
                     "trial " + std::to_string(trial) + ": reversal is not an involution");
    }

    // figure-shaped synthetic selection
    std::vector<PsScore> scores;
    auto add = [&scores](const std::string& team, double m1, double m2, double m3) {
        const double means[] = {m1, m2, m3};
        for (int p = 0; p < 3; ++p) {
            PsScore s;
            s.team_id = team;
            s.period = p + 1;
            s.mean = means[p];
            s.n_respondents = 5;
            scores.push_back(std::move(s));
        }
    };
    add("team1", 5.5, 5.6, 5.7);
    add("team2", 6.0, 6.0, 6.1);
    add("team3", 5.8, 5.7, 5.9);
    add("team4", 5.4, 5.5, 5.3);
    add("team5", 6.5, 5.2, 6.4);
    add("team6", 4.6, 5.0, 5.4);
    TeamSelection sel = select_extreme_teams(scores);
    check.expect_eq(sel.low_team, std::string("team6"), "figure-shaped input: low team");
    check.expect_eq(sel.high_team, std::string("team2"), "figure-shaped input: high team");
}

// ---------------------------------------------------------------- criterion 6

void criterion_determinism(Checker& check) {
    const fs::path out1 = fresh_dir("det1");
    const fs::path out2 = fresh_dir("det2");
    const fs::path out3 = fresh_dir("det3");

    auto analyze_cmd = [&](const fs::path& out, bool pin) {
        std::ostringstream cmd;
        if (pin) cmd << "SOURCE_DATE_EPOCH=1700000000 ";
        cmd << '"' << kCliPath << '"' << " analyze"
            << " --export \"" << (kFixtures / "team_alpha").string() << '"'
            << " --export \"" << (kFixtures / "team_beta").string() << '"'
            << " --survey \"" << (kFixtures / "survey.csv").string() << '"'
            << " --out-dir \"" << out.string() << "\" > /dev/null 2>&1";
        return cmd.str();
    };

    check.expect_eq(run_command(analyze_cmd(out1, true)), 0, "pinned analyze run 1 exit status");
    check.expect_eq(run_command(analyze_cmd(out2, true)), 0, "pinned analyze run 2 exit status");
    check.expect_eq(run_command(analyze_cmd(out3, false)), 0, "unpinned analyze run exit status");

    std::vector<std::string> names;
    for (const auto& item : fs::directory_iterator(out1))
        names.push_back(item.path().filename().string());
    std::sort(names.begin(), names.end());
    check.expect(names.size() >= 10, "analyze produced fewer files than expected");

    for (const auto& name : names) {
        check.expect(fs::exists(out2 / name) && fs::exists(out3 / name),
                     name + " missing from a repeat run");
        check.expect(slurp(out1 / name) == slurp(out2 / name),
                     name + " differs between identical pinned runs");
        check.expect(strip_generated_at(slurp(out1 / name)) ==
                         strip_generated_at(slurp(out3 / name)),
                     name + " differs beyond timestamps between pinned and unpinned runs");
    }

    // JSON report round-trip
    const std::string rendered = slurp(out1 / "team_alpha.report.json");
    TeamReport reparsed = team_report_from_json_text(rendered);
    check.expect(render_team_report(reparsed, RenderFormat::Json) == rendered,
                 "team report JSON does not round-trip byte-identically");

    // corpus dump round-trip through the validate subcommand
    const fs::path dump = out1 / "corpus_dump.json";
    std::ostringstream val;
    val << '"' << kCliPath << '"' << " validate --export \""
        << (kFixtures / "team_alpha").string() << "\" --dump-corpus \"" << dump.string()
        << "\" > /dev/null 2>&1";
    check.expect_eq(run_command(val.str()), 0, "validate --dump-corpus exit status");
    Corpus corpus = read_corpus_json(dump);
    check.expect(corpus == parse_export(kFixtures / "team_alpha"),
                 "corpus dump does not round-trip deep-equal");
}

// ---------------------------------------------------------------- criterion 7

void write_scale_export(const fs::path& dir) {
    fs::create_directories(dir);
    std::ofstream channels(dir / "channels.json");
    channels << "[";
    for (int c = 0; c < 5; ++c)
        channels << (c ? "," : "") << "\n {\"id\": \"C" << c << "\", \"name\": \"chan" << c
                 << "\"}";
    channels << "\n]\n";
    std::ofstream users(dir / "users.json");
    users << "[";
    for (int u = 0; u < 30; ++u)
        users << (u ? "," : "") << "\n {\"id\": \"U" << u << "\", \"name\": \"user" << u << "\"}";
    users << "\n]\n";

    static const char* kTexts[] = {
        "yes let's go", "sorry about that", "what time works?", "thanks everyone",
        "status update", "lol", "can someone help", "shipped the part",
        "<!channel> demo tomorrow", "notes <https://docs.example/x>", "I don't know yet",
        "better to wait", "any thoughts?", "share the doc please", "haha nice one",
        "ping <@U3> for review",
    };
    std::mt19937 rng(777);
    for (int c = 0; c < 5; ++c) {
        fs::create_directories(dir / ("chan" + std::to_string(c)));
        std::ofstream day(dir / ("chan" + std::to_string(c)) / "2023-11-20.json");
        day << "[";
        std::int64_t t = 1700300000 + c;
        std::vector<std::string> roots;
        for (int i = 0; i < 2000; ++i) {
            t += 5 + rng() % 240;
            std::ostringstream ts;
            ts << t << "." << std::setw(6) << std::setfill('0') << rng() % 1000000;
            day << (i ? "," : "") << "\n {\"type\": \"message\", \"user\": \"U" << rng() % 30
                << "\", \"ts\": \"" << ts.str() << "\", \"text\": \""
                << kTexts[rng() % (sizeof(kTexts) / sizeof(kTexts[0]))] << "\"";
            if (rng() % 100 < 20 && !roots.empty())
                day << ", \"thread_ts\": \"" << roots[rng() % roots.size()] << "\"";
            else if (rng() % 100 < 20) {
                day << ", \"thread_ts\": \"" << ts.str() << "\"";
                roots.push_back(ts.str());
            }
            if (rng() % 100 < 25)
                day << ", \"reactions\": [{\"name\": \"heart\", \"users\": [\"U1\", \"U2\"], "
                       "\"count\": 2}]";
            if (rng() % 100 < 10) day << ", \"files\": [{\"id\": \"F1\"}]";
            day << "}";
        }
        day << "\n]\n";
    }
}

void criterion_scale(Checker& check) {
    const fs::path export_dir = fresh_dir("scale") / "team_scale";
    write_scale_export(export_dir);
    const fs::path out = fresh_dir("scale_out");

    std::ostringstream cmd;
    cmd << '"' << kCliPath << '"' << " analyze --export \"" << export_dir.string()
        << "\" --out-dir \"" << out.string() << "\" > /dev/null 2>&1";

    const auto start = Clock::now();
    const int rc = run_command(cmd.str());
    const double elapsed = seconds_since(start);

    check.expect_eq(rc, 0, "scale analyze exit status");
    check.expect(fs::exists(out / "team_scale.report.json"), "scale run produced no report");
    Corpus corpus = parse_export(export_dir);
    check.expect_eq(corpus.total_message_count(), std::size_t{10000}, "scale corpus size");
    std::ostringstream what;
    what << "scale run took " << elapsed << " s (budget 5 s)";
    check.expect(elapsed < 5.0, what.str());
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Checker&)> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "oracle equivalence on bundled fixtures", criterion_oracle_equivalence},
        {2, "percent rendering matches the published (count, total, percent) triples",
         criterion_rendering},
        {3, "lexicon regression: quoted messages and boundary anchoring", criterion_lexicon_regression},
        {4, "redaction invariants over 1000 random corpora", criterion_redaction_properties},
        {5, "survey scoring oracle, involution and extreme-team selection", criterion_survey},
        {6, "determinism and round-trips across repeated analyze runs", criterion_determinism},
        {7, "10k-message export analyzes end-to-end under 5 s", criterion_scale},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Checker check;
        const auto start = Clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("unhandled exception: ") + e.what());
        }
        const double elapsed = seconds_since(start);
        if (check.failures.empty()) {
            std::printf("PASS  criterion %d: %s (%.2f s)\n", criterion.id, criterion.title, elapsed);
        } else {
            ++failed;
            std::printf("FAIL  criterion %d: %s (%.2f s)\n", criterion.id, criterion.title, elapsed);
            for (const auto& f : check.failures) std::printf("      - %s\n", f.c_str());
        }
    }
    return failed == 0 ? 0 : 1;
}
