// psmine: psychological-safety signal mining over Slack-style workspace
// exports. Subcommands: analyze, concordance, validate, lexicon print.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psmine/corpus.hpp"
#include "psmine/corpus_json.hpp"
#include "psmine/export_parser.hpp"
#include "psmine/lexicon.hpp"
#include "psmine/metrics.hpp"
#include "psmine/report.hpp"
#include "psmine/survey.hpp"
#include "psmine/version.hpp"

namespace fs = std::filesystem;
using namespace psmine;

namespace {

struct CommonOptions {
    std::vector<std::string> exports;
    std::string redact_path;
    std::string lexicon_path;
    std::string authors;  // comma list; empty = all consenting authors
};

struct AnalyzeOptions {
    CommonOptions common;
    std::string survey_path;
    std::string out_dir = ".";
    std::string formats = "json,csv,md";
    int top_emoji = 10;
    std::string gap_mode = "pooled";
    long long duration_cap = 0;  // seconds; 0 = off
    std::string reverse_items = "1,3,5";
    std::string custom_emoji_path;
};

std::set<std::string> parse_comma_set(const std::string& csv) {
    std::set<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(item);
    return out;
}

std::set<std::string> load_id_list(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot read id list " + path.string());
    std::set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        ids.insert(line);
    }
    return ids;
}

std::set<int> parse_reverse_items(const std::string& text) {
    std::set<int> items;
    if (text == "none" || text.empty()) return items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = std::stoi(item);
        if (v < 1 || v > kSurveyItemCount)
            throw SurveyError("reverse item index out of 1..7: " + item);
        items.insert(v);
    }
    return items;
}

Lexicon load_lexicon_or_default(const std::string& path) {
    return path.empty() ? default_lexicon() : load_lexicon(path);
}

Corpus prepare_corpus(const std::string& export_path, const CommonOptions& common) {
    Corpus corpus = parse_export(export_path);
    if (!common.redact_path.empty())
        corpus = redact_users(corpus, load_id_list(common.redact_path));
    if (!common.authors.empty())
        corpus = restrict_to_authors(corpus, parse_comma_set(common.authors));
    return corpus;
}

std::vector<RenderFormat> parse_formats(const std::string& csv) {
    std::vector<RenderFormat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(render_format_from_name(item));
    if (out.empty()) throw ReportError("no output format selected");
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ReportError("cannot write " + path.string());
    out << content;
    std::cout << "wrote " << path.string() << "\n";
}

const char* format_extension(RenderFormat f) {
    switch (f) {
        case RenderFormat::Json: return "json";
        case RenderFormat::Csv: return "csv";
        case RenderFormat::MarkdownTable: return "md";
    }
    return "json";
}

int run_analyze(const AnalyzeOptions& opt) {
    const std::vector<RenderFormat> formats = parse_formats(opt.formats);
    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);

    Lexicon lexicon = load_lexicon_or_default(opt.common.lexicon_path);

    ReportOptions report_options;
    report_options.n_emoji = static_cast<std::size_t>(opt.top_emoji);
    if (opt.gap_mode == "pooled") report_options.metrics.gap_mode = GapMode::Pooled;
    else if (opt.gap_mode == "per-channel") report_options.metrics.gap_mode = GapMode::PerChannel;
    else throw ReportError("unknown gap mode '" + opt.gap_mode + "' (pooled or per-channel)");
    if (opt.duration_cap > 0) report_options.metrics.duration_cap_seconds = opt.duration_cap;
    if (!opt.custom_emoji_path.empty())
        report_options.custom_emoji = load_emoji_names(opt.custom_emoji_path);

    std::map<std::string, TeamReport> reports;
    for (const std::string& export_path : opt.common.exports) {
        Corpus corpus = prepare_corpus(export_path, opt.common);
        TeamReport report = build_team_report(corpus, lexicon, report_options);
        for (RenderFormat f : formats) {
            fs::path out = out_dir / (report.team_id + ".report." + format_extension(f));
            write_file(out, render_team_report(report, f));
        }
        reports.emplace(report.team_id, std::move(report));
    }

    if (opt.survey_path.empty()) return 0;

    const std::set<int> reverse_items = parse_reverse_items(opt.reverse_items);
    std::vector<SurveyResponse> responses = load_survey_csv(opt.survey_path);
    std::vector<PsScore> scores = score_all(responses, reverse_items);
    write_file(out_dir / "ps_scores.csv", scores_to_csv(scores));
    write_file(out_dir / "ps_scores.json", scores_to_json(scores));
    write_file(out_dir / "ps_scores_plot.csv", scores_to_plot_csv(scores));

    if (reports.size() < 2) return 0;

    TeamSelection selection = select_extreme_teams(scores);
    auto high = reports.find(selection.high_team);
    auto low = reports.find(selection.low_team);
    if (high == reports.end() || low == reports.end()) {
        std::cerr << "psmine: survey selects " << selection.high_team << " (high) and "
                  << selection.low_team << " (low), but no export was analyzed for "
                  << (high == reports.end() ? selection.high_team : selection.low_team)
                  << "; skipping comparison\n";
        return 0;
    }

    ComparisonReport comparison = compare_teams(high->second, low->second);
    write_file(out_dir / "comparison.md", render_comparison(comparison, RenderFormat::MarkdownTable));
    for (RenderFormat f : formats) {
        if (f == RenderFormat::MarkdownTable) continue;
        fs::path out = out_dir / (std::string("comparison.") + format_extension(f));
        write_file(out, render_comparison(comparison, f));
    }
    return 0;
}

int run_concordance(const CommonOptions& common, const std::string& sub_category,
                    std::size_t context, const std::string& format) {
    Lexicon lexicon = load_lexicon_or_default(common.lexicon_path);
    Corpus corpus = prepare_corpus(common.exports.at(0), common);
    auto entries = concordance(corpus, lexicon, sub_category, context);
    if (format == "text")
        std::cout << render_concordance_text(entries, corpus);
    else if (format == "jsonl")
        std::cout << render_concordance_jsonl(entries);
    else
        throw LexiconError("unknown concordance format '" + format + "' (text or jsonl)");
    return 0;
}

int run_validate(const CommonOptions& common, const std::string& survey_path,
                 const std::string& dump_corpus_path) {
    if (!dump_corpus_path.empty() && common.exports.size() != 1)
        throw CorpusError("--dump-corpus needs exactly one --export");

    for (const std::string& export_path : common.exports) {
        Corpus corpus = prepare_corpus(export_path, common);
        const std::size_t total = corpus.total_message_count();
        const std::size_t analytic = corpus.analytic_message_count();
        std::cout << "OK export " << corpus.team_id << ": " << corpus.channels.size()
                  << " channels, " << corpus.users.size() << " users, " << total << " messages ("
                  << analytic << " analytic)\n";
        if (total == 0)
            std::cout << "warning: export " << corpus.team_id << " has zero messages\n";
        if (!dump_corpus_path.empty())
            write_corpus_json(corpus, dump_corpus_path);
    }

    Lexicon lexicon = load_lexicon_or_default(common.lexicon_path);
    std::cout << "OK lexicon: " << lexicon.entries().size() << " sub-categories (hash "
              << lexicon.hash() << ")\n";

    if (!survey_path.empty()) {
        std::vector<SurveyResponse> responses = load_survey_csv(survey_path);
        std::set<std::string> teams;
        std::set<int> periods;
        for (const auto& r : responses) {
            teams.insert(r.team_id);
            periods.insert(r.period);
        }
        std::cout << "OK survey: " << responses.size() << " responses, " << teams.size()
                  << " teams, " << periods.size() << " periods\n";
    }
    return 0;
}

int run_lexicon_print(const std::string& lexicon_path, const std::string& format) {
    Lexicon lexicon = load_lexicon_or_default(lexicon_path);
    if (format == "json") {
        std::cout << lexicon_to_json_text(lexicon);
    } else if (format == "text") {
        for (const auto& e : lexicon.entries()) {
            std::cout << category_name(e.category) << " / " << e.sub_category << ":";
            for (const auto& p : e.patterns) {
                std::cout << " " << pattern_kind_name(p.kind) << ":" << p.body;
                if (p.kind == PatternSpec::Kind::Prefix) std::cout << "*";
            }
            std::cout << "\n";
        }
        std::cout << "hash: " << lexicon.hash() << "\n";
    } else {
        throw LexiconError("unknown lexicon print format '" + format + "' (json or text)");
    }
    return 0;
}

void add_common_options(CLI::App* cmd, CommonOptions& common, bool multi_export) {
    auto* exp = cmd->add_option("--export", common.exports,
                                "Slack export directory or zip (repeatable)");
    exp->required();
    if (!multi_export) exp->expected(1);
    cmd->add_option("--redact", common.redact_path,
                    "file with user ids to redact, one per line");
    cmd->add_option("--lexicon", common.lexicon_path,
                    "lexicon config JSON (default: built-in keyword table)");
    cmd->add_option("--authors", common.authors,
                    "comma list of author ids to restrict the analysis to");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"psychological-safety signals from team chat exports"};
    app.set_version_flag("--version", std::string("psmine ") + kToolVersion);
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    CLI::App* cmd_analyze = app.add_subcommand("analyze", "build team reports (and a comparison)");
    add_common_options(cmd_analyze, analyze.common, /*multi_export=*/true);
    cmd_analyze->add_option("--survey", analyze.survey_path, "survey CSV: team_id,period,respondent,q1..q7");
    cmd_analyze->add_option("--out-dir", analyze.out_dir, "output directory (default .)");
    cmd_analyze->add_option("--format", analyze.formats, "comma list of json,csv,md (default all)");
    cmd_analyze->add_option("--top-emoji", analyze.top_emoji, "emoji ranking depth (default 10)")
        ->check(CLI::PositiveNumber);
    cmd_analyze->add_option("--gap-mode", analyze.gap_mode, "pooled|per-channel (default pooled)");
    cmd_analyze->add_option("--duration-cap", analyze.duration_cap,
                            "cap latency/gap samples at N seconds (default off)");
    cmd_analyze->add_option("--reverse-items", analyze.reverse_items,
                            "reverse-coded survey items, e.g. 1,3,5 or none");
    cmd_analyze->add_option("--custom-emoji", analyze.custom_emoji_path,
                            "file listing workspace-custom emoji names");

    CommonOptions conc_common;
    std::string conc_sub_category;
    std::size_t conc_context = 0;
    std::string conc_format = "text";
    CLI::App* cmd_conc = app.add_subcommand("concordance", "matched messages with channel context");
    add_common_options(cmd_conc, conc_common, /*multi_export=*/false);
    cmd_conc->add_option("--sub-category", conc_sub_category, "lexicon sub-category name")->required();
    cmd_conc->add_option("--context", conc_context, "messages of context each side (default 0)");
    cmd_conc->add_option("--format", conc_format, "text|jsonl (default text)");

    CommonOptions val_common;
    std::string val_survey, val_dump;
    CLI::App* cmd_val = app.add_subcommand("validate", "check export, lexicon and survey inputs");
    add_common_options(cmd_val, val_common, /*multi_export=*/true);
    cmd_val->add_option("--survey", val_survey, "survey CSV to validate");
    cmd_val->add_option("--dump-corpus", val_dump, "write the normalized corpus dump here");

    std::string lex_path, lex_format = "json";
    CLI::App* cmd_lex = app.add_subcommand("lexicon", "lexicon utilities");
    cmd_lex->require_subcommand(1);
    CLI::App* cmd_lex_print = cmd_lex->add_subcommand("print", "print the active lexicon");
    cmd_lex_print->add_option("--lexicon", lex_path, "lexicon config JSON (default: built-in)");
    cmd_lex_print->add_option("--format", lex_format, "json|text (default json)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_analyze) return run_analyze(analyze);
        if (*cmd_conc) return run_concordance(conc_common, conc_sub_category, conc_context, conc_format);
        if (*cmd_val) return run_validate(val_common, val_survey, val_dump);
        if (*cmd_lex_print) return run_lexicon_print(lex_path, lex_format);
    } catch (const ParseError& e) {
        std::cerr << "psmine: ingest: " << e.what() << "\n";
        return 1;
    } catch (const LexiconError& e) {
        std::cerr << "psmine: lexicon: " << e.what() << "\n";
        return 1;
    } catch (const SurveyError& e) {
        std::cerr << "psmine: survey: " << e.what() << "\n";
        return 1;
    } catch (const ReportError& e) {
        std::cerr << "psmine: report: " << e.what() << "\n";
        return 1;
    } catch (const CorpusError& e) {
        std::cerr << "psmine: ingest: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "psmine: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
