#include "psmine/survey.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "psmine/render.hpp"
#include "psmine/version.hpp"

namespace psmine {

namespace {

double population_stddev(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return std::sqrt(var);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

int parse_int_field(const std::string& field, const std::string& origin, std::size_t line_no,
                    const char* what) {
    int value = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || p != field.data() + field.size())
        throw SurveyError(origin + ":" + std::to_string(line_no) + ": bad " + what + " '" +
                          field + "'");
    return value;
}

std::string format_double(double v) {
    // Shortest fixed form with enough digits to round-trip typical scores.
    std::ostringstream ss;
    ss.precision(10);
    ss << v;
    return ss.str();
}

}  // namespace

PsScore score_period(const std::vector<SurveyResponse>& responses,
                     const std::set<int>& reverse_items) {
    if (responses.empty()) throw SurveyError("no responses");
    const std::string& team = responses.front().team_id;
    const int period = responses.front().period;

    std::vector<double> respondent_scores;
    respondent_scores.reserve(responses.size());
    for (const auto& r : responses) {
        if (r.team_id != team || r.period != period)
            throw SurveyError("mixed team/period batch: expected " + team + "/" +
                              std::to_string(period) + ", got " + r.team_id + "/" +
                              std::to_string(r.period));
        double sum = 0.0;
        for (int i = 0; i < kSurveyItemCount; ++i) {
            int v = r.items[static_cast<std::size_t>(i)];
            if (v < kScaleMin || v > kScaleMax)
                throw SurveyError("response " + r.respondent + " item " + std::to_string(i + 1) +
                                  " out of scale: " + std::to_string(v));
            if (reverse_items.count(i + 1)) v = kScaleMax + kScaleMin - v;  // 8 - v
            sum += v;
        }
        respondent_scores.push_back(sum / kSurveyItemCount);
    }

    PsScore score;
    score.team_id = team;
    score.period = period;
    score.n_respondents = static_cast<std::int64_t>(respondent_scores.size());
    double mean = 0.0;
    for (double s : respondent_scores) mean += s;
    score.mean = mean / static_cast<double>(respondent_scores.size());
    score.stddev = population_stddev(respondent_scores);
    return score;
}

std::vector<PsScore> score_all(const std::vector<SurveyResponse>& responses,
                               const std::set<int>& reverse_items) {
    std::map<std::pair<std::string, int>, std::vector<SurveyResponse>> batches;
    for (const auto& r : responses) batches[{r.team_id, r.period}].push_back(r);
    std::vector<PsScore> scores;
    scores.reserve(batches.size());
    for (const auto& [_, batch] : batches) scores.push_back(score_period(batch, reverse_items));
    return scores;
}

TeamSelection select_extreme_teams(const std::vector<PsScore>& scores) {
    std::map<std::string, std::map<int, double>> by_team;  // team -> period -> mean
    std::set<int> all_periods;
    for (const auto& s : scores) {
        by_team[s.team_id][s.period] = s.mean;
        all_periods.insert(s.period);
    }
    if (by_team.size() < 2)
        throw SurveyError("team selection needs at least 2 teams, got " +
                          std::to_string(by_team.size()));

    std::string gaps;
    for (const auto& [team, periods] : by_team)
        for (int p : all_periods)
            if (!periods.count(p)) gaps += " " + team + "/period" + std::to_string(p);
    if (!gaps.empty())
        throw SurveyError("missing period coverage:" + gaps);

    TeamSelection selection;
    for (const auto& [team, periods] : by_team) {
        std::vector<double> means;
        means.reserve(periods.size());
        for (const auto& [_, mean] : periods) means.push_back(mean);
        double m = 0.0;
        for (double x : means) m += x;
        m /= static_cast<double>(means.size());
        selection.rationale.push_back({team, m, population_stddev(means)});
    }

    const auto& teams = selection.rationale;  // sorted by team_id (map order)

    // Low team: lowest all-period mean; ties prefer the less consistent team.
    const TeamConsistency* low = &teams.front();
    for (const auto& t : teams) {
        if (t.mean_of_period_means < low->mean_of_period_means ||
            (t.mean_of_period_means == low->mean_of_period_means &&
             t.stddev_of_period_means > low->stddev_of_period_means))
            low = &t;
    }

    // High team: among teams at or above the median mean, the most consistent
    // one (ties prefer the larger mean). Never the low team.
    std::vector<double> all_means;
    for (const auto& t : teams) all_means.push_back(t.mean_of_period_means);
    std::sort(all_means.begin(), all_means.end());
    const std::size_t n = all_means.size();
    const double median = n % 2 == 1 ? all_means[n / 2]
                                     : (all_means[n / 2 - 1] + all_means[n / 2]) / 2.0;

    std::vector<const TeamConsistency*> candidates;
    for (const auto& t : teams)
        if (t.mean_of_period_means >= median) candidates.push_back(&t);
    std::sort(candidates.begin(), candidates.end(), [](const auto* a, const auto* b) {
        if (a->stddev_of_period_means != b->stddev_of_period_means)
            return a->stddev_of_period_means < b->stddev_of_period_means;
        if (a->mean_of_period_means != b->mean_of_period_means)
            return a->mean_of_period_means > b->mean_of_period_means;
        return a->team_id < b->team_id;
    });

    const TeamConsistency* high = nullptr;
    for (const auto* c : candidates) {
        if (c->team_id != low->team_id) {
            high = c;
            break;
        }
    }
    if (!high)
        throw SurveyError("cannot pick a high team distinct from low team " + low->team_id);

    selection.low_team = low->team_id;
    selection.high_team = high->team_id;
    return selection;
}

std::vector<SurveyResponse> parse_survey_csv(std::string_view text, const std::string& origin) {
    std::vector<SurveyResponse> responses;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = nl == std::string_view::npos ? text.substr(pos)
                                                             : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ss(trimmed);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        if (!trimmed.empty() && trimmed.back() == ',') fields.push_back("");

        if (line_no == 1 && !fields.empty() && fields[0] == "team_id") continue;  // header

        if (fields.size() != 3 + kSurveyItemCount)
            throw SurveyError(origin + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(3 + kSurveyItemCount) + " columns, got " +
                              std::to_string(fields.size()));

        SurveyResponse r;
        r.team_id = fields[0];
        if (r.team_id.empty())
            throw SurveyError(origin + ":" + std::to_string(line_no) + ": empty team_id");
        r.period = parse_int_field(fields[1], origin, line_no, "period");
        if (r.period < 1)
            throw SurveyError(origin + ":" + std::to_string(line_no) + ": period must be >= 1");
        r.respondent = fields[2];
        for (int i = 0; i < kSurveyItemCount; ++i) {
            int v = parse_int_field(fields[3 + static_cast<std::size_t>(i)], origin, line_no,
                                    "item value");
            if (v < kScaleMin || v > kScaleMax)
                throw SurveyError(origin + ":" + std::to_string(line_no) + ": item " +
                                  std::to_string(i + 1) + " out of 1..7: " + std::to_string(v));
            r.items[static_cast<std::size_t>(i)] = v;
        }
        responses.push_back(std::move(r));
    }
    return responses;
}

std::vector<SurveyResponse> load_survey_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SurveyError("cannot read survey CSV " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_survey_csv(ss.str(), path.string());
}

std::string scores_to_csv(const std::vector<PsScore>& scores) {
    std::ostringstream out;
    out << "team_id,period,mean,stddev,n_respondents\n";
    for (const auto& s : scores)
        out << s.team_id << "," << s.period << "," << format_double(s.mean) << ","
            << format_double(s.stddev) << "," << s.n_respondents << "\n";
    return out.str();
}

std::string scores_to_plot_csv(const std::vector<PsScore>& scores) {
    std::ostringstream out;
    out << "period,team,mean\n";
    std::vector<const PsScore*> ordered;
    ordered.reserve(scores.size());
    for (const auto& s : scores) ordered.push_back(&s);
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        if (a->period != b->period) return a->period < b->period;
        return a->team_id < b->team_id;
    });
    for (const auto* s : ordered)
        out << s->period << "," << s->team_id << "," << format_double(s->mean) << "\n";
    return out.str();
}

std::string scores_to_json(const std::vector<PsScore>& scores) {
    nlohmann::ordered_json doc;
    doc["schema"] = kScoresSchema;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& s : scores) {
        nlohmann::ordered_json j;
        j["team_id"] = s.team_id;
        j["period"] = s.period;
        j["mean"] = format_double(s.mean);
        j["stddev"] = format_double(s.stddev);
        j["n_respondents"] = s.n_respondents;
        list.push_back(std::move(j));
    }
    doc["scores"] = std::move(list);
    return doc.dump(2) + "\n";
}

}  // namespace psmine
