#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace psmine {

class SurveyError : public std::runtime_error {
public:
    explicit SurveyError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kSurveyItemCount = 7;
inline constexpr int kScaleMin = 1;
inline constexpr int kScaleMax = 7;

/// One respondent's answers to the 7-item psychological-safety survey,
/// each on the 1..7 scale.
struct SurveyResponse {
    std::string team_id;
    int period = 1;  // >= 1
    std::string respondent;
    std::array<int, kSurveyItemCount> items{};

    bool operator==(const SurveyResponse&) const = default;
};

/// Per-team, per-period aggregate of respondent scores.
struct PsScore {
    std::string team_id;
    int period = 1;
    double mean = 0.0;    // within [1, 7]
    double stddev = 0.0;  // population stddev of respondent scores
    std::int64_t n_respondents = 0;

    bool operator==(const PsScore&) const = default;
};

/// Item indices are 1-based; reversed items score as 8 - v. The default set
/// covers the instrument's negatively worded items and is configurable.
inline const std::set<int>& default_reverse_items() {
    static const std::set<int> items{1, 3, 5};
    return items;
}

/// Score one team+period batch: each response averages its 7 items after
/// reversal, then the batch mean / population stddev is taken over
/// respondent scores. Empty input or mixed team/period throws SurveyError.
PsScore score_period(const std::vector<SurveyResponse>& responses,
                     const std::set<int>& reverse_items);

/// Group responses by (team, period) and score every batch; output sorted by
/// (team_id, period).
std::vector<PsScore> score_all(const std::vector<SurveyResponse>& responses,
                               const std::set<int>& reverse_items);

struct TeamConsistency {
    std::string team_id;
    double mean_of_period_means = 0.0;
    double stddev_of_period_means = 0.0;  // population, across periods
};

struct TeamSelection {
    std::string low_team;
    std::string high_team;
    std::vector<TeamConsistency> rationale;  // sorted by team_id
};

/// The comparison-pair rule: low team is the lowest all-period mean; high
/// team is, among teams at or above the median mean, the one with the most
/// consistent (lowest stddev) period means. Requires >= 2 teams and full
/// period coverage; gaps are reported in the error.
TeamSelection select_extreme_teams(const std::vector<PsScore>& scores);

/// Read `team_id,period,respondent,q1..q7` CSV (header row optional).
/// Errors name the line number.
std::vector<SurveyResponse> load_survey_csv(const std::filesystem::path& path);
std::vector<SurveyResponse> parse_survey_csv(std::string_view text, const std::string& origin);

/// Scores as CSV: team_id,period,mean,stddev,n_respondents.
std::string scores_to_csv(const std::vector<PsScore>& scores);

/// Plot-ready CSV: period,team,mean (one point per team/period).
std::string scores_to_plot_csv(const std::vector<PsScore>& scores);

/// Scores plus selection rationale as a JSON document (stable key order).
std::string scores_to_json(const std::vector<PsScore>& scores);

}  // namespace psmine
