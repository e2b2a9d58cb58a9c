#pragma once

namespace psmine {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCorpusSchema = "psmine.corpus/1";
inline constexpr const char* kLexiconSchema = "psmine.lexicon/1";
inline constexpr const char* kTeamReportSchema = "psmine.team_report/1";
inline constexpr const char* kComparisonSchema = "psmine.comparison/1";
inline constexpr const char* kScoresSchema = "psmine.scores/1";

}  // namespace psmine
