#pragma once

#include <cstdint>
#include <string>

#include "psmine/ratio.hpp"

namespace psmine {

/// Integer-percent rendering matching the published tables: nearest integer
/// percent (half up), "<1%" for positive fractions strictly below 1%, "0%"
/// for zero counts, an em dash for undefined ratios.
std::string render_percent(const Ratio& ratio);

/// "count (pct)" cell, e.g. "990 (18%)".
std::string render_count_with_percent(std::int64_t count, const Ratio& ratio);

/// Durations render as H:MM:SS at or above one hour, else M:SS ("3:35:59",
/// "18:33"), rounded to the nearest second. Undefined renders as an em dash.
std::string render_duration(const DurationStat& d);
std::string render_duration_seconds(std::int64_t seconds);

/// Fixed-point decimal of num/den with `places` fractional digits, computed
/// in integer arithmetic so output is platform-stable. "—" when undefined.
std::string render_decimal(std::int64_t num, std::int64_t den, int places);

/// Contribution-equality dispersion, rendered like the published values
/// ("0.034").
std::string render_share(double share);

}  // namespace psmine
