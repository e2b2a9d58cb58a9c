#pragma once

#include <cstdint>
#include <string>

namespace psmine {

/// Exact count/total fraction. den == 0 marks an undefined percentage
/// (empty corpus); rounding happens only at render time.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 0;

    bool defined() const { return den != 0; }
    double value() const { return defined() ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }

    bool operator==(const Ratio&) const = default;
};

/// Mean duration kept as an exact (sum of microseconds, sample count) pair.
/// count == 0 marks an undefined average (nothing to average).
struct DurationStat {
    std::int64_t sum_micros = 0;
    std::int64_t count = 0;

    bool defined() const { return count != 0; }
    double seconds() const {
        return defined() ? static_cast<double>(sum_micros) / (1e6 * static_cast<double>(count)) : 0.0;
    }

    bool operator==(const DurationStat&) const = default;
};

}  // namespace psmine
