#include "psmine/render.hpp"

#include <cmath>
#include <cstdio>

namespace psmine {

namespace {
constexpr const char* kUndefined = "—";  // em dash
}

std::string render_percent(const Ratio& ratio) {
    if (!ratio.defined()) return kUndefined;
    if (ratio.num == 0) return "0%";
    // Positive fractions strictly below 1% floor to "<1%"; the published
    // tables use that convention rather than rounding 0.58% up to 1%.
    if (100 * ratio.num < ratio.den) return "<1%";
    // Nearest integer percent, half up, in exact integer arithmetic.
    const std::int64_t pct = (200 * ratio.num + ratio.den) / (2 * ratio.den);
    return std::to_string(pct) + "%";
}

std::string render_count_with_percent(std::int64_t count, const Ratio& ratio) {
    return std::to_string(count) + " (" + render_percent(ratio) + ")";
}

std::string render_duration_seconds(std::int64_t seconds) {
    const bool negative = seconds < 0;
    if (negative) seconds = -seconds;
    char buf[48];
    if (seconds >= 3600) {
        std::snprintf(buf, sizeof(buf), "%s%lld:%02lld:%02lld", negative ? "-" : "",
                      static_cast<long long>(seconds / 3600),
                      static_cast<long long>((seconds % 3600) / 60),
                      static_cast<long long>(seconds % 60));
    } else {
        std::snprintf(buf, sizeof(buf), "%s%lld:%02lld", negative ? "-" : "",
                      static_cast<long long>(seconds / 60),
                      static_cast<long long>(seconds % 60));
    }
    return buf;
}

std::string render_duration(const DurationStat& d) {
    if (!d.defined()) return kUndefined;
    // Round the mean to the nearest whole second (half up).
    const std::int64_t denom = d.count * 1000000;
    const std::int64_t secs = (2 * d.sum_micros + denom) / (2 * denom);
    return render_duration_seconds(secs);
}

std::string render_decimal(std::int64_t num, std::int64_t den, int places) {
    if (den == 0) return kUndefined;
    std::string sign;
    if ((num < 0) != (den < 0) && num != 0) sign = "-";
    unsigned long long n = num < 0 ? -static_cast<unsigned long long>(num) : num;
    unsigned long long d = den < 0 ? -static_cast<unsigned long long>(den) : den;
    unsigned long long whole = n / d;
    unsigned long long rem = n % d;
    std::string out = sign + std::to_string(whole);
    if (places > 0) {
        out += '.';
        for (int i = 0; i < places; ++i) {
            rem *= 10;
            out += static_cast<char>('0' + rem / d);
            rem %= d;
        }
    }
    return out;
}

std::string render_share(double share) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", share);
    return buf;
}

}  // namespace psmine
