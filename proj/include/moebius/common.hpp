#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace moebius {

using u8  = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i8  = std::int8_t;
using i64 = std::int64_t;
using i128 = __int128_t;

// floor(sqrt(n)), exact for all u64
inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// A numeric result together with a rigorous bound on its absolute error.
struct ErrValue {
    double value = 0.0;
    double err   = 0.0;

    ErrValue() = default;
    ErrValue(double v, double e) : value(v), err(e) {}

    ErrValue operator+(const ErrValue& o) const { return {value + o.value, err + o.err + ulp_pad(value + o.value)}; }
    ErrValue operator-(const ErrValue& o) const { return {value - o.value, err + o.err + ulp_pad(value - o.value)}; }

    static double ulp_pad(double v) {
        return std::abs(v) * std::numeric_limits<double>::epsilon();
    }
};

inline std::string to_string_17g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace moebius
