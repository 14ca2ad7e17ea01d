#pragma once

// Brute-force reference implementations. Deliberately independent of the
// library code paths they are used to check: everything here is trial
// division and direct summation in extended precision.

#include <cstdint>
#include <cmath>
#include <vector>

namespace oracle {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline int mu(u64 n) {
    int result = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

inline i64 mertens(u64 N) {
    i64 s = 0;
    for (u64 n = 1; n <= N; ++n) s += mu(n);
    return s;
}

// n = p^k  ->  returns p and sets k; returns 0 if n is not a prime power.
inline u64 prime_power_base(u64 n, u32& k) {
    if (n < 2) return 0;
    u64 p = 0;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) {
        k = 1;
        return n;   // prime
    }
    k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return n == 1 ? p : 0;
}

inline long double lambda(u64 n) {
    u32 k;
    u64 p = prime_power_base(n, k);
    return p ? std::log(static_cast<long double>(p)) : 0.0L;
}

inline long double psi(u64 X) {
    long double s = 0;
    for (u64 n = 2; n <= X; ++n) s += lambda(n);
    return s;
}

inline long double psi_tilde(u64 X) {
    long double s = 0;
    for (u64 n = 2; n <= X; ++n) s += lambda(n) / n;
    return s;
}

inline std::vector<u64> divisors(u64 X) {
    std::vector<u64> out;
    for (u64 d = 1; d * d <= X; ++d) {
        if (X % d == 0) {
            out.push_back(d);
            if (d != X / d) out.push_back(X / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Sigma_{n<=X} Lambda*Lambda(n) by the direct double loop over prime powers.
inline long double lambda2_sum(u64 X) {
    std::vector<u64> pps;
    std::vector<long double> lams;
    for (u64 n = 2; n <= X / 2; ++n) {
        long double l = lambda(n);
        if (l != 0.0L) {
            pps.push_back(n);
            lams.push_back(l);
        }
    }
    long double s = 0;
    for (size_t i = 0; i < pps.size(); ++i)
        for (size_t j = 0; j < pps.size(); ++j) {
            if (pps[i] * pps[j] > X) break;
            s += lams[i] * lams[j];
        }
    return s;
}

// log lcm(1..N) = Sigma_p floor(log_p N) log p, via exact exponent search.
inline long double log_lcm(u64 N) {
    long double s = 0;
    for (u64 p = 2; p <= N; ++p) {
        bool prime = p >= 2;
        for (u64 d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        u64 pk = p;
        while (pk <= N / p) pk *= p;
        // pk = largest power of p that is <= N
        u64 e = 0;
        u64 t = pk;
        while (t > 1) {
            t /= p;
            ++e;
        }
        s += static_cast<long double>(e) * std::log(static_cast<long double>(p));
    }
    return s;
}

} // namespace oracle
