#pragma once

#include <algorithm>
#include <cstring>
#include <vector>

#include "moebius/common.hpp"

namespace moebius {

// ---------------------------------------------------------------------------
// Base primes
// ---------------------------------------------------------------------------

// Primes up to limit by a plain monolithic sieve.  Computed once per run to
// sqrt(max hi); segments use the table read-only.
inline std::vector<u32> simple_sieve(u64 limit) {
    std::vector<u32> primes;
    if (limit < 2) return primes;
    std::vector<u8> composite(limit + 1, 0);
    for (u64 i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
    for (u64 i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(static_cast<u32>(i));
    return primes;
}

// Smallest multiple of a that is >= lo, without the lo+a-1 overflow.
inline u64 first_multiple_geq(u64 lo, u64 a) {
    u64 r = lo % a;
    return r ? lo + (a - r) : lo;
}

// ---------------------------------------------------------------------------
// Segments
// ---------------------------------------------------------------------------

struct SegmentSpec {
    u64 lo = 1;   // inclusive
    u64 hi = 1;   // inclusive

    u64 length() const { return hi - lo + 1; }

    void validate(u64 max_length = u64(1) << 26) const {
        if (lo < 1 || hi < lo) throw std::invalid_argument("SegmentSpec: need 1 <= lo <= hi");
        if (hi - lo + 1 > max_length) throw std::length_error("SegmentSpec: segment exceeds memory budget");
    }
};

// mu over [lo, hi], one byte per n with values in {-1, 0, +1}.
struct MuSegment {
    SegmentSpec spec;
    std::vector<i8> mu;

    i8 at(u64 n) const { return mu[n - spec.lo]; }
};

// A prime power n = p^k; Lambda(n) = log p, reconstructed by the consumer at
// whatever precision it wants.  The sieve never stores Lambda as a float.
struct MangoldtEntry {
    u64 n;
    u64 p;
    u32 k;
};

// Mobius sieve: flip the sign once per base prime dividing n, zero out
// multiples of p^2, and flip once more at the end if a prime factor > sqrt(hi)
// remains.  n = 1 keeps mu = 1.
inline MuSegment sieve_mu(const SegmentSpec& spec, const std::vector<u32>& base_primes,
                          u64 max_length = u64(1) << 26) {
    spec.validate(max_length);
    const u64 lo = spec.lo, hi = spec.hi, len = spec.length();

    MuSegment seg;
    seg.spec = spec;
    seg.mu.assign(len, 1);
    std::vector<u64> rem(len);
    for (u64 i = 0; i < len; ++i) rem[i] = lo + i;

    for (u32 p : base_primes) {
        if (u64(p) > hi) break;
        for (u64 j = first_multiple_geq(lo, p); j <= hi; j += p) {
            seg.mu[j - lo] = static_cast<i8>(-seg.mu[j - lo]);
            rem[j - lo] /= p;
        }
        const u64 pp = u64(p) * p;
        if (pp <= hi) {
            for (u64 j = first_multiple_geq(lo, pp); j <= hi; j += pp) seg.mu[j - lo] = 0;
        }
    }
    for (u64 i = 0; i < len; ++i)
        if (rem[i] > 1) seg.mu[i] = static_cast<i8>(-seg.mu[i]);
    return seg;
}

// Prime powers in [lo, hi], sorted by n.  Primes in the segment come from a
// composite-marking pass; higher powers are enumerated from the base primes.
inline std::vector<MangoldtEntry> sieve_mangoldt(const SegmentSpec& spec,
                                                 const std::vector<u32>& base_primes,
                                                 u64 max_length = u64(1) << 26) {
    spec.validate(max_length);
    const u64 lo = spec.lo, hi = spec.hi, len = spec.length();

    std::vector<u8> composite(len, 0);
    for (u32 p : base_primes) {
        if (u64(p) * p > hi) break;
        u64 start = std::max(u64(p) * 2, first_multiple_geq(lo, p));
        for (u64 j = start; j <= hi; j += p) composite[j - lo] = 1;
    }

    std::vector<MangoldtEntry> out;
    for (u64 i = 0; i < len; ++i) {
        u64 n = lo + i;
        if (n >= 2 && !composite[i]) out.push_back({n, n, 1});
    }
    for (u32 p : base_primes) {
        u64 q = u64(p) * p;
        if (q > hi) break;
        u32 k = 2;
        for (; q <= hi; q *= p, ++k) {
            if (q >= lo) out.push_back({q, p, k});
            if (q > hi / p) break;    // q*p would overflow past hi anyway
        }
    }
    std::sort(out.begin(), out.end(), [](const MangoldtEntry& a, const MangoldtEntry& b) { return a.n < b.n; });
    return out;
}

// All prime powers up to limit (convenience for hyperbola sums, direct tails).
inline std::vector<MangoldtEntry> prime_powers_upto(u64 limit) {
    if (limit < 2) return {};
    return sieve_mangoldt({1, limit}, simple_sieve(isqrt(limit)), limit);
}

// ---------------------------------------------------------------------------
// Divisor events
// ---------------------------------------------------------------------------

// One event per (X, a) with a | X, a in (a_lo, a_hi].
struct DivisorEvent {
    u64 x;
    u64 a;
};

// Window-bucketed divisor marking: for each candidate a we walk its multiples
// inside the window, so the cost is window * Sigma 1/a instead of factoring
// every X.  Events come out grouped by X in increasing X order (ascending a
// within a group).
//
// Flat layout: offsets[i]..offsets[i+1] index the divisors of window.lo + i.
struct DivisorEventWindow {
    SegmentSpec window;
    std::vector<u32> offsets;   // length len+1
    std::vector<u32> divisors;  // concatenated per-X divisor lists

    template <class Fn>
    void for_each_x(Fn&& fn) const {
        for (u64 i = 0; i + 1 < offsets.size(); ++i)
            fn(window.lo + i, &divisors[offsets[i]], &divisors[offsets[i + 1]]);
    }
};

// a_values must be sorted ascending and fit in u32.
inline DivisorEventWindow divisor_event_window(const SegmentSpec& window,
                                               const std::vector<u32>& a_values) {
    window.validate();
    const u64 lo = window.lo, hi = window.hi, len = window.length();

    DivisorEventWindow w;
    w.window = window;
    std::vector<u32> counts(len + 1, 0);
    for (u32 a : a_values) {
        for (u64 j = first_multiple_geq(lo, a); j <= hi; j += a) ++counts[j - lo + 1];
    }
    for (u64 i = 1; i <= len; ++i) counts[i] += counts[i - 1];
    w.offsets = counts;
    w.divisors.resize(w.offsets[len]);
    std::vector<u32> cursor(w.offsets.begin(), w.offsets.end() - 1);
    for (u32 a : a_values) {
        for (u64 j = first_multiple_geq(lo, a); j <= hi; j += a)
            w.divisors[cursor[j - lo]++] = a;
    }
    return w;
}

// Materialized form of the stream, mostly for tests and small windows.
inline std::vector<DivisorEvent> divisor_events(const SegmentSpec& window, u64 a_lo, u64 a_hi,
                                                bool prime_powers_only = false) {
    if (a_lo >= a_hi) throw std::invalid_argument("divisor_events: empty a range");
    window.validate();

    std::vector<u32> as;
    if (prime_powers_only) {
        for (const auto& e : prime_powers_upto(a_hi))
            if (e.n > a_lo) as.push_back(static_cast<u32>(e.n));
    } else {
        for (u64 a = a_lo + 1; a <= a_hi; ++a) as.push_back(static_cast<u32>(a));
    }
    auto w = divisor_event_window(window, as);
    std::vector<DivisorEvent> out;
    w.for_each_x([&](u64 x, const u32* b, const u32* e) {
        for (const u32* it = b; it != e; ++it) out.push_back({x, *it});
    });
    return out;
}

// ---------------------------------------------------------------------------
// Smallest-prime-factor table (per-k factoring for the Lambda*Lambda terms)
// ---------------------------------------------------------------------------

inline std::vector<u32> spf_table(u32 limit) {
    std::vector<u32> spf(limit + 1, 0);
    for (u32 i = 2; i <= limit; ++i) {
        if (spf[i] == 0)
            for (u64 j = i; j <= limit; j += i)
                if (spf[j] == 0) spf[j] = i;
    }
    return spf;
}

} // namespace moebius
