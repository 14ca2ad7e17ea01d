#pragma once

#include <cinttypes>
#include <cstdio>

#include "moebius/constants.hpp"
#include "moebius/psi_table.hpp"

namespace moebius {

// ---------------------------------------------------------------------------
// Lambda*Lambda by direct factoring
// ---------------------------------------------------------------------------

// Lambda*Lambda(k) is nonzero only when k has at most two distinct prime
// factors:
//   k = p^a        ->  (a-1) log^2 p        (pairs p^i * p^(a-i), 1<=i<=a-1)
//   k = p^a q^b    ->  2 log p log q        (pairs (p^a, q^b) and (q^b, p^a))
// Per-k enumeration through the smallest-prime-factor table; no convolution
// arrays are kept.
struct ConvTerm {
    double conv;         // Lambda*Lambda(k)
    double lambda_logk;  // Lambda(k) log k
};

template <class Real = double>
ConvTerm lambda_conv_term(u32 k, const std::vector<u32>& spf) {
    ConvTerm t{0.0, 0.0};
    if (k < 2) return t;
    u32 n = k;
    u32 p1 = spf[n];
    u32 e1 = 0;
    while (n % p1 == 0) {
        n /= p1;
        ++e1;
    }
    if (n == 1) {
        const Real lp = std::log(Real(p1));
        if (e1 >= 2) t.conv = static_cast<double>(Real(e1 - 1) * lp * lp);
        t.lambda_logk = static_cast<double>(Real(e1) * lp * lp);
        return t;
    }
    u32 p2 = spf[n];
    while (n % p2 == 0) n /= p2;
    if (n == 1) {
        t.conv = static_cast<double>(Real(2) * std::log(Real(p1)) * std::log(Real(p2)));
    }
    return t;
}

// Streams k = 1..K with the exact-structure convolution and Lambda log k
// terms; fn(k, conv_k, lambda_logk).
template <class Real = double, class Fn>
void scan_lambda_conv(u32 K, Fn&& fn) {
    auto spf = spf_table(K);
    for (u32 k = 1; k <= K; ++k) {
        ConvTerm t = lambda_conv_term<Real>(k, spf);
        fn(k, t.conv, t.lambda_logk);
    }
}

// ---------------------------------------------------------------------------
// Remainder evaluations: R, r, R2*, R3, R4
// ---------------------------------------------------------------------------

struct RemainderEval {
    u64 X = 0;
    ErrValue R;        // psi(X) - X
    ErrValue r;        // psi~(X) - log X + gamma
    ErrValue R2star;
    ErrValue R3;
    ErrValue R4;
    ErrValue lambda2;  // Sigma_{n<=X} Lambda*Lambda(n)
};

namespace detail {

// Evaluation context shared by a batch of X values: the prime powers up to
// max sqrt(X), a dense psi table for the small hyperbola arguments, and
// profile rows for everything above the table.
struct RemainderBatch {
    std::vector<MangoldtEntry> pps;   // prime powers <= max isqrt(X)
    std::vector<double> lam;          // log p per entry
    LambdaSweep sweep;
};

inline RemainderBatch make_remainder_batch(const std::vector<u64>& xs, const StreamOptions& opt,
                                           u64 table_cap = u64(1) << 22) {
    RemainderBatch b;
    u64 max_s = 0, max_x = 0;
    for (u64 x : xs) {
        max_s = std::max(max_s, isqrt(x));
        max_x = std::max(max_x, x);
    }
    b.pps = prime_powers_upto(max_s);
    b.lam.reserve(b.pps.size());
    for (const auto& e : b.pps) b.lam.push_back(std::log(static_cast<double>(e.p)));

    const u64 table_hi = std::min(max_x, table_cap);
    std::vector<u64> points;
    for (u64 x : xs) {
        const u64 s = isqrt(x);
        points.push_back(x);
        points.push_back(std::max<u64>(1, s));
        for (size_t i = 0; i < b.pps.size() && b.pps[i].n <= s; ++i) {
            const u64 q = x / b.pps[i].n;
            if (q > table_hi) points.push_back(q);
        }
    }
    b.sweep = lambda_sweep(1, table_hi, std::move(points), opt);
    return b;
}

} // namespace detail

// Hyperbola sums over the prime powers d <= sqrt(X):
//   S1 = Sigma Lambda(d) psi(floor(X/d))          (Dirichlet hyperbola half)
//   S4 = Sigma Lambda(d) (psi(floor(X/d)) - X/d)  (= R4 when summed to sqrt X)
struct HyperbolaSums {
    ErrValue S1;
    ErrValue S4;
};

inline HyperbolaSums hyperbola_sums(u64 X, const detail::RemainderBatch& b) {
    const double eps = std::numeric_limits<double>::epsilon();
    const u64 s = isqrt(X);
    CompensatedSum s1, s4;
    double psi_err_mass = 0;   // Sigma Lambda(d) * err(psi at the query)
    double ratio_err = 0;      // rounding of the X/d subtractions
    for (size_t i = 0; i < b.pps.size() && b.pps[i].n <= s; ++i) {
        const u64 d = b.pps[i].n;
        const double lam = b.lam[i];
        const ErrValue psi_q = b.sweep.psi(X / d);
        s1.add(lam * psi_q.value, 3);
        const double xd = static_cast<double>(X) / static_cast<double>(d);
        s4.add(lam * (psi_q.value - xd), 4);
        psi_err_mass += lam * psi_q.err;
        ratio_err += lam * xd * 2 * eps;
    }
    HyperbolaSums h;
    h.S1 = {s1.value(), s1.error_bound() + psi_err_mass};
    h.S4 = {s4.value(), s4.error_bound() + psi_err_mass + ratio_err};
    return h;
}

// Full remainder evaluation for a batch of X, one sieve pass total.
template <class Real = double>
std::vector<RemainderEval> remainder_eval_batch(std::vector<u64> xs, StreamOptions opt = {}) {
    xs = sorted_unique(std::move(xs));
    std::vector<RemainderEval> out;
    if (xs.empty()) return out;
    if (xs.front() < 1) throw std::invalid_argument("remainder_eval: X >= 1");

    const double eps = std::numeric_limits<double>::epsilon();
    const double gamma = math_const<double>::euler_gamma;
    auto batch = detail::make_remainder_batch(xs, opt);

    for (u64 X : xs) {
        RemainderEval ev;
        ev.X = X;
        const auto& row = batch.sweep.row_at(X);
        const double L = std::log(static_cast<double>(X));

        ev.R = {row.psi.value - static_cast<double>(X),
                row.psi.err + (std::abs(row.psi.value) + static_cast<double>(X)) * eps};
        ev.r = {row.psi_tilde.value - L + gamma,
                row.psi_tilde.err + (L + 1) * 4 * eps};

        const u64 s = isqrt(X);
        const auto hyp = hyperbola_sums(X, batch);

        // lambda2 = 2*S1 - psi(sqrt X)^2
        const ErrValue psi_s = batch.sweep.psi(std::max<u64>(1, s));
        const double ps2 = psi_s.value * psi_s.value;
        ev.lambda2 = {2 * hyp.S1.value - ps2,
                      2 * hyp.S1.err + 2 * std::abs(psi_s.value) * psi_s.err + ps2 * 2 * eps +
                          (2 * std::abs(hyp.S1.value) + ps2) * eps};

        // R2* = lambda2 - Sigma Lambda log + 2 gamma X
        const double twogx = 2 * gamma * static_cast<double>(X);
        ev.R2star = {ev.lambda2.value - row.lambda_log.value + twogx,
                     ev.lambda2.err + row.lambda_log.err + twogx * 3 * eps +
                         (std::abs(ev.lambda2.value) + std::abs(row.lambda_log.value) + twogx) * 2 * eps};

        // R4 = S4 over d <= sqrt X
        ev.R4 = hyp.S4;

        // R3 = 2 sqrt(X) |sqrt(X) r(sqrt X) - R(sqrt X)| + R(sqrt X)^2 + |R(X)| log X + |int_1^X R dt/t|
        {
            const double sx = std::sqrt(static_cast<double>(X));   // real sqrt in analytic factors
            const auto& rs = batch.sweep.row_at(std::max<u64>(1, s));
            const double log_sx = 0.5 * L;
            const double r_s = rs.psi_tilde.value - log_sx + gamma;
            const double r_s_err = rs.psi_tilde.err + (log_sx + 1) * 4 * eps;
            const double R_s = rs.psi.value - sx;
            const double R_s_err = rs.psi.err + (std::abs(rs.psi.value) + sx) * 2 * eps;
            const double inner = sx * r_s - R_s;
            const double inner_err = sx * r_s_err + std::abs(r_s) * sx * eps + R_s_err + std::abs(inner) * 2 * eps;
            const ErrValue intR = integral_R_over_t_from(row.psi, row.lambda_log, X);
            const double v = 2 * sx * std::abs(inner) + R_s * R_s + std::abs(ev.R.value) * L + std::abs(intR.value);
            const double e = 2 * sx * inner_err + 2 * std::abs(R_s) * R_s_err + ev.R.err * L +
                             std::abs(ev.R.value) * L * 2 * eps + intR.err + std::abs(v) * 4 * eps;
            ev.R3 = {v, e};
        }
        out.push_back(ev);
    }
    return out;
}

// single-X conveniences
inline RemainderEval remainder_eval(u64 X, const StreamOptions& opt = {}) {
    return remainder_eval_batch({X}, opt).front();
}
inline ErrValue lambda2_sum(u64 X, const StreamOptions& opt = {}) { return remainder_eval(X, opt).lambda2; }
inline ErrValue R2_star(u64 X, const StreamOptions& opt = {}) { return remainder_eval(X, opt).R2star; }
inline ErrValue R3(u64 X, const StreamOptions& opt = {}) { return remainder_eval(X, opt).R3; }
inline ErrValue R4(u64 X, const StreamOptions& opt = {}) {
    if (X < 4) throw std::invalid_argument("R4: X >= 4");
    return remainder_eval(X, opt).R4;
}

// ---------------------------------------------------------------------------
// Direct prime-power sums
// ---------------------------------------------------------------------------

// Sigma_{n<=T} Lambda(n)/sqrt(n)
inline ErrValue lambda_sqrt_sum(u64 T) {
    if (T < 1) throw std::invalid_argument("lambda_sqrt_sum: T >= 1");
    CompensatedSum s;
    for (const auto& e : prime_powers_upto(T))
        s.add(std::log(static_cast<double>(e.p)) / std::sqrt(static_cast<double>(e.n)), 4);
    return s.as_errvalue();
}

// LHS = Sigma_{n<=T} Lambda(n)/(n log(X/n)); RHS = 1.04 log(log X / log(X/T)) + 1.04/log X.
struct LogRatioBound {
    ErrValue lhs;
    double rhs;
};

inline LogRatioBound lambda_log_ratio_check(u64 X, u64 T) {
    if (X < 1 || T < 1) throw std::invalid_argument("lambda_log_ratio_check: X, T >= 1");
    if (T * T > X) throw std::invalid_argument("lambda_log_ratio_check: need T <= sqrt(X)");
    CompensatedSum s;
    for (const auto& e : prime_powers_upto(T)) {
        const double lx = std::log(static_cast<double>(X) / static_cast<double>(e.n));
        s.add(std::log(static_cast<double>(e.p)) / (static_cast<double>(e.n) * lx), 6);
    }
    const double L = std::log(static_cast<double>(X));
    const double rhs = 1.04 * std::log(L / std::log(static_cast<double>(X) / static_cast<double>(T))) + 1.04 / L;
    return {s.as_errvalue(), rhs};
}

// ---------------------------------------------------------------------------
// l1 mass of the R2* summand (plus tail), used for the hyperbola-splitting
// constants:  Sigma_{k<=K} |Lambda*Lambda(k) - Lambda(k) log k + 2 gamma| / k
//             + |R2*(K)| / K
// ---------------------------------------------------------------------------

struct ConvL1Result {
    u64 K = 0;
    ErrValue value;
    ErrValue r2_at_K;
};

template <class Real = double>
ConvL1Result conv_l1_norm(u32 K) {
    if (K < 1) throw std::invalid_argument("conv_l1_norm: K >= 1");
    const Real gamma = math_const<Real>::euler_gamma;
    CompensatedSumT<Real> l1;
    CompensatedSumT<Real> r2;
    scan_lambda_conv<Real>(K, [&](u32 k, double conv, double lamlog) {
        const Real term = Real(conv) - Real(lamlog) + 2 * gamma;
        r2.add(term, 6);
        l1.add(std::abs(term) / Real(k), 8);
    });
    ConvL1Result res;
    res.K = K;
    res.r2_at_K = r2.as_errvalue();
    const double rk = std::abs(r2.value()) / static_cast<double>(K);
    res.value = {static_cast<double>(l1.value()) + rk,
                 static_cast<double>(l1.error_bound()) + static_cast<double>(r2.error_bound()) / K +
                     rk * 4 * std::numeric_limits<double>::epsilon()};
    return res;
}

// ---------------------------------------------------------------------------
// Windowed R4 scan (incremental over divisor events)
// ---------------------------------------------------------------------------
//
// f(X) = Sigma_{a_lo < a <= a_hi, a prime power} Lambda(a) R(X/a)
//      = [Sigma Lambda(a) psi(floor(X/a))]  -  X * Sigma Lambda(a)/a.
//
// The bracket changes only at X divisible by some a in range (the floor
// moves), so X advances by 1 through divisor events; the linear part is kept
// in closed form.  The exact sum is recomputed from scratch every
// recompute_every steps to cap error drift, and each recomputation doubles as
// a consistency check on the incremental state.
struct R4ScanResult {
    u64 a_lo = 0, a_hi = 0, x_lo = 0, x_hi = 0;
    double max_ratio = 0.0;     // max over integer X of |f(X)| / X
    u64 witness_x = 0;
    double err_bound = 0.0;     // bound on the ratio error at any scanned X
    u64 recompute_checks = 0;
    double max_recompute_gap = 0.0;
    bool recompute_ok = true;

    std::string csv_row() const {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%" PRIu64 ",%" PRIu64 ",%.17g,%" PRIu64 ",%.17g,%" PRIu64,
                      x_lo, x_hi, max_ratio, witness_x, err_bound, recompute_checks);
        return buf;
    }
};

inline R4ScanResult windowed_r4_scan(u64 a_lo, u64 a_hi, u64 x_lo, u64 x_hi,
                                     StreamOptions opt = {}, u64 recompute_every = 1000000) {
    if (a_lo >= a_hi) throw std::invalid_argument("windowed_r4_scan: empty a range");
    if (x_lo > x_hi) throw std::invalid_argument("windowed_r4_scan: empty X window");
    if (a_hi > x_lo / a_hi) throw std::invalid_argument("windowed_r4_scan: need a_hi^2 <= x_lo");
    const double eps = std::numeric_limits<double>::epsilon();

    // prime powers in (a_lo, a_hi], with Lambda(a) addressable by a
    std::vector<u32> as;
    std::vector<double> lam_of_a(a_hi + 1, 0.0);
    for (const auto& e : prime_powers_upto(a_hi)) {
        if (e.n > a_lo) {
            as.push_back(static_cast<u32>(e.n));
            lam_of_a[e.n] = std::log(static_cast<double>(e.p));
        }
    }
    if (as.empty()) throw std::invalid_argument("windowed_r4_scan: no prime powers in a range");

    CompensatedSum lam_total, slope;
    for (u32 a : as) {
        lam_total.add(lam_of_a[a], 2);
        slope.add(lam_of_a[a] / a, 3);
    }
    const double C = slope.value();

    // psi table across every floor(X/a) the scan touches, minus-one included
    // for the event updates
    const u64 table_lo = std::max<u64>(1, x_lo / a_hi - 1);
    const u64 table_hi = x_hi / a_lo;
    LambdaSweep sweep = lambda_sweep(table_lo, table_hi, {}, opt);
    const PsiTable& table = sweep.table;

    auto recompute = [&](u64 X) {
        CompensatedSum s;
        for (u32 a : as) s.add(lam_of_a[a] * table.at(X / a), 3);
        return s;
    };

    R4ScanResult res;
    res.a_lo = a_lo;
    res.a_hi = a_hi;
    res.x_lo = x_lo;
    res.x_hi = x_hi;

    CompensatedSum step = recompute(x_lo);
    const double psi_err_mass = lam_total.value() * table.err + lam_total.error_bound() * table.err;

    u64 since_recompute = 0;
    auto consider = [&](u64 X) {
        const double xc = static_cast<double>(X) * C;
        const double f = step.value() - xc;
        const double ratio = std::abs(f) / static_cast<double>(X);
        const double err_f = step.error_bound() + psi_err_mass +
                             slope.error_bound() * static_cast<double>(X) + xc * eps +
                             std::abs(f) * 2 * eps;
        const double err_ratio = err_f / static_cast<double>(X) + ratio * eps;
        if (ratio > res.max_ratio) {
            res.max_ratio = ratio;
            res.witness_x = X;
        }
        res.err_bound = std::max(res.err_bound, err_ratio);
    };
    consider(x_lo);

    u64 lo = x_lo + 1;
    while (lo <= x_hi) {
        const u64 hi = std::min(x_hi, (x_hi - lo >= opt.segment_size) ? lo + opt.segment_size - 1 : x_hi);
        auto events = divisor_event_window({lo, hi}, as);
        events.for_each_x([&](u64 X, const u32* b, const u32* e) {
            for (const u32* it = b; it != e; ++it) {
                const u64 q = X / *it;
                step.add(lam_of_a[*it] * (table.at(q) - table.at(q - 1)), 3);
            }
            consider(X);
            if (++since_recompute >= recompute_every) {
                since_recompute = 0;
                CompensatedSum fresh = recompute(X);
                const double gap = std::abs(fresh.value() - step.value());
                const double allowed = fresh.error_bound() + step.error_bound() + 2 * psi_err_mass;
                res.max_recompute_gap = std::max(res.max_recompute_gap, gap);
                if (gap > allowed) res.recompute_ok = false;
                ++res.recompute_checks;
                step = fresh;   // cap drift
            }
        });
        lo = hi + 1;
    }
    return res;
}

} // namespace moebius
