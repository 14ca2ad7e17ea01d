#pragma once

#include <cassert>
#include <cmath>

#include "moebius/compensated.hpp"
#include "moebius/pipeline.hpp"

namespace moebius {

// Immutable snapshot of every running summatory value at an integer X.
struct SummatoryCheckpoint {
    u64 X = 0;
    i64 M = 0;                 // Sigma mu(n), exact
    ErrValue m;                // Sigma mu(n)/n
    ErrValue psi;              // Sigma Lambda(n)
    ErrValue psi_tilde;        // Sigma Lambda(n)/n
    ErrValue lambda_log;       // Sigma Lambda(n) log n
    i64 absM_integral = 0;     // int_1^X |M(t)| dt, exact at integer X
    i64 Q = 0;                 // Sigma mu^2(n), exact
    ErrValue q_log;            // Sigma mu^2(n)/n
};

// The sequential accumulation over n.  Parallelism lives entirely in the
// sieving pipeline; this state is advanced by a single reducer, so results
// are bit-identical for any worker count, segment split, or stride.
template <class Real = double>
struct SummatoryState {
    u64 n = 0;
    i64 M = 0;
    i64 Q = 0;
    i64 absM_int = 0;
    CompensatedSumT<Real> m, q_log, psi, psi_tilde, lambda_log;

    // log-weighted mu moments, accumulated only while n <= moments_hi
    bool track_moments = false;
    u64 moments_hi = 0;
    CompensatedSumT<Real> mu_log, mu_log2;

    template <bool WithMu, bool WithLambda>
    void advance(u64 nn, int mu_n, const MangoldtEntry* e) {
        if constexpr (WithMu) {
            absM_int += M < 0 ? -M : M;   // |M(nn-1)|, M constant on [nn-1, nn)
            if (mu_n) {
                M += mu_n;
                ++Q;
                const Real rn = Real(1) / Real(nn);
                m.add(mu_n > 0 ? rn : -rn, 2);
                q_log.add(rn, 2);
                if (track_moments && nn <= moments_hi) {
                    const Real ln = std::log(Real(nn));
                    mu_log.add(mu_n > 0 ? ln : -ln, 2);
                    const Real ln2 = ln * ln;
                    mu_log2.add(mu_n > 0 ? ln2 : -ln2, 4);
                }
            }
        }
        if constexpr (WithLambda) {
            if (e) {
                const Real lp = std::log(Real(e->p));
                psi.add(lp, 2);
                psi_tilde.add(lp / Real(nn), 3);
                lambda_log.add(Real(e->k) * lp * lp, 4);   // log n = k log p, exact structure
            }
        }
        n = nn;
        assert(absM_int >= 0 && Q >= 0);
    }

    SummatoryCheckpoint checkpoint() const {
        SummatoryCheckpoint c;
        c.X = n;
        c.M = M;
        c.m = m.as_errvalue();
        c.psi = psi.as_errvalue();
        c.psi_tilde = psi_tilde.as_errvalue();
        c.lambda_log = lambda_log.as_errvalue();
        c.absM_integral = absM_int;
        c.Q = Q;
        c.q_log = q_log.as_errvalue();
        return c;
    }
};

namespace detail {

template <class Real, bool WithMu, bool WithLambda, class Visitor>
void scan_impl(SummatoryState<Real>& st, u64 hi, const StreamOptions& opt, Visitor&& visit) {
    const u64 first = st.n + 1;
    if (first > hi) return;
    StreamOptions o = opt;
    o.need_mu = WithMu;
    o.need_lambda = WithLambda;
    SegmentPipeline pipe(first, hi, o);
    SegmentData seg;
    while (pipe.next(seg)) {
        const MangoldtEntry* e = seg.pp.data();
        const MangoldtEntry* eend = e + seg.pp.size();
        const i8* mu = seg.mu.data();
        for (u64 nn = seg.spec.lo; nn <= seg.spec.hi; ++nn) {
            int mu_n = 0;
            if constexpr (WithMu) mu_n = mu[nn - seg.spec.lo];
            const MangoldtEntry* ppe = nullptr;
            if constexpr (WithLambda) {
                if (e != eend && e->n == nn) ppe = e++;
            }
            st.template advance<WithMu, WithLambda>(nn, mu_n, ppe);
            visit(nn, st, mu_n, ppe);
        }
    }
}

} // namespace detail

// Advance the state from st.n + 1 through hi, invoking
// visit(n, state, mu_n, mangoldt_entry_or_null) at every integer.  Which
// arithmetic streams are materialized is controlled by opt.need_mu /
// opt.need_lambda; accumulators of a disabled stream stay zero.
template <class Real = double, class Visitor>
void scan_summatory(SummatoryState<Real>& st, u64 hi, const StreamOptions& opt, Visitor&& visit) {
    if (opt.need_mu && opt.need_lambda)
        detail::scan_impl<Real, true, true>(st, hi, opt, visit);
    else if (opt.need_mu)
        detail::scan_impl<Real, true, false>(st, hi, opt, visit);
    else if (opt.need_lambda)
        detail::scan_impl<Real, false, true>(st, hi, opt, visit);
    else
        throw std::invalid_argument("scan_summatory: at least one stream must be enabled");
}

} // namespace moebius
