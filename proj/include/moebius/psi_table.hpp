#pragma once

#include <vector>

#include "moebius/summatory.hpp"

namespace moebius {

// Dense psi values over an integer range, one double per point, with one
// shared error bound (the bound of the running sum at hi covers every entry).
struct PsiTable {
    u64 lo = 1, hi = 0;
    std::vector<double> psi;
    double err = 0.0;

    bool covers(u64 n) const { return n >= lo && n <= hi; }
    double at(u64 n) const { return psi[n - lo]; }
};

// A single Lambda pass that fills a dense psi table over [table_lo, table_hi]
// and simultaneously records full profile rows at the given points.
struct LambdaSweep {
    PsiTable table;
    std::vector<LambdaProfileRow> rows;   // sorted by x

    const LambdaProfileRow& row_at(u64 x) const {
        auto it = std::lower_bound(rows.begin(), rows.end(), x,
                                   [](const LambdaProfileRow& r, u64 v) { return r.x < v; });
        if (it == rows.end() || it->x != x) throw std::logic_error("LambdaSweep: row not collected");
        return *it;
    }

    // psi(n) from the table when covered, from a profile row otherwise.
    ErrValue psi(u64 n) const {
        if (table.covers(n)) return {table.at(n), table.err};
        return row_at(n).psi;
    }
};

template <class Real = double>
LambdaSweep lambda_sweep(u64 table_lo, u64 table_hi, std::vector<u64> points, StreamOptions opt = {}) {
    LambdaSweep sw;
    points = sorted_unique(std::move(points));
    u64 last = table_hi;
    if (!points.empty()) last = std::max(last, points.back());
    if (last < 1) throw std::invalid_argument("lambda_sweep: empty request");

    if (table_hi >= table_lo && table_hi >= 1) {
        sw.table.lo = std::max<u64>(1, table_lo);
        sw.table.hi = table_hi;
        sw.table.psi.resize(table_hi - sw.table.lo + 1);
    }

    opt.need_mu = false;
    opt.need_lambda = true;
    SummatoryState<Real> st;
    size_t i = 0;
    scan_summatory<Real>(st, last, opt, [&](u64 n, const SummatoryState<Real>& s, int, const MangoldtEntry*) {
        if (sw.table.covers(n)) sw.table.psi[n - sw.table.lo] = static_cast<double>(s.psi.value());
        if (i < points.size() && n == points[i]) {
            sw.rows.push_back({n, s.psi.as_errvalue(), s.psi_tilde.as_errvalue(), s.lambda_log.as_errvalue()});
            ++i;
        }
    });
    // the bound at the end of the pass dominates every recorded position
    sw.table.err = static_cast<double>(st.psi.error_bound());
    return sw;
}

} // namespace moebius
