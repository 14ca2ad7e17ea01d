#pragma once

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "moebius/stream.hpp"

namespace moebius {

// ---------------------------------------------------------------------------
// Checkpoint streaming
// ---------------------------------------------------------------------------

// Checkpoints at X = stride, 2*stride, ..., plus a final one at X = upto.
// Values are observations of the single sequential accumulation, so they do
// not depend on stride, segment size, or worker count.
template <class Real = double, class Sink>
SummatoryState<Real> stream_checkpoints(u64 upto, u64 stride, const StreamOptions& opt, Sink&& sink,
                                        SummatoryState<Real> st = {}) {
    if (upto < 1 || stride < 1) throw std::invalid_argument("stream_checkpoints: need upto >= 1, stride >= 1");
    u64 next_cp = (st.n / stride + 1) * stride;
    scan_summatory<Real>(st, upto, opt, [&](u64 n, const SummatoryState<Real>& s, int, const MangoldtEntry*) {
        if (n == next_cp || n == upto) {
            sink(s.checkpoint());
            while (next_cp <= n) next_cp += stride;
        }
    });
    return st;
}

// ---------------------------------------------------------------------------
// Checkpoint CSV + resume state
// ---------------------------------------------------------------------------

inline constexpr const char* kCheckpointCsvHeader =
    "X,M,m_hi,m_err,psi_hi,psi_err,psitilde_hi,psitilde_err,"
    "lambdalog_hi,lambdalog_err,absMint,Q,qlog_hi,qlog_err";

inline std::string checkpoint_csv_row(const SummatoryCheckpoint& c) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%" PRIu64 ",%" PRId64 ",%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%" PRId64 ",%" PRId64 ",%.17g,%.17g",
                  c.X, c.M, c.m.value, c.m.err, c.psi.value, c.psi.err,
                  c.psi_tilde.value, c.psi_tilde.err, c.lambda_log.value, c.lambda_log.err,
                  c.absM_integral, c.Q, c.q_log.value, c.q_log.err);
    return buf;
}

// Sidecar with the full accumulator state (hex floats, bit-exact), so a
// resumed run continues through the identical floating-point trajectory and
// reproduces the checkpoint file byte for byte.
inline void save_resume_state(const std::string& path, const SummatoryState<double>& st) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write resume state: " + path);
    auto dump_sum = [&](const char* name, const CompensatedSum& s) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s %a %a %a %a %" PRIu64 "\n",
                      name, s.principal, s.compensation, s.abs_accum, s.ulp_accum, s.nterms);
        f << buf;
    };
    f << "moebius-resume-v1\n";
    f << "n " << st.n << "\nM " << st.M << "\nQ " << st.Q << "\nabsM " << st.absM_int << "\n";
    dump_sum("m", st.m);
    dump_sum("qlog", st.q_log);
    dump_sum("psi", st.psi);
    dump_sum("psitilde", st.psi_tilde);
    dump_sum("lambdalog", st.lambda_log);
}

inline bool load_resume_state(const std::string& path, SummatoryState<double>& st) {
    std::ifstream f(path);
    if (!f) return false;
    std::string magic;
    std::getline(f, magic);
    if (magic != "moebius-resume-v1") throw std::runtime_error("unrecognized resume state: " + path);
    auto read_sum = [&](const char* name, CompensatedSum& s) {
        std::string key;
        f >> key >> s.principal >> s.compensation >> s.abs_accum >> s.ulp_accum >> s.nterms;
        if (key != name) throw std::runtime_error("corrupt resume state: " + path);
    };
    std::string key;
    f >> key >> st.n;
    f >> key >> st.M;
    f >> key >> st.Q;
    f >> key >> st.absM_int;
    read_sum("m", st.m);
    read_sum("qlog", st.q_log);
    read_sum("psi", st.psi);
    read_sum("psitilde", st.psi_tilde);
    read_sum("lambdalog", st.lambda_log);
    return true;
}

// ---------------------------------------------------------------------------
// Point profiles: one streaming pass serving many sorted query points
// ---------------------------------------------------------------------------

struct MuProfileRow {
    u64 x = 0;
    i64 M = 0;
    ErrValue m;
    i64 Q = 0;
    ErrValue q_log;
    i64 absM_integral = 0;
    ErrValue mu_log;    // Sigma mu(n) log n   (only when moments tracked)
    ErrValue mu_log2;   // Sigma mu(n) log^2 n
};

struct LambdaProfileRow {
    u64 x = 0;
    ErrValue psi;
    ErrValue psi_tilde;
    ErrValue lambda_log;
};

inline std::vector<u64> sorted_unique(std::vector<u64> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

template <class Real = double>
std::vector<MuProfileRow> mu_profile(std::vector<u64> xs, StreamOptions opt = {}, bool with_moments = false) {
    xs = sorted_unique(std::move(xs));
    std::vector<MuProfileRow> rows;
    if (xs.empty()) return rows;
    if (xs.front() < 1) throw std::invalid_argument("mu_profile: queries must be >= 1");
    opt.need_mu = true;
    opt.need_lambda = false;
    SummatoryState<Real> st;
    st.track_moments = with_moments;
    st.moments_hi = xs.back();
    size_t i = 0;
    scan_summatory<Real>(st, xs.back(), opt, [&](u64 n, const SummatoryState<Real>& s, int, const MangoldtEntry*) {
        if (n == xs[i]) {
            MuProfileRow r;
            r.x = n;
            r.M = s.M;
            r.m = s.m.as_errvalue();
            r.Q = s.Q;
            r.q_log = s.q_log.as_errvalue();
            r.absM_integral = s.absM_int;
            if (with_moments) {
                r.mu_log = s.mu_log.as_errvalue();
                r.mu_log2 = s.mu_log2.as_errvalue();
            }
            rows.push_back(r);
            ++i;
        }
    });
    return rows;
}

template <class Real = double>
std::vector<LambdaProfileRow> lambda_profile(std::vector<u64> xs, StreamOptions opt = {}) {
    xs = sorted_unique(std::move(xs));
    std::vector<LambdaProfileRow> rows;
    if (xs.empty()) return rows;
    if (xs.front() < 1) throw std::invalid_argument("lambda_profile: queries must be >= 1");
    opt.need_mu = false;
    opt.need_lambda = true;
    SummatoryState<Real> st;
    size_t i = 0;
    scan_summatory<Real>(st, xs.back(), opt, [&](u64 n, const SummatoryState<Real>& s, int, const MangoldtEntry*) {
        if (n == xs[i]) {
            rows.push_back({n, s.psi.as_errvalue(), s.psi_tilde.as_errvalue(), s.lambda_log.as_errvalue()});
            ++i;
        }
    });
    return rows;
}

// psi at sorted query points; one sieve pass total.
template <class Real = double>
std::map<u64, ErrValue> psi_at_points(const std::vector<u64>& queries, const StreamOptions& opt = {}) {
    std::map<u64, ErrValue> out;
    for (const auto& r : lambda_profile<Real>(queries, opt)) out[r.x] = r.psi;
    return out;
}

// ---------------------------------------------------------------------------
// Weighted moments  M_k(f, X) = Sigma_{n<=X} f(n) log^k n
// ---------------------------------------------------------------------------

enum class SummandId { mu, lambda };

struct MomentValue {
    int k = 0;
    SummandId f = SummandId::mu;
    u64 X = 0;
    ErrValue value;
};

template <class Real = double>
MomentValue moment(SummandId f, int k, u64 X, const StreamOptions& opt = {}) {
    if (k < 0 || k > 2) throw std::invalid_argument("moment: k must be in {0, 1, 2}");
    if (X < 1) throw std::invalid_argument("moment: X must be >= 1");
    MomentValue mv;
    mv.k = k;
    mv.f = f;
    mv.X = X;
    if (f == SummandId::mu) {
        const auto r = mu_profile<Real>({X}, opt, k > 0).front();
        mv.value = (k == 0) ? ErrValue{static_cast<double>(r.M), 0.0} : (k == 1 ? r.mu_log : r.mu_log2);
    } else {
        StreamOptions o = opt;
        o.need_mu = false;
        o.need_lambda = true;
        CompensatedSumT<Real> acc;
        SummatoryState<Real> st;
        scan_summatory<Real>(st, X, o, [&](u64, const SummatoryState<Real>&, int, const MangoldtEntry* e) {
            if (!e) return;
            const Real lp = std::log(Real(e->p));
            Real term = lp;
            const Real logn = Real(e->k) * lp;
            for (int j = 0; j < k; ++j) term *= logn;
            acc.add(term, 3 + 2 * k);
        });
        mv.value = acc.as_errvalue();
    }
    return mv;
}

// ---------------------------------------------------------------------------
// Exact integrals of the step functions
// ---------------------------------------------------------------------------

// int_1^T |M(t)| dt = Sigma_{n=1}^{T-1} |M(n)|, exact (M constant on [n, n+1)).
template <class Real = double>
i64 abs_M_integral(u64 T, const StreamOptions& opt = {}) {
    if (T < 1) throw std::invalid_argument("abs_M_integral: T >= 1");
    if (T == 1) return 0;
    return mu_profile<Real>({T}, opt).front().absM_integral;
}

// int_1^X R(t) dt/t through the identity
//   int_1^X psi(t) dt/t = psi(X) log X - Sigma_{n<=X} Lambda(n) log n,
// so the result is psi(X) log X - lambda_log(X) - (X - 1).
inline ErrValue integral_R_over_t_from(const ErrValue& psi, const ErrValue& lambda_log, u64 X) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double L = std::log(static_cast<double>(X));
    const double t1 = psi.value * L;
    const double value = t1 - lambda_log.value - static_cast<double>(X - 1);
    const double err = psi.err * L + std::abs(psi.value) * L * 2 * eps   // log ulp + product rounding
                     + std::abs(t1) * eps
                     + lambda_log.err
                     + (std::abs(t1) + std::abs(lambda_log.value) + std::abs(value)) * eps;
    return {value, err};
}

template <class Real = double>
ErrValue integral_R_over_t(u64 X, const StreamOptions& opt = {}) {
    if (X < 1) throw std::invalid_argument("integral_R_over_t: X >= 1");
    if (X == 1) return {0.0, 0.0};
    const auto r = lambda_profile<Real>({X}, opt).front();
    return integral_R_over_t_from(r.psi, r.lambda_log, X);
}

// ---------------------------------------------------------------------------
// Squarefree statistics
// ---------------------------------------------------------------------------

struct SquarefreeStats {
    i64 Q = 0;          // Sigma mu^2(n), exact
    ErrValue q_log;     // Sigma mu^2(n)/n
};

template <class Real = double>
SquarefreeStats squarefree_stats(u64 X, const StreamOptions& opt = {}) {
    if (X < 1) throw std::invalid_argument("squarefree_stats: X >= 1");
    const auto r = mu_profile<Real>({X}, opt).front();
    return {r.Q, r.q_log};
}

// ---------------------------------------------------------------------------
// Partial-summation identity residual
// ---------------------------------------------------------------------------
//
//   M_0(f, X) - M_0(f, X_0)
//     = M_k(f,X)/log^k X - M_k(f,X_0)/log^k X_0 + k * int_{X_0}^X M_k(f,t)/(t log^{k+1} t) dt
//
// The integral is evaluated exactly: M_k is constant on [n, n+1) and the
// primitive of 1/(t log^{k+1} t) is -1/(k log^k t), so each unit interval
// contributes M_k(f,n) * (log^-k n - log^-k(n+1)) in closed form.  The
// quadrature_steps parameter is accepted for interface compatibility and
// ignored; nothing is sampled.
//
// Returns |LHS - RHS| together with the propagated rounding-error bound the
// residual has to stay below.
template <class Real = double>
ErrValue partial_summation_check(SummandId f, int k, u64 X0, u64 X, int quadrature_steps = 0,
                                 const StreamOptions& opt = {}) {
    (void)quadrature_steps;
    if (X0 <= 1) throw std::invalid_argument("partial_summation_check: X0 > 1 required");
    if (X < X0) throw std::invalid_argument("partial_summation_check: X >= X0 required");
    if (k < 1 || k > 2) throw std::invalid_argument("partial_summation_check: k in {1, 2}");

    StreamOptions o = opt;
    o.need_mu = (f == SummandId::mu);
    o.need_lambda = (f == SummandId::lambda);

    const Real eps = std::numeric_limits<Real>::epsilon();
    const auto inv_logk = [k](Real logn) {
        Real d = logn;
        if (k == 2) d *= logn;
        return Real(1) / d;
    };

    // Running M_k(f, n); for f = mu this mirrors the state's moment stream,
    // for f = lambda it is accumulated here from the entries.
    CompensatedSumT<Real> fk;
    CompensatedSumT<Real> integral;
    Real integral_err = 0;

    Real m0_x0 = 0, m0_x = 0, m0_err = 0;        // M_0 at the two ends
    Real fk_x0 = 0, fk_x0_err = 0;
    Real inv_next = 0;
    bool inside = false;

    SummatoryState<Real> st;
    scan_summatory<Real>(st, X, o, [&](u64 n, const SummatoryState<Real>& s, int mu_n, const MangoldtEntry* e) {
        if (f == SummandId::mu) {
            if (mu_n) {
                const Real ln = std::log(Real(n));
                Real t = ln;
                if (k == 2) t *= ln;
                fk.add(mu_n > 0 ? t : -t, 2 + k);
            }
        } else if (e) {
            const Real lp = std::log(Real(e->p));
            Real t = lp;
            const Real logn = Real(e->k) * lp;
            for (int j = 0; j < k; ++j) t *= logn;
            fk.add(t, 3 + 2 * k);
        }

        if (n == X0) {
            m0_x0 = (f == SummandId::mu) ? Real(s.M) : s.psi.value();
            m0_err += (f == SummandId::mu) ? Real(0) : s.psi.error_bound();
            fk_x0 = fk.value();
            fk_x0_err = fk.error_bound();
            inv_next = inv_logk(std::log(Real(n)));
            inside = true;
        }
        if (inside && n < X) {
            // k * int_n^{n+1} dt/(t log^{k+1} t) = log^-k n - log^-k(n+1); the
            // factor k is absorbed by the primitive, so nothing multiplies it later.
            const Real inv_here = inv_next;
            inv_next = inv_logk(std::log(Real(n + 1)));
            const Real diff = inv_here - inv_next;
            const Real mk = fk.value();
            integral.add(mk * diff, 2);
            // the difference of two nearby log powers carries their full ulps
            integral_err += std::abs(mk) * (Real(2 * (k + 2)) * eps) * inv_here + fk.error_bound() * diff;
        }
        if (n == X) {
            m0_x = (f == SummandId::mu) ? Real(s.M) : s.psi.value();
            m0_err += (f == SummandId::mu) ? Real(0) : s.psi.error_bound();
        }
    });

    const Real logX = std::log(Real(X));
    const Real logX0 = std::log(Real(X0));
    const Real invX = inv_logk(logX);
    const Real invX0 = inv_logk(logX0);
    const Real lhs = m0_x - m0_x0;
    const Real rhs = fk.value() * invX - fk_x0 * invX0 + integral.value();

    Real err = m0_err
             + fk.error_bound() * invX + std::abs(fk.value()) * invX * Real(k + 2) * eps
             + fk_x0_err * invX0 + std::abs(fk_x0) * invX0 * Real(k + 2) * eps
             + integral.error_bound() + integral_err
             + (std::abs(lhs) + std::abs(rhs)) * Real(4) * eps;

    return {static_cast<double>(std::abs(lhs - rhs)), static_cast<double>(err)};
}

} // namespace moebius
