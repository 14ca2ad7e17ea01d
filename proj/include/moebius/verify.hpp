#pragma once

#include <chrono>
#include <random>

#include "moebius/bounds.hpp"
#include "moebius/config.hpp"
#include "moebius/remainder.hpp"

#include <json.hpp>

namespace moebius {

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct VerificationReport {
    std::string id;
    std::string anchor;
    u64 lo = 0, hi = 0;
    std::string status;     // PASS / FAIL / INCONCLUSIVE / SKIPPED
    u64 witness_x = 0;      // where |subject|/envelope peaks
    double ratio = 0.0;     // the achieved maximum of |subject|/envelope
    double margin = 0.0;    // min over scan of envelope - |subject| - err
    double err_bound = 0.0; // largest error-ledger value at any scanned point
    double seconds = 0.0;
    std::string hash;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["id"] = id;
        j["paper_anchor"] = anchor;
        j["range"] = {lo, hi};
        j["status"] = status;
        j["witness_x"] = witness_x;
        j["ratio"] = ratio;
        j["margin"] = margin;
        j["err_bound"] = err_bound;
        j["seconds"] = seconds;
        j["config_hash"] = hash;
        return j;
    }
};

// ---------------------------------------------------------------------------
// Scan outcome accumulation
// ---------------------------------------------------------------------------
//
// PASS requires margin-adjusted satisfaction at every checked point:
// envelope - |subject| >= err everywhere.  FAIL requires a violation beyond
// the error ledger.  Anything in between is INCONCLUSIVE.  Exact-mode
// subjects (integer subject, short-decimal envelope) compare in integer
// arithmetic: no error term, equality allowed.
struct ScanOutcome {
    double max_ratio = 0.0;
    u64 witness = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double max_err = 0.0;
    bool fail = false;
    bool viol_within_err = false;
    bool exact_mode = false;
    u64 points = 0;

    void consider(double absval, double env, double err, u64 x) {
        ++points;
        const double ratio = env > 0 ? absval / env : std::numeric_limits<double>::infinity();
        if (ratio > max_ratio) {
            max_ratio = ratio;
            witness = x;
        }
        const double margin = env - absval - err;
        if (margin < min_margin) min_margin = margin;
        if (err > max_err) max_err = err;
        if (absval > env) {
            if (absval - env > err)
                fail = true;
            else
                viol_within_err = true;
        }
    }

    void consider_exact(bool holds, double absval, double env, u64 x) {
        ++points;
        exact_mode = true;
        const double ratio = env > 0 ? absval / env : std::numeric_limits<double>::infinity();
        if (ratio > max_ratio) {
            max_ratio = ratio;
            witness = x;
        }
        const double margin = env - absval;
        if (margin < min_margin) min_margin = margin;
        if (!holds) fail = true;
    }

    std::string status() const {
        if (fail) return "FAIL";
        if (exact_mode) return "PASS";     // integer comparisons carry no error term
        if (viol_within_err || min_margin < 0) return "INCONCLUSIVE";
        return "PASS";
    }

    void merge(const ScanOutcome& o) {
        if (o.max_ratio > max_ratio) {
            max_ratio = o.max_ratio;
            witness = o.witness;
        }
        min_margin = std::min(min_margin, o.min_margin);
        max_err = std::max(max_err, o.max_err);
        fail = fail || o.fail;
        viol_within_err = viol_within_err || o.viol_within_err;
        exact_mode = exact_mode && o.exact_mode;
        points += o.points;
    }
};

namespace detail {

struct DenseTracker {
    const BoundSpec* spec = nullptr;
    ScanOutcome out;
    bool exact = false;
    bool needs_log = false;
    // deferred check, completed when the envelope at n+1 is available
    bool has_pending = false;
    double pend_abs = 0, pend_err = 0;
    u64 pend_x = 0;

    void immediate(double absval, double err, double env, double env_err, u64 x) {
        out.consider(absval, env, err + env_err, x);
    }
    void defer(double absval, double err, u64 x) {
        has_pending = true;
        pend_abs = absval;
        pend_err = err;
        pend_x = x;
    }
    void complete(double env, double env_err) {
        if (has_pending) {
            out.consider(pend_abs, env, pend_err + env_err, pend_x);
            has_pending = false;
        }
    }
};

// The per-n check for one spec in a dense scan.
//
// Subjects constant on [n, n+1) (M, m, psi, M2, R2*) need the envelope at
// both interval ends: the immediate check handles env(n), the deferred one
// env(n+1); for piecewise-linear subjects (R, Q - cX, qlog - c log t) the
// deferred check carries the left-limit value at (n+1)^-.  Interval suprema
// of |subject|/envelope sit at these endpoints for every envelope form in
// the catalog (both branches of the ratio are monotone within a unit
// interval over the catalog's ranges).
template <class SubjectEval>
inline void dense_step(DenseTracker& t, u64 n, double env, double env_err, SubjectEval&& eval) {
    const BoundSpec& sp = *t.spec;
    t.complete(env, env_err);
    if (n < sp.dense_lo || n > sp.dense_hi) return;
    const auto [abs_now, abs_next, err] = eval();
    if (n < sp.dense_hi || !sp.dense_hi_open) t.out.consider(abs_now, env, err + env_err, n);
    if (n < sp.dense_hi) t.defer(abs_next, err, n);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Dense scans
// ---------------------------------------------------------------------------

template <class Real>
void run_mu_dense(std::vector<detail::DenseTracker*>& ts, const RunConfig& cfg) {
    if (ts.empty()) return;
    const double eps = std::numeric_limits<double>::epsilon();
    const double c6 = math_const<double>::inv_zeta2;
    u64 hi_max = 0, moments_hi = 0, log_lo = ~u64(0), log_hi = 0;
    for (auto* t : ts) {
        hi_max = std::max(hi_max, t->spec->dense_hi);
        if (t->spec->subject == Subject::mu_log2_moment) moments_hi = std::max(moments_hi, t->spec->dense_hi);
        t->exact = t->spec->subject == Subject::mertens && t->spec->envelope.has_exact();
        t->needs_log = t->spec->envelope.needs_log() || t->spec->subject == Subject::sqf_log;
        if (t->needs_log) {
            log_lo = std::min(log_lo, t->spec->dense_lo);
            log_hi = std::max(log_hi, t->spec->dense_hi + 1);
        }
    }

    StreamOptions o = cfg.stream();
    o.need_mu = true;
    o.need_lambda = false;
    SummatoryState<Real> st;
    st.track_moments = moments_hi > 0;
    st.moments_hi = moments_hi;

    scan_summatory<Real>(st, hi_max, o, [&](u64 n, const SummatoryState<Real>& s, int, const MangoldtEntry*) {
        const double xd = static_cast<double>(n);
        const double sqrtn = std::sqrt(xd);
        const double logn = (n >= log_lo && n <= log_hi) ? std::log(xd) : 0.0;
        for (auto* t : ts) {
            const BoundSpec& sp = *t->spec;
            if (n < sp.dense_lo || n > sp.dense_hi + 1) continue;
            const double env = sp.envelope.eval(xd, sqrtn, logn);
            const double env_err = env * sp.envelope.rel_err();

            if (t->exact) {
                // integer comparison; interval sup is at the left endpoint
                // (the exact envelopes are increasing)
                t->complete(0, 0);   // unused in exact mode
                if (n > sp.dense_hi) continue;
                const i64 M = s.M;
                t->out.consider_exact(sp.envelope.exact_holds(M, n),
                                      std::abs(static_cast<double>(M)), env, n);
                continue;
            }

            detail::dense_step(*t, n, env, env_err, [&]() -> std::tuple<double, double, double> {
                switch (sp.subject) {
                    case Subject::mertens: {
                        const double v = std::abs(static_cast<double>(s.M));
                        return {v, v, 0.0};
                    }
                    case Subject::mertens_logavg: {
                        const double v = std::abs(static_cast<double>(s.m.value()));
                        return {v, v, static_cast<double>(s.m.error_bound())};
                    }
                    case Subject::sqf_count: {
                        const double q = static_cast<double>(s.Q);
                        const double dev_now = std::abs(q - c6 * xd);
                        const double dev_next = std::abs(q - c6 * (xd + 1));
                        const double err = 3 * eps * c6 * (xd + 1) + eps * (q + dev_now);
                        return {dev_now, dev_next, err};
                    }
                    case Subject::sqf_log: {
                        const double ql = static_cast<double>(s.q_log.value());
                        const double dev_now = std::abs(ql - c6 * logn);
                        const double log_next = std::log(xd + 1);
                        const double dev_next = std::abs(ql - c6 * log_next);
                        const double err = static_cast<double>(s.q_log.error_bound()) +
                                           3 * eps * c6 * log_next + eps * (std::abs(ql) + dev_now);
                        return {dev_now, dev_next, err};
                    }
                    case Subject::mu_log2_moment: {
                        const double v = std::abs(static_cast<double>(s.mu_log2.value()));
                        return {v, v, static_cast<double>(s.mu_log2.error_bound())};
                    }
                    default:
                        throw std::logic_error("subject not handled by mu scan");
                }
            });
        }
    });
}

template <class Real>
void run_lambda_dense(std::vector<detail::DenseTracker*>& ts, const RunConfig& cfg) {
    if (ts.empty()) return;
    const double eps = std::numeric_limits<double>::epsilon();
    u64 hi_max = 0;
    for (auto* t : ts) {
        hi_max = std::max(hi_max, t->spec->dense_hi);
        t->exact = false;
        t->needs_log = t->spec->envelope.needs_log();
    }
    StreamOptions o = cfg.stream();
    o.need_mu = false;
    o.need_lambda = true;
    SummatoryState<Real> st;
    bool any_log = false;
    for (auto* t : ts) any_log = any_log || t->needs_log;

    scan_summatory<Real>(st, hi_max, o, [&](u64 n, const SummatoryState<Real>& s, int, const MangoldtEntry*) {
        const double xd = static_cast<double>(n);
        const double sqrtn = std::sqrt(xd);
        const double logn = any_log ? std::log(xd) : 0.0;
        const double psi = static_cast<double>(s.psi.value());
        const double psi_err = static_cast<double>(s.psi.error_bound());
        for (auto* t : ts) {
            const BoundSpec& sp = *t->spec;
            if (n < sp.dense_lo || n > sp.dense_hi + 1) continue;
            const double env = sp.envelope.eval(xd, sqrtn, logn);
            const double env_err = env * sp.envelope.rel_err();
            detail::dense_step(*t, n, env, env_err, [&]() -> std::tuple<double, double, double> {
                switch (sp.subject) {
                    case Subject::psi_remainder: {
                        const double r_now = std::abs(psi - xd);
                        const double r_next = std::abs(psi - (xd + 1));
                        const double err = psi_err + eps * (psi + xd + 1 + r_now);
                        return {r_now, r_next, err};
                    }
                    case Subject::psi_ratio:
                        return {psi, psi, psi_err};
                    default:
                        throw std::logic_error("subject not handled by lambda scan");
                }
            });
        }
    });
}

// R2* is constant between integers; the dense part walks k with the exact
// per-k convolution structure.
inline void run_conv_dense(std::vector<detail::DenseTracker*>& ts, const RunConfig&) {
    if (ts.empty()) return;
    const double gamma = math_const<double>::euler_gamma;
    u64 hi_max = 0;
    for (auto* t : ts) hi_max = std::max(hi_max, t->spec->dense_hi);
    if (hi_max > u64(std::numeric_limits<u32>::max()))
        throw std::invalid_argument("dense R2* scan limited to 32-bit k");

    CompensatedSum r2;
    scan_lambda_conv(static_cast<u32>(hi_max), [&](u32 k, double conv, double lamlog) {
        r2.add(conv - lamlog + 2 * gamma, 6);
        const double xd = static_cast<double>(k);
        const double sqrtn = std::sqrt(xd);
        const double logn = std::log(xd);
        const double v = std::abs(r2.value());
        const double err = r2.error_bound();
        for (auto* t : ts) {
            const BoundSpec& sp = *t->spec;
            if (k < sp.dense_lo || k > sp.dense_hi + 1) continue;
            const double env = sp.envelope.eval(xd, sqrtn, logn);
            const double env_err = env * sp.envelope.rel_err();
            detail::dense_step(*t, k, env, env_err,
                               [&]() -> std::tuple<double, double, double> { return {v, v, err}; });
        }
    });
}

// ---------------------------------------------------------------------------
// Sampled scans (R2*, R4, r-gap at log-spaced integers)
// ---------------------------------------------------------------------------

inline void run_sampled(std::vector<detail::DenseTracker*>& ts, const RunConfig& cfg) {
    if (ts.empty()) return;
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<u64> all;
    std::vector<std::vector<u64>> per_spec(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        const BoundSpec& sp = *ts[i]->spec;
        per_spec[i] = log_spaced(sp.sample_lo, sp.sample_hi, sp.sample_count);
        all.insert(all.end(), per_spec[i].begin(), per_spec[i].end());
    }
    auto evals = remainder_eval_batch(all, cfg.stream());
    auto eval_at = [&](u64 x) -> const RemainderEval& {
        auto it = std::lower_bound(evals.begin(), evals.end(), x,
                                   [](const RemainderEval& e, u64 v) { return e.X < v; });
        return *it;
    };
    for (size_t i = 0; i < ts.size(); ++i) {
        const BoundSpec& sp = *ts[i]->spec;
        for (u64 x : per_spec[i]) {
            const RemainderEval& ev = eval_at(x);
            const double env = sp.envelope.eval(x);
            const double env_err = env * sp.envelope.rel_err();
            double v = 0, err = 0;
            switch (sp.subject) {
                case Subject::r2_star:
                    v = std::abs(ev.R2star.value);
                    err = ev.R2star.err;
                    break;
                case Subject::r4:
                    v = std::abs(ev.R4.value);
                    err = ev.R4.err;
                    break;
                case Subject::r_gap: {
                    const double rx = ev.R.value / static_cast<double>(x);
                    v = std::abs(ev.r.value - rx);
                    err = ev.r.err + ev.R.err / static_cast<double>(x) + eps * (std::abs(rx) * 2 + v);
                    break;
                }
                default:
                    throw std::logic_error("subject not handled by sampled scan");
            }
            ts[i]->out.consider(v, env, err + env_err, x);
        }
    }
}

// ---------------------------------------------------------------------------
// verify / verify_many
// ---------------------------------------------------------------------------

namespace detail {

inline bool in_mu_group(Subject s) {
    return s == Subject::mertens || s == Subject::mertens_logavg || s == Subject::sqf_count ||
           s == Subject::sqf_log || s == Subject::mu_log2_moment;
}
inline bool in_lambda_group(Subject s) { return s == Subject::psi_remainder || s == Subject::psi_ratio; }

} // namespace detail

// Re-evaluate a PASS report at `count` uniformly random points of the dense
// range through the independent profile machinery.  Returns false (and the
// failing point) if any sample violates the envelope.
bool spot_check_spec(const BoundSpec& spec, const RunConfig& cfg, u64 seed, u32 count, u64* bad_x);

template <class Real = double>
std::vector<VerificationReport> verify_many_impl(const std::vector<BoundSpec>& specs, const RunConfig& cfg) {
    using clock = std::chrono::steady_clock;
    std::vector<detail::DenseTracker> trackers(specs.size());
    std::vector<double> seconds(specs.size(), 0.0);
    for (size_t i = 0; i < specs.size(); ++i) trackers[i].spec = &specs[i];

    std::vector<detail::DenseTracker*> mu_ts, lam_ts, conv_ts, samp_ts;
    for (auto& t : trackers) {
        if (t.spec->has_dense()) {
            if (detail::in_mu_group(t.spec->subject)) mu_ts.push_back(&t);
            else if (detail::in_lambda_group(t.spec->subject)) lam_ts.push_back(&t);
            else if (t.spec->subject == Subject::r2_star) conv_ts.push_back(&t);
            else throw std::invalid_argument("no dense scan for subject " +
                                             std::string(subject_name(t.spec->subject)));
        }
        if (t.spec->has_samples()) samp_ts.push_back(&t);
    }

    auto timed = [&](std::vector<detail::DenseTracker*>& group, auto&& fn) {
        if (group.empty()) return;
        const auto t0 = clock::now();
        fn(group);
        const double dt = std::chrono::duration<double>(clock::now() - t0).count();
        for (auto* t : group) seconds[t - trackers.data()] += dt;
    };
    timed(mu_ts, [&](auto& g) { run_mu_dense<Real>(g, cfg); });
    timed(lam_ts, [&](auto& g) { run_lambda_dense<Real>(g, cfg); });
    timed(conv_ts, [&](auto& g) { run_conv_dense(g, cfg); });
    timed(samp_ts, [&](auto& g) { run_sampled(g, cfg); });

    std::vector<VerificationReport> reports;
    for (size_t i = 0; i < specs.size(); ++i) {
        const BoundSpec& sp = specs[i];
        VerificationReport r;
        r.id = sp.id;
        r.anchor = sp.anchor;
        r.lo = sp.report_lo();
        r.hi = sp.report_hi();
        r.hash = config_hash(cfg, "verify:" + sp.id);
        r.seconds = seconds[i];
        if (!sp.scannable()) {
            r.status = "SKIPPED";
            reports.push_back(r);
            continue;
        }
        const ScanOutcome& o = trackers[i].out;
        r.status = o.status();
        r.witness_x = o.witness;
        r.ratio = o.max_ratio;
        r.margin = std::isfinite(o.min_margin) ? o.min_margin : 0.0;
        r.err_bound = o.max_err;
        if (r.status == "PASS" && cfg.spot_checks) {
            u64 bad = 0;
            if (!spot_check_spec(sp, cfg, fnv1a(r.hash), 1000, &bad)) {
                r.status = "FAIL";
                r.witness_x = bad;
            }
        }
        reports.push_back(r);
    }
    return reports;
}

inline std::vector<VerificationReport> verify_many(const std::vector<BoundSpec>& specs, const RunConfig& cfg) {
    auto reports = cfg.shadow ? verify_many_impl<long double>(specs, cfg)
                              : verify_many_impl<double>(specs, cfg);
    // Margin too thin for double precision: rerun those specs with extended-
    // precision accumulators before conceding INCONCLUSIVE.
    if (!cfg.shadow) {
        std::vector<BoundSpec> rerun;
        std::vector<size_t> idx;
        for (size_t i = 0; i < reports.size(); ++i)
            if (reports[i].status == "INCONCLUSIVE") {
                rerun.push_back(specs[i]);
                idx.push_back(i);
            }
        if (!rerun.empty()) {
            RunConfig shadow_cfg = cfg;
            shadow_cfg.shadow = true;
            auto redo = verify_many_impl<long double>(rerun, shadow_cfg);
            for (size_t j = 0; j < idx.size(); ++j) reports[idx[j]] = redo[j];
        }
    }
    return reports;
}

inline VerificationReport verify(const BoundSpec& spec, const RunConfig& cfg = {}) {
    return verify_many({spec}, cfg).front();
}

// ---------------------------------------------------------------------------
// Spot checks
// ---------------------------------------------------------------------------

inline bool spot_check_spec(const BoundSpec& spec, const RunConfig& cfg, u64 seed, u32 count, u64* bad_x) {
    if (!spec.has_dense()) return true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> dist(spec.dense_lo, spec.dense_hi);
    std::vector<u64> xs(count);
    for (auto& x : xs) x = dist(rng);
    xs = sorted_unique(std::move(xs));

    auto check = [&](u64 x, double absval, double err) {
        const double env = spec.envelope.eval(x);
        if (absval > env + err + env * spec.envelope.rel_err()) {
            if (bad_x) *bad_x = x;
            return false;
        }
        return true;
    };

    const double c6 = math_const<double>::inv_zeta2;
    switch (spec.subject) {
        case Subject::mertens:
        case Subject::mertens_logavg:
        case Subject::sqf_count:
        case Subject::sqf_log:
        case Subject::mu_log2_moment: {
            auto rows = mu_profile(xs, cfg.stream(), spec.subject == Subject::mu_log2_moment);
            for (const auto& r : rows) {
                double v = 0, err = 0;
                switch (spec.subject) {
                    case Subject::mertens: v = std::abs(double(r.M)); break;
                    case Subject::mertens_logavg: v = std::abs(r.m.value); err = r.m.err; break;
                    case Subject::sqf_count: v = std::abs(double(r.Q) - c6 * double(r.x)); err = 1e-6; break;
                    case Subject::sqf_log:
                        v = std::abs(r.q_log.value - c6 * std::log(double(r.x)));
                        err = r.q_log.err + 1e-12;
                        break;
                    default: v = std::abs(r.mu_log2.value); err = r.mu_log2.err; break;
                }
                if (!check(r.x, v, err)) return false;
            }
            return true;
        }
        case Subject::psi_remainder:
        case Subject::psi_ratio: {
            auto rows = lambda_profile(xs, cfg.stream());
            for (const auto& r : rows) {
                const double v = spec.subject == Subject::psi_ratio
                                     ? r.psi.value
                                     : std::abs(r.psi.value - double(r.x));
                if (!check(r.x, v, r.psi.err)) return false;
            }
            return true;
        }
        case Subject::r2_star: {
            // dense part only; keep the sample count moderate
            std::vector<u64> sub(xs.begin(), xs.begin() + std::min<size_t>(xs.size(), 50));
            for (const auto& ev : remainder_eval_batch(sub, cfg.stream()))
                if (!check(ev.X, std::abs(ev.R2star.value), ev.R2star.err)) return false;
            return true;
        }
        default:
            return true;
    }
}

// ---------------------------------------------------------------------------
// Constant recomputation checks
// ---------------------------------------------------------------------------

struct ConstantCheck {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    std::string comparison;   // "<=" or "~"
    double tolerance = 0.0;   // for "~"
    double err_bound = 0.0;
    std::string status;       // PASS / FAIL / NOTE
    bool gating = true;
    std::string note;
};

inline std::vector<ConstantCheck> constant_checks(const RunConfig& cfg = {}) {
    std::vector<ConstantCheck> out;
    const StreamOptions so = cfg.stream();

    auto le_check = [](std::string name, double computed, double ref, double err,
                       std::string note = "") {
        ConstantCheck c;
        c.name = std::move(name);
        c.computed = computed;
        c.reference = ref;
        c.comparison = "<=";
        c.err_bound = err;
        c.status = (computed + err <= ref) ? "PASS" : "FAIL";
        c.note = std::move(note);
        return c;
    };

    // mu-side pass to 4e7: the moment difference at X0 = 4e7 and the exact
    // |M| integral to 1798118
    {
        auto rows = mu_profile({1798118, u64(4e7)}, so, true);
        const auto& rT = rows[0];
        const auto& r0 = rows[1];
        const double L = std::log(4e7);
        const double diff = std::abs(double(r0.M) - r0.mu_log2.value / (L * L));
        const double err = r0.mu_log2.err / (L * L) + std::abs(diff) * 8 * std::numeric_limits<double>::epsilon();
        out.push_back(le_check("pari-7.01", diff, 7.01, err,
                               "|M(X0) - M2(mu,X0)/log^2 X0| at X0 = 4e7"));
        out.push_back(le_check("int-absM", double(rT.absM_integral), 216378740.0, 0.0,
                               "int_1^1798118 |M(t)| dt, exact integer"));
    }

    // lambda-side pass to 1e8: int_1^1e8 R dt/t, plus psi(40000)
    {
        auto rows = lambda_profile({40000, u64(1e8)}, so);
        const auto& r4e4 = rows[0];
        const auto& r = rows[1];
        const ErrValue intR = integral_R_over_t_from(r.psi, r.lambda_log, u64(1e8));
        ConstantCheck c;
        c.name = "int-R";
        c.computed = intR.value;
        c.reference = -129.559;
        c.comparison = "~";
        c.tolerance = 0.01;
        c.err_bound = intR.err;
        c.status = std::abs(intR.value - c.reference) <= c.tolerance + intR.err ? "PASS" : "FAIL";
        c.note = "int_1^1e8 R(t) dt/t via psi(X) log X - Sigma Lambda(n) log n - (X-1)";
        out.push_back(c);

        const ErrValue s1000 = lambda_sqrt_sum(1000);
        out.push_back(le_check("lambda-sqrt-1000", s1000.value, 60.51, s1000.err,
                               "Sigma_{n<=1000} Lambda(n)/sqrt(n)"));

        const ErrValue s4e4 = lambda_sqrt_sum(40000);
        ConstantCheck b;
        b.name = "lambda-sqrt-40000";
        b.computed = s4e4.value;
        b.reference = 40012.8937;
        b.comparison = "~";
        b.tolerance = 0.0;
        b.err_bound = s4e4.err;
        b.status = "NOTE";
        b.gating = false;
        char note[160];
        std::snprintf(note, sizeof(note),
                      "direct summation gives %.4f; the published 40012.8937 matches psi(40000) = %.4f instead",
                      s4e4.value, r4e4.psi.value);
        b.note = note;
        out.push_back(b);
    }

    // hyperbola-splitting l1 constants
    {
        auto c1 = conv_l1_norm(462848);
        out.push_back(le_check("conv-l1-462848", c1.value.value, 4345 * 0.0374, c1.value.err,
                               "Sigma |conv - Lambda log + 2 gamma|/k + |R2*(K)|/K at K = 462848"));
        auto c2 = conv_l1_norm(1000000);
        out.push_back(le_check("conv-l1-1000000", c2.value.value, 4345 * 0.0422, c2.value.err,
                               "same at K = 1e6"));
    }

    // main-theorem bracket constant: pure arithmetic in the stated constants
    {
        const double X0 = 4e7;
        const double L = std::log(X0);
        const double bracket = 7.01 - 0.013376 * X0 / (L * L) + 0.074048 * X0 / (L * L * L);
        ConstantCheck c;
        c.name = "main-bracket";
        c.computed = std::abs(bracket);
        c.reference = 1186.93;
        c.comparison = "~";
        c.tolerance = 0.01;
        c.err_bound = std::abs(bracket) * 16 * std::numeric_limits<double>::epsilon();
        c.status = std::abs(c.computed - c.reference) <= c.tolerance + c.err_bound ? "PASS" : "FAIL";
        c.note = "|7.01 - 0.013376 X0/log^2 X0 + 0.074048 X0/log^3 X0| at X0 = 4e7, vs printed 1186.93";
        out.push_back(c);
    }

    return out;
}

// ---------------------------------------------------------------------------
// Mertens-to-m transfer inequality (per-X check)
// ---------------------------------------------------------------------------

struct EmCheck {
    u64 X = 0;
    ErrValue lhs;   // |m(X)|
    ErrValue rhs;   // |M(X)|/X + (1/X^2) int_1^X |M| + 8/(3X)
    bool holds() const { return lhs.value <= rhs.value + lhs.err + rhs.err; }
};

inline std::vector<EmCheck> em_inequality_batch(std::vector<u64> xs, const StreamOptions& opt = {}) {
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<EmCheck> out;
    auto rows = mu_profile(xs, opt);
    for (const auto& r : rows) {
        EmCheck c;
        c.X = r.x;
        c.lhs = {std::abs(r.m.value), r.m.err};
        const double x = static_cast<double>(r.x);
        const double v = std::abs(double(r.M)) / x + double(r.absM_integral) / (x * x) + 8.0 / (3.0 * x);
        c.rhs = {v, v * 6 * eps};
        out.push_back(c);
    }
    return out;
}

inline EmCheck em_inequality_check(u64 X, const StreamOptions& opt = {}) {
    return em_inequality_batch({X}, opt).front();
}

} // namespace moebius
