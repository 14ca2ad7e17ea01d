#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moebius/constants.hpp"
#include "moebius/common.hpp"

namespace moebius {

// ---------------------------------------------------------------------------
// Envelopes
// ---------------------------------------------------------------------------

enum class EnvelopeKind {
    sqrt_x,                // c * sqrt(X)
    linear_x,              // c * X
    x_over_log,            // c * X / log X
    x_over_const,          // X / c
    thm_form,              // (a log X + b) X / log^2 X
    recip_log_form,        // (a log X + b) / log^2 X
    recip_sqrt,            // c / sqrt(X)
    sqrt_log,              // c * sqrt(X) log X
    x_log_linear,          // (a log X + b) X
    constant,              // c
    recip_sqrt_plus_const, // a / sqrt(X) + b
};

// Constants are carried as decimal strings and parsed once, so the working
// precision value is pinned to the printed decimal.  Envelopes whose
// constants are short decimals additionally expose an exact scaled-integer
// form used for integer subjects.
struct Envelope {
    EnvelopeKind kind = EnvelopeKind::sqrt_x;
    std::string a_str, b_str, c_str;
    double a = 0, b = 0, c = 0;

    // exact form for sqrt_x: |v|^2 * 10^(2*pow10) <= c_num^2 * X
    // exact form for x_over_const: |v| * c_den <= X
    u64 exact_num = 0;
    int exact_pow10 = -1;

    static Envelope sqrt_x(const std::string& c) { return with_c(EnvelopeKind::sqrt_x, c); }
    static Envelope linear_x(const std::string& c) { return with_c(EnvelopeKind::linear_x, c); }
    static Envelope x_over_log(const std::string& c) { return with_c(EnvelopeKind::x_over_log, c); }
    static Envelope x_over_const(const std::string& c) { return with_c(EnvelopeKind::x_over_const, c); }
    static Envelope constant(const std::string& c) { return with_c(EnvelopeKind::constant, c); }
    static Envelope recip_sqrt(const std::string& c) { return with_c(EnvelopeKind::recip_sqrt, c); }
    static Envelope sqrt_log(const std::string& c) { return with_c(EnvelopeKind::sqrt_log, c); }
    static Envelope thm_form(const std::string& a, const std::string& b) {
        return with_ab(EnvelopeKind::thm_form, a, b);
    }
    static Envelope recip_log_form(const std::string& a, const std::string& b) {
        return with_ab(EnvelopeKind::recip_log_form, a, b);
    }
    static Envelope x_log_linear(const std::string& a, const std::string& b) {
        return with_ab(EnvelopeKind::x_log_linear, a, b);
    }
    static Envelope recip_sqrt_plus_const(const std::string& a, const std::string& b) {
        return with_ab(EnvelopeKind::recip_sqrt_plus_const, a, b);
    }

    bool needs_log() const {
        switch (kind) {
            case EnvelopeKind::x_over_log:
            case EnvelopeKind::thm_form:
            case EnvelopeKind::recip_log_form:
            case EnvelopeKind::sqrt_log:
            case EnvelopeKind::x_log_linear:
                return true;
            default:
                return false;
        }
    }

    double eval(double x, double sqrtx, double logx) const {
        switch (kind) {
            case EnvelopeKind::sqrt_x: return c * sqrtx;
            case EnvelopeKind::linear_x: return c * x;
            case EnvelopeKind::x_over_log: return c * x / logx;
            case EnvelopeKind::x_over_const: return x / c;
            case EnvelopeKind::thm_form: return (a * logx + b) * x / (logx * logx);
            case EnvelopeKind::recip_log_form: return (a * logx + b) / (logx * logx);
            case EnvelopeKind::recip_sqrt: return c / sqrtx;
            case EnvelopeKind::sqrt_log: return c * sqrtx * logx;
            case EnvelopeKind::x_log_linear: return (a * logx + b) * x;
            case EnvelopeKind::constant: return c;
            case EnvelopeKind::recip_sqrt_plus_const: return a / sqrtx + b;
        }
        return 0;
    }

    double eval(u64 x) const {
        const double xd = static_cast<double>(x);
        return eval(xd, std::sqrt(xd), std::log(xd));
    }

    // relative rounding error of eval(); a handful of rounded operations
    double rel_err() const { return 8 * std::numeric_limits<double>::epsilon(); }

    std::string text() const {
        switch (kind) {
            case EnvelopeKind::sqrt_x: return c_str + " sqrt(X)";
            case EnvelopeKind::linear_x: return c_str + " X";
            case EnvelopeKind::x_over_log: return c_str + " X/log X";
            case EnvelopeKind::x_over_const: return "X/" + c_str;
            case EnvelopeKind::thm_form: return "(" + a_str + " log X " + b_str + ") X/log^2 X";
            case EnvelopeKind::recip_log_form: return "(" + a_str + " log X " + b_str + ")/log^2 X";
            case EnvelopeKind::recip_sqrt: return c_str + "/sqrt(X)";
            case EnvelopeKind::sqrt_log: return c_str + " sqrt(X) log X";
            case EnvelopeKind::x_log_linear: return "(" + a_str + " log X " + b_str + ") X";
            case EnvelopeKind::constant: return c_str;
            case EnvelopeKind::recip_sqrt_plus_const: return a_str + "/sqrt(X) + " + b_str;
        }
        return "";
    }

    // Exact check |v| <= envelope(x) for integer subjects, when available.
    bool has_exact() const { return exact_pow10 >= 0; }
    bool exact_holds(i64 v, u64 x) const {
        const unsigned __int128 av = v < 0 ? -static_cast<unsigned __int128>(v) : v;
        if (kind == EnvelopeKind::sqrt_x) {
            unsigned __int128 lhs = av * av;
            for (int i = 0; i < 2 * exact_pow10; ++i) lhs *= 10;
            return lhs <= static_cast<unsigned __int128>(exact_num) * exact_num * x;
        }
        // x_over_const: |v| * c <= X
        return av * exact_num <= static_cast<unsigned __int128>(x);
    }

private:
    static Envelope with_c(EnvelopeKind k, const std::string& c) {
        Envelope e;
        e.kind = k;
        e.c_str = c;
        e.c = parse_decimal(c);
        if (k == EnvelopeKind::sqrt_x || k == EnvelopeKind::x_over_const) e.derive_exact(c);
        return e;
    }
    static Envelope with_ab(EnvelopeKind k, const std::string& a, const std::string& b) {
        Envelope e;
        e.kind = k;
        e.a_str = a;
        e.b_str = b;
        e.a = parse_decimal(a);
        e.b = parse_decimal(b);
        return e;
    }

    // "0.571" -> num 571, pow10 3; integers keep pow10 0.  Anything that does
    // not fit a short plain decimal stays float-only.
    void derive_exact(const std::string& s) {
        u64 num = 0;
        int pow10 = 0;
        bool seen_dot = false;
        int digits = 0;
        for (char ch : s) {
            if (ch == '.') {
                if (seen_dot) return;
                seen_dot = true;
                continue;
            }
            if (ch < '0' || ch > '9') return;
            num = num * 10 + (ch - '0');
            if (seen_dot) ++pow10;
            if (++digits > 9) return;
        }
        exact_num = num;
        exact_pow10 = pow10;
    }
};

// ---------------------------------------------------------------------------
// Bound catalog
// ---------------------------------------------------------------------------

enum class Subject {
    mertens,        // |M(X)|
    mertens_logavg, // |m(X)|
    psi_remainder,  // |R(X)| = |psi(X) - X|
    psi_ratio,      // psi(X)  (vs c X)
    sqf_count,      // |Q(X) - (6/pi^2) X|
    sqf_log,        // |Sigma mu^2/n - (6/pi^2) log X|
    r2_star,        // |R2*(X)|
    r4,             // |R4(X)|
    r_gap,          // |r(X) - R(X)/X|
    mu_log2_moment, // |Sigma mu(n) log^2 n|
};

inline const char* subject_name(Subject s) {
    switch (s) {
        case Subject::mertens: return "M";
        case Subject::mertens_logavg: return "m";
        case Subject::psi_remainder: return "R";
        case Subject::psi_ratio: return "psi_ratio";
        case Subject::sqf_count: return "Q_sqf";
        case Subject::sqf_log: return "q_log_sqf";
        case Subject::r2_star: return "R2star";
        case Subject::r4: return "R4";
        case Subject::r_gap: return "r_gap";
        case Subject::mu_log2_moment: return "M2_mu";
    }
    return "?";
}

struct BoundSpec {
    std::string id;
    Subject subject = Subject::mertens;
    Envelope envelope;

    // validity range as published (paper_hi == 0 means unbounded above)
    u64 paper_lo = 1;
    u64 paper_hi = 0;

    // desk-scale slice: endpoint-exact unit-interval scan over [dense_lo, dense_hi]
    u64 dense_lo = 0, dense_hi = 0;
    bool dense_hi_open = false;   // right-open range: no point check at dense_hi

    // log-spaced integer samples over [sample_lo, sample_hi]
    u64 sample_lo = 0, sample_hi = 0;
    u32 sample_count = 0;

    std::string anchor;   // source/statement of the published bound
    bool demo = false;    // deliberately-false entry, excluded from --all

    bool has_dense() const { return dense_lo >= 1 && dense_hi >= dense_lo; }
    bool has_samples() const { return sample_count > 0 && sample_lo >= 1 && sample_hi >= sample_lo; }
    bool scannable() const { return has_dense() || has_samples(); }

    u64 report_lo() const { return has_dense() ? dense_lo : sample_lo; }
    u64 report_hi() const { return has_samples() ? sample_hi : dense_hi; }
};

// Deterministic log-spaced integer grid (inclusive ends, deduplicated).
inline std::vector<u64> log_spaced(u64 lo, u64 hi, u32 count) {
    std::vector<u64> xs;
    if (count == 0 || lo > hi) return xs;
    if (count == 1 || lo == hi) return {lo};
    const double llo = std::log(static_cast<double>(lo));
    const double lhi = std::log(static_cast<double>(hi));
    xs.reserve(count);
    for (u32 i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        u64 v = static_cast<u64>(std::llround(std::exp(llo + t * (lhi - llo))));
        v = std::min(hi, std::max(lo, v));
        xs.push_back(v);
    }
    xs.back() = hi;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// Every explicit published bound this tool verifies, as data.  Desk slices
// default to 1e8 for the mu-side subjects and 3e7 for the psi-remainder
// subjects; entries whose published range starts beyond desk scale carry no
// slice and are skipped by full runs (documented, not scanned).
inline std::vector<BoundSpec> builtin_catalog() {
    std::vector<BoundSpec> cat;
    auto add = [&](BoundSpec s) { cat.push_back(std::move(s)); };

    // --- Mertens function ---
    add({.id = "m-sqrt", .subject = Subject::mertens, .envelope = Envelope::sqrt_x("1"),
         .paper_lo = 1, .paper_hi = u64(1e16), .dense_lo = 1, .dense_hi = u64(1e8),
         .anchor = "|M(X)| <= sqrt(X) for X <= 1e16 (Hurst 2018 computation); desk slice"});
    add({.id = "m-sqrt-0.571", .subject = Subject::mertens, .envelope = Envelope::sqrt_x("0.571"),
         .paper_lo = 33, .paper_hi = u64(1e12), .dense_lo = 33, .dense_hi = u64(1e8),
         .anchor = "|M(X)| <= 0.571 sqrt(X) for 33 <= X <= 1e12 (Dress 1993); desk slice"});
    add({.id = "m-x-2360", .subject = Subject::mertens, .envelope = Envelope::x_over_const("2360"),
         .paper_lo = 617973, .paper_hi = 0, .dense_lo = 617973, .dense_hi = u64(1e8),
         .anchor = "|M(X)| <= X/2360 for X >= 617973 (Dress/El Marraki 1993); desk slice"});
    add({.id = "m-x-4345", .subject = Subject::mertens, .envelope = Envelope::x_over_const("4345"),
         .paper_lo = 2160535, .paper_hi = 0, .dense_lo = 2160535, .dense_hi = u64(1e8),
         .anchor = "|M(X)| <= X/4345 for X >= 2160535 (Cohen/Dress/El Marraki 1996); desk slice"});
    add({.id = "thm1", .subject = Subject::mertens, .envelope = Envelope::thm_form("0.006688", "-0.039"),
         .paper_lo = 1798118, .paper_hi = 0, .dense_lo = 1798118, .dense_hi = u64(1.5e7),
         .anchor = "|M(X)| <= (0.006688 log X - 0.039) X / log^2 X for X >= 1798118; desk slice"});
    add({.id = "cor-M", .subject = Subject::mertens, .envelope = Envelope::thm_form("0.0130", "-0.118"),
         .paper_lo = 1078853, .paper_hi = 0, .dense_lo = 1078853, .dense_hi = u64(1.5e7),
         .anchor = "|M(X)| <= (0.0130 log X - 0.118) X / log^2 X for X >= 1078853; desk slice"});

    // --- logarithmic Mertens average ---
    // The [1,2) interval touches the envelope exactly in the right limit
    // (m(1) = 1, sqrt2/sqrt(2) = 1), so the scan starts at 2; X in [1,2) is
    // covered by the exact point value m(1) = 1 < sqrt(2) <= sqrt(2)/sqrt(t).
    add({.id = "m-recip-sqrt", .subject = Subject::mertens_logavg,
         .envelope = Envelope::recip_sqrt("1.41421356237309504880168872420969808"),
         .paper_lo = 1, .paper_hi = u64(1e14), .dense_lo = 2, .dense_hi = u64(1e8),
         .anchor = "|m(X)| <= sqrt(2)/sqrt(X) for X <= 1e14 (Helfgott 2019); desk slice from 2"});
    add({.id = "cor-m", .subject = Subject::mertens_logavg,
         .envelope = Envelope::recip_log_form("0.010032", "-0.0568"),
         .paper_lo = 617990, .paper_hi = 0, .dense_lo = 617990, .dense_hi = u64(1.5e7),
         .anchor = "|m(X)| <= (0.010032 log X - 0.0568)/log^2 X for X >= 617990; desk slice"});
    add({.id = "cor-m2", .subject = Subject::mertens_logavg,
         .envelope = Envelope::recip_log_form("0.0144", "-0.1"),
         .paper_lo = 463421, .paper_hi = 0, .dense_lo = 463421, .dense_hi = 617990, .dense_hi_open = true,
         .anchor = "|m(X)| <= (0.0144 log X - 0.1)/log^2 X on [463421, 617990)"});

    // --- squarefree counts ---
    add({.id = "sqf-count", .subject = Subject::sqf_count, .envelope = Envelope::sqrt_x("0.02767"),
         .paper_lo = 438653, .paper_hi = 0, .dense_lo = 438653, .dense_hi = u64(1e8),
         .anchor = "|Q(X) - 6X/pi^2| <= 0.02767 sqrt(X) for X >= 438653 (Cohen/Dress/El Marraki 2007)"});
    add({.id = "sqf-count-all", .subject = Subject::sqf_count, .envelope = Envelope::sqrt_x("0.7"),
         .paper_lo = 1, .paper_hi = 0, .dense_lo = 1, .dense_hi = u64(1e8),
         .anchor = "|Q(X) - 6X/pi^2| <= 0.7 sqrt(X) for X >= 1"});
    add({.id = "sqf-log", .subject = Subject::sqf_log, .envelope = Envelope::constant("1.045"),
         .paper_lo = u64(1e6), .paper_hi = 0, .dense_lo = u64(1e6), .dense_hi = u64(1e8),
         .anchor = "|Sigma_{n<=X} mu^2(n)/n - (6/pi^2) log X| <= 1.045 for X >= 1e6"});
    add({.id = "sqf-log-all", .subject = Subject::sqf_log, .envelope = Envelope::constant("1.48"),
         .paper_lo = 1, .paper_hi = 0, .dense_lo = 1, .dense_hi = u64(1e8),
         .anchor = "|Sigma_{n<=X} mu^2(n)/n - (6/pi^2) log X| <= 1.48 for X >= 1"});

    // --- psi remainder R(X) = psi(X) - X ---
    add({.id = "r-sqrt-0.8", .subject = Subject::psi_remainder, .envelope = Envelope::sqrt_x("0.8"),
         .paper_lo = 1501, .paper_hi = u64(1e10), .dense_lo = 1501, .dense_hi = u64(3e7),
         .anchor = "|R(X)| <= 0.8 sqrt(X) for 1500 < X <= 1e10 (Ramare/Rumely 1996); desk slice"});
    add({.id = "boundRbis", .subject = Subject::psi_remainder, .envelope = Envelope::sqrt_x("0.71"),
         .paper_lo = 24200, .paper_hi = u64(3e7), .dense_lo = 24200, .dense_hi = u64(3e7),
         .anchor = "max |R(X)|/sqrt(X) <= 0.71 on [24200, 3e7]"});
    add({.id = "r-sqrt-0.94", .subject = Subject::psi_remainder, .envelope = Envelope::sqrt_x("0.94"),
         .paper_lo = 12, .paper_hi = u64(1e19), .dense_lo = 12, .dense_hi = u64(3e7),
         .anchor = "|R(X)| <= 0.94 sqrt(X) for 11 < X <= 1e19 (Buthe 2018); desk slice"});
    add({.id = "r-x-over-log", .subject = Subject::psi_remainder, .envelope = Envelope::x_over_log("0.0065"),
         .paper_lo = 1514928, .paper_hi = 0, .dense_lo = 1514928, .dense_hi = u64(3e7),
         .anchor = "|R(X)| <= 0.0065 X/log X for X >= 1514928 (Ramare 2012); desk slice"});
    add({.id = "r-linear-8e-5", .subject = Subject::psi_remainder, .envelope = Envelope::linear_x("0.00008"),
         .paper_lo = u64(1e8), .paper_hi = 0, .dense_lo = u64(1e8), .dense_hi = u64(1.2e8),
         .anchor = "|R(X)| <= 8e-5 X for X >= 1e8 (Broadbent et al. 2021, extended); desk slice"});
    add({.id = "r-linear-2.59e-5", .subject = Subject::psi_remainder,
         .envelope = Envelope::linear_x("0.0000258843"),
         .paper_lo = 1318815735, .paper_hi = 0, .dense_lo = 1318815735, .dense_hi = 1328815735,
         .anchor = "|R(X)| <= 2.58843e-5 X for log X >= 21 (Broadbent et al. 2021 / Buthe 2016); desk slice"});
    add({.id = "r-linear-1.93e-8", .subject = Subject::psi_remainder,
         .envelope = Envelope::linear_x("0.0000000193378"),
         .paper_lo = 0, .paper_hi = 0,
         .anchor = "|R(X)| <= 1.93378e-8 X for log X >= 40; beyond desk scale, documented only"});
    add({.id = "r-x-over-log-9e-7", .subject = Subject::psi_remainder,
         .envelope = Envelope::x_over_log("0.0000009"),
         .paper_lo = 0, .paper_hi = 0,
         .anchor = "|R(X)| <= 9e-7 X/log X for X >= 1e19; beyond desk scale, documented only"});

    // --- psi ratio ---
    add({.id = "psi-ratio", .subject = Subject::psi_ratio, .envelope = Envelope::linear_x("1.03883"),
         .paper_lo = 1, .paper_hi = 0, .dense_lo = 1, .dense_hi = u64(1e8),
         .anchor = "psi(X) < 1.03883 X, maximum of psi(X)/X at X = 113 (Rosser/Schoenfeld 1962)"});

    // --- R2* ---
    add({.id = "r2-sqrt-log", .subject = Subject::r2_star, .envelope = Envelope::sqrt_log("1.93"),
         .paper_lo = 3, .paper_hi = u64(2.1e10),
         .dense_lo = 3, .dense_hi = u64(1e6),
         .sample_lo = u64(1e6), .sample_hi = u64(1e8), .sample_count = 10000,
         .anchor = "|R2*(X)| <= 1.93 sqrt(X) log X for 3 <= X <= 2.1e10; dense to 1e6 + log samples to 1e8"});
    add({.id = "r2-linear", .subject = Subject::r2_star, .envelope = Envelope::linear_x("0.011"),
         .paper_lo = u64(1.8e9), .paper_hi = 0,
         .sample_lo = u64(1.8e9), .sample_hi = u64(2e9), .sample_count = 12,
         .anchor = "|R2*(X)| <= 0.011 X for X >= 1.8e9; log-sampled desk slice"});

    // --- R4 ---
    add({.id = "r4-linear", .subject = Subject::r4, .envelope = Envelope::linear_x("0.005"),
         .paper_lo = u64(1.8e9), .paper_hi = 0,
         .sample_lo = u64(1.8e9), .sample_hi = u64(2e9), .sample_count = 12,
         .anchor = "|R4(X)| <= 0.005 X for X >= 1.8e9; log-sampled desk slice"});

    // --- |r(X) - R(X)/X| (consistency samples; the proof inputs are external) ---
    add({.id = "r-gap", .subject = Subject::r_gap,
         .envelope = Envelope::recip_sqrt_plus_const("0.05", "0.00000000000175"),
         .paper_lo = 394385, .paper_hi = 0,
         .sample_lo = 394385, .sample_hi = u64(1e8), .sample_count = 100,
         .anchor = "|r(X) - R(X)/X| <= 0.05/sqrt(X) + 1.75e-12 for X >= 394385 (Vanlalnagaia 2015); samples"});

    // --- mu log^2 moment ---
    add({.id = "victoire", .subject = Subject::mu_log2_moment,
         .envelope = Envelope::x_log_linear("0.006688", "-0.0504"),
         .paper_lo = u64(4e7), .paper_hi = 0, .dense_lo = u64(4e7), .dense_hi = u64(5e7),
         .anchor = "|Sigma_{n<=X} mu(n) log^2 n| <= (0.006688 log X - 0.0504) X for X >= 4e7; desk slice"});

    return cat;
}

// Constructed failing entry for exercising the FAIL path; kept out of --all.
inline BoundSpec fail_demo_spec() {
    BoundSpec s;
    s.id = "fail-demo";
    s.subject = Subject::mertens;
    s.envelope = Envelope::sqrt_x("0.5");
    s.paper_lo = 1;
    s.paper_hi = 100;
    s.dense_lo = 1;
    s.dense_hi = 100;
    s.anchor = "deliberately false bound used to exercise the FAIL path";
    s.demo = true;
    return s;
}

inline std::optional<BoundSpec> find_spec(const std::string& id) {
    for (auto& s : builtin_catalog())
        if (s.id == id) return s;
    if (id == "fail-demo") return fail_demo_spec();
    return std::nullopt;
}

} // namespace moebius
