#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "moebius/remainder.hpp"
#include "oracles.hpp"

using namespace moebius;

static StreamOptions small_opts() {
    StreamOptions o;
    o.segment_size = 1 << 14;
    return o;
}

TEST_CASE("lambda_conv_term matches direct convolution") {
    const u32 K = 5000;
    auto spf = spf_table(K);
    // direct Lambda*Lambda by pair enumeration over prime powers
    std::vector<long double> conv(K + 1, 0.0L);
    for (u32 a = 2; a <= K / 2; ++a) {
        long double la = oracle::lambda(a);
        if (la == 0.0L) continue;
        for (u32 b = 2; a * b <= K; ++b) {
            long double lb = oracle::lambda(b);
            if (lb != 0.0L) conv[a * b] += la * lb;
        }
    }
    for (u32 k = 1; k <= K; ++k) {
        auto t = lambda_conv_term(k, spf);
        REQUIRE(std::abs((long double)t.conv - conv[k]) < 1e-12L);
        REQUIRE(std::abs((long double)t.lambda_logk -
                         oracle::lambda(k) * std::log((long double)k)) < 1e-12L);
    }
}

TEST_CASE("hyperbola lambda2_sum equals brute-force double sum for all X <= 1e4") {
    const u64 N = 10000;
    // cumulative brute-force convolution sums, built once
    std::vector<long double> conv(N + 1, 0.0L);
    {
        std::vector<u64> pps;
        std::vector<long double> lams;
        for (u64 n = 2; n <= N / 2; ++n) {
            long double l = oracle::lambda(n);
            if (l != 0.0L) {
                pps.push_back(n);
                lams.push_back(l);
            }
        }
        for (size_t i = 0; i < pps.size(); ++i)
            for (size_t j = 0; j < pps.size() && pps[i] * pps[j] <= N; ++j)
                conv[pps[i] * pps[j]] += lams[i] * lams[j];
        for (u64 n = 1; n <= N; ++n) conv[n] += conv[n - 1];
    }

    std::vector<u64> xs;
    for (u64 x = 1; x <= N; ++x) xs.push_back(x);
    auto evals = remainder_eval_batch(xs, small_opts());
    REQUIRE(evals.size() == N);
    for (const auto& ev : evals) {
        REQUIRE(std::abs((long double)ev.lambda2.value - conv[ev.X]) < 1e-9L);
    }
}

TEST_CASE("pinned remainder values") {
    const double gamma = math_const<double>::euler_gamma;
    const double l2 = std::log(2.0), l3 = std::log(3.0);

    auto e3 = remainder_eval(3, small_opts());
    CHECK(e3.lambda2.value == Catch::Approx(0.0).margin(1e-12));

    auto e4 = remainder_eval(4, small_opts());
    CHECK(e4.lambda2.value == Catch::Approx(l2 * l2).margin(1e-12));
    CHECK(e4.R2star.value == Catch::Approx(-2 * l2 * l2 - l3 * l3 + 8 * gamma).margin(1e-12));
    CHECK(e4.R4.value == Catch::Approx(l2 * (l2 - 2)).margin(1e-12));

    auto e1 = remainder_eval(1, small_opts());
    CHECK(e1.R2star.value == Catch::Approx(2 * gamma).margin(1e-12));
    // R3(1) by term-by-term oracle: 2|gamma + 1| + 1
    CHECK(e1.R3.value == Catch::Approx(2 * (gamma + 1) + 1).margin(1e-12));
    CHECK(e1.R.value == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("R4 equals direct sum for X = 100") {
    auto ev = remainder_eval(100, small_opts());
    long double direct = 0;
    for (u64 n = 2; n <= 10; ++n) {
        long double l = oracle::lambda(n);
        if (l != 0.0L) direct += l * (oracle::psi(100 / n) - 100.0L / n);
    }
    REQUIRE(std::abs((long double)ev.R4.value - direct) < 1e-9L);
}

TEST_CASE("R3 against term-by-term oracle at scattered X") {
    for (u64 X : {u64(2), u64(10), u64(1000), u64(50000), u64(123457)}) {
        auto ev = remainder_eval(X, small_opts());
        const long double sx = std::sqrt((long double)X);
        const u64 s = isqrt(X);
        const long double gamma = math_const<long double>::euler_gamma;
        const long double r_s = oracle::psi_tilde(s) - std::log(sx) + gamma;
        const long double R_s = oracle::psi(s) - sx;
        const long double R_x = oracle::psi(X) - (long double)X;
        long double intR = 0;
        {
            long double run = 0;
            for (u64 n = 1; n < X; ++n) {
                run += oracle::lambda(n);
                intR += run * (std::log((long double)(n + 1)) - std::log((long double)n)) - 1.0L;
            }
        }
        const long double expect =
            2 * sx * std::abs(sx * r_s - R_s) + R_s * R_s + std::abs(R_x) * std::log((long double)X) + std::abs(intR);
        REQUIRE(std::abs((long double)ev.R3.value - expect) < 1e-7L);
    }
}

TEST_CASE("lambda_sqrt_sum small values") {
    CHECK(lambda_sqrt_sum(1).value == 0.0);
    // T = 10: direct
    long double direct = 0;
    for (u64 n = 2; n <= 10; ++n) direct += oracle::lambda(n) / std::sqrt((long double)n);
    CHECK(std::abs((long double)lambda_sqrt_sum(10).value - direct) < 1e-12L);
}

TEST_CASE("lambda_log_ratio_check") {
    auto r = lambda_log_ratio_check(1000000, 1);
    CHECK(r.lhs.value == 0.0);
    CHECK(r.lhs.value <= r.rhs);

    r = lambda_log_ratio_check(1000000, 1000);
    CHECK(r.lhs.value <= r.rhs);

    // direct check of the lhs
    long double direct = 0;
    for (u64 n = 2; n <= 1000; ++n)
        direct += oracle::lambda(n) / (n * std::log(1000000.0L / n));
    CHECK(std::abs((long double)r.lhs.value - direct) < 1e-12L);

    CHECK_THROWS_AS(lambda_log_ratio_check(100, 11), std::invalid_argument);
}

TEST_CASE("conv_l1_norm at K = 1 is 4 gamma") {
    auto r = conv_l1_norm(1);
    CHECK(r.value.value == Catch::Approx(4 * math_const<double>::euler_gamma).margin(1e-14));
}

TEST_CASE("incremental R2* stream agrees with hyperbola evaluation") {
    // run the incremental per-k accumulation to K and compare at checkpoints
    const u32 K = 20000;
    const double gamma = math_const<double>::euler_gamma;
    CompensatedSum r2;
    std::vector<std::pair<u64, double>> at;
    scan_lambda_conv(K, [&](u32 k, double conv, double lamlog) {
        r2.add(conv - lamlog + 2 * gamma, 6);
        if (k == 100 || k == 1234 || k == 20000) at.push_back({k, r2.value()});
    });
    for (auto [x, v] : at) {
        auto ev = remainder_eval(x, small_opts());
        REQUIRE(std::abs(ev.R2star.value - v) < 1e-8);
    }
}

TEST_CASE("windowed R4 scan matches brute force on a toy window") {
    auto res = windowed_r4_scan(2, 3, 100, 110, small_opts(), 4);
    // brute force: f(X) = log(3) * (psi(floor(X/3)) - X/3)
    long double best = -1;
    u64 best_x = 0;
    for (u64 X = 100; X <= 110; ++X) {
        long double f = std::log(3.0L) * (oracle::psi(X / 3) - (long double)X / 3.0L);
        long double ratio = std::abs(f) / X;
        if (ratio > best) {
            best = ratio;
            best_x = X;
        }
    }
    CHECK(res.witness_x == best_x);
    CHECK(std::abs((long double)res.max_ratio - best) < 1e-12L);
    CHECK(res.recompute_ok);
    CHECK(res.max_recompute_gap <= 1e-9);
}

TEST_CASE("windowed R4 scan incremental state survives frequent recompute checks") {
    auto res = windowed_r4_scan(10, 50, 2500, 9000, small_opts(), 7);
    CHECK(res.recompute_ok);
    CHECK(res.recompute_checks > 800);
    CHECK(res.max_recompute_gap <= 1e-9);

    // brute force the same window
    long double best = -1;
    u64 best_x = 0;
    std::vector<u64> pps;
    std::vector<long double> lams;
    for (u64 n = 11; n <= 50; ++n) {
        long double l = oracle::lambda(n);
        if (l != 0.0L) {
            pps.push_back(n);
            lams.push_back(l);
        }
    }
    for (u64 X = 2500; X <= 9000; ++X) {
        long double f = 0;
        for (size_t i = 0; i < pps.size(); ++i)
            f += lams[i] * (oracle::psi(X / pps[i]) - (long double)X / pps[i]);
        long double ratio = std::abs(f) / X;
        if (ratio > best) {
            best = ratio;
            best_x = X;
        }
    }
    CHECK(res.witness_x == best_x);
    CHECK(std::abs((long double)res.max_ratio - best) < 1e-10L);
}

TEST_CASE("windowed R4 scan precondition") {
    CHECK_THROWS_AS(windowed_r4_scan(10, 1000, 5000, 6000, small_opts()), std::invalid_argument);
    CHECK_THROWS_AS(windowed_r4_scan(10, 10, 5000, 6000, small_opts()), std::invalid_argument);
}

TEST_CASE("squarefree tail bound sample (partial summation route)") {
    // Sigma_{X/K0 < n <= X/K} mu^2(n)/sqrt(n) <= (12/pi^2) sqrt(X/K) on a desk sample
    const u64 x_over_k0 = 5000000, x_over_k = 20000000;
    StreamOptions o;
    o.need_mu = true;
    o.need_lambda = false;
    SummatoryState<double> st;
    CompensatedSum tail;
    scan_summatory<double>(st, x_over_k, o, [&](u64 n, const SummatoryState<double>&, int mu_n, const MangoldtEntry*) {
        if (n > x_over_k0 && mu_n != 0) tail.add(1.0 / std::sqrt((double)n), 3);
    });
    const double bound = 2 * math_const<double>::inv_zeta2 * std::sqrt((double)x_over_k);
    CHECK(tail.value() + tail.error_bound() <= bound);
}
