#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "moebius/summatory.hpp"
#include "oracles.hpp"

using namespace moebius;

static StreamOptions small_opts() {
    StreamOptions o;
    o.segment_size = 1 << 14;
    return o;
}

TEST_CASE("checkpoint values match brute force on small ranges") {
    std::vector<SummatoryCheckpoint> cps;
    stream_checkpoints(10000, 1000, small_opts(), [&](const SummatoryCheckpoint& c) { cps.push_back(c); });
    REQUIRE(cps.size() == 10);
    for (const auto& c : cps) {
        REQUIRE(c.M == oracle::mertens(c.X));
        long double psi_ref = oracle::psi(c.X);
        REQUIRE(std::abs(c.psi.value - double(psi_ref)) < 1e-10);
        long double m_ref = 0;
        for (u64 n = 1; n <= c.X; ++n) m_ref += static_cast<long double>(oracle::mu(n)) / n;
        REQUIRE(std::abs(c.m.value - double(m_ref)) < 1e-10);
    }
}

TEST_CASE("pinned checkpoint values") {
    auto rows = mu_profile({4, 10});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].M == -1);                                  // M(10)
    CHECK(rows[0].m.value == Catch::Approx(1.0 / 6).epsilon(1e-12));  // 1 - 1/2 - 1/3

    auto lrows = lambda_profile({10});
    const double psi10 = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
    CHECK(std::abs(lrows[0].psi.value - psi10) <= lrows[0].psi.err + 1e-14);
}

TEST_CASE("checkpoints independent of stride, segment size and workers") {
    auto run = [](u64 stride, u64 segsize, int workers) {
        StreamOptions o;
        o.segment_size = segsize;
        o.workers = workers;
        std::vector<std::string> rows;
        stream_checkpoints(30000, stride, o, [&](const SummatoryCheckpoint& c) {
            if (c.X == 30000) rows.push_back(checkpoint_csv_row(c));
        });
        return rows.back();
    };
    const std::string base = run(10000, 1 << 14, 1);
    CHECK(run(10000, 1 << 12, 1) == base);
    CHECK(run(10000, 777, 1) == base);
    CHECK(run(10000, 1 << 14, 4) == base);
    CHECK(run(3000, 1 << 13, 4) == base);
    CHECK(run(30000, 29999, 2) == base);
}

TEST_CASE("moment operation") {
    auto mv = moment(SummandId::mu, 2, 4);
    const double expect = -std::pow(std::log(2.0), 2) - std::pow(std::log(3.0), 2);
    CHECK(mv.value.value == Catch::Approx(expect).margin(1e-12));

    CHECK(moment(SummandId::mu, 0, 10).value.value == -1.0);
    CHECK(moment(SummandId::mu, 1, 1).value.value == 0.0);
    CHECK(moment(SummandId::mu, 2, 1).value.value == 0.0);
    CHECK_THROWS_AS(moment(SummandId::mu, 3, 10), std::invalid_argument);

    // f = lambda, k = 0 is psi
    auto psi100 = moment(SummandId::lambda, 0, 100);
    CHECK(std::abs(psi100.value.value - double(oracle::psi(100))) < 1e-11);
}

TEST_CASE("abs_M_integral") {
    CHECK(abs_M_integral(1) == 0);
    CHECK(abs_M_integral(2) == 1);
    CHECK(abs_M_integral(5) == 3);   // |1| + |0| + |-1| + |-1|

    // nondecreasing, with increments |M(T)|
    auto rows = mu_profile({100, 101, 102, 103});
    for (size_t i = 1; i < rows.size(); ++i) {
        i64 inc = rows[i].absM_integral - rows[i - 1].absM_integral;
        i64 m = rows[i - 1].M;
        REQUIRE(inc == (m < 0 ? -m : m));
    }
}

TEST_CASE("integral_R_over_t") {
    CHECK(integral_R_over_t(1).value == 0.0);
    auto v2 = integral_R_over_t(2);
    CHECK(v2.value == Catch::Approx(-1.0).margin(1e-12));

    // cross-check against direct unit-interval integration of (psi(t) - t)/t
    const u64 X = 2000;
    long double direct = 0;
    long double psi_run = 0;
    for (u64 n = 1; n < X; ++n) {
        psi_run += oracle::lambda(n);
        // int_n^{n+1} (psi(n) - t)/t dt = psi(n) log((n+1)/n) - 1
        direct += psi_run * (std::log((long double)(n + 1)) - std::log((long double)n)) - 1.0L;
    }
    // add the jump at X itself (psi evaluated at X contributes only at t = X)
    auto got = integral_R_over_t(X);
    REQUIRE(std::abs(got.value - double(direct)) < 1e-8);
}

TEST_CASE("squarefree_stats") {
    auto s4 = squarefree_stats(4);
    CHECK(s4.Q == 3);
    auto s10 = squarefree_stats(10);
    CHECK(s10.Q == 7);
    long double ref = 0;
    for (u64 n = 1; n <= 10; ++n)
        if (oracle::mu(n) != 0) ref += 1.0L / n;
    CHECK(std::abs(s10.q_log.value - double(ref)) < 1e-14);
}

TEST_CASE("partial summation identity residual") {
    auto r = partial_summation_check(SummandId::mu, 2, 100, 100);
    CHECK(r.value == 0.0);

    r = partial_summation_check(SummandId::mu, 2, 10, 1000);
    CHECK(r.value < 1e-9);
    CHECK(r.value <= r.err);

    r = partial_summation_check(SummandId::mu, 1, 2, 50);
    CHECK(r.value < 1e-10);
    CHECK(r.value <= r.err);

    r = partial_summation_check(SummandId::lambda, 1, 7, 5000);
    CHECK(r.value < 1e-9);
    CHECK(r.value <= r.err);

    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
        u64 x0 = 2 + rng() % 500;
        u64 x = x0 + rng() % 5000;
        int k = 1 + int(rng() % 2);
        auto rr = partial_summation_check(SummandId::mu, k, x0, x);
        REQUIRE(rr.value <= std::max(rr.err, 1e-9));
    }

    CHECK_THROWS_AS(partial_summation_check(SummandId::mu, 2, 1, 10), std::invalid_argument);
}

TEST_CASE("double accumulators stay within their error ledger vs long double shadow") {
    SummatoryState<double> sd;
    SummatoryState<long double> sl;
    StreamOptions o = small_opts();
    scan_summatory<double>(sd, 1000000, o, [](u64, const SummatoryState<double>&, int, const MangoldtEntry*) {});
    scan_summatory<long double>(sl, 1000000, o, [](u64, const SummatoryState<long double>&, int, const MangoldtEntry*) {});

    REQUIRE(sd.M == sl.M);
    REQUIRE(sd.Q == sl.Q);
    REQUIRE(sd.absM_int == sl.absM_int);
    CHECK(std::abs((long double)sd.m.value() - sl.m.value()) <= (long double)sd.m.error_bound());
    CHECK(std::abs((long double)sd.psi.value() - sl.psi.value()) <= (long double)sd.psi.error_bound());
    CHECK(std::abs((long double)sd.psi_tilde.value() - sl.psi_tilde.value()) <= (long double)sd.psi_tilde.error_bound());
    CHECK(std::abs((long double)sd.lambda_log.value() - sl.lambda_log.value()) <= (long double)sd.lambda_log.error_bound());
    CHECK(std::abs((long double)sd.q_log.value() - sl.q_log.value()) <= (long double)sd.q_log.error_bound());
}
