#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "moebius/compensated.hpp"

using namespace moebius;

TEST_CASE("compensated sum recovers ill-conditioned cancellation") {
    CompensatedSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    REQUIRE(s.value() == 2.0);
}

TEST_CASE("error bound dominates the true error against long double shadow") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CompensatedSum s;
    long double exact = 0.0L;
    for (int i = 0; i < 200000; ++i) {
        double x = dist(rng) / (i + 1);
        s.add(x);
        exact += static_cast<long double>(x);
    }
    const long double true_err = std::abs(static_cast<long double>(s.value()) - exact);
    REQUIRE(static_cast<long double>(s.error_bound()) >= true_err);
    // and the bound should still be tiny relative to the absolute mass
    REQUIRE(s.error_bound() < 1e-10);
}

TEST_CASE("harmonic series matches long double reference") {
    CompensatedSum s;
    long double ref = 0.0L;
    for (int n = 1; n <= 1000000; ++n) {
        s.add(1.0 / n, 2);
        ref += 1.0L / n;
    }
    REQUIRE(std::abs(static_cast<long double>(s.value()) - ref) <= s.error_bound());
}

TEST_CASE("error bound is monotonically nondecreasing") {
    CompensatedSum s;
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        s.add(1.0 / i, 2);
        REQUIRE(s.error_bound() >= prev);
        prev = s.error_bound();
    }
}
