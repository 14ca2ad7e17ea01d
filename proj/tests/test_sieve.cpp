#include <catch2/catch_amalgamated.hpp>

#include "moebius/sieve.hpp"
#include "oracles.hpp"

using namespace moebius;

TEST_CASE("sieve_mu matches trial-division oracle") {
    auto primes = simple_sieve(isqrt(20000));
    auto seg = sieve_mu({1, 20000}, primes);
    for (u64 n = 1; n <= 20000; ++n) REQUIRE(int(seg.at(n)) == oracle::mu(n));
}

TEST_CASE("sieve_mu pinned values") {
    auto primes = simple_sieve(10);
    auto seg = sieve_mu({1, 64}, primes);
    CHECK(seg.at(1) == 1);    // empty product
    CHECK(seg.at(12) == 0);   // 4 | 12
    CHECK(seg.at(30) == -1);  // 2*3*5
    CHECK(seg.at(2) == -1);   // primes get -1
    CHECK(seg.at(61) == -1);
}

TEST_CASE("sieve_mu across arbitrary segment splits is identical") {
    const u64 N = 30000;
    auto primes = simple_sieve(isqrt(N));
    auto whole = sieve_mu({1, N}, primes);
    for (u64 chunk : {7u, 997u, 4096u, 29999u}) {
        u64 lo = 1;
        while (lo <= N) {
            u64 hi = std::min(N, lo + chunk - 1);
            auto part = sieve_mu({lo, hi}, primes);
            for (u64 n = lo; n <= hi; ++n) REQUIRE(part.at(n) == whole.at(n));
            lo = hi + 1;
        }
    }
}

TEST_CASE("sieve_mangoldt lists exactly the prime powers") {
    auto primes = simple_sieve(isqrt(10000));
    auto entries = sieve_mangoldt({2, 10}, primes);
    std::vector<u64> ns;
    for (auto& e : entries) ns.push_back(e.n);
    REQUIRE(ns == std::vector<u64>{2, 3, 4, 5, 7, 8, 9});

    auto seg = sieve_mangoldt({1, 10000}, primes);
    size_t i = 0;
    for (u64 n = 1; n <= 10000; ++n) {
        u32 k;
        u64 p = oracle::prime_power_base(n, k);
        if (p) {
            REQUIRE(i < seg.size());
            REQUIRE(seg[i].n == n);
            REQUIRE(seg[i].p == p);
            REQUIRE(seg[i].k == k);
            ++i;
        }
    }
    REQUIRE(i == seg.size());
}

TEST_CASE("sieve_mangoldt pinned values") {
    auto primes = simple_sieve(100);
    auto entries = sieve_mangoldt({8, 8}, primes);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].p == 2);
    CHECK(entries[0].k == 3);

    CHECK(sieve_mangoldt({1, 1}, primes).empty());
}

TEST_CASE("segment validation") {
    auto primes = simple_sieve(100);
    CHECK_THROWS_AS(sieve_mu({0, 5}, primes), std::invalid_argument);
    CHECK_THROWS_AS(sieve_mu({7, 3}, primes), std::invalid_argument);
    CHECK_THROWS_AS(sieve_mu({1, 100}, primes, 50), std::length_error);
}

TEST_CASE("Mobius-floor identity: Sigma mu(n) floor(N/n) = 1") {
    const u64 N = 100000;
    auto primes = simple_sieve(isqrt(N));
    auto seg = sieve_mu({1, N}, primes);
    for (u64 cap : {u64(1), u64(2), u64(10), u64(97), u64(1000), u64(99991), N}) {
        i64 s = 0;
        for (u64 n = 1; n <= cap; ++n) s += i64(seg.at(n)) * i64(cap / n);
        REQUIRE(s == 1);
    }
}

TEST_CASE("Lambda entries sum to log lcm(1..N)") {
    const u64 N = 100000;
    auto primes = simple_sieve(isqrt(N));
    auto entries = sieve_mangoldt({1, N}, primes);
    long double s = 0;
    for (auto& e : entries) s += std::log(static_cast<long double>(e.p));
    REQUIRE(std::abs(s - oracle::log_lcm(N)) < 1e-9L);
}

TEST_CASE("divisor_events equals brute-force enumeration") {
    auto evs = divisor_events({10, 12}, 2, 6);
    std::vector<std::pair<u64, u64>> got;
    for (auto& e : evs) got.push_back({e.x, e.a});
    REQUIRE(got == std::vector<std::pair<u64, u64>>{{10, 5}, {12, 3}, {12, 4}, {12, 6}});

    CHECK(divisor_events({11, 11}, 2, 6).empty());

    auto pp = divisor_events({16, 16}, 2, 8, true);
    REQUIRE(pp.size() == 2);
    CHECK(pp[0].a == 4);
    CHECK(pp[1].a == 8);

    CHECK_THROWS_AS(divisor_events({1, 10}, 5, 5), std::invalid_argument);

    // property: any window of moderate length, all divisors in range
    const u64 lo = 5000, hi = 6000, a0 = 3, a1 = 70;
    auto all = divisor_events({lo, hi}, a0, a1);
    size_t idx = 0;
    for (u64 x = lo; x <= hi; ++x) {
        for (u64 a : oracle::divisors(x)) {
            if (a > a0 && a <= a1) {
                REQUIRE(idx < all.size());
                REQUIRE(all[idx].x == x);
                REQUIRE(all[idx].a == a);
                ++idx;
            }
        }
    }
    REQUIRE(idx == all.size());
}

TEST_CASE("spf table factors correctly") {
    auto spf = spf_table(10000);
    for (u32 n = 2; n <= 10000; ++n) {
        REQUIRE(n % spf[n] == 0);
        for (u32 d = 2; d < spf[n]; ++d) REQUIRE(n % d != 0);
    }
}
