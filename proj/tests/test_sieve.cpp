#include <addrep/sieve.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace addrep;

TEST(SievePrimes, Examples) {
    EXPECT_EQ(sieve_primes(Range(1, 20)).primes, (std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19}));
    EXPECT_TRUE(sieve_primes(Range(0, 2)).primes.empty());
    EXPECT_EQ(sieve_primes(Range(90, 100)).primes, (std::vector<u64>{97}));
}

TEST(SievePrimes, MatchesTrialDivisionOnRandomRanges) {
    std::mt19937_64 rng(7);
    SieveConfig small_segments;
    small_segments.segment_width = 997;  // force many segments
    for (int trial = 0; trial < 40; ++trial) {
        const u64 lo = std::uniform_int_distribution<u64>(0, 999'000)(rng);
        const u64 hi = lo + std::uniform_int_distribution<u64>(1, 5000)(rng);
        const auto expected = oracle::primes_in(lo, hi);
        EXPECT_EQ(sieve_primes(Range(lo, hi)).primes, expected) << lo << ".." << hi;
        EXPECT_EQ(sieve_primes(Range(lo, hi), small_segments).primes, expected) << lo << ".." << hi;
    }
}

TEST(SievePrimes, RangeErrors) {
    EXPECT_THROW(Range(5, 5), Error);
    SieveConfig tiny;
    tiny.max_range = 100;
    try {
        sieve_primes(Range(0, 1000), tiny);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::resource);
    }
}

TEST(LargestPrimesBelow, DescendingAndComplete) {
    const auto got = largest_primes_below(1'000'000, 100);
    ASSERT_EQ(got.size(), 100u);
    EXPECT_EQ(got.front(), 999'983u);
    for (std::size_t i = 1; i < got.size(); ++i) EXPECT_GT(got[i - 1], got[i]);
    auto all = oracle::primes_in(got.back(), 1'000'000);
    std::reverse(all.begin(), all.end());
    EXPECT_EQ(got, all);
    EXPECT_EQ(largest_primes_below(10, 100), (std::vector<u64>{7, 5, 3, 2}));
}

TEST(SieveMobius, Examples) {
    const MobiusTable mu = sieve_mobius(Range(1, 101));
    EXPECT_EQ(mu(1), 1);
    EXPECT_EQ(mu(2), -1);
    EXPECT_EQ(mu(4), 0);
    EXPECT_EQ(mu(6), 1);
    EXPECT_EQ(mu(30), -1);
    for (u64 p : {2, 3, 5, 7}) EXPECT_EQ(mu(p * p), 0);
    EXPECT_THROW(sieve_mobius(Range(0, 10)), Error);
}

TEST(SieveMobius, MatchesFactorizationOracle) {
    SieveConfig cfg;
    cfg.segment_width = 1000;
    for (auto [lo, hi] : {std::pair<u64, u64>{1, 20'000}, {999'000, 1'001'000}, {123'456'789, 123'460'000}}) {
        const MobiusTable mu = sieve_mobius(Range(lo, hi), cfg);
        for (u64 n = lo; n < hi; ++n) ASSERT_EQ(mu(n), oracle::mobius(n)) << n;
    }
}

TEST(SieveMobius, Multiplicative) {
    const MobiusTable mu = sieve_mobius(Range(1, 10'001));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const u64 a = std::uniform_int_distribution<u64>(1, 100)(rng);
        const u64 b = std::uniform_int_distribution<u64>(1, 100)(rng);
        if (std::gcd(a, b) != 1) continue;
        EXPECT_EQ(mu(a * b), mu(a) * mu(b));
    }
}

TEST(SieveMobius, MertensIdentity) {
    for (u64 N : {1'000ull, 10'000ull, 100'000ull}) {
        const MobiusTable mu = sieve_mobius(Range(1, N + 1));
        long long sum = 0;
        for (u64 a = 1; a <= N; ++a) sum += mu(a) * static_cast<long long>(N / a);
        EXPECT_EQ(sum, 1) << N;
    }
}

TEST(SieveSquarefree, Examples) {
    const SquarefreeFlags f = sieve_squarefree(Range(0, 13));
    EXPECT_FALSE(f(0));
    for (u64 n : {1, 2, 3, 5, 6, 7, 10, 11}) EXPECT_TRUE(f(n)) << n;
    for (u64 n : {4, 8, 9, 12}) EXPECT_FALSE(f(n)) << n;
    EXPECT_FALSE(sieve_squarefree(Range(0, 1))(0));
    EXPECT_TRUE(sieve_squarefree(Range(1, 2))(1));
}

TEST(SieveSquarefree, AgreesWithMobius) {
    SieveConfig cfg;
    cfg.segment_width = 4096;
    for (auto [lo, hi] : {std::pair<u64, u64>{1, 50'000}, {7'777'777, 7'800'000}}) {
        const SquarefreeFlags f = sieve_squarefree(Range(lo, hi), cfg);
        const MobiusTable mu = sieve_mobius(Range(lo, hi), cfg);
        for (u64 n = lo; n < hi; ++n) {
            ASSERT_EQ(f(n), mu(n) != 0) << n;
            if (n < 20'000) { ASSERT_EQ(f(n), oracle::squarefree(n)) << n; }
        }
    }
}

TEST(SieveSquarefree, Density) {
    const SquarefreeFlags f = sieve_squarefree(Range(1, 1'000'001));
    const double density = static_cast<double>(f.count()) / 1e6;
    EXPECT_NEAR(density, 6.0 / (std::numbers::pi * std::numbers::pi), 0.001);
}

TEST(Theta, Examples) {
    EXPECT_EQ(theta(0), 0);
    EXPECT_EQ(theta(1), 0);
    EXPECT_NEAR(static_cast<double>(theta(10)), std::log(2.0) + std::log(3.0) + std::log(5.0) + std::log(7.0), 1e-15);
    EXPECT_NEAR(static_cast<double>(theta(10)), 5.34711, 1e-5);
    const double ratio = static_cast<double>(theta(1'000'000)) / 1e6;
    EXPECT_GT(ratio, 0.99);
    EXPECT_LT(ratio, 1.01);
}

TEST(Theta, IncrementsAreLogsOfPrimes) {
    // theta(x) - theta(x-1) = log x iff x prime; theta nondecreasing
    real prev = 0;
    for (u64 x = 2; x < 300; ++x) {
        const real t = theta(x);
        const real step = t - prev;
        if (oracle::is_prime(x))
            EXPECT_NEAR(static_cast<double>(step), std::log(static_cast<double>(x)), 1e-12) << x;
        else
            EXPECT_EQ(step, 0) << x;
        prev = t;
    }
}

TEST(ThetaMod, Examples) {
    EXPECT_NEAR(static_cast<double>(theta_mod(10, 4, 1)), std::log(5.0), 1e-15);
    EXPECT_NEAR(static_cast<double>(theta_mod(10, 4, 1)), 1.60944, 1e-5);
    EXPECT_EQ(theta_mod(12345, 1, 0), theta(12345));
    EXPECT_EQ(theta_mod(100, 4, 5), theta_mod(100, 4, 1));  // residue reduced
    EXPECT_THROW(theta_mod(10, 0, 0), Error);
}

TEST(ThetaMod, NonCoprimeClassesAreTiny) {
    for (u64 q : {4ull, 6ull, 9ull, 10ull, 15ull, 49ull}) {
        for (u64 a = 0; a < q; ++a) {
            if (std::gcd(a, q) == 1) continue;
            EXPECT_LE(theta_mod(100'000, q, a), std::log(static_cast<real>(q)) + 1e-12L) << q << " " << a;
        }
    }
}

TEST(ThetaMod, ResiduesSumToTheta) {
    const u64 x = 200'000;
    const real total = theta(x);
    for (u64 q : {1ull, 2ull, 3ull, 7ull, 30ull, 101ull}) {
        const auto parts = theta_by_residue(x, q);
        CompensatedSum s;
        for (real v : parts) s += v;
        EXPECT_NEAR(static_cast<double>(s.value()), static_cast<double>(total), 1e-9) << q;
        EXPECT_NEAR(static_cast<double>(parts[1 % q]), static_cast<double>(theta_mod(x, q, 1)), 1e-12);
    }
}
