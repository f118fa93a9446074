#include <addrep/analytic.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

using namespace addrep;

namespace {

double d(real x) { return static_cast<double>(x); }

const ThetaTable& placeholder() {
    static const ThetaTable t = [] {
        std::ifstream in(std::string(ADDREP_DATA_DIR) + "/theta_placeholder.tsv");
        return load_table(in, "theta_placeholder.tsv");
    }();
    return t;
}

// Required moduli with square constant c_square, plus the given primes.
ThetaTable synthetic(double c_square, const std::vector<u64>& primes, double c_prime) {
    std::ostringstream out;
    std::map<u64, std::pair<double, u64>> rows;
    for (u64 a = 2; a <= 316; ++a) rows[a * a] = {c_square, 4'800'000'000};
    for (u64 q : theta_limits::q3_moduli)
        if (!rows.contains(q)) rows[q] = {0.0005, 8'000'000'000};
    for (u64 p : primes) rows[p] = {c_prime, 5'000'000'000};
    for (const auto& [q, row] : rows) out << q << '\t' << row.first << '\t' << row.second << '\n';
    return load_table(out.str(), "synthetic");
}

// Same five terms, written out independently.
real reference_bound(real n, real A, int s3, int s4) {
    const real L = std::log(n);
    return 0.37395L - 0.95L / L - 0.375L / (L * L * L) - 0.0096L * (1 + 2 * A) / (1 - 2 * A) -
           L * (std::pow(n, -2 * A) + std::pow(n, -A) + s3 * std::pow(n, A - 1) + s4 * std::pow(n, -0.5L));
}

}  // namespace

TEST(Artin, SmallProducts) {
    EXPECT_EQ(artin_constant(2), 0.5L);
    EXPECT_NEAR(d(artin_constant(3)), 5.0 / 12.0, 1e-18);
    EXPECT_NEAR(d(artin_constant(4)), 5.0 / 12.0, 1e-18);
    EXPECT_THROW(artin_constant(1), Error);
}

TEST(Artin, TruncatedAtMillion) {
    const real c = artin_constant(1'000'000);
    EXPECT_NEAR(d(c), 0.3739558, 1e-5);
    EXPECT_GT(c, 0.37395L);
}

TEST(Artin, DecreasingAndAboveLowerConstant) {
    real prev = 1;
    for (u64 limit : {2ull, 3ull, 5ull, 10ull, 100ull, 1000ull, 10'000ull, 100'000ull}) {
        const real c = artin_constant(limit);
        EXPECT_LT(c, prev) << limit;
        EXPECT_GT(c, 0.37395L);
        prev = c;
    }
}

TEST(CoprimeMuPhiSum, Examples) {
    EXPECT_EQ(coprime_mu_phi_sum(1, 1), 1.0L);
    EXPECT_NEAR(d(coprime_mu_phi_sum(1, 3)), 1.0 / 3.0, 1e-18);
    // a in {1, 5, 7}
    EXPECT_NEAR(d(coprime_mu_phi_sum(6, 10)), 1 - 1.0 / 20 - 1.0 / 42, 1e-15);
    EXPECT_THROW(coprime_mu_phi_sum(0, 5), Error);
}

// Square-free a built from primes <= P expand the Euler product up to P.
TEST(CoprimeMuPhiSum, EulerExpansionMatchesTruncatedProduct) {
    const std::vector<u64> ps{2, 3, 5, 7, 11};
    for (std::size_t k = 1; k <= ps.size(); ++k) {
        real sum = 0;
        for (u64 mask = 0; mask < (u64{1} << k); ++mask) {
            real term = 1;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) term *= -1.0L / (static_cast<real>(ps[i]) * static_cast<real>(ps[i] - 1));
            sum += term;
        }
        EXPECT_NEAR(d(sum), d(artin_constant(ps[k - 1])), 1e-17) << k;
    }
}

TEST(CoprimeMuPhiSum, ConvergesToCoprimeEulerProduct) {
    const real full = artin_constant(1'000'000);
    real prev_err = 1;
    for (u64 L : {100ull, 10'000ull, 1'000'000ull}) {
        const real err = std::fabs(coprime_mu_phi_sum(1, L) - full);
        EXPECT_LT(err, prev_err);
        EXPECT_LT(err, 2.0L / static_cast<real>(L));
        prev_err = err;
    }
    // removing the factors at 2 and 3
    EXPECT_NEAR(d(coprime_mu_phi_sum(6, 1'000'000)), d(full * 12 / 5), 1e-5);
    EXPECT_GT(coprime_mu_phi_sum(6, 1'000'000), coprime_mu_phi_sum(1, 1'000'000));
}

TEST(SquarefreePhiTail, Values) {
    EXPECT_EQ(squarefree_phi_tail(1), 1.95L);
    EXPECT_NEAR(d(squarefree_phi_tail(2)), 0.95, 1e-18);
    const real t = squarefree_phi_tail(317);
    EXPECT_LT(t, 0.0096L);
    EXPECT_NEAR(d(t), 0.009584, 5e-6);
    // the infinite sum is about 1.9436, so the bound levels off near 0.0064
    EXPECT_LT(squarefree_phi_tail(100'000), t);
    EXPECT_GT(squarefree_phi_tail(100'000), 0.0064L);
}

TEST(SquarefreePhiTail, FiniteSumAgainstOracle) {
    real finite = 0;
    for (u64 a = 1; a < 317; ++a)
        if (oracle::squarefree(a)) finite += 1 / (static_cast<real>(a) * static_cast<real>(euler_phi(a)));
    EXPECT_NEAR(d(squarefree_phi_tail(317)), d(1.95L - finite), 1e-15);
}

TEST(LowerBound, FrozenValues) {
    struct Case {
        u64 n;
        TailSigns tail;
        double expected;
    };
    for (const Case& c : {Case{4'810'000'000, TailSigns::lemma, 0.269883982306709},
                          Case{4'810'000'000, TailSigns::finalcheck, 0.270512357102088},
                          Case{4'810'000'000, TailSigns::strict, 0.269869455168479},
                          Case{8'000'000'000, TailSigns::lemma, 0.27282802403275},
                          Case{8'000'000'000, TailSigns::finalcheck, 0.273327341206432},
                          Case{8'000'000'000, TailSigns::strict, 0.272817457168736},
                          Case{1'000'000'000'000'000'000, TailSigns::lemma, 0.304105418617345}}) {
        const BoundBreakdown b = lower_bound({c.n, 0.33L, false, c.tail});
        EXPECT_NEAR(d(b.total), c.expected, 1e-13) << c.n << " " << to_string(c.tail);
    }
    const real total = lower_bound({4'810'000'000, 0.33L}).total;
    EXPECT_GT(total, 0.26L);
    EXPECT_LT(total, 0.28L);
}

TEST(LowerBound, RecompositionAndReference) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const u64 n = std::uniform_int_distribution<u64>(4'810'000'000, 1'000'000'000'000'000ull)(rng);
        const real A = std::uniform_real_distribution<double>(0.01, 0.49)(rng);
        for (TailSigns t : {TailSigns::lemma, TailSigns::finalcheck, TailSigns::strict}) {
            const BoundBreakdown b = lower_bound({n, A, false, t});
            EXPECT_EQ(b.total, b.artin - b.log_term - b.log3_term - b.bt_term - b.tail_term);
            const int s3 = t == TailSigns::lemma ? -1 : 1, s4 = t == TailSigns::finalcheck ? -1 : 1;
            EXPECT_NEAR(d(b.total), d(reference_bound(static_cast<real>(n), A, s3, s4)), 1e-14);
        }
        // strict never exceeds either printed convention
        EXPECT_LE(lower_bound({n, A, false, TailSigns::strict}).total, lower_bound({n, A}).total);
        EXPECT_LE(lower_bound({n, A, false, TailSigns::strict}).total,
                  lower_bound({n, A, false, TailSigns::finalcheck}).total);
    }
}

TEST(LowerBound, IncreasingInN) {
    real prev = -1;
    for (real x = 4.81e9L; x <= 1e12L; x *= 1.05L) {
        const real t = lower_bound({static_cast<u64>(x), 0.33L}).total;
        EXPECT_GT(t, prev) << d(x);
        prev = t;
    }
}

TEST(LowerBound, BlowsUpAsAApproachesHalf) {
    real prev = lower_bound({8'000'000'000, 0.45L}).total;
    for (real gap : {1e-2L, 1e-3L, 1e-4L, 1e-6L, 1e-9L}) {
        const BoundBreakdown b = lower_bound({8'000'000'000, 0.5L - gap});
        EXPECT_LT(b.total, prev);
        prev = b.total;
    }
    EXPECT_LT(prev, -1e6L);
}

TEST(LowerBound, Errors) {
    auto kind = [](BoundParams p) {
        try {
            lower_bound(p);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::checkpoint;  // sentinel: no error
    };
    EXPECT_EQ(kind({8'000'000'000, 0.0L}), ErrorKind::argument);
    EXPECT_EQ(kind({8'000'000'000, 0.5L}), ErrorKind::argument);
    EXPECT_EQ(kind({8'000'000'000, -0.1L}), ErrorKind::argument);
    EXPECT_EQ(kind({1'000'000, 0.33L}), ErrorKind::domain);
    EXPECT_EQ(kind({1'000'000, 0.33L, true}), ErrorKind::checkpoint);
    EXPECT_EQ(parse_tail_signs("finalcheck"), TailSigns::finalcheck);
    EXPECT_THROW(parse_tail_signs("loose"), Error);
}

TEST(Sufficiency, Examples) {
    const CheckResult r5 = sufficiency_check(placeholder(), 5, 8'000'000'000, 0.33L);
    EXPECT_TRUE(r5.holds);
    EXPECT_NEAR(d(r5.rhs), 0.250438544416413, 1e-13);
    EXPECT_NEAR(d(r5.margin), 0.27282802403275 - 0.250438544416413, 1e-13);
    const CheckResult r7 = sufficiency_check(placeholder(), 7, 8'000'000'000, 0.33L);
    EXPECT_TRUE(r7.holds);
    EXPECT_GT(r7.margin, r5.margin);
    const CheckResult bad = sufficiency_check(placeholder(), 5, 8'000'000'000, 0.49L);
    EXPECT_FALSE(bad.holds);
    EXPECT_LT(bad.margin, 0);
}

TEST(Sufficiency, MarginIncreasesWithQ) {
    const auto primes = oracle::primes_in(5, 2000);
    const ThetaTable t = synthetic(0.003, primes, 0.004);
    real prev = -1;
    for (u64 q : primes) {
        const real m = sufficiency_check(t, q, 8'000'000'000, 0.33L).margin;
        EXPECT_GT(m, prev) << q;
        prev = m;
    }
}

TEST(Sufficiency, Preconditions) {
    auto kind = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::checkpoint;
    };
    const ThetaTable t = synthetic(0.003, {5, 7}, 0.01);
    EXPECT_EQ(kind([&] { sufficiency_check(t, 3, 8'000'000'000, 0.33L); }), ErrorKind::argument);
    EXPECT_EQ(kind([&] { sufficiency_check(t, 9, 8'000'000'000, 0.33L); }), ErrorKind::argument);
    EXPECT_EQ(kind([&] { sufficiency_check(t, 100'003, 8'000'000'000, 0.33L); }), ErrorKind::argument);
    EXPECT_EQ(kind([&] { sufficiency_check(t, 11, 8'000'000'000, 0.33L); }), ErrorKind::validation);
    EXPECT_EQ(kind([&] { sufficiency_check(t, 5, 4'900'000'000, 0.33L); }), ErrorKind::domain);
    EXPECT_EQ(kind([&] { sufficiency_check(t, 5, 4'000'000'000, 0.33L); }), ErrorKind::domain);
}

TEST(ProofChecks, RefuseTablesFailingTheGate) {
    const ThetaTable heavy = synthetic(0.0031, {5}, 0.01);
    EXPECT_THROW(sufficiency_check(heavy, 5, 8'000'000'000, 0.33L), Error);
    EXPECT_THROW(q3_check(heavy, 8'000'000'000, 0.33L), Error);
}

TEST(Q3, PhiCombinationIsExact) {
    EXPECT_EQ(q3_phi_combination(), (Rational{19, 120}));
    // independent: common denominator of the eight totients
    const i64 phis[] = {2, 6, 4, 40, 12, 120, 80, 240};
    const int signs[] = {1, -1, -1, -1, 1, 1, 1, -1};
    const u64 qs[] = {3, 9, 12, 75, 36, 225, 300, 900};
    i64 num = 0;
    for (int i = 0; i < 8; ++i) {
        EXPECT_EQ(static_cast<i64>(euler_phi(qs[i])), phis[i]);
        num += signs[i] * (240 / phis[i]);
    }
    EXPECT_EQ(num, 38);  // 38 / 240 = 19 / 120
}

TEST(Q3, UpperBoundDecomposition) {
    const u64 n = 8'000'000'000;
    const Q3Upper u = q3_upper_bound(placeholder(), n);
    const real x = static_cast<real>(n);
    EXPECT_NEAR(d(u.main / x), 19.0 / 120.0, 1e-15);
    EXPECT_NEAR(d(u.c_sum), 8 * 0.0007, 1e-15);
    EXPECT_LE(u.total, 19.0L / 120 * x + 0.00592L * x / std::log(x));
    EXPECT_THROW(q3_upper_bound(placeholder(), 7'999'999'999), Error);
}

TEST(Q3, Check) {
    const CheckResult ok = q3_check(placeholder(), 8'000'000'000, 0.33L);
    EXPECT_TRUE(ok.holds);
    EXPECT_NEAR(d(ok.rhs), 0.15859295162785, 1e-13);
    EXPECT_GT(ok.margin, 0.1L);
    EXPECT_FALSE(q3_check(placeholder(), 8'000'000'000, 0.49L).holds);
    EXPECT_GT(q3_check(placeholder(), 10'000'000'000, 0.33L).margin, ok.margin);
}

TEST(Q3, LargerTableConstantsRaiseTheRightHandSide) {
    std::ostringstream out;
    for (u64 a = 2; a <= 316; ++a) out << a * a << "\t0.002\t4800000000\n";
    for (u64 q : {3, 12, 75, 300}) out << q << "\t0.02\t8000000000\n";
    const ThetaTable t = load_table(out.str(), "wide");
    const CheckResult r = q3_check(t, 8'000'000'000, 0.33L);
    const Q3Upper u = q3_upper_bound(t, 8'000'000'000);
    EXPECT_GT(u.c_sum, 0.00592L);
    EXPECT_NEAR(d(r.rhs), d(u.total / 8e9L), 1e-15);
}

TEST(TwoPrime, Examples) {
    const CheckResult r = two_prime_check(8'000'000'000, 0.385L);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(d(r.margin), 0.254631502000152, 1e-13);
    EXPECT_LT(d(r.bound.total - r.margin), 1e-8);
    EXPECT_GT(d(r.bound.total - r.margin), 0);
    EXPECT_FALSE(two_prime_check(8'000'000'000, 0.05L).holds);
    EXPECT_THROW(two_prime_check(8'000'000'000, 0.5L), Error);
}

TEST(Threshold, Q3RightHandSide) {
    auto rhs = [](u64 n) { return 19.0L / 120 + 0.00592L / std::log(static_cast<real>(n)); };
    const auto t = threshold_find(0.33L, rhs, 1'000'000, 8'000'000'000);
    ASSERT_TRUE(t.has_value());
    EXPECT_LE(*t, 8'000'000'000u);
    EXPECT_GT(lower_bound({*t, 0.33L, true}).total, rhs(*t));
    EXPECT_LE(lower_bound({*t - 1, 0.33L, true}).total, rhs(*t - 1));
}

TEST(Threshold, AlreadyPositiveAtStart) {
    const auto t = threshold_find(0.33L, [](u64) { return 0.0L; }, 4'810'000'000, 8'000'000'000);
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(*t, 4'810'000'000u);
}

TEST(Threshold, NotFound) {
    EXPECT_FALSE(threshold_find(0.33L, [](u64) { return 1.0L; }, 4'810'000'000, 1'000'000'000'000).has_value());
    EXPECT_THROW(threshold_find(0.33L, [](u64) { return 0.0L; }, 10, 5), Error);
}
