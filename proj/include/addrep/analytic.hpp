// analytic.hpp
// Explicit lower bound for R(n)/n and the sufficiency inequalities built on
// it. For A in (0, 1/2) and n >= 4.81e9:
//
//   R(n)/n > 0.37395 - 0.95/log n - 0.375/log^3 n - 0.0096 (1+2A)/(1-2A)
//            - log n (n^{-2A} + n^{-A} - n^{A-1} + n^{-1/2})
//
// Powers of n are evaluated as exp(k log n) in 80-bit extended precision.

#pragma once

#include "common.hpp"
#include "sieve.hpp"
#include "thetadata.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>

namespace addrep {

struct Constants {
    static constexpr real artin_lower = 0.37395L;
    static constexpr real c_theta_sum_cap = 0.95L;
    static constexpr real tail_cap = 0.0096L;
    static constexpr real infinite_sum_cap = 1.95L;
    static constexpr real broadbent_coeff = 0.375L;
    static constexpr real broadbent_log_threshold = 20;  // x > e^20
    static constexpr real q3_main = 19.0L / 120.0L;
    static constexpr real q3_err = 0.00592L;
    static constexpr u64 lemma_n_min = 4'810'000'000;
    static constexpr u64 result_n_min = 8'000'000'000;
};

// -------------------------------------------------------
// Euler products and phi sums
// -------------------------------------------------------

// prod_{p <= prime_limit} (1 - 1/(p(p-1)))
inline real artin_constant(u64 prime_limit) {
    if (prime_limit < 2) fail(ErrorKind::argument, "prime_limit must be at least 2");
    real product = 1;
    for_each_prime(Range(2, prime_limit + 1), [&](u64 p) {
        const real pr = static_cast<real>(p);
        product *= 1 - 1 / (pr * (pr - 1));
    });
    return product;
}

// sum_{a <= a_limit, (a, n) = 1} mu(a) / phi(a^2), with phi(a^2) = a phi(a).
inline real coprime_mu_phi_sum(u64 n, u64 a_limit) {
    if (n < 1 || a_limit < 1) fail(ErrorKind::argument, "n and a_limit must be positive");
    const MobiusTable mu = sieve_mobius(Range(1, a_limit + 1));
    CompensatedSum sum;
    for (u64 a = 1; a <= a_limit; ++a) {
        const int m = mu(a);
        if (m == 0 || std::gcd(a, n) != 1) continue;
        sum += m / (static_cast<real>(a) * static_cast<real>(euler_phi(a)));
    }
    return sum.value();
}

// Upper bound for sum_{a >= a_from} mu^2(a) / phi(a^2): 1.95 minus the
// finite part below a_from, clamped at 0.
inline real squarefree_phi_tail(u64 a_from) {
    if (a_from < 1) fail(ErrorKind::argument, "a_from must be positive");
    CompensatedSum finite;
    if (a_from > 1) {
        const MobiusTable mu = sieve_mobius(Range(1, a_from));
        for (u64 a = 1; a < a_from; ++a)
            if (mu(a) != 0) finite += 1 / (static_cast<real>(a) * static_cast<real>(euler_phi(a)));
    }
    return std::max<real>(0, Constants::infinite_sum_cap - finite.value());
}

// -------------------------------------------------------
// Lower bound
// -------------------------------------------------------

// Sign pattern of the n^{A-1} and n^{-1/2} tail terms.
enum class TailSigns {
    lemma,       // + n^{-2A} + n^{-A} - n^{A-1} + n^{-1/2}
    finalcheck,  // + n^{-2A} + n^{-A} + n^{A-1} - n^{-1/2}
    strict,      // all four positive
};

inline const char* to_string(TailSigns signs) {
    switch (signs) {
        case TailSigns::lemma: return "lemma";
        case TailSigns::finalcheck: return "finalcheck";
        case TailSigns::strict: return "strict";
    }
    return "lemma";
}

inline TailSigns parse_tail_signs(std::string_view text) {
    if (text == "lemma") return TailSigns::lemma;
    if (text == "finalcheck") return TailSigns::finalcheck;
    if (text == "strict") return TailSigns::strict;
    fail(ErrorKind::argument, "unknown tail sign convention '" + std::string(text) + "'");
}

struct BoundParams {
    u64 n = 0;
    real A = 0;
    bool advisory = false;  // allow n below the lemma's range
    TailSigns tail = TailSigns::lemma;
};

struct BoundBreakdown {
    real artin = 0;
    real log_term = 0;
    real log3_term = 0;
    real bt_term = 0;
    real tail_term = 0;
    real total = 0;
};

inline BoundBreakdown lower_bound(const BoundParams& params) {
    const real A = params.A;
    if (!(A > 0 && A < 0.5L)) fail(ErrorKind::argument, "A must lie in (0, 1/2)");
    if (params.n < 2) fail(ErrorKind::argument, "n must be at least 2");
    if (!params.advisory && params.n < Constants::lemma_n_min)
        fail(ErrorKind::domain, "the lower bound holds for n >= 4.81e9; n=" + std::to_string(params.n));

    const real log_n = std::log(static_cast<real>(params.n));
    auto n_pow = [&](real k) { return std::exp(k * log_n); };

    BoundBreakdown b;
    b.artin = Constants::artin_lower;
    b.log_term = Constants::c_theta_sum_cap / log_n;
    b.log3_term = Constants::broadbent_coeff / (log_n * log_n * log_n);
    b.bt_term = Constants::tail_cap * (1 + 2 * A) / (1 - 2 * A);

    const real t1 = n_pow(-2 * A), t2 = n_pow(-A), t3 = n_pow(A - 1), t4 = n_pow(-0.5L);
    real tail = 0;
    switch (params.tail) {
        case TailSigns::lemma: tail = t1 + t2 - t3 + t4; break;
        case TailSigns::finalcheck: tail = t1 + t2 + t3 - t4; break;
        case TailSigns::strict: tail = t1 + t2 + t3 + t4; break;
    }
    b.tail_term = log_n * tail;
    b.total = b.artin - b.log_term - b.log3_term - b.bt_term - b.tail_term;
    return b;
}

// -------------------------------------------------------
// Sufficiency checks
// -------------------------------------------------------

struct CheckResult {
    bool holds = false;
    real margin = 0;  // lhs - rhs
    real lhs = 0;     // lower bound for R(n)/n (or T(n)/n)
    real rhs = 0;
    BoundBreakdown bound;
};

inline CheckResult make_check(const BoundBreakdown& bound, real lhs, real rhs) {
    return CheckResult{lhs > rhs, lhs - rhs, lhs, rhs, bound};
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// R(n)/n bound against the upper estimate of theta(n; q, n)/n,
// i.e. 1/phi(q) + c_theta(q)/log n, for a prime 3 < q <= 1e5.
inline CheckResult sufficiency_check(const ThetaTable& table, u64 q, u64 n, real A,
                                     TailSigns tail = TailSigns::lemma) {
    if (!is_prime_u64(q) || q <= 3 || q > 100'000)
        fail(ErrorKind::argument, "sufficiency_check needs a prime 3 < q <= 1e5, got " + std::to_string(q));
    require_square_sum_gate(table);
    const ThetaEntry& e = table.at(q);
    if (n < std::max<u64>(Constants::lemma_n_min, e.x_theta))
        fail(ErrorKind::domain, "n=" + std::to_string(n) + " is below max(4.81e9, x_theta(" + std::to_string(q) + "))");
    const BoundBreakdown bound = lower_bound({n, A, false, tail});
    const real rhs = theta_upper(table, q, static_cast<real>(n)) / static_cast<real>(n);
    return make_check(bound, bound.total, rhs);
}

struct Q3Upper {
    real main = 0;        // n * sum of signed 1/phi(q)
    real error = 0;       // n/log n * sum of c_theta over the eight moduli
    real c_sum = 0;
    real total = 0;
};

// Upper estimate of
//   theta(n;3,n) - theta(n;9,n) - theta(n;12,n) - theta(n;75,n)
//   + theta(n;36,n) + theta(n;225,n) + theta(n;300,n) - theta(n;900,n)
// taking the upper estimate for added terms and the lower for subtracted.
inline Q3Upper q3_upper_bound(const ThetaTable& table, u64 n) {
    struct Term {
        u64 q;
        int sign;
    };
    static constexpr Term terms[] = {{3, +1}, {9, -1}, {12, -1}, {75, -1}, {36, +1}, {225, +1}, {300, +1}, {900, -1}};
    u64 x_needed = 0;
    for (const Term& t : terms) x_needed = std::max(x_needed, table.at(t.q).x_theta);
    if (n < x_needed)
        fail(ErrorKind::domain, "n=" + std::to_string(n) + " is below max x_theta over the q=3 moduli (" +
                                    std::to_string(x_needed) + ")");
    const real x = static_cast<real>(n);
    Q3Upper out;
    CompensatedSum total, c_sum;
    for (const Term& t : terms) {
        const ThetaEstimate est = theta_estimate(table, t.q, x);
        total += t.sign > 0 ? est.upper : -est.lower;
        c_sum += table.at(t.q).c_theta;
    }
    out.total = total.value();
    out.c_sum = c_sum.value();
    out.error = out.c_sum * x / std::log(x);
    out.main = out.total - out.error;
    return out;
}

struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational operator+(const Rational& o) const {
        const i64 g = std::gcd(den, o.den);
        Rational r{num * (o.den / g) + o.num * (den / g), den / g * o.den};
        const i64 h = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
        if (h > 1) {
            r.num /= h;
            r.den /= h;
        }
        return r;
    }

    friend bool operator==(const Rational&, const Rational&) = default;
};

// 1/phi(3) - 1/phi(9) - 1/phi(12) - 1/phi(75) + 1/phi(36) + 1/phi(225) + 1/phi(300) - 1/phi(900)
inline Rational q3_phi_combination() {
    static constexpr std::pair<u64, int> terms[] = {{3, +1}, {9, -1}, {12, -1}, {75, -1},
                                                    {36, +1}, {225, +1}, {300, +1}, {900, -1}};
    Rational sum{0, 1};
    for (auto [q, sign] : terms) sum = sum + Rational{sign, static_cast<i64>(euler_phi(q))};
    return sum;
}

// Lower bound against 19/120 + 0.00592/log n. When the table's own
// constants give a larger right-hand side, that one is used instead.
inline CheckResult q3_check(const ThetaTable& table, u64 n, real A, TailSigns tail = TailSigns::lemma) {
    require_square_sum_gate(table);
    const Q3Upper upper = q3_upper_bound(table, n);
    if (n < Constants::lemma_n_min)
        fail(ErrorKind::domain, "n=" + std::to_string(n) + " is below 4.81e9");
    const BoundBreakdown bound = lower_bound({n, A, false, tail});
    const real log_n = std::log(static_cast<real>(n));
    const real stated = Constants::q3_main + Constants::q3_err / log_n;
    const real rhs = std::max(stated, upper.total / static_cast<real>(n));
    return make_check(bound, bound.total, rhs);
}

// T(n) > R(n) - 3 log n: the lower bound minus 3 log n / n must be positive.
inline CheckResult two_prime_check(u64 n, real A, TailSigns tail = TailSigns::lemma) {
    const BoundBreakdown bound = lower_bound({n, A, false, tail});
    const real x = static_cast<real>(n);
    const real lhs = bound.total - 3 * std::log(x) / x;
    return make_check(bound, lhs, 0);
}

// -------------------------------------------------------
// Threshold search
// -------------------------------------------------------

// Least n in [n_min, n_max] with lower_bound(n, A) > rhs(n), by bisection;
// assumes a single sign change. nullopt when the inequality fails at n_max.
inline std::optional<u64> threshold_find(real A, const std::function<real(u64)>& rhs, u64 n_min, u64 n_max,
                                         TailSigns tail = TailSigns::lemma) {
    if (n_min < 2 || n_min > n_max) fail(ErrorKind::argument, "need 2 <= n_min <= n_max");
    auto holds = [&](u64 n) { return lower_bound({n, A, true, tail}).total > rhs(n); };
    if (!holds(n_max)) return std::nullopt;
    if (holds(n_min)) return n_min;
    u64 lo = n_min, hi = n_max;  // fails at lo, holds at hi
    while (hi - lo > 1) {
        const u64 mid = lo + (hi - lo) / 2;
        (holds(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace addrep
