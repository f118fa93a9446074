// oracles.hpp
// Brute-force reference implementations used only by the tests. Nothing
// here shares code with the library's sieves.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime factorization as (prime, exponent) pairs.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline int mobius(u64 n) {
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

inline bool squarefree(u64 n) {
    if (n == 0) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

inline std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 n = lo; n < hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

struct Count {
    long double weighted = 0;
    u64 count = 0;
};

// Representations n = p + eta, p prime, eta >= 1 square-free, gcd(eta, q) = 1.
inline Count representations(u64 n, u64 q) {
    Count c;
    for (u64 p = 2; p < n; ++p) {
        if (!is_prime(p)) continue;
        const u64 eta = n - p;
        if (squarefree(eta) && std::gcd(eta, q) == 1) {
            c.weighted += std::log(static_cast<long double>(p));
            ++c.count;
        }
    }
    return c;
}

inline bool exceptional(u64 n, u64 q) { return representations(n, q).count == 0; }

}  // namespace oracle
