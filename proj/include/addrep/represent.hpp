// represent.hpp
// Representations n = p + eta with p prime and eta square-free, optionally
// with gcd(eta, q) = 1: exact counts R(n), R_q(n), witnesses, two-prime
// counts, and exception sets S_q.
//
// Conventions: eta = 0 never counts (0 is not square-free) and eta = 1
// does. A modulus q is handled through its distinct prime factors, so
// composite and very large q (products of many primes) are supported.

#pragma once

#include "common.hpp"
#include "sieve.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace addrep {

// -------------------------------------------------------
// Modulus
// -------------------------------------------------------

namespace detail {

// Little-endian base 10^9 natural number, just enough for parsing and
// trial-dividing moduli that overflow 64 bits.
class BigNat {
public:
    static constexpr std::uint32_t base = 1'000'000'000;

    static BigNat from_decimal(std::string_view digits) {
        BigNat out;
        for (std::size_t end = digits.size(); end > 0;) {
            const std::size_t begin = end >= 9 ? end - 9 : 0;
            std::uint32_t limb = 0;
            for (std::size_t i = begin; i < end; ++i) limb = limb * 10 + static_cast<std::uint32_t>(digits[i] - '0');
            out.limbs_.push_back(limb);
            end = begin;
        }
        out.trim();
        return out;
    }

    static BigNat from_u64(u64 v) {
        BigNat out;
        while (v > 0) {
            out.limbs_.push_back(static_cast<std::uint32_t>(v % base));
            v /= base;
        }
        return out;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const { return limbs_.size() <= 2 || (limbs_.size() == 3 && limbs_[2] < 18); }

    u64 to_u64() const {
        u64 v = 0;
        for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) v = v * base + *it;
        return v;
    }

    void mul_small(std::uint32_t m) {
        u64 carry = 0;
        for (auto& limb : limbs_) {
            const u64 cur = static_cast<u64>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(cur % base);
            carry = cur / base;
        }
        while (carry > 0) {
            limbs_.push_back(static_cast<std::uint32_t>(carry % base));
            carry /= base;
        }
    }

    std::uint32_t mod_small(std::uint32_t d) const {
        u64 rem = 0;
        for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) rem = (rem * base + *it) % d;
        return static_cast<std::uint32_t>(rem);
    }

    void div_small(std::uint32_t d) {
        u64 rem = 0;
        for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
            const u64 cur = rem * base + *it;
            *it = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::string out = std::to_string(limbs_.back());
        for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
            std::string part = std::to_string(limbs_[i]);
            out.append(9 - part.size(), '0');
            out += part;
        }
        return out;
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint32_t> limbs_;
};

}  // namespace detail

class Modulus {
public:
    // Prime factors up to this bound are found by trial division.
    static constexpr u64 trial_bound = 1'000'000;

    static Modulus of(u64 q) {
        if (q == 0) fail(ErrorKind::argument, "modulus must be positive");
        return from_big(detail::BigNat::from_u64(q));
    }

    // Decimal integer of any size, or "primes:i..j" for the product of the
    // i-th through j-th primes (p_1 = 2).
    static Modulus parse(std::string_view text) {
        const std::string s = strip_underscores(text);
        if (s.rfind("primes:", 0) == 0) {
            const std::string spec = s.substr(7);
            const auto dots = spec.find("..");
            if (dots == std::string::npos) fail(ErrorKind::argument, "expected primes:i..j, got '" + s + "'");
            const u64 first = parse_count(spec.substr(0, dots));
            const u64 last = parse_count(spec.substr(dots + 2));
            if (first < 1 || last < first || last > 10'000)
                fail(ErrorKind::argument, "bad prime index range in '" + s + "'");
            const std::vector<u64> primes = small_primes(120'000);
            detail::BigNat product = detail::BigNat::from_u64(1);
            for (u64 i = first; i <= last; ++i) product.mul_small(static_cast<std::uint32_t>(primes[i - 1]));
            return from_big(product);
        }
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            // allow scientific notation for ordinary sizes
            return of(parse_count(s));
        }
        const detail::BigNat value = detail::BigNat::from_decimal(s);
        if (value.is_zero()) fail(ErrorKind::argument, "modulus must be positive");
        return from_big(value);
    }

    const std::string& text() const { return text_; }
    const std::vector<u64>& primes() const { return primes_; }
    bool is_one() const { return text_ == "1"; }
    bool even() const { return !primes_.empty() && primes_.front() == 2; }
    bool fully_factored() const { return coprime_limit_ == UINT64_MAX; }

    // coprime(eta) is exact for every eta <= coprime_limit().
    u64 coprime_limit() const { return coprime_limit_; }

    bool coprime(u64 eta) const {
        for (u64 p : primes_)
            if (eta % p == 0) return false;
        return true;
    }

private:
    static Modulus from_big(detail::BigNat value) {
        Modulus m;
        m.text_ = value.to_string();
        static const std::vector<u64> trial_primes = small_primes(trial_bound);
        for (u64 p : trial_primes) {
            if (value.fits_u64() && value.to_u64() / p < p) break;  // what is left is 1 or prime
            const auto d = static_cast<std::uint32_t>(p);
            if (value.mod_small(d) == 0) {
                m.primes_.push_back(p);
                while (value.mod_small(d) == 0) value.div_small(d);
            }
        }
        if (value.fits_u64() && value.to_u64() <= trial_bound * trial_bound) {
            if (value.to_u64() > 1) m.primes_.push_back(value.to_u64());
            m.coprime_limit_ = UINT64_MAX;
        } else {
            // remaining factors all exceed the trial bound
            m.coprime_limit_ = trial_bound;
        }
        return m;
    }

    std::string text_;
    std::vector<u64> primes_;
    u64 coprime_limit_ = UINT64_MAX;
};

// -------------------------------------------------------
// Result types
// -------------------------------------------------------

struct RepCount {
    u64 n = 0;
    real weighted = 0;  // sum of log p over representations
    u64 count = 0;
};

struct RepresentationWitness {
    u64 n = 0;
    u64 p = 0;
    u64 eta = 0;

    friend bool operator==(const RepresentationWitness&, const RepresentationWitness&) = default;
};

struct ExceptionReport {
    std::string modulus;
    u64 limit = 0;
    std::vector<u64> exceptions;  // ascending
    std::int64_t elapsed_ms = 0;
};

// -------------------------------------------------------
// Table-backed representation queries
// -------------------------------------------------------

// Primes, primality bits, square-free flags and small Moebius values for
// every integer up to `limit`; answers queries for n <= limit.
class RepresentationTables {
public:
    explicit RepresentationTables(u64 limit, const SieveConfig& config = {})
        : limit_(std::max<u64>(limit, 2)),
          primes_(sieve_primes(Range(0, limit_ + 1), config).primes),
          is_prime_(limit_ + 1, false),
          squarefree_(sieve_squarefree(Range(0, limit_ + 1), config)),
          mobius_(sieve_mobius(Range(1, isqrt(limit_) + 2), config)) {
        for (u64 p : primes_) is_prime_[p] = true;
    }

    u64 limit() const { return limit_; }
    const std::vector<u64>& primes() const { return primes_; }
    const SquarefreeFlags& squarefree() const { return squarefree_; }

    bool is_prime(u64 n) const { return n <= limit_ && is_prime_[n]; }
    bool is_squarefree(u64 n) const { return squarefree_.test_unchecked(n); }

    // R(n) and the number of representations.
    RepCount rep_count(u64 n) const {
        check_n(n);
        RepCount out{n, 0, 0};
        CompensatedSum sum;
        for (u64 p : primes_) {
            if (p >= n) break;
            if (squarefree_.test_unchecked(n - p)) {
                sum += std::log(static_cast<real>(p));
                ++out.count;
            }
        }
        out.weighted = sum.value();
        return out;
    }

    // R(n) through sum_{a} mu(a) theta(n-1; a^2, n). Primes p = n are left
    // out, matching eta = 0 never counting.
    real rep_count_via_theta(u64 n) const {
        check_n(n);
        if (n < 3) return 0;
        CompensatedSum total;
        const u64 a_max = isqrt(n - 1);
        for (u64 a = 1; a <= a_max; ++a) {
            const int mu = mobius_(a);
            if (mu == 0) continue;
            const u64 q = a * a;
            CompensatedSum class_sum;
            for (u64 m = n % q; m < n; m += q)
                if (is_prime_[m]) class_sum += std::log(static_cast<real>(m));
            total += mu * class_sum.value();
        }
        return total.value();
    }

    // R_q(n): representations with gcd(eta, q) = 1.
    RepCount rep_count_mod(u64 n, const Modulus& q) const {
        check_n(n);
        if (q.is_one()) fail(ErrorKind::argument, "rep_count_mod requires q >= 2");
        check_coprime_range(q, n);
        RepCount out{n, 0, 0};
        CompensatedSum sum;
        for (u64 p : primes_) {
            if (p >= n) break;
            const u64 eta = n - p;
            if (squarefree_.test_unchecked(eta) && q.coprime(eta)) {
                sum += std::log(static_cast<real>(p));
                ++out.count;
            }
        }
        out.weighted = sum.value();
        return out;
    }

    // Unordered representations n = p1 + p2 + eta (p1 <= p2), eta square-free
    // and coprime to q. Each is weighted by (log p1 + log p2) / 2.
    RepCount two_prime_count(u64 n, const Modulus& q) const {
        check_n(n);
        check_coprime_range(q, n);
        RepCount out{n, 0, 0};
        CompensatedSum sum;
        for (std::size_t i = 0; i < primes_.size() && 2 * primes_[i] < n; ++i) {
            const u64 p1 = primes_[i];
            for (std::size_t j = i; j < primes_.size() && p1 + primes_[j] < n; ++j) {
                const u64 p2 = primes_[j];
                const u64 eta = n - p1 - p2;
                if (squarefree_.test_unchecked(eta) && q.coprime(eta)) {
                    sum += (std::log(static_cast<real>(p1)) + std::log(static_cast<real>(p2))) / 2;
                    ++out.count;
                }
            }
        }
        out.weighted = sum.value();
        return out;
    }

    // Largest admissible p: eta = n - p square-free, coprime to q, not excluded.
    std::optional<RepresentationWitness> find_witness(u64 n, const Modulus& q,
                                                      const std::set<u64>& exclusions = {}) const {
        check_n(n);
        if (n < 3) return std::nullopt;
        check_coprime_range(q, n);
        if (q.even() && n % 2 == 1) {
            // odd p would leave an even eta
            const u64 eta = n - 2;
            if (squarefree_.test_unchecked(eta) && q.coprime(eta) && !exclusions.contains(eta))
                return RepresentationWitness{n, 2, eta};
            return std::nullopt;
        }
        auto it = std::lower_bound(primes_.begin(), primes_.end(), n);
        while (it != primes_.begin()) {
            const u64 p = *--it;
            const u64 eta = n - p;
            if (squarefree_.test_unchecked(eta) && q.coprime(eta) && !exclusions.contains(eta))
                return RepresentationWitness{n, p, eta};
        }
        return std::nullopt;
    }

private:
    void check_n(u64 n) const {
        if (n < 1) fail(ErrorKind::argument, "n must be at least 1");
        if (n > limit_)
            fail(ErrorKind::argument,
                 "n=" + std::to_string(n) + " exceeds table limit " + std::to_string(limit_));
    }

    static void check_coprime_range(const Modulus& q, u64 n) {
        if (n > q.coprime_limit())
            fail(ErrorKind::resource, "modulus " + q.text() + " is only factored up to " +
                                          std::to_string(q.coprime_limit()) + "; n=" + std::to_string(n) +
                                          " is out of reach");
    }

    u64 limit_;
    std::vector<u64> primes_;
    std::vector<bool> is_prime_;
    SquarefreeFlags squarefree_;
    MobiusTable mobius_;
};

// -------------------------------------------------------
// One-off queries (build tables sized to n)
// -------------------------------------------------------

inline RepCount rep_count(u64 n) { return RepresentationTables(n).rep_count(n); }

inline real rep_count_via_theta(u64 n) { return RepresentationTables(n).rep_count_via_theta(n); }

inline RepCount rep_count_mod(u64 n, u64 q) {
    if (q < 2) fail(ErrorKind::argument, "rep_count_mod requires q >= 2");
    return RepresentationTables(n).rep_count_mod(n, Modulus::of(q));
}

inline RepCount two_prime_count(u64 n, u64 q) {
    if (q < 2) fail(ErrorKind::argument, "two_prime_count requires q >= 2");
    return RepresentationTables(n).two_prime_count(n, Modulus::of(q));
}

// -------------------------------------------------------
// Batch representation counts via number-theoretic transform
// -------------------------------------------------------

namespace detail {

inline constexpr std::uint32_t ntt_mod = 998'244'353;  // 119 * 2^23 + 1
inline constexpr std::uint32_t ntt_root = 3;

inline std::uint32_t pow_mod(u64 b, u64 e) {
    u64 r = 1;
    b %= ntt_mod;
    while (e > 0) {
        if (e & 1) r = r * b % ntt_mod;
        b = b * b % ntt_mod;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline void ntt(std::vector<std::uint32_t>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w = pow_mod(ntt_root, (ntt_mod - 1) / len);
        if (inverse) w = pow_mod(w, ntt_mod - 2);
        for (std::size_t i = 0; i < n; i += len) {
            u64 wk = 1;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const u64 u = a[i + k];
                const u64 v = a[i + k + len / 2] * wk % ntt_mod;
                a[i + k] = static_cast<std::uint32_t>((u + v) % ntt_mod);
                a[i + k + len / 2] = static_cast<std::uint32_t>((u + ntt_mod - v) % ntt_mod);
                wk = wk * w % ntt_mod;
            }
        }
    }
    if (inverse) {
        const u64 inv_n = pow_mod(n, ntt_mod - 2);
        for (auto& x : a) x = static_cast<std::uint32_t>(x * inv_n % ntt_mod);
    }
}

}  // namespace detail

inline constexpr u64 batch_count_limit = u64{1} << 22;

// counts[n] = number of primes p < n with n - p square-free, for 0 <= n <= N.
// Exact: every count is below the transform modulus.
inline std::vector<u64> rep_counts_upto(u64 N) {
    if (N > batch_count_limit)
        fail(ErrorKind::resource, "batch counts limited to N <= " + std::to_string(batch_count_limit));
    const u64 upper = std::max<u64>(N, 2);
    std::size_t size = 1;
    while (size < 2 * (upper + 1)) size <<= 1;

    std::vector<std::uint32_t> primes(size, 0), squarefree(size, 0);
    for_each_prime(Range(2, upper + 1), [&](u64 p) { primes[p] = 1; });
    const SquarefreeFlags flags = sieve_squarefree(Range(0, upper + 1));
    for (u64 m = 1; m <= upper; ++m) squarefree[m] = flags.test_unchecked(m) ? 1 : 0;

    detail::ntt(primes, false);
    detail::ntt(squarefree, false);
    for (std::size_t i = 0; i < size; ++i)
        primes[i] = static_cast<std::uint32_t>(static_cast<u64>(primes[i]) * squarefree[i] % detail::ntt_mod);
    detail::ntt(primes, true);

    std::vector<u64> counts(N + 1);
    for (u64 n = 0; n <= N; ++n) counts[n] = primes[n];
    return counts;
}

// -------------------------------------------------------
// Witness search without precomputed tables
// -------------------------------------------------------

// Scans primes downward from n - 1 in growing windows, testing each
// eta = n - p against a square-free sieve of the matching eta window.
// Exhaustive: returns nullopt only after reaching p = 2.
inline std::optional<RepresentationWitness> find_witness(u64 n, const Modulus& q,
                                                         const std::set<u64>& exclusions = {},
                                                         const SieveConfig& config = {}) {
    if (n < 3) return std::nullopt;
    if (n - 1 > q.coprime_limit())
        fail(ErrorKind::resource, "modulus " + q.text() + " is only factored up to " +
                                      std::to_string(q.coprime_limit()));
    auto admissible = [&](u64 eta, bool squarefree) {
        return squarefree && q.coprime(eta) && !exclusions.contains(eta);
    };
    if (q.even() && n % 2 == 1) {
        const u64 eta = n - 2;
        const SquarefreeFlags flags = sieve_squarefree(Range(eta, eta + 1), config);
        if (admissible(eta, flags.test_unchecked(eta))) return RepresentationWitness{n, 2, eta};
        return std::nullopt;
    }
    u64 hi = n;  // primes p < hi still to scan
    u64 window = 4096;
    while (hi > 2) {
        const u64 lo = hi > window + 2 ? hi - window : 2;
        const std::vector<u64> primes = sieve_primes(Range(lo, hi), config).primes;
        if (!primes.empty()) {
            // eta in [n - (hi - 1), n - lo]
            const SquarefreeFlags flags = sieve_squarefree(Range(n - (hi - 1), n - lo + 1), config);
            for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
                const u64 eta = n - *it;
                if (admissible(eta, flags.test_unchecked(eta))) return RepresentationWitness{n, *it, eta};
            }
        }
        hi = lo;
        window = std::min<u64>(window * 2, config.segment_width);
    }
    return std::nullopt;
}

inline std::optional<RepresentationWitness> find_witness(u64 n, u64 q, const std::set<u64>& exclusions = {}) {
    return find_witness(n, Modulus::of(q), exclusions);
}

// -------------------------------------------------------
// Exception sets
// -------------------------------------------------------

struct ExceptionOptions {
    u64 budget = 1'000'000'000;  // largest admissible limit
    unsigned threads = 1;
    u64 chunk = u64{1} << 20;
};

// All n <= limit with no representation n = p + eta, eta square-free and
// coprime to q. Every n is decided by a descending scan over all primes
// below it, stopping at the first admissible eta.
inline ExceptionReport exception_set(const Modulus& q, u64 limit, const ExceptionOptions& options = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (q.is_one()) fail(ErrorKind::argument, "exception sets need q >= 2");
    if (limit < 3) fail(ErrorKind::argument, "limit must be at least 3");
    if (limit > options.budget)
        fail(ErrorKind::resource, "limit " + std::to_string(limit) + " exceeds the compute budget " +
                                      std::to_string(options.budget));
    if (limit > q.coprime_limit())
        fail(ErrorKind::resource, "modulus " + q.text() + " is only factored up to " +
                                      std::to_string(q.coprime_limit()));

    const std::vector<u64> primes = sieve_primes(Range(0, limit + 1)).primes;
    SquarefreeFlags admissible = sieve_squarefree(Range(0, limit + 1));
    for (u64 r : q.primes())
        for (u64 m = r; m <= limit; m += r) admissible.clear(m);

    const u64 chunks = (limit + options.chunk - 1) / options.chunk;
    std::vector<std::vector<u64>> found(chunks);
    parallel_for(chunks, options.threads, [&](std::size_t c) {
        const u64 first = 1 + c * options.chunk;
        const u64 last = std::min<u64>(limit, first + options.chunk - 1);
        auto it = std::lower_bound(primes.begin(), primes.end(), first);
        for (u64 n = first; n <= last; ++n) {
            while (it != primes.end() && *it < n) ++it;  // *it is the first prime >= n
            bool represented = false;
            if (q.even() && n % 2 == 1) {
                represented = n > 2 && admissible.test_unchecked(n - 2);
            } else {
                for (auto p = it; p != primes.begin();) {
                    --p;
                    if (admissible.test_unchecked(n - *p)) {
                        represented = true;
                        break;
                    }
                }
            }
            if (!represented) found[c].push_back(n);
        }
    });

    ExceptionReport report{q.text(), limit, {}, 0};
    for (const auto& part : found) report.exceptions.insert(report.exceptions.end(), part.begin(), part.end());
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

inline ExceptionReport exception_set(u64 q, u64 limit, const ExceptionOptions& options = {}) {
    return exception_set(Modulus::of(q), limit, options);
}

}  // namespace addrep
