// sieve.hpp
// Segmented sieves over half-open ranges [lo, hi): primes, Moebius values,
// square-free flags, and Chebyshev theta sums.
//
// Every sieve walks its range in segments of SieveConfig::segment_width
// integers and strikes with base primes up to sqrt(hi - 1), computed once
// per call. Outputs are immutable value types, safe to share across threads.

#pragma once

#include "common.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace addrep {

struct SieveConfig {
    u64 segment_width = u64{1} << 20;
    u64 max_range = u64{1} << 32;  // largest hi - lo a single call may cover
};

class Range {
public:
    Range(u64 lo, u64 hi) : lo_(lo), hi_(hi) {
        if (lo >= hi)
            fail(ErrorKind::argument,
                 "empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
    }

    u64 lo() const { return lo_; }
    u64 hi() const { return hi_; }
    u64 size() const { return hi_ - lo_; }
    bool contains(u64 n) const { return n >= lo_ && n < hi_; }

    friend bool operator==(const Range&, const Range&) = default;

private:
    u64 lo_;
    u64 hi_;
};

inline void check_budget(const Range& range, const SieveConfig& config) {
    if (range.size() > config.max_range)
        fail(ErrorKind::resource, "range width " + std::to_string(range.size()) +
                                      " exceeds the sieve budget of " +
                                      std::to_string(config.max_range));
    if (config.segment_width == 0) fail(ErrorKind::argument, "segment width must be positive");
}

// Primes p <= limit by a plain Eratosthenes sieve; used for base primes.
inline std::vector<u64> small_primes(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (u64 i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
    for (u64 i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

namespace detail {

// Calls fn(seg_lo, seg_hi, is_prime_bytes) for consecutive segments.
template <typename Fn>
void for_each_prime_segment(const Range& range, const SieveConfig& config, Fn&& fn) {
    const u64 hi = range.hi();
    const std::vector<u64> base = small_primes(isqrt(hi - 1));
    std::vector<char> mark(std::min(config.segment_width, range.size()));
    for (u64 lo = range.lo(); lo < hi;) {
        const u64 seg_hi = (hi - lo > config.segment_width) ? lo + config.segment_width : hi;
        const u64 width = seg_hi - lo;
        std::fill_n(mark.begin(), width, char{1});
        for (u64 p : base) {
            if (p * p >= seg_hi) break;
            u64 start = (lo + p - 1) / p * p;
            if (start < p * p) start = p * p;
            for (u64 j = start; j < seg_hi; j += p) mark[j - lo] = 0;
        }
        for (u64 n = lo; n < std::min<u64>(seg_hi, 2); ++n) mark[n - lo] = 0;
        fn(lo, seg_hi, std::span<const char>(mark.data(), width));
        lo = seg_hi;
    }
}

}  // namespace detail

// Calls fn(p) for each prime p in the range, ascending.
template <typename Fn>
void for_each_prime(const Range& range, Fn&& fn, const SieveConfig& config = {}) {
    check_budget(range, config);
    detail::for_each_prime_segment(range, config, [&](u64 lo, u64 hi, std::span<const char> mark) {
        for (u64 n = lo; n < hi; ++n)
            if (mark[n - lo]) fn(n);
    });
}

// -------------------------------------------------------
// PrimeTable
// -------------------------------------------------------

struct PrimeTable {
    Range range;
    std::vector<u64> primes;  // ascending; exactly the primes in range
};

inline PrimeTable sieve_primes(const Range& range, const SieveConfig& config = {}) {
    PrimeTable table{range, {}};
    for_each_prime(range, [&](u64 p) { table.primes.push_back(p); }, config);
    return table;
}

// The k largest primes strictly below `below`, in descending order. Returns
// fewer when fewer exist.
inline std::vector<u64> largest_primes_below(u64 below, std::size_t k, const SieveConfig& config = {}) {
    std::vector<u64> out;
    u64 hi = below;
    u64 window = 4096;
    while (out.size() < k && hi > 2) {
        const u64 lo = hi > window ? hi - window : 0;
        std::vector<u64> chunk = sieve_primes(Range(lo, hi), config).primes;
        for (auto it = chunk.rbegin(); it != chunk.rend() && out.size() < k; ++it) out.push_back(*it);
        hi = lo;
        window = std::min<u64>(window * 2, config.segment_width);
    }
    return out;
}

// -------------------------------------------------------
// MobiusTable
// -------------------------------------------------------

class MobiusTable {
public:
    MobiusTable(Range range, std::vector<std::int8_t> values)
        : range_(range), values_(std::move(values)) {}

    const Range& range() const { return range_; }

    int operator()(u64 n) const {
        if (!range_.contains(n)) fail(ErrorKind::argument, "n=" + std::to_string(n) + " outside Moebius table");
        return values_[n - range_.lo()];
    }

    std::span<const std::int8_t> values() const { return values_; }

private:
    Range range_;
    std::vector<std::int8_t> values_;
};

inline MobiusTable sieve_mobius(const Range& range, const SieveConfig& config = {}) {
    if (range.lo() < 1) fail(ErrorKind::argument, "Moebius sieve requires lo >= 1");
    check_budget(range, config);

    const u64 hi = range.hi();
    const std::vector<u64> base = small_primes(isqrt(hi - 1));
    std::vector<std::int8_t> values(range.size());
    std::vector<u64> rest(std::min(config.segment_width, range.size()));

    for (u64 lo = range.lo(); lo < hi;) {
        const u64 seg_hi = (hi - lo > config.segment_width) ? lo + config.segment_width : hi;
        std::int8_t* mu = values.data() + (lo - range.lo());
        for (u64 n = lo; n < seg_hi; ++n) {
            mu[n - lo] = 1;
            rest[n - lo] = n;
        }
        for (u64 p : base) {
            if (p * p >= seg_hi) break;
            for (u64 j = (lo + p - 1) / p * p; j < seg_hi; j += p) {
                mu[j - lo] = static_cast<std::int8_t>(-mu[j - lo]);
                rest[j - lo] /= p;
            }
            const u64 pp = p * p;
            for (u64 j = (lo + pp - 1) / pp * pp; j < seg_hi; j += pp) mu[j - lo] = 0;
        }
        // a square-free n keeps at most one unsieved prime factor
        for (u64 n = lo; n < seg_hi; ++n)
            if (rest[n - lo] > 1) mu[n - lo] = static_cast<std::int8_t>(-mu[n - lo]);
        lo = seg_hi;
    }
    return MobiusTable(range, std::move(values));
}

// -------------------------------------------------------
// SquarefreeFlags (one bit per integer)
// -------------------------------------------------------

class SquarefreeFlags {
public:
    explicit SquarefreeFlags(Range range)
        : range_(range), words_((range.size() + 63) / 64, ~u64{0}) {}

    const Range& range() const { return range_; }

    bool operator()(u64 n) const {
        if (!range_.contains(n)) fail(ErrorKind::argument, "n=" + std::to_string(n) + " outside square-free table");
        return test_unchecked(n);
    }

    bool test_unchecked(u64 n) const {
        const u64 i = n - range_.lo();
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void clear(u64 n) {
        const u64 i = n - range_.lo();
        words_[i >> 6] &= ~(u64{1} << (i & 63));
    }

    u64 count() const {
        u64 total = 0;
        for (u64 n = range_.lo(); n < range_.hi(); ++n) total += test_unchecked(n);
        return total;
    }

private:
    Range range_;
    std::vector<u64> words_;
};

// flag(0) is 0: every square divides 0.
inline SquarefreeFlags sieve_squarefree(const Range& range, const SieveConfig& config = {}) {
    check_budget(range, config);
    SquarefreeFlags flags(range);
    const u64 hi = range.hi();
    const std::vector<u64> base = small_primes(isqrt(hi - 1));
    for (u64 lo = range.lo(); lo < hi;) {
        const u64 seg_hi = (hi - lo > config.segment_width) ? lo + config.segment_width : hi;
        for (u64 p : base) {
            const u64 pp = p * p;
            if (pp >= seg_hi) break;
            for (u64 j = (lo + pp - 1) / pp * pp; j < seg_hi; j += pp) flags.clear(j);
        }
        lo = seg_hi;
    }
    if (range.contains(0)) flags.clear(0);
    return flags;
}

// -------------------------------------------------------
// Chebyshev theta
// -------------------------------------------------------

// theta(x) = sum of log p over primes p <= x.
inline real theta(u64 x, const SieveConfig& config = {}) {
    if (x < 2) return 0;
    CompensatedSum sum;
    for_each_prime(Range(2, x + 1), [&](u64 p) { sum += std::log(static_cast<real>(p)); }, config);
    return sum.value();
}

// Per-residue theta sums: result[a] = theta(x; q, a) for a in [0, q).
inline std::vector<real> theta_by_residue(u64 x, u64 q, const SieveConfig& config = {}) {
    if (q == 0) fail(ErrorKind::argument, "modulus q must be positive");
    std::vector<CompensatedSum> sums(q);
    if (x >= 2)
        for_each_prime(Range(2, x + 1), [&](u64 p) { sums[p % q] += std::log(static_cast<real>(p)); }, config);
    std::vector<real> out(q);
    for (u64 a = 0; a < q; ++a) out[a] = sums[a].value();
    return out;
}

// theta(x; q, a): sum of log p over primes p <= x with p = a (mod q).
inline real theta_mod(u64 x, u64 q, u64 a, const SieveConfig& config = {}) {
    if (q == 0) fail(ErrorKind::argument, "modulus q must be positive");
    a %= q;
    if (x < 2) return 0;
    CompensatedSum sum;
    for_each_prime(Range(2, x + 1), [&](u64 p) {
        if (p % q == a) sum += std::log(static_cast<real>(p));
    }, config);
    return sum.value();
}

}  // namespace addrep
