// common.hpp
// Shared integer/real types, the error hierarchy, compensated summation,
// small arithmetic helpers and a tiny index-parallel driver used by the
// sieving and verification layers.

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace addrep {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using real = long double;

// -------------------------------------------------------
// Errors
// -------------------------------------------------------

enum class ErrorKind {
    argument,    // bad caller input (q = 0, A outside (0, 1/2), ...)
    resource,    // request exceeds a configured compute/memory budget
    parse,       // malformed external data
    validation,  // well-formed data that violates an invariant
    domain,      // estimate evaluated outside its range of validity
    checkpoint,  // unusable checkpoint file
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::argument: return "argument error";
        case ErrorKind::resource: return "resource error";
        case ErrorKind::parse: return "parse error";
        case ErrorKind::validation: return "validation error";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::checkpoint: return "checkpoint error";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

// -------------------------------------------------------
// Integer helpers
// -------------------------------------------------------

inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r;
}

// Distinct prime factors of n by trial division (n small).
inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline u64 euler_phi(u64 n) {
    if (n == 0) return 0;
    u64 result = n;
    for (u64 p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

// -------------------------------------------------------
// Compensated (Neumaier) summation in extended precision
// -------------------------------------------------------

class CompensatedSum {
public:
    void add(real x) {
        const real t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(real x) {
        add(x);
        return *this;
    }

    real value() const { return sum_ + comp_; }

private:
    real sum_ = 0;
    real comp_ = 0;
};

// -------------------------------------------------------
// Numeric text: "8e9", "10_000_000", "1.5e3"
// -------------------------------------------------------

inline std::string strip_underscores(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text)
        if (c != '_') out.push_back(c);
    return out;
}

// Parses a non-negative integer, accepting digit-group underscores and
// exact scientific notation. Rejects values that are not integral.
inline u64 parse_count(std::string_view text) {
    const std::string s = strip_underscores(text);
    if (s.empty()) fail(ErrorKind::argument, "empty number");

    std::string mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        const std::string exp_text = s.substr(e + 1);
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size() || exp_text.empty())
            fail(ErrorKind::argument, "bad exponent in '" + std::string(text) + "'");
    }

    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mantissa) {
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_dot) ++frac_digits;
        } else {
            fail(ErrorKind::argument, "not a non-negative integer: '" + std::string(text) + "'");
        }
    }
    if (digits.empty()) fail(ErrorKind::argument, "not a number: '" + std::string(text) + "'");

    long shift = exponent - frac_digits;
    if (shift < 0) {
        // the dropped digits must all be zero
        if (static_cast<long>(digits.size()) < -shift) {
            if (digits.find_first_not_of('0') != std::string::npos)
                fail(ErrorKind::argument, "not an integer: '" + std::string(text) + "'");
            return 0;
        }
        const std::string tail = digits.substr(digits.size() + shift);
        if (tail.find_first_not_of('0') != std::string::npos)
            fail(ErrorKind::argument, "not an integer: '" + std::string(text) + "'");
        digits.resize(digits.size() + shift);
        shift = 0;
        if (digits.empty()) return 0;
    }
    digits.append(static_cast<std::size_t>(shift), '0');

    u64 value = 0;
    for (char c : digits) {
        const u64 d = static_cast<u64>(c - '0');
        if (value > (UINT64_MAX - d) / 10)
            fail(ErrorKind::argument, "integer out of range: '" + std::string(text) + "'");
        value = value * 10 + d;
    }
    return value;
}

inline double parse_real(std::string_view text) {
    const std::string s = strip_underscores(text);
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        fail(ErrorKind::argument, "not a real number: '" + std::string(text) + "'");
    return value;
}

// -------------------------------------------------------
// Index-parallel driver
// -------------------------------------------------------

// Runs fn(i) for every i in [0, count) on up to `threads` workers. Each
// index is claimed exactly once; the first exception is rethrown after
// all workers join.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

inline unsigned default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace addrep
