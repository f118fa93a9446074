// thetadata.hpp
// Explicit constants for primes in arithmetic progressions:
//
//     |theta(x; q, a) - x / phi(q)| < c_theta(q) * x / log x   for x >= x_theta(q),
//
// uniformly in residues a coprime to q. Tables are read from a TSV file
// (q<TAB>c_theta<TAB>x_theta per line, '#' comments) and validated on load.
// A "# status: published" header marks a table transcribed from the
// published constants; anything else is treated as unverified.

#pragma once

#include "common.hpp"
#include "sieve.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace addrep {

struct ThetaEntry {
    u64 modulus = 0;
    double c_theta = 0;
    u64 x_theta = 0;
};

enum class TableStatus { unverified, placeholder, published };

inline const char* to_string(TableStatus status) {
    switch (status) {
        case TableStatus::unverified: return "unverified";
        case TableStatus::placeholder: return "placeholder";
        case TableStatus::published: return "published";
    }
    return "unverified";
}

struct ThetaTable {
    std::map<u64, ThetaEntry> entries;
    std::string provenance;  // source identifier (file name)
    TableStatus status = TableStatus::unverified;

    const ThetaEntry& at(u64 q) const {
        auto it = entries.find(q);
        if (it == entries.end())
            fail(ErrorKind::validation, provenance + ": no entry for modulus " + std::to_string(q));
        return it->second;
    }

    bool contains(u64 q) const { return entries.contains(q); }
};

namespace theta_limits {
inline constexpr u64 square_root_min = 2;
inline constexpr u64 square_root_max = 316;
inline constexpr u64 square_x_cap = 4'810'000'000;  // squares a^2, 2 <= a <= 316
inline constexpr u64 general_x_cap = 8'000'000'000;
inline constexpr u64 q3_moduli[] = {3, 9, 12, 36, 75, 225, 300, 900};
}  // namespace theta_limits

inline bool is_table_square(u64 q) {
    const u64 a = isqrt(q);
    return a * a == q && a >= theta_limits::square_root_min && a <= theta_limits::square_root_max;
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, '\t')) fields.push_back(field);
    if (!line.empty() && line.back() == '\t') fields.emplace_back();
    return fields;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline ThetaTable load_table(std::istream& in, const std::string& source = "<stream>") {
    ThetaTable table;
    table.provenance = source;
    auto where = [&](std::size_t line_no) { return source + ":" + std::to_string(line_no) + ": "; };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = detail::trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            const std::string comment = detail::trim(body.substr(1));
            if (comment.rfind("status:", 0) == 0) {
                const std::string value = detail::trim(comment.substr(7));
                if (value == "published") table.status = TableStatus::published;
                else if (value == "placeholder") table.status = TableStatus::placeholder;
                else table.status = TableStatus::unverified;
            }
            continue;
        }
        const auto fields = detail::split_fields(body);
        if (fields.size() != 3)
            fail(ErrorKind::parse, where(line_no) + "expected 3 tab-separated fields, found " +
                                       std::to_string(fields.size()));
        ThetaEntry entry;
        try {
            entry.modulus = parse_count(fields[0]);
            entry.x_theta = parse_count(fields[2]);
        } catch (const Error& e) {
            fail(ErrorKind::parse, where(line_no) + e.what());
        }
        const std::string& c_text = fields[1];
        auto [ptr, ec] = std::from_chars(c_text.data(), c_text.data() + c_text.size(), entry.c_theta);
        if (ec != std::errc{} || ptr != c_text.data() + c_text.size() || c_text.empty())
            fail(ErrorKind::parse, where(line_no) + "bad c_theta '" + c_text + "'");

        if (entry.modulus < 3) fail(ErrorKind::validation, where(line_no) + "modulus must be at least 3");
        if (!(entry.c_theta > 0) || !(entry.c_theta < 1))
            fail(ErrorKind::validation, where(line_no) + "c_theta must lie in (0, 1)");
        if (entry.x_theta < 2) fail(ErrorKind::validation, where(line_no) + "x_theta must be at least 2");
        const u64 cap = is_table_square(entry.modulus) ? theta_limits::square_x_cap : theta_limits::general_x_cap;
        if (entry.x_theta > cap)
            fail(ErrorKind::validation, where(line_no) + "x_theta(" + std::to_string(entry.modulus) +
                                            ") exceeds the cap " + std::to_string(cap));
        if (table.entries.contains(entry.modulus))
            fail(ErrorKind::parse, where(line_no) + "duplicate modulus " + std::to_string(entry.modulus));
        table.entries.emplace(entry.modulus, entry);
    }

    for (u64 a = theta_limits::square_root_min; a <= theta_limits::square_root_max; ++a)
        if (!table.contains(a * a))
            fail(ErrorKind::validation, source + ": missing required modulus " + std::to_string(a * a));
    for (u64 q : theta_limits::q3_moduli)
        if (!table.contains(q))
            fail(ErrorKind::validation, source + ": missing required modulus " + std::to_string(q));
    return table;
}

inline ThetaTable load_table(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    return load_table(in, source);
}

// Canonical form: status header, then rows in ascending modulus with the
// shortest round-trip spelling of c_theta.
inline std::string serialize(const ThetaTable& table) {
    std::string out = "# status: ";
    out += to_string(table.status);
    out += '\n';
    char buf[64];
    for (const auto& [q, e] : table.entries) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.c_theta);
        out += std::to_string(q);
        out += '\t';
        out.append(buf, ptr);
        out += '\t';
        out += std::to_string(e.x_theta);
        out += '\n';
    }
    return out;
}

struct ThetaEstimate {
    real lower = 0;
    real upper = 0;
};

// x/phi(q) -+ c_theta(q) x / log x, valid for x >= x_theta(q).
inline ThetaEstimate theta_estimate(const ThetaTable& table, u64 q, real x) {
    const ThetaEntry& e = table.at(q);
    if (x < static_cast<real>(e.x_theta))
        fail(ErrorKind::domain, "estimate for q=" + std::to_string(q) + " only valid for x >= " +
                                    std::to_string(e.x_theta));
    const real main = x / static_cast<real>(euler_phi(q));
    const real err = static_cast<real>(e.c_theta) * x / std::log(x);
    return {main - err, main + err};
}

inline real theta_upper(const ThetaTable& table, u64 q, real x) { return theta_estimate(table, q, x).upper; }
inline real theta_lower(const ThetaTable& table, u64 q, real x) { return theta_estimate(table, q, x).lower; }

// Sum of c_theta(a^2) over 2 <= a <= 316.
inline real sum_c_theta_squares(const ThetaTable& table) {
    CompensatedSum sum;
    for (u64 a = theta_limits::square_root_min; a <= theta_limits::square_root_max; ++a)
        sum += table.at(a * a).c_theta;
    return sum.value();
}

inline constexpr real c_theta_sum_cap = 0.95L;

// Tables feeding a proof-mode check must keep the square sum below 0.95.
inline void require_square_sum_gate(const ThetaTable& table) {
    const real s = sum_c_theta_squares(table);
    if (!(s < c_theta_sum_cap))
        fail(ErrorKind::validation, table.provenance + ": sum of c_theta over squares is " +
                                        std::to_string(static_cast<double>(s)) + ", not below 0.95");
}

// -------------------------------------------------------
// Empirical (non-rigorous) stand-in
// -------------------------------------------------------

struct EmpiricalC {
    real value = 0;
    bool degenerate = false;  // x_max < q: nothing sampled
    u64 sampled_from = 0;     // smallest x sampled
};

// max over residues a coprime to q and sampled x in [x_from, x_max] of
// |theta(x; q, a) - x/phi(q)| log x / x over x in [x_from, x_max], where
// x_from = max(q, x_max/16): the constants describe large x, and small x
// (q = 3 reaches 0.30 near x = 1422) would swamp them. Each class is
// sampled at x_from, just before and at every one of its prime jumps, and
// at x_max. Advisory only.
inline EmpiricalC empirical_c_theta(u64 q, u64 x_max, const SieveConfig& config = {}) {
    if (q < 3) fail(ErrorKind::argument, "empirical_c_theta requires q >= 3");
    EmpiricalC out;
    if (x_max < q) {
        out.degenerate = true;
        return out;
    }
    const u64 x_from = std::max<u64>(q, x_max / 16);
    out.sampled_from = x_from;
    const real phi = static_cast<real>(euler_phi(q));
    std::vector<CompensatedSum> sums(q);
    real worst = 0;
    auto sample = [&](real x, real theta_value) {
        const real dev = std::fabs(theta_value - x / phi) * std::log(x) / x;
        worst = std::max(worst, dev);
    };
    auto sample_all = [&](u64 x) {
        for (u64 a = 1; a < q; ++a)
            if (std::gcd(a, q) == 1) sample(static_cast<real>(x), sums[a].value());
    };
    for_each_prime(Range(2, x_from + 1), [&](u64 p) { sums[p % q] += std::log(static_cast<real>(p)); }, config);
    sample_all(x_from);
    if (x_max > x_from) {
        // between jumps the deviation is monotone, so endpoints suffice
        for_each_prime(Range(x_from + 1, x_max + 1), [&](u64 p) {
            const u64 a = p % q;
            if (std::gcd(a, q) != 1) return;
            sample(static_cast<real>(p - 1), sums[a].value());
            sums[a] += std::log(static_cast<real>(p));
            sample(static_cast<real>(p), sums[a].value());
        }, config);
    }
    sample_all(x_max);
    out.value = worst;
    return out;
}

}  // namespace addrep
