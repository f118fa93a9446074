// verifier.hpp
// Small-n verification by probing with large primes.
//
// The integers are split into intervals I_a = [a W, (a+1) W). Every n in I_a
// (a >= 1) is probed with the largest primes of I_{a-1}, in descending
// order. Each probe whose eta = n - p is square-free (and not excluded) is
// a hit; the running gcd of the hit etas is folded until it drops to 2 or
// below, at which point some hit eta is coprime to every odd prime q.
// Interval 0 scans every prime below n up to an exhaustive limit and then
// probes with the largest primes below that limit.
//
// Even n outside the corollary mode go through a Goldbach decomposition
// instead of probing.

#pragma once

#include "common.hpp"
#include "represent.hpp"
#include "sieve.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace addrep {

enum class Parity { odd, even, both };
enum class Criterion {
    gcd,      // running gcd of hit etas reaches <= 2
    any_hit,  // one hit suffices (corollary mode)
};

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::odd: return "odd";
        case Parity::even: return "even";
        case Parity::both: return "both";
    }
    return "odd";
}

inline Parity parse_parity(std::string_view s) {
    if (s == "odd") return Parity::odd;
    if (s == "even") return Parity::even;
    if (s == "both") return Parity::both;
    fail(ErrorKind::argument, "parity must be odd, even or both");
}

inline const char* to_string(Criterion c) { return c == Criterion::gcd ? "gcd" : "any_hit"; }

struct ExpectedException {
    u64 n = 0;
    u64 q = 0;  // the only modulus for which n is allowed to fail
};

struct VerifyConfig {
    u64 interval_width = 10'000'000;
    u64 a_min = 0;  // interval indices, inclusive
    u64 a_max = 9;
    u64 primes_per_interval = 100;
    u64 escalation_primes = 1000;  // extra primes tried before declaring failure
    u64 squarefree_limit = 20'000'000;
    u64 q_max = 100'000;
    u64 exhaustive_limit = 1'000'000;  // interval 0 scans all primes for n <= this
    u64 n_min = 3;
    u64 n_max = UINT64_MAX;  // inclusive
    std::set<u64> exclusions;
    Parity parity = Parity::odd;
    Criterion criterion = Criterion::gcd;
    std::vector<ExpectedException> expected{{11, 3}};
    unsigned threads = 1;
    u64 seed = 1;
    u64 spot_checks = 1000;
    std::string checkpoint_path;  // empty: no checkpointing

    // n = p1 + p2 + eta: even n > 4, etas 1, 2 and 11 excluded, one hit each.
    static VerifyConfig corollary() {
        VerifyConfig c;
        c.exclusions = {1, 2, 11};
        c.parity = Parity::even;
        c.criterion = Criterion::any_hit;
        c.expected.clear();
        c.n_min = 5;
        return c;
    }

    u64 first_n(u64 a) const { return std::max(a * interval_width, n_min); }
    u64 end_n(u64 a) const {
        const u64 end = (a + 1) * interval_width;
        return n_max < end ? n_max + 1 : end;
    }

    // Intervals a_min..a_max covering [from, to].
    void set_range(u64 from, u64 to) {
        if (from > to) fail(ErrorKind::argument, "empty n range");
        n_min = std::max<u64>(from, 3);
        n_max = to;
        if (n_min > n_max) fail(ErrorKind::argument, "n range holds no n >= 3");
        a_min = n_min / interval_width;
        a_max = n_max / interval_width;
    }

    bool wants(u64 n) const {
        switch (parity) {
            case Parity::odd: return n % 2 == 1;
            case Parity::even: return n % 2 == 0;
            case Parity::both: return true;
        }
        return false;
    }

    bool uses_goldbach() const { return criterion == Criterion::gcd && parity != Parity::odd; }

    void validate() const {
        if (interval_width < 2) fail(ErrorKind::argument, "interval width must be at least 2");
        if (primes_per_interval < 1) fail(ErrorKind::argument, "primes_per_interval must be at least 1");
        if (squarefree_limit < interval_width)
            fail(ErrorKind::argument, "squarefree_limit must be at least the interval width");
        if (a_min > a_max) fail(ErrorKind::argument, "empty interval range");
        if (exhaustive_limit >= interval_width)
            fail(ErrorKind::argument, "exhaustive_limit must lie below the interval width");
        if (q_max < 3) fail(ErrorKind::argument, "q_max must be at least 3");
        if (first_n(a_min) >= end_n(a_min) || first_n(a_max) >= end_n(a_max))
            fail(ErrorKind::argument, "n_min/n_max leave an interval of the range empty");
    }
};

struct Failure {
    u64 n = 0;
    u64 gcd = 0;                 // 0: no admissible eta at all
    std::vector<u64> failing_q;  // odd primes <= q_max dividing every hit eta
    u64 hits = 0;
};

struct IntervalReport {
    u64 index = 0;
    u64 first_n = 0;
    u64 last_n = 0;
    u64 checked = 0;
    u64 exhausted = 0;  // n that needed the escalation primes
    std::vector<Failure> failures;
    std::vector<Failure> known_exceptions;
    std::int64_t elapsed_ms = 0;
};

struct SpotCheck {
    u64 n = 0;
    u64 q = 0;
    std::optional<RepresentationWitness> witness;
};

struct VerifyReport {
    VerifyConfig config;
    u64 intervals_done = 0;
    u64 checked = 0;
    u64 exhausted = 0;
    std::vector<Failure> failures;
    std::vector<Failure> known_exceptions;
    u64 spot_samples = 0;
    std::vector<SpotCheck> spot_mismatches;
    std::vector<SpotCheck> witnesses_sampled;
    std::int64_t elapsed_ms = 0;
};

// -------------------------------------------------------
// Probing
// -------------------------------------------------------

struct ProbeState {
    u64 gcd = 0;
    u64 hits = 0;
    bool done = false;
};

namespace detail {

inline bool excluded(const std::vector<u64>& exclusions, u64 eta) {
    for (u64 e : exclusions)
        if (e == eta) return true;
    return false;
}

// Folds hits from primes (descending, all < n) into state until done.
inline void probe(u64 n, std::span<const u64> primes, const SquarefreeFlags& flags,
                  const std::vector<u64>& exclusions, Criterion criterion, ProbeState& state) {
    const u64 flag_hi = flags.range().hi();
    for (u64 p : primes) {
        if (state.done) return;
        if (p >= n) continue;
        const u64 eta = n - p;
        if (eta >= flag_hi)
            fail(ErrorKind::argument, "eta=" + std::to_string(eta) + " beyond the square-free table");
        if (!flags.test_unchecked(eta) || excluded(exclusions, eta)) continue;
        ++state.hits;
        state.gcd = std::gcd(state.gcd, eta);
        if (criterion == Criterion::any_hit || state.gcd <= 2) state.done = true;
    }
}

// Odd primes <= q_max that divide g (g > 0).
inline std::vector<u64> small_odd_factors(u64 g, u64 q_max) {
    std::vector<u64> out;
    for (u64 p : prime_factors(g))
        if (p != 2 && p <= q_max) out.push_back(p);
    return out;
}

}  // namespace detail

// Decides n from a finished probe: success, known exception, or failure.
inline void judge(u64 n, const ProbeState& state, const VerifyConfig& config, IntervalReport& out) {
    if (state.done) return;
    Failure f{n, state.gcd, {}, state.hits};
    if (state.hits > 0) {
        if (config.criterion == Criterion::any_hit) return;
        f.failing_q = detail::small_odd_factors(state.gcd, config.q_max);
        if (f.failing_q.empty()) return;  // only primes beyond q_max divide every eta
    }
    for (const ExpectedException& e : config.expected)
        if (e.n == n && f.failing_q == std::vector<u64>{e.q}) {
            out.known_exceptions.push_back(f);
            return;
        }
    out.failures.push_back(f);
}

// -------------------------------------------------------
// Goldbach shortcut for even n
// -------------------------------------------------------

struct GoldbachOutcome {
    bool ok = false;
    u64 p1 = 0;  // n = p1 + p2, p1 <= p2; 0 when none was found
    u64 p2 = 0;
    std::optional<RepresentationWitness> alternative;  // for n = q + q
};

// A decomposition n = p1 + p2 with p1 != p2 gives etas p1 and p2, which
// are coprime to each other. When only n = q + q exists, a representation
// with eta coprime to q is searched for separately.
inline GoldbachOutcome goldbach_shortcut(u64 n, u64 q_max, const RepresentationTables& tables) {
    if (n % 2 != 0 || n < 4) fail(ErrorKind::argument, "goldbach_shortcut needs an even n >= 4");
    if (n > tables.limit()) fail(ErrorKind::argument, "n beyond the prime tables");
    GoldbachOutcome out;
    for (u64 p : tables.primes()) {
        if (2 * p > n) break;
        if (!tables.is_prime(n - p)) continue;
        out.p1 = p;
        out.p2 = n - p;
        if (p != n - p) {
            out.ok = true;
            return out;
        }
    }
    if (out.p1 == 0) return out;
    const u64 q = out.p1;  // n = q + q is the only decomposition
    if (q == 2 || q > q_max) {
        out.ok = true;
        return out;
    }
    out.alternative = tables.find_witness(n, Modulus::of(q));
    out.ok = out.alternative.has_value();
    return out;
}

inline GoldbachOutcome goldbach_shortcut(u64 n, u64 q_max) {
    return goldbach_shortcut(n, q_max, RepresentationTables(n));
}

// -------------------------------------------------------
// Per-interval work
// -------------------------------------------------------

// primes_per_interval + escalation_primes largest primes of I_{a-1}.
inline std::vector<u64> probe_primes_for(u64 a, const VerifyConfig& config) {
    if (a == 0) fail(ErrorKind::argument, "interval 0 has no predecessor");
    const u64 lo = (a - 1) * config.interval_width;
    std::vector<u64> primes =
        largest_primes_below(a * config.interval_width, config.primes_per_interval + config.escalation_primes);
    std::erase_if(primes, [&](u64 p) { return p < lo; });
    return primes;
}

namespace detail {

inline std::vector<u64> exclusion_list(const VerifyConfig& config) {
    return {config.exclusions.begin(), config.exclusions.end()};
}

inline void check_one(u64 n, std::span<const u64> primes, const SquarefreeFlags& flags,
                      const std::vector<u64>& exclusions, const VerifyConfig& config,
                      const RepresentationTables* goldbach, IntervalReport& out) {
    ++out.checked;
    if (n % 2 == 0 && config.uses_goldbach()) {
        if (!goldbach) fail(ErrorKind::argument, "even n needs prime tables for the Goldbach shortcut");
        if (!goldbach_shortcut(n, config.q_max, *goldbach).ok) out.failures.push_back({n, 0, {}, 0});
        return;
    }
    ProbeState state;
    const std::size_t primary = std::min<std::size_t>(config.primes_per_interval, primes.size());
    detail::probe(n, primes.first(primary), flags, exclusions, config.criterion, state);
    if (!state.done && primes.size() > primary) {
        ++out.exhausted;
        detail::probe(n, primes.subspan(primary), flags, exclusions, config.criterion, state);
    }
    judge(n, state, config, out);
}

}  // namespace detail

// Checks every n of the configured parity in I_a, a >= 1. probe_primes must
// be strictly descending and lie in I_{a-1}; the first primes_per_interval
// are the regular probes and the rest are escalation primes.
inline IntervalReport verify_interval(u64 a, const VerifyConfig& config, const SquarefreeFlags& flags,
                                      std::span<const u64> probe_primes,
                                      const RepresentationTables* goldbach = nullptr) {
    const auto start = std::chrono::steady_clock::now();
    if (a == 0) fail(ErrorKind::argument, "interval 0 is handled by verify_initial_segment");
    const u64 lo = (a - 1) * config.interval_width, hi = a * config.interval_width;
    if (probe_primes.empty()) fail(ErrorKind::argument, "no probe primes for interval " + std::to_string(a));
    for (std::size_t i = 0; i < probe_primes.size(); ++i) {
        if (probe_primes[i] < lo || probe_primes[i] >= hi)
            fail(ErrorKind::argument, "probe prime " + std::to_string(probe_primes[i]) + " not in I_" +
                                          std::to_string(a - 1));
        if (i > 0 && probe_primes[i] >= probe_primes[i - 1])
            fail(ErrorKind::argument, "probe primes must be strictly descending");
    }
    if (flags.range().lo() > 1 || flags.range().hi() < 2 * config.interval_width)
        fail(ErrorKind::argument, "square-free flags must cover [1, 2 * interval_width)");

    IntervalReport out;
    out.index = a;
    out.first_n = config.first_n(a);
    out.last_n = config.end_n(a) - 1;
    const auto exclusions = detail::exclusion_list(config);
    for (u64 n = out.first_n; n < config.end_n(a); ++n)
        if (config.wants(n)) detail::check_one(n, probe_primes, flags, exclusions, config, goldbach, out);
    out.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return out;
}

// Interval 0: n in [n_min, W). n <= exhaustive_limit is checked against
// every prime below n; larger n are probed with the largest primes below
// exhaustive_limit.
inline IntervalReport verify_initial_segment(const VerifyConfig& config, const SquarefreeFlags& flags,
                                             const RepresentationTables* goldbach = nullptr) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    if (flags.range().lo() > 1 || flags.range().hi() < config.interval_width)
        fail(ErrorKind::argument, "square-free flags must cover [1, interval_width)");

    IntervalReport out;
    out.index = 0;
    out.first_n = config.first_n(0);
    out.last_n = config.end_n(0) - 1;
    const auto exclusions = detail::exclusion_list(config);

    std::vector<u64> all = sieve_primes(Range(0, config.exhaustive_limit + 1)).primes;
    std::reverse(all.begin(), all.end());
    const std::vector<u64> p0 =
        largest_primes_below(config.exhaustive_limit, config.primes_per_interval + config.escalation_primes);

    for (u64 n = out.first_n; n < config.end_n(0); ++n) {
        if (!config.wants(n)) continue;
        if (n <= config.exhaustive_limit) {
            ++out.checked;
            if (n % 2 == 0 && config.uses_goldbach()) {
                if (!goldbach) fail(ErrorKind::argument, "even n needs prime tables for the Goldbach shortcut");
                if (!goldbach_shortcut(n, config.q_max, *goldbach).ok) out.failures.push_back({n, 0, {}, 0});
                continue;
            }
            // all is descending; skip primes >= n
            auto first = std::lower_bound(all.begin(), all.end(), n, std::greater<u64>());
            if (first != all.end() && *first == n) ++first;
            ProbeState state;
            detail::probe(n, std::span<const u64>(all.data() + (first - all.begin()), all.end() - first), flags,
                          exclusions, config.criterion, state);
            judge(n, state, config, out);
        } else {
            detail::check_one(n, p0, flags, exclusions, config, goldbach, out);
        }
    }
    out.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return out;
}

inline SquarefreeFlags verifier_flags(const VerifyConfig& config) {
    return sieve_squarefree(Range(0, config.squarefree_limit + config.interval_width));
}

inline IntervalReport verify_initial_segment(const VerifyConfig& config) {
    const SquarefreeFlags flags = verifier_flags(config);
    std::optional<RepresentationTables> tables;
    if (config.uses_goldbach()) tables.emplace(config.interval_width);
    return verify_initial_segment(config, flags, tables ? &*tables : nullptr);
}

// -------------------------------------------------------
// JSON
// -------------------------------------------------------

using json = nlohmann::ordered_json;

inline json to_json(const Failure& f) {
    return json{{"n", f.n}, {"gcd", f.gcd}, {"failing_q", f.failing_q}, {"hits", f.hits}};
}

inline Failure failure_from_json(const json& j) {
    return Failure{j.at("n").get<u64>(), j.at("gcd").get<u64>(), j.at("failing_q").get<std::vector<u64>>(),
                   j.at("hits").get<u64>()};
}

// Fields that determine per-interval results (no range, threads, sampling).
// Interval bounds are stored per record and checked separately.
inline json work_config_json(const VerifyConfig& c) {
    json expected = json::array();
    for (const auto& e : c.expected) expected.push_back(json{{"n", e.n}, {"q", e.q}});
    return json{{"interval_width", c.interval_width},
                {"primes_per_interval", c.primes_per_interval},
                {"escalation_primes", c.escalation_primes},
                {"squarefree_limit", c.squarefree_limit},
                {"q_max", c.q_max},
                {"exhaustive_limit", c.exhaustive_limit},
                {"exclusions", std::vector<u64>(c.exclusions.begin(), c.exclusions.end())},
                {"parity", to_string(c.parity)},
                {"criterion", to_string(c.criterion)},
                {"expected_exceptions", expected}};
}

inline json to_json(const VerifyConfig& c) {
    json j = work_config_json(c);
    j["a_min"] = c.a_min;
    j["a_max"] = c.a_max;
    j["n_min"] = c.n_min;
    if (c.n_max != UINT64_MAX) j["n_max"] = c.n_max;
    j["seed"] = c.seed;
    j["spot_checks"] = c.spot_checks;
    return j;
}

inline std::string config_digest(const VerifyConfig& c) {
    const std::string text = work_config_json(c).dump();
    u64 h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json to_json(const IntervalReport& r, const std::string& digest) {
    json failures = json::array(), known = json::array();
    for (const auto& f : r.failures) failures.push_back(to_json(f));
    for (const auto& f : r.known_exceptions) known.push_back(to_json(f));
    return json{{"config_digest", digest}, {"interval", r.index},   {"first_n", r.first_n},
                {"last_n", r.last_n},      {"checked", r.checked},  {"exhausted", r.exhausted},
                {"failures", failures},    {"known_exceptions", known}, {"elapsed_ms", r.elapsed_ms}};
}

inline json to_json(const SpotCheck& s) {
    json j{{"n", s.n}, {"q", s.q}};
    if (s.witness) {
        j["p"] = s.witness->p;
        j["eta"] = s.witness->eta;
    } else {
        j["p"] = nullptr;
        j["eta"] = nullptr;
    }
    return j;
}

// Deterministic for a fixed config; elapsed time only on request.
inline json to_json(const VerifyReport& r, bool include_timing = false) {
    json failures = json::array(), known = json::array(), mismatches = json::array(), witnesses = json::array();
    for (const auto& f : r.failures) failures.push_back(to_json(f));
    for (const auto& f : r.known_exceptions) known.push_back(to_json(f));
    for (const auto& s : r.spot_mismatches) mismatches.push_back(to_json(s));
    for (const auto& s : r.witnesses_sampled) witnesses.push_back(to_json(s));
    json j{{"config", to_json(r.config)},
           {"intervals_done", r.intervals_done},
           {"checked", r.checked},
           {"exhausted", r.exhausted},
           {"failures", failures},
           {"known_exceptions", known},
           {"spot_check", json{{"seed", r.config.seed},
                               {"samples", r.spot_samples},
                               {"mismatches", mismatches},
                               {"witnesses", witnesses}}}};
    if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

// -------------------------------------------------------
// Checkpoints: one JSON object per completed interval
// -------------------------------------------------------

inline std::map<u64, IntervalReport> read_checkpoint(const std::string& path, const VerifyConfig& config) {
    std::map<u64, IntervalReport> done;
    std::ifstream in(path);
    if (!in) return done;
    const std::string digest = config_digest(config);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = path + ":" + std::to_string(line_no) + ": ";
        if (line.empty()) continue;
        IntervalReport r;
        try {
            const json j = json::parse(line);
            if (j.at("config_digest").get<std::string>() != digest)
                fail(ErrorKind::checkpoint, where + "written by a different configuration");
            r.index = j.at("interval").get<u64>();
            r.first_n = j.at("first_n").get<u64>();
            r.last_n = j.at("last_n").get<u64>();
            r.checked = j.at("checked").get<u64>();
            r.exhausted = j.at("exhausted").get<u64>();
            r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
            for (const auto& f : j.at("failures")) r.failures.push_back(failure_from_json(f));
            for (const auto& f : j.at("known_exceptions")) r.known_exceptions.push_back(failure_from_json(f));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            fail(ErrorKind::checkpoint, where + "corrupt record (" + e.what() + ")");
        }
        if (r.first_n != config.first_n(r.index) || r.last_n != config.end_n(r.index) - 1)
            fail(ErrorKind::checkpoint, where + "interval bounds do not match the configuration");
        if (done.contains(r.index))
            fail(ErrorKind::checkpoint, where + "duplicate interval " + std::to_string(r.index));
        done.emplace(r.index, std::move(r));
    }
    return done;
}

// -------------------------------------------------------
// Orchestration
// -------------------------------------------------------

// Re-derives sampled successes with find_witness. Samples are drawn from
// the configured intervals with a seeded generator, so they do not depend
// on execution order.
inline void spot_check(const VerifyConfig& config, VerifyReport& report) {
    if (config.spot_checks == 0) return;
    std::mt19937_64 rng(config.seed);
    std::vector<u64> odd_primes = small_primes(config.q_max);
    odd_primes.erase(odd_primes.begin());
    std::set<u64> skip;
    for (const auto& f : report.failures) skip.insert(f.n);
    for (const auto& f : report.known_exceptions) skip.insert(f.n);

    const std::size_t keep_witnesses = 16;
    // draws landing on nothing wanted (a one-element edge interval, say) are redrawn
    for (u64 tries = 0; report.spot_samples < config.spot_checks && tries < 8 * config.spot_checks; ++tries) {
        const u64 a = std::uniform_int_distribution<u64>(config.a_min, config.a_max)(rng);
        const u64 first = config.first_n(a), last = config.end_n(a) - 1;
        u64 n = std::uniform_int_distribution<u64>(first, last)(rng);
        if (!config.wants(n)) n = (n + 1 <= last) ? n + 1 : n - 1;
        const u64 q = config.criterion == Criterion::any_hit
                          ? 1
                          : odd_primes[std::uniform_int_distribution<std::size_t>(0, odd_primes.size() - 1)(rng)];
        if (!config.wants(n) || n < first || skip.contains(n)) continue;
        SpotCheck check{n, q, find_witness(n, Modulus::of(q), config.exclusions)};
        ++report.spot_samples;
        if (!check.witness) report.spot_mismatches.push_back(check);
        else if (report.witnesses_sampled.size() < keep_witnesses) report.witnesses_sampled.push_back(check);
    }
}

inline VerifyReport run_verification(const VerifyConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();

    const SquarefreeFlags flags = verifier_flags(config);
    std::optional<RepresentationTables> goldbach;
    if (config.uses_goldbach()) {
        const u64 top = config.end_n(config.a_max);
        if (top > (u64{1} << 30))
            fail(ErrorKind::resource, "Goldbach shortcut tables limited to n <= 2^30");
        goldbach.emplace(top);
    }

    std::map<u64, IntervalReport> done;
    if (!config.checkpoint_path.empty()) done = read_checkpoint(config.checkpoint_path, config);

    std::vector<u64> todo;
    for (u64 a = config.a_min; a <= config.a_max; ++a)
        if (!done.contains(a)) todo.push_back(a);

    std::vector<IntervalReport> results(todo.size());
    std::mutex append_mutex;
    std::ofstream checkpoint;
    if (!config.checkpoint_path.empty()) checkpoint.open(config.checkpoint_path, std::ios::app);
    const std::string digest = config_digest(config);
    const RepresentationTables* gb = goldbach ? &*goldbach : nullptr;

    parallel_for(todo.size(), config.threads, [&](std::size_t i) {
        const u64 a = todo[i];
        IntervalReport r;
        if (a == 0) {
            r = verify_initial_segment(config, flags, gb);
        } else {
            const std::vector<u64> primes = probe_primes_for(a, config);
            r = verify_interval(a, config, flags, primes, gb);
        }
        if (checkpoint.is_open()) {
            std::lock_guard lock(append_mutex);
            checkpoint << to_json(r, digest).dump() << '\n';
            checkpoint.flush();
        }
        results[i] = std::move(r);
    });

    for (auto& r : results) done.emplace(r.index, std::move(r));

    VerifyReport report;
    report.config = config;
    for (u64 a = config.a_min; a <= config.a_max; ++a) {
        const IntervalReport& r = done.at(a);
        ++report.intervals_done;
        report.checked += r.checked;
        report.exhausted += r.exhausted;
        report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
        report.known_exceptions.insert(report.known_exceptions.end(), r.known_exceptions.begin(),
                                       r.known_exceptions.end());
    }
    spot_check(config, report);
    report.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace addrep
