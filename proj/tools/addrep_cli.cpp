// addrep: command-line front end.
//
// Exit codes: 0 ok, 1 usage, 2 bad data or validation, 3 a check or
// verification failed, 4 resource limit.

#include <addrep/addrep.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace addrep;
using json = nlohmann::ordered_json;

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_failed = 3;
constexpr int exit_resource = 4;

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::argument:
        case ErrorKind::domain: return exit_usage;
        case ErrorKind::parse:
        case ErrorKind::validation:
        case ErrorKind::checkpoint: return exit_data;
        case ErrorKind::resource: return exit_resource;
    }
    return exit_usage;
}

struct Globals {
    bool json = false;
    unsigned threads = default_threads();
    u64 seed = 1;
    std::string table_path;
    bool allow_unverified = false;
};

// Integer flags go through parse_count so "8e9" and "10_000_000" work.
CLI::Option* count_option(CLI::App* app, const std::string& name, u64& target, const std::string& help) {
    return app
        ->add_option_function<std::string>(
            name, [&target](const std::string& s) { target = parse_count(s); }, help)
        ->type_name("INT")
        ->default_str(std::to_string(target));
}

CLI::Option* real_option(CLI::App* app, const std::string& name, real& target, const std::string& help) {
    return app
        ->add_option_function<std::string>(
            name, [&target](const std::string& s) { target = parse_real(s); }, help)
        ->type_name("REAL");
}

double d(real x) { return static_cast<double>(x); }

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string join(const std::vector<u64>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
    return out;
}

void row(const char* label, const std::string& value) { std::printf("%-18s %s\n", label, value.c_str()); }

std::string fmt(real x, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
    return buf;
}

ThetaTable load_table_file(const Globals& g) {
    if (g.table_path.empty())
        fail(ErrorKind::validation, "no theta table: pass --table or set ADDREP_THETA_TABLE");
    std::ifstream in(g.table_path);
    if (!in) fail(ErrorKind::validation, "cannot open " + g.table_path);
    return load_table(in, g.table_path);
}

// Proof-mode checks: placeholder constants are refused unless asked for.
ThetaTable proof_table(const Globals& g) {
    ThetaTable t = load_table_file(g);
    if (t.status == TableStatus::placeholder) {
        if (!g.allow_unverified)
            fail(ErrorKind::validation, g.table_path +
                                            " is a placeholder table; its constants prove nothing "
                                            "(pass --allow-unverified to evaluate anyway)");
        std::cerr << "warning: " << g.table_path << " holds placeholder constants; results are not a proof\n";
    }
    return t;
}

json table_json(const ThetaTable& t) { return json{{"path", t.provenance}, {"status", to_string(t.status)}}; }

json breakdown_json(const BoundBreakdown& b) {
    return json{{"artin", d(b.artin)},         {"log_term", d(b.log_term)},   {"log3_term", d(b.log3_term)},
                {"bt_term", d(b.bt_term)},     {"tail_term", d(b.tail_term)}, {"total", d(b.total)}};
}

void print_breakdown(const BoundBreakdown& b) {
    row("artin", fmt(b.artin));
    row("- 0.95/log n", fmt(b.log_term));
    row("- 0.375/log^3 n", fmt(b.log3_term));
    row("- tail constant", fmt(b.bt_term));
    row("- power terms", fmt(b.tail_term));
    row("total", fmt(b.total));
}

// -------------------------------------------------------
// verify
// -------------------------------------------------------

struct VerifyArgs {
    u64 from = 1;
    u64 to = 100'000'000;
    std::string parity = "odd";
    bool corollary = false;
    bool full = false;
    bool timing = false;
    VerifyConfig config;
};

int run_verify(const Globals& g, VerifyArgs& args, const CLI::App& sub) {
    VerifyConfig c = args.corollary ? VerifyConfig::corollary() : VerifyConfig{};
    // carry tuning flags over the corollary defaults
    c.interval_width = args.config.interval_width;
    c.primes_per_interval = args.config.primes_per_interval;
    c.escalation_primes = args.config.escalation_primes;
    c.squarefree_limit = args.config.squarefree_limit;
    c.q_max = args.config.q_max;
    c.exhaustive_limit = args.config.exhaustive_limit;
    c.spot_checks = args.config.spot_checks;
    c.checkpoint_path = args.config.checkpoint_path;
    if (!args.corollary || sub.count("--parity")) c.parity = parse_parity(args.parity);
    c.threads = g.threads;
    c.seed = g.seed;
    u64 to = args.full ? 8'000'000'000 : args.to;
    if (args.full && sub.count("--to")) fail(ErrorKind::argument, "--full and --to are exclusive");
    const u64 from = args.corollary && !sub.count("--from") ? 5 : args.from;
    c.set_range(from, to);
    if (args.corollary) c.n_min = std::max<u64>(c.n_min, 5);

    const VerifyReport r = run_verification(c);
    if (g.json) {
        emit(to_json(r, args.timing));
    } else {
        row("n range", "[" + std::to_string(c.n_min) + ", " + std::to_string(c.n_max) + "], " + to_string(c.parity));
        row("mode", args.corollary ? "corollary (etas 1, 2, 11 excluded, one hit)" : "gcd of hit etas <= 2");
        row("intervals", std::to_string(c.a_min) + ".." + std::to_string(c.a_max) + " of width " +
                             std::to_string(c.interval_width));
        row("checked", std::to_string(r.checked));
        row("escalated", std::to_string(r.exhausted));
        row("failures", std::to_string(r.failures.size()));
        for (const Failure& f : r.failures)
            row("  n", std::to_string(f.n) + " gcd " + std::to_string(f.gcd) + " q {" + join(f.failing_q) + "}");
        for (const Failure& f : r.known_exceptions)
            row("known exception", std::to_string(f.n) + " (q " + join(f.failing_q) + ")");
        row("spot checks", std::to_string(r.spot_samples) + " samples, seed " + std::to_string(c.seed) + ", " +
                               std::to_string(r.spot_mismatches.size()) + " mismatches");
        row("elapsed", std::to_string(r.elapsed_ms) + " ms");
    }
    return r.failures.empty() && r.spot_mismatches.empty() ? 0 : exit_failed;
}

// -------------------------------------------------------
// exceptions, count
// -------------------------------------------------------

struct ExceptionArgs {
    std::string q = "3";
    u64 limit = 1'000'000;
    u64 budget = 1'000'000'000;
    bool timing = false;
};

int run_exceptions(const Globals& g, const ExceptionArgs& args) {
    const Modulus q = Modulus::parse(args.q);
    ExceptionOptions opt;
    opt.budget = args.budget;
    opt.threads = g.threads;
    const ExceptionReport r = exception_set(q, args.limit, opt);
    if (g.json) {
        json j{{"modulus", r.modulus},
               {"limit", r.limit},
               {"exceptions", r.exceptions},
               {"max", r.exceptions.empty() ? json(nullptr) : json(r.exceptions.back())}};
        if (args.timing) j["elapsed_ms"] = r.elapsed_ms;
        emit(j);
    } else {
        row("modulus", r.modulus.size() > 60 ? r.modulus.substr(0, 28) + "..." + r.modulus.substr(r.modulus.size() - 28)
                                             : r.modulus);
        row("limit", std::to_string(r.limit));
        row("exceptions", "{" + join(r.exceptions) + "}");
        row("max", r.exceptions.empty() ? "none" : std::to_string(r.exceptions.back()));
    }
    return 0;
}

struct CountArgs {
    u64 n = 0;
    std::string q = "1";
    std::string kind = "one";
};

int run_count(const Globals& g, const CountArgs& args) {
    const Modulus q = Modulus::parse(args.q);
    json j{{"n", args.n}, {"q", q.text()}, {"kind", args.kind}};
    if (args.kind == "witness") {
        const auto w = find_witness(args.n, q);
        j["witness"] = w ? json{{"p", w->p}, {"eta", w->eta}} : json(nullptr);
    } else {
        const RepresentationTables tables(args.n);
        RepCount r;
        if (args.kind == "one") {
            r = q.is_one() ? tables.rep_count(args.n) : tables.rep_count_mod(args.n, q);
        } else if (args.kind == "two-prime") {
            r = tables.two_prime_count(args.n, q);
        } else if (args.kind == "theta") {
            if (!q.is_one()) fail(ErrorKind::argument, "--kind theta computes R(n) and takes no --q");
            r = tables.rep_count(args.n);
            j["via_theta"] = d(tables.rep_count_via_theta(args.n));
        } else {
            fail(ErrorKind::argument, "--kind must be one, two-prime, theta or witness");
        }
        j["count"] = r.count;
        j["weighted"] = d(r.weighted);
    }
    if (g.json) {
        emit(j);
    } else {
        row("n", std::to_string(args.n));
        row("q", q.text());
        if (j.contains("witness")) {
            row("witness", j["witness"].is_null() ? "none"
                                                  : std::to_string(j["witness"]["p"].get<u64>()) + " + " +
                                                        std::to_string(j["witness"]["eta"].get<u64>()));
        } else {
            row("count", std::to_string(j["count"].get<u64>()));
            row("weighted", fmt(j["weighted"].get<double>(), 15));
            if (j.contains("via_theta")) row("via theta", fmt(j["via_theta"].get<double>(), 15));
        }
    }
    return 0;
}

// -------------------------------------------------------
// bound, check, threshold
// -------------------------------------------------------

struct BoundArgs {
    u64 n = 8'000'000'000;
    real A = 0.33L;
    std::string tail = "lemma";
    bool advisory = false;
};

int run_bound(const Globals& g, const BoundArgs& args) {
    const BoundBreakdown b = lower_bound({args.n, args.A, args.advisory, parse_tail_signs(args.tail)});
    if (g.json) {
        emit(json{{"n", args.n}, {"A", d(args.A)}, {"tail", args.tail}, {"advisory", args.advisory},
                  {"breakdown", breakdown_json(b)}});
    } else {
        row("n", std::to_string(args.n));
        row("A", fmt(args.A));
        row("tail signs", args.tail);
        print_breakdown(b);
    }
    return 0;
}

struct CheckArgs {
    std::string mode = "sufficiency";
    u64 n = 8'000'000'000;
    real A = 0.33L;
    std::string q = "all";
    std::string tail = "lemma";
};

json check_json(const CheckResult& r) {
    return json{{"holds", r.holds}, {"margin", d(r.margin)}, {"lhs", d(r.lhs)}, {"rhs", d(r.rhs)}};
}

int run_check(const Globals& g, const CheckArgs& args) {
    const TailSigns tail = parse_tail_signs(args.tail);
    json j{{"mode", args.mode}, {"n", args.n}, {"A", d(args.A)}, {"tail", args.tail}};
    json results = json::array();
    bool holds = true;
    real min_margin = 0;
    bool first = true;
    auto add = [&](json item, const CheckResult& r) {
        item.update(check_json(r));
        results.push_back(item);
        holds = holds && r.holds;
        if (first || r.margin < min_margin) min_margin = r.margin;
        first = false;
    };

    if (args.mode == "sufficiency") {
        const ThetaTable t = proof_table(g);
        j["table"] = table_json(t);
        std::vector<u64> qs;
        if (args.q == "all") {
            for (const auto& [q, e] : t.entries)
                if (q > 3 && q <= 100'000 && is_prime_u64(q)) qs.push_back(q);
            if (qs.empty()) fail(ErrorKind::validation, "table holds no prime 3 < q <= 1e5");
        } else {
            qs.push_back(parse_count(args.q));
        }
        for (u64 q : qs) add(json{{"q", q}}, sufficiency_check(t, q, args.n, args.A, tail));
    } else if (args.mode == "q3") {
        const ThetaTable t = proof_table(g);
        j["table"] = table_json(t);
        add(json::object(), q3_check(t, args.n, args.A, tail));
    } else if (args.mode == "two-prime") {
        add(json::object(), two_prime_check(args.n, args.A, tail));
    } else {
        fail(ErrorKind::argument, "--mode must be sufficiency, q3 or two-prime");
    }
    j["holds"] = holds;
    j["min_margin"] = d(min_margin);
    j["results"] = results;

    if (g.json) {
        emit(j);
    } else {
        row("mode", args.mode);
        row("n", std::to_string(args.n));
        row("A", fmt(args.A));
        if (j.contains("table")) row("table", g.table_path + " (" + j["table"]["status"].get<std::string>() + ")");
        if (results.size() == 1) {
            row("lower bound", fmt(results[0]["lhs"].get<double>()));
            row("right side", fmt(results[0]["rhs"].get<double>()));
        } else {
            std::size_t failed = 0;
            for (const auto& r : results) failed += r["holds"].get<bool>() ? 0 : 1;
            row("moduli", std::to_string(results.size()) + " checked, " + std::to_string(failed) + " failed");
        }
        row("min margin", fmt(min_margin));
        row("holds", holds ? "true" : "false");
    }
    return holds ? 0 : exit_failed;
}

struct ThresholdArgs {
    real A = 0.33L;
    std::string rhs = "q3";
    u64 q = 5;
    u64 n_min = 1'000'000;
    u64 n_max = 1'000'000'000'000;
    std::string tail = "lemma";
};

int run_threshold(const Globals& g, const ThresholdArgs& args) {
    std::function<real(u64)> rhs;
    json j{{"A", d(args.A)}, {"rhs", args.rhs}, {"n_min", args.n_min}, {"n_max", args.n_max}, {"tail", args.tail}};
    std::optional<ThetaTable> table;
    if (args.rhs == "zero") {
        rhs = [](u64) { return 0.0L; };
    } else if (args.rhs == "q3") {
        rhs = [](u64 n) { return Constants::q3_main + Constants::q3_err / std::log(static_cast<real>(n)); };
    } else if (args.rhs == "two-prime") {
        rhs = [](u64 n) { return 3 * std::log(static_cast<real>(n)) / static_cast<real>(n); };
    } else if (args.rhs == "sufficiency") {
        table = load_table_file(g);
        const real c = table->at(args.q).c_theta;
        const real phi = static_cast<real>(euler_phi(args.q));
        rhs = [c, phi](u64 n) { return 1 / phi + c / std::log(static_cast<real>(n)); };
        j["q"] = args.q;
        j["table"] = table_json(*table);
    } else {
        fail(ErrorKind::argument, "--rhs must be zero, q3, two-prime or sufficiency");
    }
    const auto n = threshold_find(args.A, rhs, args.n_min, args.n_max, parse_tail_signs(args.tail));
    j["threshold"] = n ? json(*n) : json(nullptr);
    if (g.json) {
        emit(j);
    } else {
        row("A", fmt(args.A));
        row("right side", args.rhs);
        row("search", "[" + std::to_string(args.n_min) + ", " + std::to_string(args.n_max) + "]");
        row("threshold", n ? std::to_string(*n) : "not found in range");
    }
    return 0;
}

// -------------------------------------------------------
// artin, sums, table-validate
// -------------------------------------------------------

struct ArtinArgs {
    u64 limit = 10'000'000;
    u64 n = 0;
    u64 a_limit = 1'000'000;
};

int run_artin(const Globals& g, const ArtinArgs& args) {
    const real c = artin_constant(args.limit);
    json j{{"prime_limit", args.limit}, {"value", d(c)}, {"above_0_37395", c > Constants::artin_lower}};
    std::optional<real> sum;
    if (args.n > 0) {
        sum = coprime_mu_phi_sum(args.n, args.a_limit);
        j["coprime_sum"] = json{{"n", args.n}, {"a_limit", args.a_limit}, {"value", d(*sum)}};
    }
    if (g.json) {
        emit(j);
    } else {
        row("prime limit", std::to_string(args.limit));
        row("product", fmt(c, 15));
        row("> 0.37395", c > Constants::artin_lower ? "true" : "false");
        if (sum) row("coprime mu sum", fmt(*sum, 15));
    }
    return 0;
}

struct SumsArgs {
    u64 a_from = 317;
    u64 empirical_q = 0;
    u64 x_max = 1'000'000;
};

int run_sums(const Globals& g, const SumsArgs& args) {
    const real tail = squarefree_phi_tail(args.a_from);
    json j{{"squarefree_tail", json{{"a_from", args.a_from}, {"value", d(tail)}, {"below_0_0096", tail < Constants::tail_cap}}}};
    std::optional<ThetaTable> table;
    if (!g.table_path.empty()) {
        table = load_table_file(g);
        const real squares = sum_c_theta_squares(*table);
        CompensatedSum q3;
        for (u64 q : theta_limits::q3_moduli) q3 += table->at(q).c_theta;
        j["table"] = table_json(*table);
        j["square_sum"] = json{{"value", d(squares)}, {"below_0_95", squares < c_theta_sum_cap}};
        j["q3_sum"] = json{{"value", d(q3.value())}, {"below_0_00592", q3.value() < Constants::q3_err}};
    }
    if (args.empirical_q > 0) {
        const EmpiricalC e = empirical_c_theta(args.empirical_q, args.x_max);
        j["empirical"] = json{{"q", args.empirical_q}, {"x_max", args.x_max}, {"sampled_from", e.sampled_from},
                              {"value", d(e.value)}, {"degenerate", e.degenerate}, {"advisory", true}};
    }
    if (g.json) {
        emit(j);
    } else {
        row("tail from a", std::to_string(args.a_from));
        row("tail bound", fmt(tail) + (tail < Constants::tail_cap ? " (< 0.0096)" : " (NOT < 0.0096)"));
        if (table) {
            row("table", g.table_path + " (" + to_string(table->status) + ")");
            row("square sum", fmt(j["square_sum"]["value"].get<double>()) +
                                  (j["square_sum"]["below_0_95"].get<bool>() ? " (< 0.95)" : " (NOT < 0.95)"));
            row("q=3 moduli sum", fmt(j["q3_sum"]["value"].get<double>()));
        }
        if (j.contains("empirical")) {
            const auto& e = j["empirical"];
            row("empirical c", e["degenerate"].get<bool>() ? std::string("degenerate (x_max < q)")
                                                           : fmt(e["value"].get<double>()) + " (advisory)");
        }
    }
    return 0;
}

struct TableArgs {
    bool canonical = false;
};

int run_table_validate(const Globals& g, const TableArgs& args) {
    const ThetaTable t = load_table_file(g);
    const real squares = sum_c_theta_squares(t);
    const bool gate = squares < c_theta_sum_cap;
    if (args.canonical) {
        std::cout << serialize(t);
        return gate ? 0 : exit_data;
    }
    if (g.json) {
        emit(json{{"path", g.table_path}, {"status", to_string(t.status)}, {"entries", t.entries.size()},
                  {"square_sum", d(squares)}, {"gate", gate}});
    } else {
        row("table", g.table_path);
        row("status", to_string(t.status));
        row("entries", std::to_string(t.entries.size()));
        row("square sum", fmt(squares));
        row("gate < 0.95", gate ? "pass" : "FAIL");
    }
    return gate ? 0 : exit_data;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"addrep: representations n = p + eta with eta square-free and coprime to q"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "read options from a TOML/INI file (subcommand options under [name])");

    Globals g;
    app.add_flag("--json", g.json, "emit one JSON document instead of a table");
    app.add_option("--threads", g.threads, "worker threads (default: available cores)")->check(CLI::PositiveNumber);
    count_option(&app, "--seed", g.seed, "seed for sampled spot checks");
    app.add_option("--table", g.table_path, "theta constant table (q<TAB>c_theta<TAB>x_theta)")
        ->envname("ADDREP_THETA_TABLE");
    app.add_flag("--allow-unverified", g.allow_unverified, "let proof checks run on a placeholder table");

    // verify
    VerifyArgs va;
    auto* verify = app.add_subcommand(
        "verify",
        "Interval verification: every n in the range has n = p + eta with eta square-free and, for each odd "
        "prime q <= q-max, some eta coprime to q. Probes use the largest primes of the preceding interval "
        "and stop once the gcd of the hit etas is at most 2. Even n use a two-prime decomposition.");
    count_option(verify, "--from", va.from, "first n (inclusive)");
    count_option(verify, "--to", va.to, "last n (inclusive)");
    verify->add_option("--parity", va.parity, "odd, even or both")->default_str("odd");
    verify->add_flag("--corollary", va.corollary,
                     "even n > 4 need one eta outside {1, 2, 11} (the n = p1 + p2 + eta statement)");
    verify->add_flag("--full", va.full, "run to 8e9 (minutes per core for odd n)");
    count_option(verify, "--width", va.config.interval_width, "interval width W");
    count_option(verify, "--probes", va.config.primes_per_interval, "probe primes per interval");
    count_option(verify, "--escalation", va.config.escalation_primes, "extra primes before declaring failure");
    count_option(verify, "--sf-limit", va.config.squarefree_limit, "square-free table size (W is added)");
    count_option(verify, "--q-max", va.config.q_max, "largest modulus certified");
    count_option(verify, "--exhaustive-limit", va.config.exhaustive_limit, "n up to this try every prime");
    count_option(verify, "--spot-checks", va.config.spot_checks, "sampled re-checks with find_witness");
    verify->add_option("--checkpoint", va.config.checkpoint_path, "JSON-lines checkpoint to resume from/append to");
    verify->add_flag("--timing", va.timing, "include elapsed time in JSON");

    // exceptions
    ExceptionArgs ea;
    auto* exceptions = app.add_subcommand(
        "exceptions", "The set S_q of n <= limit with no n = p + eta, eta square-free and coprime to q. "
                      "q may be any decimal integer or primes:i..j for p_i * ... * p_j (p_1 = 2).");
    exceptions->add_option("--q", ea.q, "modulus")->default_str("3");
    count_option(exceptions, "--limit", ea.limit, "largest n");
    count_option(exceptions, "--budget", ea.budget, "refuse limits above this");
    exceptions->add_flag("--timing", ea.timing, "include elapsed time in JSON");

    // count
    CountArgs ca;
    auto* count = app.add_subcommand(
        "count", "Representation counts: R(n) = sum of log p over n = p + eta (one), the same through the "
                 "Moebius-weighted theta sums over squares (theta), n = p1 + p2 + eta (two-prime), or the "
                 "largest-p witness (witness); eta square-free and coprime to q.");
    count_option(count, "--n", ca.n, "the integer n")->required();
    count->add_option("--q", ca.q, "modulus (1: no coprimality)")->default_str("1");
    count->add_option("--kind", ca.kind, "one, theta, two-prime or witness")->default_str("one");

    // bound
    BoundArgs ba;
    auto* bound = app.add_subcommand(
        "bound", "Explicit lower bound for R(n)/n: 0.37395 - 0.95/log n - 0.375/log^3 n - "
                 "0.0096 (1+2A)/(1-2A) - log n (n^-2A + n^-A -+ n^(A-1) +- n^-1/2), valid for n >= 4.81e9.");
    count_option(bound, "--n", ba.n, "n");
    real_option(bound, "--A", ba.A, "split exponent in (0, 1/2)")->default_str("0.33");
    bound->add_option("--tail", ba.tail, "lemma, finalcheck or strict sign pattern")->default_str("lemma");
    bound->add_flag("--advisory", ba.advisory, "allow n below 4.81e9");

    // check
    CheckArgs ka;
    auto* check = app.add_subcommand(
        "check", "Sufficiency inequalities: R(n)/n bound against 1/phi(q) + c_theta(q)/log n for primes q "
                 "(sufficiency), against 19/120 + 0.00592/log n for q = 3 (q3), and the n = p1 + p2 + eta "
                 "bound minus 3 log n / n (two-prime). Table checks refuse placeholder constants.");
    check->add_option("--mode", ka.mode, "sufficiency, q3 or two-prime")->default_str("sufficiency");
    count_option(check, "--n", ka.n, "n");
    real_option(check, "--A", ka.A, "split exponent in (0, 1/2)")->default_str("0.33");
    check->add_option("--q", ka.q, "prime modulus for sufficiency, or all")->default_str("all");
    check->add_option("--tail", ka.tail, "lemma, finalcheck or strict sign pattern")->default_str("lemma");

    // threshold
    ThresholdArgs ta;
    auto* threshold = app.add_subcommand(
        "threshold", "Least n where the R(n)/n lower bound beats a right-hand side, by bisection "
                     "(zero, q3, two-prime, or sufficiency for one q). Advisory outside n >= 4.81e9.");
    real_option(threshold, "--A", ta.A, "split exponent in (0, 1/2)")->default_str("0.33");
    threshold->add_option("--rhs", ta.rhs, "zero, q3, two-prime or sufficiency")->default_str("q3");
    count_option(threshold, "--q", ta.q, "modulus for --rhs sufficiency");
    count_option(threshold, "--n-min", ta.n_min, "search from");
    count_option(threshold, "--n-max", ta.n_max, "search to");
    threshold->add_option("--tail", ta.tail, "lemma, finalcheck or strict sign pattern")->default_str("lemma");

    // artin
    ArtinArgs aa;
    auto* artin = app.add_subcommand(
        "artin", "Truncated product over p <= limit of (1 - 1/(p(p-1))), and optionally the partial sum "
                 "of mu(a)/phi(a^2) over a <= a-limit coprime to n.");
    count_option(artin, "--limit", aa.limit, "largest prime in the product");
    count_option(artin, "--n", aa.n, "also sum over a coprime to this n");
    count_option(artin, "--a-limit", aa.a_limit, "largest a in the sum");

    // sums
    SumsArgs sa;
    auto* sums = app.add_subcommand(
        "sums", "Aggregates: upper bound for the tail of mu^2(a)/phi(a^2) from a-from on (via 1.95), "
                "the sum of c_theta(a^2) over 2 <= a <= 316 and over the eight q = 3 moduli when a table "
                "is given, and an empirical c_theta stand-in for one q.");
    count_option(sums, "--a-from", sa.a_from, "tail start");
    count_option(sums, "--empirical-q", sa.empirical_q, "sample theta(x; q, a) for this q");
    count_option(sums, "--x-max", sa.x_max, "largest x sampled");

    // table-validate
    TableArgs va2;
    auto* table_validate = app.add_subcommand(
        "table-validate", "Load and validate a theta constant table: field syntax, ranges, caps on x_theta, "
                          "required moduli, and the square-sum gate (< 0.95).");
    table_validate->add_flag("--canonical", va2.canonical, "print the canonical serialization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    } catch (const Error& e) {
        std::cerr << "addrep: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*verify) return run_verify(g, va, *verify);
        if (*exceptions) return run_exceptions(g, ea);
        if (*count) return run_count(g, ca);
        if (*bound) return run_bound(g, ba);
        if (*check) return run_check(g, ka);
        if (*threshold) return run_threshold(g, ta);
        if (*artin) return run_artin(g, aa);
        if (*sums) return run_sums(g, sa);
        if (*table_validate) return run_table_validate(g, va2);
    } catch (const Error& e) {
        std::cerr << "addrep: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::bad_alloc&) {
        std::cerr << "addrep: resource error: out of memory\n";
        return exit_resource;
    }
    return exit_usage;
}
