// lucaskit command-line front end: compute, verify, trace, discover, check,
// pell, and bench over the exact Fibonacci-Lucas engine.
//
// Exit codes: 0 success, 1 mathematical failure (an identity violated, a
// solution refuted, a trace that does not validate), 2 usage error.
// Machine output: --json emits exactly one top-level record per invocation,
//   {"schema_version":"1","command":...,"inputs":...,"result":...,"elapsed_ns":...}
// Big integers are decimal strings in JSON; human output elides values
// longer than 80 digits.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lucaskit/serialize.hpp"

namespace {

using namespace lucaskit;
using Clock = std::chrono::steady_clock;

constexpr std::size_t elide_threshold = 80;

std::string elide(const Integer& v) {
    std::string s = to_decimal(v);
    const std::size_t sign = s[0] == '-' ? 1 : 0;
    const std::size_t digits = s.size() - sign;
    if (digits <= elide_threshold) return s;
    return s.substr(0, sign + 20) + "..." + s.substr(s.size() - 20) + " (" +
           std::to_string(digits) + " digits)";
}

std::int64_t elapsed_ns(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

void emit_record(const std::string& command, Json inputs, Json result, std::int64_t ns) {
    Json rec{{"schema_version", "1"},
             {"command", command},
             {"inputs", std::move(inputs)},
             {"result", std::move(result)},
             {"elapsed_ns", ns}};
    std::cout << rec.dump() << "\n";
}

Index iter_cap_from_env() {
    const char* s = std::getenv("LUCASKIT_MAX_ITER_N");
    if (!s) return default_iter_cap;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != std::string(s).size() || v < 0)
            throw std::invalid_argument(s);
        return static_cast<Index>(v);
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_argument,
                    std::string("LUCASKIT_MAX_ITER_N must be a nonnegative integer, got '") + s +
                        "'");
    }
}

// --- compute ---------------------------------------------------------------

int cmd_compute(const std::string& seq, Index n, const std::string& algo, bool json) {
    const Index cap = iter_cap_from_env();
    const auto start = Clock::now();
    Json result;
    std::string human;

    if (seq == "pair") {
        SequencePair p = algo == "iter"
                             ? SequencePair{fib_iter(n, cap), lucas_iter(n, cap), PairKind::fib_lucas}
                             : fib_lucas_pair(n);
        human = "F=" + elide(p.first) + " L=" + elide(p.second);
        result = Json{{"fib", to_decimal(p.first)}, {"lucas", to_decimal(p.second)}};
    } else {
        Integer value;
        if (seq == "fib") {
            if (algo == "iter")
                value = fib_iter(n, cap);
            else if (algo == "fast")
                value = fib(n);
            else
                throw Error(ErrorCode::invalid_argument,
                            "--algo identity applies to lucas and pair");
        } else { // lucas
            if (algo == "iter")
                value = lucas_iter(n, cap);
            else if (algo == "fast")
                value = lucas(n);
            else
                value = lucas_from_fib(n, cap);
        }
        human = elide(value);
        result = Json{{"value", to_decimal(value)}};
    }

    const auto ns = elapsed_ns(start);
    if (json)
        emit_record("compute", Json{{"sequence", seq}, {"n", n}, {"algo", algo}}, result, ns);
    else
        std::cout << human << "\n";
    return 0;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const std::string& name, Index n_lo, Index n_hi, bool json) {
    const auto& rec = identity_record(name);
    const auto start = Clock::now();
    VerificationReport report = verify_range(rec.id, n_lo, n_hi);
    const auto ns = elapsed_ns(start);

    if (json) {
        emit_record("verify", Json{{"identity", name}, {"n_lo", n_lo}, {"n_hi", n_hi}},
                    Json(report), ns);
    } else {
        std::cout << report.checked << " checked, " << report.failures.size() << " failed\n";
        std::size_t shown = 0;
        for (const auto& f : report.failures) {
            if (shown++ == 5) {
                std::cout << "  ...\n";
                break;
            }
            std::cout << "  n=" << f.n << ": lhs=" << elide(f.lhs) << " rhs=" << elide(f.rhs)
                      << "\n";
        }
    }
    return report.ok() ? 0 : 1;
}

// --- trace -----------------------------------------------------------------

int cmd_trace(const std::string& name, Index n, bool stream, bool json) {
    const auto& rec = identity_record(name);
    const auto start = Clock::now();
    ProofTrace trace = telescoping_trace(rec.id, n);
    std::vector<std::string> problems = validate_trace(trace);
    const auto ns = elapsed_ns(start);

    if (stream)
        for (const auto& s : trace.steps) std::cout << Json(s).dump() << "\n";

    if (json) {
        Json result = trace_to_json(trace, /*include_steps=*/!stream);
        result["valid"] = problems.empty();
        if (!problems.empty()) result["problems"] = problems;
        emit_record("trace", Json{{"identity", name}, {"n", n}, {"stream", stream}}, result, ns);
    } else {
        if (!stream)
            for (const auto& s : trace.steps)
                std::cout << "k=" << s.k << "  term=" << elide(s.raw_term) << "  T_k="
                          << elide(s.t_k) << "  partial=" << elide(s.partial_sum)
                          << "  rewritten: " << s.rewritten_form << "\n";
        std::cout << "closing = " << elide(trace.closing_value) << "\n";
        if (problems.empty()) {
            std::cout << "trace valid\n";
        } else {
            for (const auto& p : problems) std::cout << "trace INVALID: " << p << "\n";
        }
    }
    return problems.empty() ? 0 : 1;
}

// --- discover ----------------------------------------------------------------

int cmd_discover(const std::string& kind_name, Index q, int probes, Index verify_to, bool json) {
    FamilyKind kind;
    if (kind_name == "geometric")
        kind = FamilyKind::geometric;
    else if (kind_name == "alternating")
        kind = FamilyKind::alternating;
    else
        throw Error(ErrorCode::invalid_argument,
                    "kind must be 'geometric' or 'alternating', got '" + kind_name + "'");

    const auto start = Clock::now();
    FamilySolution sol =
        solve_coefficients(FamilyTemplate{kind, Integer(static_cast<long>(q))}, probes, verify_to);
    const auto ns = elapsed_ns(start);

    if (json) {
        emit_record("discover",
                    Json{{"kind", kind_name}, {"q", q}, {"probes", probes},
                         {"verify_to", verify_to}},
                    Json(sol), ns);
    } else {
        switch (sol.status) {
        case FamilySolution::Status::verified:
            std::cout << "a=" << rational_str(sol.coefficients[0])
                      << " b=" << rational_str(sol.coefficients[1])
                      << " c=" << rational_str(sol.coefficients[2]) << " VERIFIED("
                      << sol.verified_to << ")\n";
            break;
        case FamilySolution::Status::refuted:
            std::cout << "a=" << rational_str(sol.coefficients[0])
                      << " b=" << rational_str(sol.coefficients[1])
                      << " c=" << rational_str(sol.coefficients[2]) << " REFUTED at n="
                      << sol.counterexample->n << " (lhs=" << rational_str(sol.counterexample->lhs)
                      << ", rhs=" << rational_str(sol.counterexample->rhs) << ")\n";
            break;
        case FamilySolution::Status::no_solution:
            std::cout << "NO_SOLUTION\n";
            break;
        }
    }
    return sol.status == FamilySolution::Status::verified ? 0 : 1;
}

// --- check -------------------------------------------------------------------

dsl::VarRanges parse_ranges(const std::vector<std::string>& specs) {
    dsl::VarRanges ranges;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        const auto dots = spec.find("..");
        if (eq == std::string::npos || dots == std::string::npos || eq != 1 || dots < eq)
            throw Error(ErrorCode::invalid_argument,
                        "range must look like n=0..100, got '" + spec + "'");
        const char name = spec[0];
        try {
            const Index lo = std::stoll(spec.substr(eq + 1, dots - eq - 1));
            const Index hi = std::stoll(spec.substr(dots + 2));
            ranges[name] = {lo, hi};
        } catch (const std::exception&) {
            throw Error(ErrorCode::invalid_argument, "bad range bounds in '" + spec + "'");
        }
    }
    return ranges;
}

int cmd_check(const std::string& text, const std::vector<std::string>& range_specs, bool json) {
    const dsl::VarRanges ranges = parse_ranges(range_specs);
    const auto start = Clock::now();
    const dsl::IdentityStatement stmt = dsl::parse_identity(text);
    const dsl::DslCheckReport report = dsl::check(stmt, ranges);
    const auto ns = elapsed_ns(start);

    if (json) {
        Json inputs{{"statement", text}};
        Json jr = Json::object();
        for (const auto& [name, r] : ranges)
            jr[std::string(1, name)] = Json::array({r.first, r.second});
        inputs["ranges"] = std::move(jr);
        emit_record("check", std::move(inputs), dsl_json::report_to_json(report), ns);
    } else {
        std::cout << report.checked << " checked, " << report.failures.size() << " failed\n";
        std::size_t shown = 0;
        for (const auto& f : report.failures) {
            if (shown++ == 5) {
                std::cout << "  ...\n";
                break;
            }
            std::cout << "  at";
            for (const auto& [name, value] : f.point)
                std::cout << " " << name << "=" << to_decimal(value);
            std::cout << ": lhs=" << elide(f.lhs) << " rhs=" << elide(f.rhs) << "\n";
        }
    }
    return report.ok() ? 0 : 1;
}

// --- pell --------------------------------------------------------------------

int cmd_pell(Index y_bound, bool json) {
    const auto start = Clock::now();
    const std::vector<PellSolution> sols = pell_enumerate(Integer(static_cast<long>(y_bound)));

    // Match every solution against the Lucas-Fibonacci ladder.
    struct LadderEntry {
        Integer x, y;
        Index n;
    };
    std::vector<LadderEntry> ladder;
    {
        Integer f = 0, f1 = 1;
        for (Index n = 0; f <= y_bound; ++n) {
            ladder.push_back({2 * f1 - f, f, n});
            f += f1;
            std::swap(f, f1);
        }
    }
    bool all_matched = true;
    std::vector<Index> matched(sols.size(), -1);
    for (std::size_t i = 0; i < sols.size(); ++i) {
        for (const auto& e : ladder)
            if (e.x == sols[i].x && e.y == sols[i].y && alt_sign(e.n) == sols[i].sign) {
                matched[i] = e.n;
                break;
            }
        if (matched[i] < 0) all_matched = false;
    }
    const auto ns = elapsed_ns(start);

    if (json) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < sols.size(); ++i) {
            Json row(sols[i]);
            if (matched[i] >= 0)
                row["n"] = matched[i];
            else
                row["n"] = nullptr;
            rows.push_back(std::move(row));
        }
        emit_record("pell", Json{{"y_bound", y_bound}},
                    Json{{"solutions", std::move(rows)}, {"all_matched", all_matched}}, ns);
    } else {
        for (std::size_t i = 0; i < sols.size(); ++i) {
            std::cout << "x=" << elide(sols[i].x) << " y=" << elide(sols[i].y) << " sign="
                      << (sols[i].sign > 0 ? '+' : '-');
            if (matched[i] >= 0)
                std::cout << " n=" << matched[i] << "\n";
            else
                std::cout << " n=? (NOT a Lucas-Fibonacci pair)\n";
        }
        std::cout << sols.size() << " solutions"
                  << (all_matched ? ", all Lucas-Fibonacci pairs" : ", UNMATCHED solutions present")
                  << "\n";
    }
    return all_matched ? 0 : 1;
}

// --- bench -------------------------------------------------------------------

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

int cmd_bench(const std::string& n_list, const std::string& algo_list, int repeat, bool json) {
    if (repeat < 1) throw Error(ErrorCode::invalid_argument, "--repeat must be >= 1");
    std::vector<Index> ns_list;
    for (const auto& tok : split_csv(n_list)) {
        try {
            ns_list.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw Error(ErrorCode::invalid_argument, "bad index '" + tok + "' in n list");
        }
    }
    std::vector<std::string> algos = split_csv(algo_list);
    for (const auto& a : algos)
        if (a != "iter" && a != "fast")
            throw Error(ErrorCode::invalid_argument, "unknown algo '" + a + "' (iter, fast)");

    const Index cap = iter_cap_from_env();
    const auto start = Clock::now();
    Json runs = Json::array();
    for (Index n : ns_list) {
        for (const auto& algo : algos) {
            std::vector<std::int64_t> times;
            Integer value;
            for (int r = 0; r < repeat; ++r) {
                const auto t0 = Clock::now();
                value = algo == "iter" ? fib_iter(n, cap) : fib(n);
                times.push_back(elapsed_ns(t0));
            }
            std::sort(times.begin(), times.end());
            const std::int64_t min_ns = times.front();
            const std::int64_t median_ns = times.size() % 2 == 1
                                               ? times[times.size() / 2]
                                               : (times[times.size() / 2 - 1] +
                                                  times[times.size() / 2]) / 2;
            const std::size_t digits = decimal_digits(value);
            if (!json)
                std::cout << "n=" << n << " algo=" << algo << " repeat=" << repeat
                          << " median=" << static_cast<double>(median_ns) / 1e6 << "ms"
                          << " min=" << static_cast<double>(min_ns) / 1e6 << "ms"
                          << " digits=" << digits << "\n";
            runs.push_back(Json{{"n", n},
                                {"algo", algo},
                                {"repeat", repeat},
                                {"median_ns", median_ns},
                                {"min_ns", min_ns},
                                {"digits", digits}});
        }
    }
    const auto ns = elapsed_ns(start);
    if (json) {
        Json in_ns = Json::array();
        for (Index n : ns_list) in_ns.push_back(n);
        emit_record("bench",
                    Json{{"n_list", std::move(in_ns)}, {"algos", algos}, {"repeat", repeat}},
                    Json{{"runs", std::move(runs)}}, ns);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Fibonacci-Lucas numbers, identities, telescoping proof traces,\n"
                 "base-q identity families, and a small identity-checking language"};
    app.require_subcommand(1);
    int rc = 0;

    // compute
    std::string c_seq, c_algo = "fast";
    Index c_n = 0;
    bool c_json = false;
    auto* compute = app.add_subcommand("compute", "compute F(n), L(n), or the (F, L) pair");
    compute->add_option("sequence", c_seq, "fib | lucas | pair")
        ->required()
        ->check(CLI::IsMember({"fib", "lucas", "pair"}));
    compute->add_option("n", c_n, "sequence index (may be negative)")->required();
    compute->add_option("--algo", c_algo, "iter | fast | identity")
        ->check(CLI::IsMember({"iter", "fast", "identity"}));
    compute->add_flag("--json", c_json, "emit a JSON record");
    compute->callback([&] { rc = cmd_compute(c_seq, c_n, c_algo, c_json); });

    // verify
    std::string v_id;
    Index v_lo = 0, v_hi = 0;
    bool v_json = false;
    auto* verify = app.add_subcommand("verify", "evaluate both sides of an identity over a range");
    verify->add_option("identity", v_id, "elementary | sury | thm1 | thm2 | pell")->required();
    verify->add_option("n_lo", v_lo, "range start")->required();
    verify->add_option("n_hi", v_hi, "range end (inclusive)")->required();
    verify->add_flag("--json", v_json, "emit a JSON record");
    verify->callback([&] { rc = cmd_verify(v_id, v_lo, v_hi, v_json); });

    // trace
    std::string t_id;
    Index t_n = 0;
    bool t_stream = false, t_json = false;
    auto* trace = app.add_subcommand("trace", "telescoping proof trace of a summation identity");
    trace->add_option("identity", t_id, "sury | thm1 | thm2")->required();
    trace->add_option("n", t_n, "upper summation index")->required();
    trace->add_flag("--stream", t_stream, "emit each step as a JSON line");
    trace->add_flag("--json", t_json, "emit a JSON record");
    trace->callback([&] { rc = cmd_trace(t_id, t_n, t_stream, t_json); });

    // discover
    std::string d_kind;
    Index d_q = 2, d_verify_to = 200;
    int d_probes = 6;
    bool d_json = false;
    auto* discover =
        app.add_subcommand("discover", "recover family coefficients by exact solving");
    discover->add_option("kind", d_kind, "geometric | alternating")->required();
    discover->add_option("q", d_q, "integer base (>= 1)")->required();
    discover->add_option("--verify-to", d_verify_to, "verify the instantiated identity on [0, N]");
    discover->add_option("--probes", d_probes, "number of probe equations");
    discover->add_flag("--json", d_json, "emit a JSON record");
    discover->callback([&] { rc = cmd_discover(d_kind, d_q, d_probes, d_verify_to, d_json); });

    // check
    std::string k_text;
    std::vector<std::string> k_ranges;
    bool k_json = false;
    auto* check = app.add_subcommand("check", "check an identity written in the expression language");
    check->add_option("identity", k_text, "e.g. \"sum(k=0..n, 2^k * L(k)) = 2^(n+1) * F(n+1)\"")
        ->required();
    check->add_option("--range", k_ranges, "variable range, e.g. n=0..100 (repeatable)")
        ->required();
    check->add_flag("--json", k_json, "emit a JSON record");
    check->callback([&] { rc = cmd_check(k_text, k_ranges, k_json); });

    // pell
    Index p_bound = 0;
    bool p_json = false;
    auto* pell = app.add_subcommand("pell", "enumerate x^2 - 5y^2 = +-4 solutions up to y bound");
    pell->add_option("y_bound", p_bound, "largest y to scan")->required();
    pell->add_flag("--json", p_json, "emit a JSON record");
    pell->callback([&] { rc = cmd_pell(p_bound, p_json); });

    // bench
    std::string b_ns, b_algos = "fast";
    int b_repeat = 3;
    bool b_json = false;
    auto* bench = app.add_subcommand("bench", "time the kernels and report digit-count digests");
    bench->add_option("n", b_ns, "index or comma-separated list, e.g. 1000,1000000")->required();
    bench->add_option("--algos", b_algos, "comma-separated subset of iter,fast");
    bench->add_option("--repeat", b_repeat, "runs per (n, algo)");
    bench->add_flag("--json", b_json, "emit a JSON record");
    bench->callback([&] { rc = cmd_bench(b_ns, b_algos, b_repeat, b_json); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
