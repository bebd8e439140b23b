// Exit-code and JSON-schema contract of the command-line tool:
// 0 = success, 1 = mathematical failure, 2 = usage error.

#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "subprocess.hpp"

using nlohmann::json;
using test_util::run_cmd;
using test_util::shell_quote;

namespace {

const std::string cli = LUCASKIT_CLI_EXE;

test_util::CmdResult run(const std::string& args, bool keep_stderr = false) {
    return run_cmd(cli + " " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null"));
}

// Every machine record carries exactly these five fields.
json parse_record(const std::string& out, const std::string& command) {
    const json j = json::parse(out);
    REQUIRE(j.is_object());
    REQUIRE(j.size() == 5);
    REQUIRE(j.at("schema_version") == "1");
    REQUIRE(j.at("command") == command);
    REQUIRE(j.at("inputs").is_object());
    REQUIRE(j.at("result").is_object());
    REQUIRE(j.at("elapsed_ns").is_number_integer());
    REQUIRE(j.at("elapsed_ns").get<std::int64_t>() >= 0);
    return j.at("result");
}

} // namespace

TEST_CASE("compute: values, algorithms, and argument errors") {
    auto r = run("compute fib 10 --algo iter");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "55\n");

    r = run("compute lucas 0 --algo identity");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2\n");

    r = run("compute pair 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "F=13 L=29\n");

    r = run("compute fib -10");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "-55\n");

    const json pair = parse_record(run("compute pair 7 --json").out, "compute");
    CHECK(pair.at("fib") == "13");
    CHECK(pair.at("lucas") == "29");

    CHECK(run("compute fib 10 --algo identity").exit_code == 2);
    CHECK(run("compute fib 10 --algo nope").exit_code == 2);
    CHECK(run("compute squares 10").exit_code == 2);
    CHECK(run("compute fib").exit_code == 2);
}

TEST_CASE("compute: long values are elided in human output but not in JSON") {
    const auto human = run("compute fib 1000");
    CHECK(human.exit_code == 0);
    CHECK(human.out.find("...") != std::string::npos);
    CHECK(human.out.find("(209 digits)") != std::string::npos);

    const json rec = parse_record(run("compute fib 1000 --json").out, "compute");
    const std::string value = rec.at("value").get<std::string>();
    CHECK(value.size() == 209);
    CHECK(value.find("...") == std::string::npos);
}

TEST_CASE("compute: iterative cap responds to the environment override") {
    const auto capped = run_cmd("LUCASKIT_MAX_ITER_N=10 " + cli + " compute fib 11 --algo iter 2>&1");
    CHECK(capped.exit_code == 2);
    CHECK(capped.out.find("ITER_CAP_EXCEEDED") != std::string::npos);

    const auto ok = run_cmd("LUCASKIT_MAX_ITER_N=11 " + cli + " compute fib 11 --algo iter 2>/dev/null");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "89\n");

    CHECK(run_cmd("LUCASKIT_MAX_ITER_N=abc " + cli + " compute fib 5 --algo iter 2>/dev/null")
              .exit_code == 2);
}

TEST_CASE("verify: clean ranges exit 0, bad arguments exit 2") {
    auto r = run("verify sury 0 1000");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1001 checked, 0 failed\n");

    CHECK(run("verify thm1 0 0").exit_code == 0);
    CHECK(run("verify elementary 0 200").exit_code == 0);
    CHECK(run("verify thm2 0 300").exit_code == 0);

    const json rec = parse_record(run("verify pell 0 500 --json").out, "verify");
    CHECK(rec.at("checked") == 501);
    CHECK(rec.at("failures").is_array());
    CHECK(rec.at("failures").empty());
    CHECK(rec.at("identity") == "pell");

    CHECK(run("verify nope 0 10").exit_code == 2);
    CHECK(run("verify sury 10 0").exit_code == 2);
    CHECK(run("verify sury -5 5").exit_code == 2);
}

TEST_CASE("trace: steps stream as JSON lines and the trace validates") {
    auto r = run("trace sury 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("closing = 2") != std::string::npos);
    CHECK(r.out.find("trace valid") != std::string::npos);

    const json rec = parse_record(run("trace thm1 1 --json").out, "trace");
    CHECK(rec.at("valid") == true);
    CHECK(rec.at("closing_value") == "-1");
    REQUIRE(rec.at("steps").size() == 2);
    CHECK(rec.at("steps")[0].at("raw_term") == "2");
    CHECK(rec.at("steps")[1].at("t_k") == "-1");

    // --stream: one JSON object per step, then the record without steps
    const auto streamed = run("trace thm2 3 --stream --json");
    CHECK(streamed.exit_code == 0);
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < streamed.out.size()) {
        auto nl = streamed.out.find('\n', pos);
        if (nl == std::string::npos) nl = streamed.out.size();
        lines.push_back(streamed.out.substr(pos, nl - pos));
        pos = nl + 1;
    }
    REQUIRE(lines.size() == 5); // 4 steps + 1 record
    for (int k = 0; k < 4; ++k) {
        const json step = json::parse(lines[static_cast<std::size_t>(k)]);
        CHECK(step.at("k") == k);
        CHECK(step.at("raw_term").is_string());
    }
    const json last = json::parse(lines.back());
    CHECK(last.at("command") == "trace");
    CHECK_FALSE(last.at("result").contains("steps"));

    CHECK(run("trace elementary 3").exit_code == 2);
    CHECK(run("trace pell 3").exit_code == 2);
    CHECK(run("trace thm1 -1").exit_code == 2);
}

TEST_CASE("discover: published coefficients and failure codes") {
    auto r = run("discover geometric 3 --verify-to 200");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "a=1 b=0 c=1 VERIFIED(200)\n");

    r = run("discover alternating 2 --verify-to 200");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "a=1 b=0 c=0 VERIFIED(200)\n");

    r = run("discover geometric 1 --verify-to 200");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "a=1 b=0 c=-1 VERIFIED(200)\n");

    const json rec = parse_record(run("discover geometric 2 --json").out, "discover");
    CHECK(rec.at("status") == "VERIFIED");
    CHECK(rec.at("coefficients").at("a") == "1/1");
    CHECK(rec.at("coefficients").at("b") == "0/1");
    CHECK(rec.at("coefficients").at("c") == "0/1");

    CHECK(run("discover geometric 0").exit_code == 2);
    CHECK(run("discover spiral 2").exit_code == 2);
    CHECK(run("discover geometric 2 --probes 3").exit_code == 2);
}

TEST_CASE("check: valid identities pass, falsified ones exit 1, malformed exit 2") {
    const std::string thm1 = shell_quote("sum(k=0..n, (-1)^k * 2^(n-k) * L(k+1)) = (-1)^n * F(n+1)");
    auto r = run("check " + thm1 + " --range n=0..100");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "101 checked, 0 failed\n");

    const std::string thm2 = shell_quote("sum(k=0..n, 3^k * (L(k) + F(k+1))) = 3^(n+1) * F(n+1)");
    CHECK(run("check " + thm2 + " --range n=0..100").exit_code == 0);

    // mathematically false: exit 1 and the first failures are printed
    const auto falsified = run("check " + shell_quote("L(n) = F(n) + F(n+1)") + " --range n=0..5");
    CHECK(falsified.exit_code == 1);
    CHECK(falsified.out.find("6 checked, 5 failed") != std::string::npos);
    CHECK(falsified.out.find("n=0") != std::string::npos);

    // malformed text: exit 2 with a byte-offset diagnostic on stderr
    const auto bad = run("check " + shell_quote("L(n = F(n)") + " --range n=0..5", true);
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("PARSE_ERROR") != std::string::npos);
    CHECK(bad.out.find("byte 4") != std::string::npos);

    CHECK(run("check " + shell_quote("F(n) = F(n)")).exit_code == 2);       // missing --range
    CHECK(run("check " + shell_quote("F(n) = F(n)") + " --range bogus").exit_code == 2);
    CHECK(run("check " + shell_quote("F(n) = F(n)") + " --range n=5..1").exit_code == 2);
    CHECK(run("check " + shell_quote("F(n) = F(q)") + " --range n=0..5").exit_code == 2);
}

TEST_CASE("pell: table of matched solutions") {
    auto r = run("pell 8");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("x=2 y=0 sign=+ n=0") != std::string::npos);
    CHECK(r.out.find("x=18 y=8 sign=+ n=6") != std::string::npos);
    CHECK(r.out.find("7 solutions, all Lucas-Fibonacci pairs") != std::string::npos);

    const json rec = parse_record(run("pell 3 --json").out, "pell");
    CHECK(rec.at("all_matched") == true);
    REQUIRE(rec.at("solutions").size() == 5);
    CHECK(rec.at("solutions")[1].at("x") == "1");
    CHECK(rec.at("solutions")[1].at("n") == 1);
    CHECK(rec.at("solutions")[2].at("x") == "3");
    CHECK(rec.at("solutions")[2].at("n") == 2);

    CHECK(run("pell -1").exit_code == 2);
    CHECK(run("pell").exit_code == 2);
}

TEST_CASE("bench: digit digests are algorithm-independent") {
    const json rec = parse_record(run("bench 10,1000 --algos iter,fast --repeat 2 --json").out,
                                  "bench");
    const auto& runs = rec.at("runs");
    REQUIRE(runs.size() == 4);
    REQUIRE(runs[0].at("digits") == runs[1].at("digits")); // n = 10: iter vs fast
    REQUIRE(runs[2].at("digits") == runs[3].at("digits")); // n = 1000
    CHECK(runs[0].at("digits") == 2);                      // F(10) = 55
    CHECK(runs[2].at("digits") == 209);                    // F(1000)
    for (const auto& run_row : runs) {
        CHECK(run_row.at("median_ns").get<std::int64_t>() >= 0);
        CHECK(run_row.at("min_ns").get<std::int64_t>() <=
              run_row.at("median_ns").get<std::int64_t>());
    }

    CHECK(run("bench 10 --repeat 0").exit_code == 2);
    CHECK(run("bench 10 --algos warp").exit_code == 2);
    CHECK(run("bench ten").exit_code == 2);
}

TEST_CASE("usage errors and help") {
    CHECK(run("").exit_code == 2);           // no subcommand
    CHECK(run("conjure 5").exit_code == 2);  // unknown subcommand
    CHECK(run("--help").exit_code == 0);
    CHECK(run("compute --help").exit_code == 0);
}
