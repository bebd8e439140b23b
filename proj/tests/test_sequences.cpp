#include <catch2/catch_amalgamated.hpp>

#include "lucaskit/sequences.hpp"

#include "oracle.hpp"
#include "test_util.hpp"

using namespace lucaskit;
using test_util::code_of;

TEST_CASE("fib_iter: initial values, small values, reflection") {
    CHECK(fib_iter(0) == 0);
    CHECK(fib_iter(1) == 1);
    CHECK(oracle::fib(10) == 55);
    CHECK(fib_iter(10) == 55);
    CHECK(oracle::fib(-1) == 1);
    CHECK(fib_iter(-1) == 1);
}

TEST_CASE("lucas_iter: initial values and small values") {
    CHECK(lucas_iter(0) == 2);
    CHECK(lucas_iter(1) == 1);
    CHECK(oracle::lucas(4) == 7); // 2, 1, 3, 4, 7
    CHECK(lucas_iter(4) == 7);
}

TEST_CASE("iterative kernels match the plain recurrence on [-60, 60]") {
    for (Index n = -60; n <= 60; ++n) {
        CHECK(fib_iter(n) == oracle::fib(n));
        CHECK(lucas_iter(n) == oracle::lucas(n));
    }
}

TEST_CASE("recurrence holds forwards and backwards on [-200, 200]") {
    for (Index n = -200; n <= 198; ++n) {
        CHECK(fib_iter(n + 2) == fib_iter(n + 1) + fib_iter(n));
        CHECK(lucas_iter(n + 2) == lucas_iter(n + 1) + lucas_iter(n));
    }
}

TEST_CASE("reflection signs: F(-n) = (-1)^(n+1) F(n), L(-n) = (-1)^n L(n)") {
    for (Index n = 0; n <= 60; ++n) {
        const Integer f = fib_iter(n), l = lucas_iter(n);
        CHECK(fib_iter(-n) == ((n % 2 == 0) ? Integer(-f) : f));
        CHECK(lucas_iter(-n) == ((n % 2 == 0) ? l : Integer(-l)));
    }
    // reflection convention at the origin is consistent with itself
    CHECK(fib_iter(-0) == 0);
}

TEST_CASE("fast doubling: stated pairs") {
    const SequencePair p0 = fib_fast_doubling(0);
    CHECK(p0.first == 0);
    CHECK(p0.second == 1);
    CHECK(p0.kind == PairKind::fib_adjacent);

    CHECK(oracle::fib(12) == 144);
    const SequencePair p12 = fib_fast_doubling(12);
    CHECK(p12.first == 144);
    CHECK(p12.second == 233);

    CHECK(oracle::fib(90) == Integer("2880067194370816120"));
    const SequencePair p90 = fib_fast_doubling(90);
    CHECK(p90.first == Integer("2880067194370816120"));
    CHECK(p90.second == Integer("4660046610375530309"));
}

TEST_CASE("fast doubling rejects negative indices") {
    CHECK(code_of([] { fib_fast_doubling(-1); }) ==
          ErrorCode::negative_index_unsupported_fast_path);
}

TEST_CASE("fast doubling is bit-identical to iteration on [0, 10000]") {
    Integer f = 0, f1 = 1; // running (F_n, F_{n+1})
    for (Index n = 0; n <= 10000; ++n) {
        const SequencePair p = fib_fast_doubling(n);
        REQUIRE(mpz_cmp(p.first.get_mpz_t(), f.get_mpz_t()) == 0);
        REQUIRE(mpz_cmp(p.second.get_mpz_t(), f1.get_mpz_t()) == 0);
        if (n % 500 == 0) REQUIRE(fib_iter(n) == f); // pin the chain to the kernel itself
        f += f1;
        std::swap(f, f1);
    }
}

TEST_CASE("lucas_from_fib: stated values and agreement with lucas_iter") {
    CHECK(lucas_from_fib(0) == 2); // F(-1) + F(1) = 1 + 1
    CHECK(oracle::fib(2) + oracle::fib(4) == 4);
    CHECK(lucas_from_fib(3) == 4);
    CHECK(oracle::fib(5) + oracle::fib(7) == 18);
    CHECK(lucas_from_fib(6) == 18);
    for (Index n = -200; n <= 200; ++n) CHECK(lucas_from_fib(n) == lucas_iter(n));
}

TEST_CASE("fib_lucas_pair: stated values and pair invariant") {
    const SequencePair p0 = fib_lucas_pair(0);
    CHECK(p0.first == 0);
    CHECK(p0.second == 2);
    CHECK(p0.kind == PairKind::fib_lucas);

    const SequencePair p5 = fib_lucas_pair(5);
    CHECK(p5.first == 5);
    CHECK(p5.second == 11); // 2 F(6) - F(5) = 16 - 5

    const SequencePair p7 = fib_lucas_pair(7);
    CHECK(p7.first == 13);
    CHECK(p7.second == 29); // 2 * 21 - 13

    for (Index n = -50; n <= 50; ++n) {
        const SequencePair p = fib_lucas_pair(n);
        CHECK(p.first == oracle::fib(n));
        CHECK(p.second == oracle::lucas(n));
        CHECK(p.second == 2 * oracle::fib(n + 1) - p.first);
    }
}

TEST_CASE("pell_residual: stated values and sign pattern up to 2000") {
    CHECK(pell_residual(0) == 4); // 2^2 - 5*0^2
    CHECK(pell_residual(3) == -4); // 4^2 - 5*2^2
    CHECK(pell_residual(6) == 4); // 18^2 - 5*8^2
    for (Index n = 0; n <= 2000; ++n)
        CHECK(pell_residual(n) == ((n % 2 == 0) ? 4 : -4));
    CHECK(code_of([] { pell_residual(-1); }) == ErrorCode::invalid_argument);
}

TEST_CASE("adjacent Fibonacci numbers are coprime up to 2000") {
    Integer f = 0, f1 = 1, g;
    for (Index n = 0; n <= 2000; ++n) {
        mpz_gcd(g.get_mpz_t(), f.get_mpz_t(), f1.get_mpz_t());
        CHECK(g == 1);
        f += f1;
        std::swap(f, f1);
    }
}

TEST_CASE("iterative cap is enforced and configurable") {
    CHECK(code_of([] { fib_iter(11, 10); }) == ErrorCode::iter_cap_exceeded);
    CHECK(code_of([] { fib_iter(-11, 10); }) == ErrorCode::iter_cap_exceeded);
    CHECK(code_of([] { lucas_iter(1001, 1000); }) == ErrorCode::iter_cap_exceeded);
    CHECK(fib_iter(10, 10) == 55);
    CHECK(code_of([] { fib_iter(5, -1); }) == ErrorCode::invalid_argument);
}
