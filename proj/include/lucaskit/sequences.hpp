#pragma once

#include <bit>
#include <cstdint>
#include <utility>

#include "lucaskit/integer.hpp"

namespace lucaskit {

/// Exact evaluation of the Fibonacci numbers F_n (F_0 = 0, F_1 = 1) and the
/// Lucas numbers L_n (L_0 = 2, L_1 = 1), both driven by the recurrence
/// a_{n+2} = a_{n+1} + a_n.
///
/// Negative indices follow the backward recurrence a_{n-1} = a_{n+1} - a_n,
/// which gives F_{-n} = (-1)^{n+1} F_n and L_{-n} = (-1)^n L_n. This makes
/// L_n = F_{n-1} + F_{n+1} hold at n = 0 without a special case.

/// Default ceiling for the O(n) kernels; the doubling path has no cap.
inline constexpr Index default_iter_cap = 10'000'000;

enum class PairKind { fib_adjacent, fib_lucas };

/// Two adjacent sequence values. fib_adjacent holds (F_n, F_{n+1});
/// fib_lucas holds (F_n, L_n) with second = 2*F_{n+1} - first.
struct SequencePair {
    Integer first;
    Integer second;
    PairKind kind;
};

namespace detail {

// Forward loop: returns (F_m, F_{m+1}) for m >= 0.
inline std::pair<Integer, Integer> fib_forward(std::uint64_t m) {
    Integer a = 0, b = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        a += b;
        std::swap(a, b);
    }
    return {std::move(a), std::move(b)};
}

inline void check_iter_cap(Index n, Index cap, const char* what) {
    if (cap < 0)
        throw Error(ErrorCode::invalid_argument, "negative iteration cap");
    if (index_magnitude(n) > static_cast<std::uint64_t>(cap))
        throw Error(ErrorCode::iter_cap_exceeded,
                    std::string(what) + "(" + std::to_string(n) + ") exceeds iterative cap " +
                        std::to_string(cap) + "; use the doubling path");
}

} // namespace detail

/// F_n by direct iteration of the recurrence. O(|n|) additions.
inline Integer fib_iter(Index n, Index cap = default_iter_cap) {
    detail::check_iter_cap(n, cap, "fib_iter");
    const std::uint64_t m = index_magnitude(n);
    Integer f = detail::fib_forward(m).first;
    if (n < 0 && (m & 1) == 0) f = -f;
    return f;
}

/// L_n by direct iteration. O(|n|) additions.
inline Integer lucas_iter(Index n, Index cap = default_iter_cap) {
    detail::check_iter_cap(n, cap, "lucas_iter");
    const std::uint64_t m = index_magnitude(n);
    Integer a = 2, b = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        a += b;
        std::swap(a, b);
    }
    if (n < 0 && (m & 1) == 1) a = -a;
    return a;
}

/// (F_n, F_{n+1}) in O(log n) multiplications via index doubling:
/// F_{2k} = F_k (2 F_{k+1} - F_k), F_{2k+1} = F_k^2 + F_{k+1}^2.
/// Bit-identical to the iterative kernel. Rejects n < 0; callers reflect
/// negative indices first.
inline SequencePair fib_fast_doubling(Index n) {
    if (n < 0)
        throw Error(ErrorCode::negative_index_unsupported_fast_path,
                    "fib_fast_doubling(" + std::to_string(n) + "); reflect the index first");
    Integer a = 0, b = 1; // (F_0, F_1)
    const auto bits = static_cast<std::uint64_t>(n);
    Integer t, c, d;
    for (int i = std::bit_width(bits); i-- > 0;) {
        // (a, b) = (F_k, F_{k+1})  ->  (F_2k, F_2k+1)
        t = 2 * b - a;
        c = a * t;
        d = a * a + b * b;
        if ((bits >> i) & 1) {
            a = d;
            b = c + d;
        } else {
            a = std::move(c);
            b = std::move(d);
        }
    }
    return {std::move(a), std::move(b), PairKind::fib_adjacent};
}

/// F_n for any index: reflection plus the doubling kernel.
inline Integer fib(Index n) {
    const std::uint64_t m = index_magnitude(n);
    if (m > static_cast<std::uint64_t>(std::numeric_limits<Index>::max()))
        throw Error(ErrorCode::index_out_of_range, "index magnitude overflows");
    Integer f = fib_fast_doubling(static_cast<Index>(m)).first;
    if (n < 0 && (m & 1) == 0) f = -f;
    return f;
}

/// (F_n, L_n) from one doubling call, using L_n = 2 F_{n+1} - F_n.
inline SequencePair fib_lucas_pair(Index n) {
    const std::uint64_t m = index_magnitude(n);
    if (m > static_cast<std::uint64_t>(std::numeric_limits<Index>::max()))
        throw Error(ErrorCode::index_out_of_range, "index magnitude overflows");
    auto [f, f1, kind] = fib_fast_doubling(static_cast<Index>(m));
    (void)kind;
    Integer l = 2 * f1 - f;
    if (n < 0) {
        if ((m & 1) == 0) f = -f; // F_{-m} = (-1)^{m+1} F_m
        if ((m & 1) == 1) l = -l; // L_{-m} = (-1)^m L_m
    }
    return {std::move(f), std::move(l), PairKind::fib_lucas};
}

/// L_n for any index, O(log |n|).
inline Integer lucas(Index n) { return fib_lucas_pair(n).second; }

/// L_n as F_{n-1} + F_{n+1}; agrees with lucas_iter for every n.
inline Integer lucas_from_fib(Index n, Index cap = default_iter_cap) {
    if (n == std::numeric_limits<Index>::max() || n == std::numeric_limits<Index>::min())
        throw Error(ErrorCode::index_out_of_range, "adjacent index overflows");
    return fib_iter(n - 1, cap) + fib_iter(n + 1, cap);
}

/// L_n^2 - 5 F_n^2 for n >= 0; equals 4*(-1)^n.
inline Integer pell_residual(Index n) {
    if (n < 0)
        throw Error(ErrorCode::invalid_argument, "pell_residual requires n >= 0");
    auto [f, l, kind] = fib_lucas_pair(n);
    (void)kind;
    return l * l - 5 * f * f;
}

} // namespace lucaskit
