#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lucaskit/integer.hpp"

namespace lucaskit {

/// Outcome of solving A x = b exactly over the rationals.
struct LinearSolveResult {
    enum class Kind { unique, underdetermined, inconsistent };
    Kind kind;
    std::vector<Rational> solution; // populated only when unique
    int rank = 0;
};

namespace detail {

// Exact division helper; fraction-free elimination guarantees divisibility,
// so a nonzero remainder means a broken invariant, not bad input.
inline Integer div_exact_checked(const Integer& num, const Integer& den) {
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (sgn(r) != 0)
        throw Error(ErrorCode::invalid_argument, "fraction-free elimination lost exactness");
    return q;
}

} // namespace detail

/// Solves A x = b over the rationals using fraction-free (Bareiss) Gaussian
/// elimination on the augmented integer matrix: intermediate entries stay
/// integers (minors of the input), and the per-stage division by the
/// previous pivot is exact. Back substitution produces canonical rationals.
inline LinearSolveResult solve_linear_exact(std::vector<std::vector<Integer>> a,
                                            std::vector<Integer> b) {
    const std::size_t rows = a.size();
    if (b.size() != rows)
        throw Error(ErrorCode::invalid_argument, "matrix/vector shape mismatch");
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != cols)
            throw Error(ErrorCode::invalid_argument, "ragged matrix");

    // Augmented matrix m[i] = [a_i | b_i].
    std::vector<std::vector<Integer>> m(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        m[i] = std::move(a[i]);
        m[i].push_back(std::move(b[i]));
    }

    std::vector<std::size_t> pivot_cols;
    Integer prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && sgn(m[p][col]) == 0) ++p;
        if (p == rows) continue; // free column
        std::swap(m[p], m[row]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j <= cols; ++j)
                m[i][j] = detail::div_exact_checked(m[row][col] * m[i][j] - m[i][col] * m[row][j],
                                                    prev);
            m[i][col] = 0;
        }
        prev = m[row][col];
        pivot_cols.push_back(col);
        ++row;
    }
    const std::size_t rank = row;

    for (std::size_t i = rank; i < rows; ++i)
        if (sgn(m[i][cols]) != 0)
            return {LinearSolveResult::Kind::inconsistent, {}, static_cast<int>(rank)};

    if (rank < cols)
        return {LinearSolveResult::Kind::underdetermined, {}, static_cast<int>(rank)};

    // rank == cols: every column is a pivot; back-substitute.
    std::vector<Rational> x(cols);
    for (std::size_t r = rank; r-- > 0;) {
        const std::size_t c = pivot_cols[r];
        Rational acc(m[r][cols]);
        for (std::size_t j = c + 1; j < cols; ++j) {
            Rational term(m[r][j]);
            term *= x[j];
            acc -= term;
        }
        acc /= Rational(m[r][c]);
        acc.canonicalize();
        x[c] = std::move(acc);
    }
    return {LinearSolveResult::Kind::unique, std::move(x), static_cast<int>(rank)};
}

} // namespace lucaskit
