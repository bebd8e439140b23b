#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lucaskit/identities.hpp"
#include "lucaskit/linsolve.hpp"

namespace lucaskit {

/// Base-q identity families. Both shapes telescope for every integer q >= 1:
///
///   geometric:    sum_{k=0}^n q^k (L_k + (q-2) F_{k+1})            = q^{n+1} F_{n+1}
///   alternating:  sum_{k=0}^n (-1)^k q^{n-k} (L_{k+1} + (q-2) F_k) = (-1)^n F_{n+1}
///
/// q = 2 gives the sury/thm1 instances, q = 3 the thm2 instance. The solver
/// below rediscovers the coefficients from probe values alone.

enum class FamilyKind { geometric, alternating };

/// A candidate identity shape with unknown coefficients (a, b, c):
///   geometric:    sum q^k     (a L_k     + b F_k + c F_{k+1}) = q^{n+1} F_{n+1}
///   alternating:  sum +-q^{n-k}(a L_{k+1} + b F_k + c F_{k+1}) = (-1)^n  F_{n+1}
struct FamilyTemplate {
    FamilyKind kind;
    Integer q;
};

struct FamilySolution {
    enum class Status { verified, refuted, no_solution };
    struct Counterexample {
        Index n;
        Rational lhs;
        Rational rhs;
    };

    FamilyTemplate tmpl;
    std::array<Rational, 3> coefficients{}; // a, b, c
    Status status = Status::no_solution;
    Index verified_to = -1;
    std::optional<Counterexample> counterexample;
};

namespace detail {

inline void check_base(const Integer& q) {
    if (q < 1)
        throw Error(ErrorCode::invalid_base, "base q must be >= 1, got " + q.get_str(10));
}

inline Integer pow_integer(const Integer& base, Index e) {
    return pow_int(base, static_cast<std::uint64_t>(e));
}

} // namespace detail

/// Both sides of the geometric family at (q, n).
inline EvalResult general_family_eval(const Integer& q, Index n) {
    detail::check_base(q);
    if (n < 0)
        throw Error(ErrorCode::invalid_argument, "n must be >= 0");
    const Integer qm2 = q - 2;
    Integer sum = 0, w = 1, f = 0, f1 = 1;
    for (Index k = 0; k <= n; ++k) {
        sum += w * ((2 * f1 - f) + qm2 * f1); // L_k + (q-2) F_{k+1}
        w *= q;
        f += f1;
        std::swap(f, f1);
    }
    return {std::move(sum), w * f}; // w = q^{n+1}, f = F_{n+1}
}

/// Both sides of the alternating family at (q, n).
inline EvalResult alternating_family_eval(const Integer& q, Index n) {
    detail::check_base(q);
    if (n < 0)
        throw Error(ErrorCode::invalid_argument, "n must be >= 0");
    const Integer qm2 = q - 2;
    Integer sum = 0, f = 0, f1 = 1;
    Integer w = detail::pow_integer(q, n); // q^{n-k}
    for (Index k = 0; k <= n; ++k) {
        const Integer term = w * ((2 * f + f1) + qm2 * f); // L_{k+1} + (q-2) F_k
        if (k & 1)
            sum -= term;
        else
            sum += term;
        if (k < n) mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), q.get_mpz_t());
        f += f1;
        std::swap(f, f1);
    }
    Integer rhs = f; // F_{n+1}
    if (n & 1) rhs = -rhs;
    return {std::move(sum), std::move(rhs)};
}

namespace detail {

// Probe system rows for n = 0 .. probe_count-1: columns are the sums
// multiplying a, b, c; the right side is the template's fixed rhs.
inline void build_probe_system(const FamilyTemplate& tmpl, int probe_count,
                               std::vector<std::vector<Integer>>& a, std::vector<Integer>& b) {
    a.clear();
    b.clear();
    Integer f = 0, f1 = 1; // (F_n, F_{n+1})
    if (tmpl.kind == FamilyKind::geometric) {
        Integer w = 1; // q^n
        std::array<Integer, 3> cols{0, 0, 0};
        for (Index n = 0; n < probe_count; ++n) {
            cols[0] += w * (2 * f1 - f); // L_n
            cols[1] += w * f;
            cols[2] += w * f1;
            w *= tmpl.q;
            a.push_back({cols[0], cols[1], cols[2]});
            b.push_back(w * f1); // q^{n+1} F_{n+1}
            f += f1;
            std::swap(f, f1);
        }
    } else {
        // S_col(n) = q * S_col(n-1) + (-1)^n X_n
        std::array<Integer, 3> cols{0, 0, 0};
        for (Index n = 0; n < probe_count; ++n) {
            const int s = alt_sign(n);
            for (auto& c : cols) c *= tmpl.q;
            cols[0] += s * (2 * f + f1); // L_{n+1}
            cols[1] += s * f;
            cols[2] += s * f1;
            a.push_back({cols[0], cols[1], cols[2]});
            b.push_back(s * f1); // (-1)^n F_{n+1}
            f += f1;
            std::swap(f, f1);
        }
    }
}

// Candidate ordering: fewest nonzero coefficients, then a != 0 preferred
// (keep the Lucas term), then smallest denominators (the published forms
// are integer), then lexicographically smallest nonzero pattern, then
// componentwise value compare for a total deterministic order.
inline bool candidate_less(const std::array<Rational, 3>& x, const std::array<Rational, 3>& y) {
    auto nonzeros = [](const std::array<Rational, 3>& v) {
        int c = 0;
        for (const auto& e : v) c += (sgn(e) != 0);
        return c;
    };
    const int nx = nonzeros(x), ny = nonzeros(y);
    if (nx != ny) return nx < ny;
    const int ax = sgn(x[0]) == 0, ay = sgn(y[0]) == 0;
    if (ax != ay) return ax < ay;
    auto max_den = [](const std::array<Rational, 3>& v) {
        Integer d = 1;
        for (const auto& e : v)
            if (e.get_den() > d) d = e.get_den();
        return d;
    };
    const Integer dx = max_den(x), dy = max_den(y);
    if (dx != dy) return dx < dy;
    for (int i = 0; i < 3; ++i) {
        const int px = sgn(x[i]) != 0, py = sgn(y[i]) != 0;
        if (px != py) return px < py;
    }
    for (int i = 0; i < 3; ++i)
        if (x[i] != y[i]) return x[i] < y[i];
    return false;
}

} // namespace detail

/// Checks the instantiated identity for all n in [0, verify_to]; exact
/// rational arithmetic throughout, so a refutation carries the first
/// counterexample values verbatim.
inline FamilySolution verify_family(const FamilyTemplate& tmpl,
                                    const std::array<Rational, 3>& coeffs, Index verify_to) {
    detail::check_base(tmpl.q);
    if (verify_to < 0)
        throw Error(ErrorCode::invalid_argument, "verify_to must be >= 0");
    FamilySolution sol;
    sol.tmpl = tmpl;
    sol.coefficients = coeffs;

    const auto& [a, b, c] = coeffs;
    Integer f = 0, f1 = 1;
    Rational lhs = 0;
    Integer w = 1; // geometric: q^n
    for (Index n = 0; n <= verify_to; ++n) {
        Rational rhs;
        if (tmpl.kind == FamilyKind::geometric) {
            // q^n (a L_n + b F_n + c F_{n+1})
            Rational term = a * Rational(2 * f1 - f) + b * Rational(f) + c * Rational(f1);
            term *= Rational(w);
            lhs += term;
            w *= tmpl.q;
            rhs = Rational(w * f1);
        } else {
            // lhs_n = q lhs_{n-1} + (-1)^n (a L_{n+1} + b F_n + c F_{n+1})
            Rational term = a * Rational(2 * f + f1) + b * Rational(f) + c * Rational(f1);
            if (n & 1) term = -term;
            lhs = Rational(tmpl.q) * lhs + term;
            rhs = Rational(f1);
            if (n & 1) rhs = -rhs;
        }
        if (lhs != rhs) {
            sol.status = FamilySolution::Status::refuted;
            sol.counterexample = FamilySolution::Counterexample{n, lhs, rhs};
            return sol;
        }
        f += f1;
        std::swap(f, f1);
    }
    sol.status = FamilySolution::Status::verified;
    sol.verified_to = verify_to;
    return sol;
}

/// Recovers the template's coefficients from probe equations at
/// n = 0 .. probe_count-1 (the left side is linear in a, b, c), solving
/// exactly; an underdetermined system is resolved to the solution with the
/// fewest nonzero coefficients, preferring a != 0. The winning coefficients
/// are then verified over [0, verify_to].
inline FamilySolution solve_coefficients(const FamilyTemplate& tmpl, int probe_count,
                                         Index verify_to) {
    detail::check_base(tmpl.q);
    if (probe_count < 4)
        throw Error(ErrorCode::insufficient_probes,
                    "need at least 4 probes (3 unknowns), got " + std::to_string(probe_count));

    std::vector<std::vector<Integer>> a;
    std::vector<Integer> b;
    detail::build_probe_system(tmpl, probe_count, a, b);

    const LinearSolveResult full = solve_linear_exact(a, b);
    if (full.kind == LinearSolveResult::Kind::inconsistent) {
        FamilySolution sol;
        sol.tmpl = tmpl;
        sol.status = FamilySolution::Status::no_solution;
        return sol;
    }

    std::vector<std::array<Rational, 3>> candidates;
    if (full.kind == LinearSolveResult::Kind::unique) {
        candidates.push_back({full.solution[0], full.solution[1], full.solution[2]});
    } else {
        // Re-solve with each support set (allowed-nonzero coordinates);
        // every minimal-support solution shows up as the unique solution of
        // one of these reduced systems.
        for (unsigned mask = 0; mask < 8; ++mask) {
            std::vector<std::size_t> support;
            for (std::size_t i = 0; i < 3; ++i)
                if (mask & (1u << i)) support.push_back(i);
            std::vector<std::vector<Integer>> ra(a.size());
            for (std::size_t r = 0; r < a.size(); ++r)
                for (std::size_t i : support) ra[r].push_back(a[r][i]);
            const LinearSolveResult red = solve_linear_exact(std::move(ra), b);
            if (red.kind != LinearSolveResult::Kind::unique) continue;
            std::array<Rational, 3> x{Rational(0), Rational(0), Rational(0)};
            for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = red.solution[i];
            candidates.push_back(std::move(x));
        }
    }
    if (candidates.empty()) {
        FamilySolution sol;
        sol.tmpl = tmpl;
        sol.status = FamilySolution::Status::no_solution;
        return sol;
    }

    const std::array<Rational, 3>* best = &candidates[0];
    for (const auto& cand : candidates)
        if (detail::candidate_less(cand, *best)) best = &cand;

    return verify_family(tmpl, *best, verify_to);
}

} // namespace lucaskit
