#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lucaskit/sequences.hpp"

namespace lucaskit {

/// The five identities implemented by this library, in the forms
///
///   elementary:  L_n = F_{n-1} + F_{n+1}
///   sury:        sum_{k=0}^n 2^k L_k = 2^{n+1} F_{n+1}
///   thm1:        sum_{k=0}^n (-1)^k 2^{n-k} L_{k+1} = (-1)^n F_{n+1}
///   thm2:        sum_{k=0}^n 3^k (L_k + F_{k+1}) = 3^{n+1} F_{n+1}
///   pell:        L_n^2 - 5 F_n^2 = 4 (-1)^n
///
/// Each is registered with independent evaluators for both sides; the three
/// summation identities additionally produce telescoping proof traces.
enum class IdentityId { elementary, sury, thm1, thm2, pell };

struct EvalResult {
    Integer lhs;
    Integer rhs;
};

struct IdentityRecord {
    IdentityId id;
    const char* name;
    const char* description;
    Index domain_min;
    Integer (*lhs)(Index);
    Integer (*rhs)(Index);
};

namespace detail {

inline Integer elementary_lhs(Index n) { return lucas(n); }
inline Integer elementary_rhs(Index n) { return fib(n - 1) + fib(n + 1); }

// Each sum evaluator is a single pass that carries (F_k, F_{k+1}) and the
// weight along, so evaluating at n costs O(n) big-integer operations.
inline Integer sury_lhs(Index n) {
    Integer sum = 0, w = 1, f = 0, f1 = 1;
    for (Index k = 0; k <= n; ++k) {
        sum += w * (2 * f1 - f); // L_k
        w <<= 1;
        f += f1;
        std::swap(f, f1);
    }
    return sum;
}
inline Integer sury_rhs(Index n) { return pow2(static_cast<std::uint64_t>(n) + 1) * fib(n + 1); }

inline Integer thm1_lhs(Index n) {
    Integer sum = 0, f = 0, f1 = 1;
    Integer w = pow2(static_cast<std::uint64_t>(n)); // 2^{n-k}
    for (Index k = 0; k <= n; ++k) {
        const Integer term = w * (2 * f + f1); // L_{k+1}
        if (k & 1)
            sum -= term;
        else
            sum += term;
        w >>= 1;
        f += f1;
        std::swap(f, f1);
    }
    return sum;
}
inline Integer thm1_rhs(Index n) {
    Integer r = fib(n + 1);
    return (n & 1) ? Integer(-r) : r;
}

inline Integer thm2_lhs(Index n) {
    Integer sum = 0, w = 1, f = 0, f1 = 1;
    for (Index k = 0; k <= n; ++k) {
        sum += w * (3 * f1 - f); // L_k + F_{k+1}
        w *= 3;
        f += f1;
        std::swap(f, f1);
    }
    return sum;
}
inline Integer thm2_rhs(Index n) {
    return pow_int(3, static_cast<std::uint64_t>(n) + 1) * fib(n + 1);
}

inline Integer pell_lhs(Index n) { return pell_residual(n); }
inline Integer pell_rhs(Index n) { return Integer(4 * alt_sign(n)); }

} // namespace detail

inline const std::array<IdentityRecord, 5>& identity_registry() {
    static const std::array<IdentityRecord, 5> records{{
        {IdentityId::elementary, "elementary", "L(n) = F(n-1) + F(n+1)", 0,
         &detail::elementary_lhs, &detail::elementary_rhs},
        {IdentityId::sury, "sury", "sum(k=0..n, 2^k L(k)) = 2^(n+1) F(n+1)", 0,
         &detail::sury_lhs, &detail::sury_rhs},
        {IdentityId::thm1, "thm1", "sum(k=0..n, (-1)^k 2^(n-k) L(k+1)) = (-1)^n F(n+1)", 0,
         &detail::thm1_lhs, &detail::thm1_rhs},
        {IdentityId::thm2, "thm2", "sum(k=0..n, 3^k (L(k) + F(k+1))) = 3^(n+1) F(n+1)", 0,
         &detail::thm2_lhs, &detail::thm2_rhs},
        {IdentityId::pell, "pell", "L(n)^2 - 5 F(n)^2 = 4 (-1)^n", 0,
         &detail::pell_lhs, &detail::pell_rhs},
    }};
    return records;
}

inline const IdentityRecord& identity_record(IdentityId id) {
    for (const auto& r : identity_registry())
        if (r.id == id) return r;
    throw Error(ErrorCode::unknown_identity, "unregistered identity id");
}

inline const IdentityRecord& identity_record(std::string_view name) {
    for (const auto& r : identity_registry())
        if (name == r.name) return r;
    throw Error(ErrorCode::unknown_identity, "no identity named '" + std::string(name) + "'");
}

/// Both sides of the identity at index n, evaluated exactly.
inline EvalResult evaluate(IdentityId id, Index n) {
    const auto& rec = identity_record(id);
    if (n < rec.domain_min)
        throw Error(ErrorCode::invalid_argument,
                    std::string(rec.name) + " requires n >= " + std::to_string(rec.domain_min));
    return {rec.lhs(n), rec.rhs(n)};
}

struct VerificationReport {
    IdentityId id;
    Index n_lo = 0;
    Index n_hi = 0;
    std::int64_t checked = 0;
    struct Failure {
        Index n;
        Integer lhs;
        Integer rhs;
    };
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
};

/// Evaluates both sides for every n in [n_lo, n_hi] and reports mismatches.
inline VerificationReport verify_range(IdentityId id, Index n_lo, Index n_hi) {
    const auto& rec = identity_record(id);
    if (n_lo > n_hi)
        throw Error(ErrorCode::invalid_range,
                    "n_lo " + std::to_string(n_lo) + " > n_hi " + std::to_string(n_hi));
    if (n_lo < rec.domain_min)
        throw Error(ErrorCode::invalid_range,
                    "n_lo " + std::to_string(n_lo) + " below domain minimum " +
                        std::to_string(rec.domain_min));
    VerificationReport report{id, n_lo, n_hi, 0, {}};
    for (Index n = n_lo; n <= n_hi; ++n) {
        EvalResult r = evaluate(id, n);
        ++report.checked;
        if (r.lhs != r.rhs) report.failures.push_back({n, std::move(r.lhs), std::move(r.rhs)});
    }
    return report;
}

/// One step of a telescoping proof: the k-th summand, the rewriting that
/// exposes it as a first difference, the antidifference pair (T_k, T_{k-1})
/// with raw_term = T_k - T_{k-1}, and the running partial sum.
struct TraceStep {
    Index k;
    Integer raw_term;
    std::string rewritten_form;
    Integer t_k;
    Integer t_prev;
    Integer partial_sum;
};

struct ProofTrace {
    IdentityId id;
    Index n;
    std::vector<TraceStep> steps;
    Integer closing_value;
};

/// Telescoping trace of the proof of a summation identity: every summand is
/// rewritten as T_k - T_{k-1}, the interior cancels pairwise, and the sum
/// collapses to T_n - T_{-1} with T_{-1} = 0.
inline ProofTrace telescoping_trace(IdentityId id, Index n) {
    if (id != IdentityId::sury && id != IdentityId::thm1 && id != IdentityId::thm2)
        throw Error(ErrorCode::trace_unsupported,
                    std::string(identity_record(id).name) + " is not a summation identity");
    if (n < 0)
        throw Error(ErrorCode::invalid_argument, "trace requires n >= 0");

    ProofTrace trace{id, n, {}, 0};
    trace.steps.reserve(static_cast<std::size_t>(n) + 1);

    Integer f = 0, f1 = 1; // (F_k, F_{k+1})
    Integer partial = 0;
    Integer t_prev = 0; // T_{-1} = 0 for all three identities
    Integer w;          // weight at step k
    if (id == IdentityId::thm1)
        w = pow2(static_cast<std::uint64_t>(n));
    else
        w = 1;

    for (Index k = 0; k <= n; ++k) {
        TraceStep step;
        step.k = k;
        switch (id) {
        case IdentityId::sury:
            // 2^k L_k = 2^{k+1} F_{k+1} - 2^k F_k
            step.raw_term = w * (2 * f1 - f);
            step.t_k = 2 * w * f1;
            step.rewritten_form = "2^" + std::to_string(k) + " * (2*F(" + std::to_string(k + 1) +
                                  ") - F(" + std::to_string(k) + "))";
            w <<= 1;
            break;
        case IdentityId::thm1: {
            // (-1)^k 2^{n-k} L_{k+1} = (-1)^k 2^{n-k} (2 F_k + F_{k+1})
            const bool neg = (k & 1) != 0;
            Integer term = w * (2 * f + f1);
            Integer t = w * f1;
            step.raw_term = neg ? Integer(-term) : term;
            step.t_k = neg ? Integer(-t) : t;
            step.rewritten_form = "(-1)^" + std::to_string(k) + " * 2^" + std::to_string(n - k) +
                                  " * (2*F(" + std::to_string(k) + ") + F(" + std::to_string(k + 1) +
                                  "))";
            w >>= 1;
            break;
        }
        default:
            // 3^k (L_k + F_{k+1}) = 3^{k+1} F_{k+1} - 3^k F_k
            step.raw_term = w * (3 * f1 - f);
            step.t_k = 3 * w * f1;
            step.rewritten_form = "3^" + std::to_string(k) + " * (3*F(" + std::to_string(k + 1) +
                                  ") - F(" + std::to_string(k) + "))";
            w *= 3;
            break;
        }
        partial += step.raw_term;
        step.partial_sum = partial;
        step.t_prev = t_prev;
        t_prev = step.t_k;
        trace.steps.push_back(std::move(step));
        f += f1;
        std::swap(f, f1);
    }
    trace.closing_value = trace.steps.back().t_k;
    return trace;
}

/// Structural check of a trace: difference form of every step, chained
/// antidifferences, consistent partial sums, and a closing value equal to
/// the identity's right-hand side. Returns human-readable problems; empty
/// means the trace is valid.
inline std::vector<std::string> validate_trace(const ProofTrace& trace) {
    std::vector<std::string> problems;
    if (trace.steps.empty()) {
        problems.push_back("trace has no steps");
        return problems;
    }
    Integer partial = 0;
    Integer prev_t = 0;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& s = trace.steps[i];
        if (s.k != static_cast<Index>(i))
            problems.push_back("step " + std::to_string(i) + ": unexpected k");
        if (s.t_prev != prev_t)
            problems.push_back("step " + std::to_string(i) + ": antidifference chain broken");
        if (s.raw_term != s.t_k - s.t_prev)
            problems.push_back("step " + std::to_string(i) + ": raw_term != T_k - T_{k-1}");
        partial += s.raw_term;
        if (s.partial_sum != partial)
            problems.push_back("step " + std::to_string(i) + ": partial sum mismatch");
        if (s.partial_sum != s.t_k) // telescoped prefix equals T_k - T_{-1}
            problems.push_back("step " + std::to_string(i) + ": partial sum != T_k");
        prev_t = s.t_k;
    }
    if (trace.closing_value != trace.steps.back().t_k)
        problems.push_back("closing value != T_n");
    if (trace.closing_value != identity_record(trace.id).rhs(trace.n))
        problems.push_back("closing value != identity rhs");
    return problems;
}

struct PellSolution {
    Integer x;
    Integer y;
    int sign; // +1: x^2 - 5y^2 = +4, -1: = -4
};

/// All nonnegative (x, y) with y <= y_bound and x^2 - 5y^2 = +-4, in
/// ascending (y, x) order. These are exactly the (L_n, F_n) pairs with
/// F_n <= y_bound. Uses an exact integer square-root test per y.
inline std::vector<PellSolution> pell_enumerate(const Integer& y_bound) {
    if (sgn(y_bound) < 0)
        throw Error(ErrorCode::invalid_argument, "pell_enumerate requires y_bound >= 0");
    std::vector<PellSolution> out;
    Integer root, rem;
    for (Integer y = 0; y <= y_bound; ++y) {
        const Integer five_y2 = 5 * y * y;
        for (int sign : {-1, +1}) {
            const Integer t = five_y2 + 4 * sign;
            if (sgn(t) < 0) continue;
            mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t());
            if (sgn(rem) == 0) out.push_back({root, y, sign});
        }
    }
    return out;
}

} // namespace lucaskit
