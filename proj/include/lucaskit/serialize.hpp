#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lucaskit/dsl.hpp"
#include "lucaskit/families.hpp"
#include "lucaskit/identities.hpp"

namespace lucaskit {

using Json = nlohmann::json;

/// JSON forms. Every big integer is a decimal string so no precision is
/// ever lost; rationals are "num/den" strings with the denominator always
/// present; counters and indices are JSON numbers.

inline void to_json(Json& j, const VerificationReport::Failure& f) {
    j = Json{{"n", f.n}, {"lhs", to_decimal(f.lhs)}, {"rhs", to_decimal(f.rhs)}};
}

inline void to_json(Json& j, const VerificationReport& r) {
    j = Json{{"identity", identity_record(r.id).name},
             {"n_lo", r.n_lo},
             {"n_hi", r.n_hi},
             {"checked", r.checked},
             {"failures", r.failures}};
}

inline void to_json(Json& j, const TraceStep& s) {
    j = Json{{"k", s.k},
             {"raw_term", to_decimal(s.raw_term)},
             {"rewritten_form", s.rewritten_form},
             {"t_k", to_decimal(s.t_k)},
             {"t_prev", to_decimal(s.t_prev)},
             {"partial_sum", to_decimal(s.partial_sum)}};
}

inline Json trace_to_json(const ProofTrace& t, bool include_steps) {
    Json j{{"identity", identity_record(t.id).name},
           {"n", t.n},
           {"step_count", t.steps.size()},
           {"closing_value", to_decimal(t.closing_value)}};
    if (include_steps) j["steps"] = t.steps;
    return j;
}

inline void to_json(Json& j, const PellSolution& s) {
    j = Json{{"x", to_decimal(s.x)}, {"y", to_decimal(s.y)}, {"sign", s.sign}};
}

inline void to_json(Json& j, const FamilySolution& sol) {
    j = Json{{"kind", sol.tmpl.kind == FamilyKind::geometric ? "geometric" : "alternating"},
             {"q", to_decimal(sol.tmpl.q)},
             {"coefficients",
              Json{{"a", rational_fraction_str(sol.coefficients[0])},
                   {"b", rational_fraction_str(sol.coefficients[1])},
                   {"c", rational_fraction_str(sol.coefficients[2])}}}};
    switch (sol.status) {
    case FamilySolution::Status::verified:
        j["status"] = "VERIFIED";
        j["verified_to"] = sol.verified_to;
        break;
    case FamilySolution::Status::refuted:
        j["status"] = "REFUTED";
        if (sol.counterexample)
            j["counterexample"] = Json{{"n", sol.counterexample->n},
                                       {"lhs", rational_fraction_str(sol.counterexample->lhs)},
                                       {"rhs", rational_fraction_str(sol.counterexample->rhs)}};
        break;
    case FamilySolution::Status::no_solution:
        j["status"] = "NO_SOLUTION";
        break;
    }
}

namespace dsl_json {

inline Json binding_to_json(const dsl::Binding& b) {
    Json j = Json::object();
    for (const auto& [name, value] : b) j[std::string(1, name)] = to_decimal(value);
    return j;
}

inline Json report_to_json(const dsl::DslCheckReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back(Json{{"point", binding_to_json(f.point)},
                                {"lhs", to_decimal(f.lhs)},
                                {"rhs", to_decimal(f.rhs)}});
    return Json{{"checked", r.checked}, {"failures", std::move(failures)}};
}

} // namespace dsl_json

} // namespace lucaskit
