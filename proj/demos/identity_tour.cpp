// A short tour: big values, identity verification, a telescoping trace,
// coefficient discovery, and the expression language.

#include <iostream>

#include "lucaskit/dsl.hpp"
#include "lucaskit/families.hpp"
#include "lucaskit/identities.hpp"

int main() {
    using namespace lucaskit;

    std::cout << "F(200) = " << fib(200).get_str() << "\n";
    std::cout << "L(200) = " << lucas(200).get_str() << "\n\n";

    for (const auto& rec : identity_registry()) {
        VerificationReport r = verify_range(rec.id, 0, 100);
        std::cout << rec.name << ": " << r.checked << " checked, " << r.failures.size()
                  << " failed  (" << rec.description << ")\n";
    }

    std::cout << "\ntelescoping steps for the alternating identity at n = 3:\n";
    ProofTrace trace = telescoping_trace(IdentityId::thm1, 3);
    for (const auto& s : trace.steps)
        std::cout << "  k=" << s.k << "  term=" << s.raw_term.get_str()
                  << "  T_k=" << s.t_k.get_str() << "  partial=" << s.partial_sum.get_str() << "\n";
    std::cout << "  closing = " << trace.closing_value.get_str() << "\n";

    std::cout << "\ncoefficients rediscovered for the base-5 geometric family:\n";
    FamilySolution sol = solve_coefficients({FamilyKind::geometric, 5}, 6, 200);
    std::cout << "  a=" << rational_str(sol.coefficients[0])
              << " b=" << rational_str(sol.coefficients[1])
              << " c=" << rational_str(sol.coefficients[2]) << "\n";

    const auto stmt = dsl::parse_identity("sum(k=0..n, 2^k * L(k)) = 2^(n+1) * F(n+1)");
    const auto report = dsl::check(stmt, {{'n', {0, 50}}});
    std::cout << "\nchecked \"" << dsl::print(stmt) << "\" at " << report.checked
              << " points, " << report.failures.size() << " failed\n";
    return 0;
}
