// Minimal embedding: parse a knowledge base, assess every scenario of a
// domain and print its degree, then the degree-maximizing scenario subset.

#include <iostream>

#include "rightsrisk/rightsrisk.hpp"

int main() {
    using namespace rightsrisk;
    const auto kb = dsl::parse_kb(R"(
        right privacy;
        right public_health;
        scenario S { pandemic, !consent }
        scenario T { pandemic, consent }
        domain response { S, T }
        rule pref: pandemic => privacy > public_health;
        rule no_consent: !consent => demotes(privacy);
        rule helps: pandemic => promotes(public_health);
    )");
    if (auto diags = validate_kb(kb); has_errors(diags)) {
        for (const auto& d : diags) std::cerr << to_string(d) << '\n';
        return 1;
    }
    for (const auto& id : kb.find_domain("response")->scenarios)
        std::cout << id << ": degree " << degree_scenario(assess_scenario(kb, id)).degree << '\n';
    const auto best = minimize_domain(kb, "response", SearchMode::Exhaustive);
    std::cout << "optimal degree " << best.optimalDegree << " with";
    for (const auto& id : best.canonical) std::cout << ' ' << id;
    std::cout << '\n';
}
