#pragma once

// Right-impact degree: Xi sums y/x over adopted occurrences, Delta sums y/x
// over demoted occurrences, degree = Xi - Delta. Domains sum their scenarios,
// purposes sum their domains. Everything is exact.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rightsrisk/engine.hpp"
#include "rightsrisk/model.hpp"
#include "rightsrisk/rational.hpp"

namespace rightsrisk {

enum class Side { Xi, Delta };

inline const char* to_string(Side s) { return s == Side::Xi ? "xi" : "delta"; }

struct WeightedOccurrence {
    std::string scenario;
    Occurrence occurrence;
    Side side = Side::Xi;
    Rational weight;

    bool operator==(const WeightedOccurrence&) const = default;
};

struct DegreeBreakdown {
    Rational xi;
    Rational delta;
    Rational degree;
    std::vector<WeightedOccurrence> perOccurrence;

    DegreeBreakdown& operator+=(const DegreeBreakdown& o) {
        xi += o.xi;
        delta += o.delta;
        degree += o.degree;
        perOccurrence.insert(perOccurrence.end(), o.perOccurrence.begin(), o.perOccurrence.end());
        return *this;
    }
};

// y/x for position x of a chain of length y.
inline Rational weight(int position, int length) {
    if (position < 1 || position > length)
        throw Error("invalid chain position <" + std::to_string(position) + "," + std::to_string(length) + ">");
    return Rational(length, position);
}

inline DegreeBreakdown degree_scenario(const ScenarioFindings& findings) {
    DegreeBreakdown out;
    for (const auto& o : findings.adopted) {
        Rational w = weight(o.position, o.length);
        out.xi += w;
        out.perOccurrence.push_back({findings.scenario, o, Side::Xi, w});
    }
    for (const auto& o : findings.demotedOccurrences) {
        Rational w = weight(o.position, o.length);
        out.delta += w;
        out.perOccurrence.push_back({findings.scenario, o, Side::Delta, w});
    }
    out.degree = out.xi - out.delta;
    return out;
}

// Sum over an explicit, non-empty set of scenarios.
inline DegreeBreakdown degree_scenarios(const KnowledgeBase& kb, const std::vector<std::string>& scenarios,
                                        const EngineOptions& options = {}) {
    if (scenarios.empty()) throw Error("empty subset");
    DegreeBreakdown out;
    for (const auto& id : scenarios) out += degree_scenario(assess_scenario(kb, id, options));
    return out;
}

namespace detail {

inline std::vector<std::string> checked_subset(const std::vector<std::string>& universe,
                                               const std::optional<std::vector<std::string>>& subset,
                                               const char* member, const std::string& owner) {
    if (!subset) return universe;
    if (subset->empty()) throw Error("empty subset");
    std::set<std::string> seen;
    for (const auto& id : *subset) {
        if (std::find(universe.begin(), universe.end(), id) == universe.end())
            throw Error(std::string(member) + " '" + id + "' is not part of '" + owner + "'");
        if (!seen.insert(id).second) throw Error(std::string(member) + " '" + id + "' listed twice");
    }
    return *subset;
}

} // namespace detail

inline const DeploymentDomain& require_domain(const KnowledgeBase& kb, std::string_view id) {
    const auto* d = kb.find_domain(id);
    if (d == nullptr) throw Error("unknown domain '" + std::string(id) + "'");
    return *d;
}

inline const Purpose& require_purpose(const KnowledgeBase& kb, std::string_view id) {
    const auto* p = kb.find_purpose(id);
    if (p == nullptr) throw Error("unknown purpose '" + std::string(id) + "'");
    return *p;
}

inline DegreeBreakdown degree_domain(const KnowledgeBase& kb, std::string_view domainId,
                                     const std::optional<std::vector<std::string>>& subset = std::nullopt,
                                     const EngineOptions& options = {}) {
    const auto& domain = require_domain(kb, domainId);
    return degree_scenarios(kb, detail::checked_subset(domain.scenarios, subset, "scenario", domain.id), options);
}

inline DegreeBreakdown degree_purpose(const KnowledgeBase& kb, std::string_view purposeId,
                                      const std::optional<std::vector<std::string>>& subset = std::nullopt,
                                      const EngineOptions& options = {}) {
    const auto& purpose = require_purpose(kb, purposeId);
    DegreeBreakdown out;
    for (const auto& d : detail::checked_subset(purpose.domains, subset, "domain", purpose.id))
        out += degree_domain(kb, d, std::nullopt, options);
    return out;
}

} // namespace rightsrisk
