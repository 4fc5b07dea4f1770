#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rightsrisk/error.hpp"

namespace rightsrisk {

// Boolean combination of basic rights. Leaves name a basic right or another
// fundamental right; expand_right() resolves the latter.
struct RightExpr {
    enum class Op { Leaf, And, Or, Not };

    Op op = Op::Leaf;
    std::string name;               // Leaf only
    std::vector<RightExpr> children; // And/Or: >= 2, Not: exactly 1

    static RightExpr leaf(std::string id) { return {Op::Leaf, std::move(id), {}}; }
    static RightExpr all_of(std::vector<RightExpr> xs) { return {Op::And, {}, std::move(xs)}; }
    static RightExpr any_of(std::vector<RightExpr> xs) { return {Op::Or, {}, std::move(xs)}; }
    static RightExpr negate(RightExpr x) { return {Op::Not, {}, {std::move(x)}}; }

    bool operator==(const RightExpr&) const = default;
};

struct FundamentalRight {
    std::string id;
    std::optional<RightExpr> definition; // absent: atomic right

    bool operator==(const FundamentalRight&) const = default;
};

struct FeatureLiteral {
    std::string atom;
    bool positive = true;

    auto operator<=>(const FeatureLiteral&) const = default;
};

inline std::string to_string(const FeatureLiteral& lit) {
    return lit.positive ? lit.atom : "!" + lit.atom;
}

struct Scenario {
    std::string id;
    std::vector<FeatureLiteral> features;

    bool operator==(const Scenario&) const = default;
};

struct Obligation {
    std::string id;
    std::string text;
    std::string appliesTo;

    bool operator==(const Obligation&) const = default;
};

struct DeploymentDomain {
    std::string id;
    std::vector<std::string> scenarios;

    bool operator==(const DeploymentDomain&) const = default;
};

struct Purpose {
    std::string id;
    std::vector<std::string> domains;

    bool operator==(const Purpose&) const = default;
};

enum class AssertionKind { Promotes, Demotes, NotDemotes, Collides, NotCollides };

inline const char* to_string(AssertionKind k) {
    switch (k) {
    case AssertionKind::Promotes: return "promotes";
    case AssertionKind::Demotes: return "demotes";
    case AssertionKind::NotDemotes: return "not_demotes";
    case AssertionKind::Collides: return "collides";
    case AssertionKind::NotCollides: return "not_collides";
    }
    return "?";
}

inline std::optional<AssertionKind> assertion_kind_from(std::string_view name) {
    if (name == "promotes") return AssertionKind::Promotes;
    if (name == "demotes") return AssertionKind::Demotes;
    if (name == "not_demotes") return AssertionKind::NotDemotes;
    if (name == "collides") return AssertionKind::Collides;
    if (name == "not_collides") return AssertionKind::NotCollides;
    return std::nullopt;
}

inline bool is_pair_kind(AssertionKind k) {
    return k == AssertionKind::Collides || k == AssertionKind::NotCollides;
}

struct Assertion {
    AssertionKind kind = AssertionKind::Promotes;
    std::vector<std::string> rights; // one right, or two for (not_)collides

    bool operator==(const Assertion&) const = default;
};

struct ChainHead {
    std::vector<std::string> rights; // most preferred first

    bool operator==(const ChainHead&) const = default;
};

using RuleHead = std::variant<Assertion, ChainHead>;

inline std::string to_string(const RuleHead& head);

// Defeasible rule `body => head`. Rules produced by `assert ... in S;` carry
// the scenario in `origin` and take S's feature conjunction as their body.
struct Rule {
    std::string id;
    int strength = 0;
    std::vector<FeatureLiteral> body;
    RuleHead head;
    std::optional<std::string> origin;

    bool operator==(const Rule&) const = default;
};

// A priority chain as fired in one scenario: the rule id doubles as chain id.
struct PriorityChain {
    std::string id;
    std::vector<std::string> rights;
    std::vector<FeatureLiteral> guard;

    bool operator==(const PriorityChain&) const = default;
};

// Ordinal determinants; 0 marks a field the source left out.
struct RiskAnnotation {
    std::string scenario;
    int hazard = 0;
    int response = 0;
    int intensity = 0;
    int sensitivity = 0;
    int vulnerability = 0;

    bool operator==(const RiskAnnotation&) const = default;
};

struct KnowledgeBase {
    std::vector<std::string> basics;
    std::vector<FundamentalRight> rights;
    std::vector<Scenario> scenarios;
    std::vector<DeploymentDomain> domains;
    std::vector<Purpose> purposes;
    std::vector<Obligation> obligations;
    std::vector<RiskAnnotation> risks;
    std::vector<Rule> rules;

    bool operator==(const KnowledgeBase&) const = default;

    bool empty() const {
        return basics.empty() && rights.empty() && scenarios.empty() && domains.empty() &&
               purposes.empty() && obligations.empty() && risks.empty() && rules.empty();
    }

    const FundamentalRight* find_right(std::string_view id) const { return find(rights, id); }
    const Scenario* find_scenario(std::string_view id) const { return find(scenarios, id); }
    const DeploymentDomain* find_domain(std::string_view id) const { return find(domains, id); }
    const Purpose* find_purpose(std::string_view id) const { return find(purposes, id); }
    const Rule* find_rule(std::string_view id) const { return find(rules, id); }
    const RiskAnnotation* find_risk(std::string_view scenario) const {
        for (const auto& r : risks)
            if (r.scenario == scenario) return &r;
        return nullptr;
    }
    bool is_basic(std::string_view id) const {
        return std::find(basics.begin(), basics.end(), id) != basics.end();
    }

private:
    template <class T>
    static const T* find(const std::vector<T>& xs, std::string_view id) {
        for (const auto& x : xs)
            if (x.id == id) return &x;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------

inline std::string to_string(const RuleHead& head) {
    std::string out;
    if (const auto* a = std::get_if<Assertion>(&head)) {
        out = to_string(a->kind);
        out += '(';
        for (std::size_t i = 0; i < a->rights.size(); ++i) {
            if (i) out += ", ";
            out += a->rights[i];
        }
        out += ')';
    } else {
        const auto& c = std::get<ChainHead>(head);
        for (std::size_t i = 0; i < c.rights.size(); ++i) {
            if (i) out += " > ";
            out += c.rights[i];
        }
    }
    return out;
}

inline std::vector<std::string> head_rights(const RuleHead& head) {
    if (const auto* a = std::get_if<Assertion>(&head)) return a->rights;
    return std::get<ChainHead>(head).rights;
}

// Three-valued: an atom absent from `features` satisfies neither polarity.
inline bool satisfies(std::span<const FeatureLiteral> features, std::span<const FeatureLiteral> body) {
    for (const auto& lit : body)
        if (std::find(features.begin(), features.end(), lit) == features.end()) return false;
    return true;
}

inline std::vector<std::string> obligations_for(const KnowledgeBase& kb, std::string_view scenario) {
    std::vector<std::string> out;
    for (const auto& o : kb.obligations)
        if (o.appliesTo == scenario) out.push_back(o.id);
    return out;
}

// Rights named by any rule head whose body the scenario satisfies.
inline std::vector<std::string> rights_in_scope(const KnowledgeBase& kb, const Scenario& scenario) {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (const auto& rule : kb.rules) {
        if (!satisfies(scenario.features, rule.body)) continue;
        for (auto& r : head_rights(rule.head))
            if (seen.insert(r).second) out.push_back(r);
    }
    return out;
}

namespace detail {

inline void expand_into(const KnowledgeBase& kb, const RightExpr& e, std::vector<std::string>& stack,
                        RightExpr& out) {
    if (e.op != RightExpr::Op::Leaf) {
        out.op = e.op;
        out.name.clear();
        out.children.resize(e.children.size());
        for (std::size_t i = 0; i < e.children.size(); ++i) expand_into(kb, e.children[i], stack, out.children[i]);
        return;
    }
    const FundamentalRight* fr = kb.find_right(e.name);
    if (fr == nullptr || !fr->definition) {
        if (fr == nullptr && !kb.is_basic(e.name)) throw Error("unknown right '" + e.name + "'");
        out = RightExpr::leaf(e.name);
        return;
    }
    if (std::find(stack.begin(), stack.end(), e.name) != stack.end())
        throw Error("recursive right definition involving '" + e.name + "'");
    stack.push_back(e.name);
    expand_into(kb, *fr->definition, stack, out);
    stack.pop_back();
}

inline void collect_leaves(const RightExpr& e, std::set<std::string>& out) {
    if (e.op == RightExpr::Op::Leaf) out.insert(e.name);
    for (const auto& c : e.children) collect_leaves(c, out);
}

inline bool evaluate(const RightExpr& e, const std::map<std::string, bool>& env) {
    switch (e.op) {
    case RightExpr::Op::Leaf: return env.at(e.name);
    case RightExpr::Op::Not: return !evaluate(e.children.front(), env);
    case RightExpr::Op::And:
        for (const auto& c : e.children)
            if (!evaluate(c, env)) return false;
        return true;
    case RightExpr::Op::Or:
        for (const auto& c : e.children)
            if (evaluate(c, env)) return true;
        return false;
    }
    return false;
}

} // namespace detail

// Definitional expansion down to basic rights; an atomic right is its own leaf.
inline RightExpr expand_right(const KnowledgeBase& kb, std::string_view rightId) {
    const FundamentalRight* fr = kb.find_right(rightId);
    if (fr == nullptr) throw Error("unknown right '" + std::string(rightId) + "'");
    if (!fr->definition) return RightExpr::leaf(fr->id);
    std::vector<std::string> stack{fr->id};
    RightExpr out;
    detail::expand_into(kb, *fr->definition, stack, out);
    return out;
}

inline constexpr std::size_t kMaxTruthTableAtoms = 20;

// True iff a <-> !b is valid, decided by truth table over the shared leaves.
// nullopt when the leaf count exceeds kMaxTruthTableAtoms.
inline std::optional<bool> logically_incompatible(const RightExpr& a, const RightExpr& b) {
    std::set<std::string> atoms;
    detail::collect_leaves(a, atoms);
    detail::collect_leaves(b, atoms);
    if (atoms.size() > kMaxTruthTableAtoms) return std::nullopt;
    std::vector<std::string> names(atoms.begin(), atoms.end());
    std::map<std::string, bool> env;
    const std::uint64_t rows = std::uint64_t{1} << names.size();
    for (std::uint64_t row = 0; row < rows; ++row) {
        for (std::size_t i = 0; i < names.size(); ++i) env[names[i]] = ((row >> i) & 1U) != 0;
        if (detail::evaluate(a, env) == detail::evaluate(b, env)) return false;
    }
    return true;
}

// All referential, duplicate and polarity problems, sorted. Empty iff the
// knowledge base is well formed. The result does not depend on declaration
// order.
inline std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb) {
    std::set<Diagnostic> out;
    auto error = [&](std::string code, std::string msg) {
        out.insert({Severity::Error, std::move(code), std::move(msg)});
    };
    auto warn = [&](std::string code, std::string msg) {
        out.insert({Severity::Warning, std::move(code), std::move(msg)});
    };
    auto check_unique = [&](const char* what, auto&& ids) {
        std::map<std::string, int> counts;
        for (const auto& id : ids) ++counts[id];
        for (const auto& [id, n] : counts)
            if (n > 1) error("duplicate id", std::string("duplicate ") + what + " '" + id + "'");
    };
    auto ids_of = [](const auto& xs) {
        std::vector<std::string> ids;
        for (const auto& x : xs) ids.push_back(x.id);
        return ids;
    };

    check_unique("basic right", kb.basics);
    check_unique("right", ids_of(kb.rights));
    check_unique("scenario", ids_of(kb.scenarios));
    check_unique("domain", ids_of(kb.domains));
    check_unique("purpose", ids_of(kb.purposes));
    check_unique("obligation", ids_of(kb.obligations));
    check_unique("rule", ids_of(kb.rules));

    for (const auto& b : kb.basics)
        if (b.empty()) error("empty id", "basic right with empty identifier");

    // Rights: an atomic right may share its name with a basic right.
    for (const auto& fr : kb.rights) {
        if (fr.id.empty()) error("empty id", "right with empty identifier");
        if (fr.definition && kb.is_basic(fr.id))
            error("duplicate id", "right '" + fr.id + "' is defined but also declared basic");
        if (!fr.definition) continue;
        std::set<std::string> leaves;
        detail::collect_leaves(*fr.definition, leaves);
        for (const auto& leaf : leaves)
            if (!kb.is_basic(leaf) && kb.find_right(leaf) == nullptr)
                error("unknown right", "unknown right '" + leaf + "' in definition of '" + fr.id + "'");
    }
    // Definition cycles: report every right that lies on one.
    {
        std::map<std::string, std::set<std::string>> edges;
        for (const auto& fr : kb.rights) {
            if (!fr.definition) continue;
            std::set<std::string> leaves;
            detail::collect_leaves(*fr.definition, leaves);
            for (const auto& leaf : leaves) {
                const auto* target = kb.find_right(leaf);
                if (target != nullptr && target->definition) edges[fr.id].insert(leaf);
            }
        }
        for (const auto& [start, _] : edges) {
            std::set<std::string> seen;
            std::vector<std::string> todo(edges[start].begin(), edges[start].end());
            bool cyclic = false;
            while (!todo.empty() && !cyclic) {
                std::string cur = todo.back();
                todo.pop_back();
                if (cur == start) cyclic = true;
                else if (seen.insert(cur).second)
                    for (const auto& nxt : edges[cur]) todo.push_back(nxt);
            }
            if (cyclic) error("recursive right definition", "recursive right definition '" + start + "'");
        }
    }

    for (const auto& s : kb.scenarios) {
        if (s.features.empty()) error("empty scenario", "scenario '" + s.id + "' has no features");
        std::map<std::string, int> polarity;
        for (const auto& f : s.features) polarity[f.atom] |= f.positive ? 1 : 2;
        for (const auto& [atom, mask] : polarity)
            if (mask == 3)
                error("polarity conflict", "feature '" + atom + "' appears with both polarities in scenario '" + s.id + "'");
    }

    auto check_refs = [&](const char* owner_kind, const std::string& owner, const std::vector<std::string>& refs,
                          const char* ref_kind, auto&& exists) {
        std::map<std::string, int> counts;
        for (const auto& r : refs) {
            if (++counts[r] == 2)
                error("duplicate reference", std::string(owner_kind) + " '" + owner + "' lists " + ref_kind + " '" + r + "' twice");
            if (counts[r] == 1 && !exists(r))
                error(std::string("unknown ") + ref_kind, std::string("unknown ") + ref_kind + " '" + r + "' in " + owner_kind + " '" + owner + "'");
        }
    };
    for (const auto& d : kb.domains) {
        if (d.scenarios.empty()) error("empty domain", "domain '" + d.id + "' has no scenarios");
        check_refs("domain", d.id, d.scenarios, "scenario", [&](const std::string& r) { return kb.find_scenario(r) != nullptr; });
    }
    for (const auto& p : kb.purposes) {
        if (p.domains.empty()) error("empty purpose", "purpose '" + p.id + "' has no domains");
        check_refs("purpose", p.id, p.domains, "domain", [&](const std::string& r) { return kb.find_domain(r) != nullptr; });
    }
    for (const auto& o : kb.obligations)
        if (kb.find_scenario(o.appliesTo) == nullptr)
            error("unknown scenario", "unknown scenario '" + o.appliesTo + "' in obligation '" + o.id + "'");

    for (const auto& rule : kb.rules) {
        if (rule.origin && kb.find_scenario(*rule.origin) == nullptr)
            error("unknown scenario", "unknown scenario '" + *rule.origin + "' in rule '" + rule.id + "'");
        std::set<std::string> reported;
        for (const auto& r : head_rights(rule.head))
            if (kb.find_right(r) == nullptr && reported.insert(r).second)
                error("unknown right", "unknown right '" + r + "' in rule '" + rule.id + "'");
        if (const auto* a = std::get_if<Assertion>(&rule.head)) {
            const std::size_t want = is_pair_kind(a->kind) ? 2 : 1;
            if (a->rights.size() != want)
                error("arity", std::string(to_string(a->kind)) + " in rule '" + rule.id + "' takes " + std::to_string(want) + " right(s)");
            else if (want == 2 && a->rights[0] == a->rights[1])
                error("self collision", "rule '" + rule.id + "' pairs right '" + a->rights[0] + "' with itself");
        } else {
            const auto& chain = std::get<ChainHead>(rule.head);
            if (chain.rights.empty()) error("empty chain", "rule '" + rule.id + "' has an empty chain");
            std::set<std::string> seen;
            for (const auto& r : chain.rights)
                if (!seen.insert(r).second)
                    error("duplicate chain right", "chain in rule '" + rule.id + "' lists '" + r + "' twice");
        }
        std::map<std::string, int> polarity;
        for (const auto& f : rule.body) polarity[f.atom] |= f.positive ? 1 : 2;
        for (const auto& [atom, mask] : polarity)
            if (mask == 3) warn("unsatisfiable body", "rule '" + rule.id + "' requires both '" + atom + "' and '!" + atom + "'");
    }

    std::map<std::string, int> risk_counts;
    for (const auto& risk : kb.risks) {
        if (++risk_counts[risk.scenario] == 2)
            error("duplicate id", "duplicate risk annotation for scenario '" + risk.scenario + "'");
        if (kb.find_scenario(risk.scenario) == nullptr)
            error("unknown scenario", "unknown scenario '" + risk.scenario + "' in risk annotation");
        const std::pair<const char*, int> fields[] = {{"hazard", risk.hazard},
                                                      {"response", risk.response},
                                                      {"intensity", risk.intensity},
                                                      {"sensitivity", risk.sensitivity},
                                                      {"vulnerability", risk.vulnerability}};
        for (const auto& [name, value] : fields) {
            if (value == 0)
                error("missing risk field", "risk annotation for '" + risk.scenario + "' lacks " + name);
            else if (value < 1 || value > 5)
                error("risk out of range", "risk " + std::string(name) + " for '" + risk.scenario + "' must be in 1..5");
        }
    }

    return {out.begin(), out.end()};
}

} // namespace rightsrisk
