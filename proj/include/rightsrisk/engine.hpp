#pragma once

// Defeasible forward chaining over one scenario.
//
//   fire_rules       rules whose body the scenario satisfies
//   resolve_statuses promoted / demoted / undefined per right, by rule strength
//   derive_collisions explicit, logical and (optionally) promote-vs-demote pairs
//   adopt            walk a fired chain and adopt positions
//   assess_scenario  all of the above plus the singleton convention
//
// Adoption along a chain R1 > ... > Ry: position x is adopted iff Rx is not
// demoted and does not collide with a right already adopted from the same
// chain. The first non-demoted position is therefore always adopted.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rightsrisk/error.hpp"
#include "rightsrisk/model.hpp"

namespace rightsrisk {

struct EngineOptions {
    bool derivedCollisions = true;
    bool monotonicityCheck = true;
};

enum class Status { Promoted, Demoted, Undefined };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::Promoted: return "promoted";
    case Status::Demoted: return "demoted";
    case Status::Undefined: return "undefined";
    }
    return "?";
}

using StatusMap = std::map<std::string, Status>;

inline Status status_of(const StatusMap& statuses, const std::string& right) {
    auto it = statuses.find(right);
    return it == statuses.end() ? Status::Undefined : it->second;
}

// Unordered pair of rights, stored with first < second.
struct RightPair {
    std::string first;
    std::string second;

    RightPair() = default;
    RightPair(std::string a, std::string b) : first(std::move(a)), second(std::move(b)) {
        if (second < first) std::swap(first, second);
    }
    bool contains(const std::string& r) const { return first == r || second == r; }

    auto operator<=>(const RightPair&) const = default;
};

using CollisionSet = std::set<RightPair>;

inline bool collide(const CollisionSet& collisions, const std::string& a, const std::string& b) {
    return collisions.count(RightPair(a, b)) != 0;
}

inline constexpr std::string_view kSingletonChain = "singleton";

// Right at position x of a chain of length y (1 <= x <= y).
struct Occurrence {
    std::string right;
    std::string chain;
    int position = 1;
    int length = 1;

    auto operator<=>(const Occurrence&) const = default;
};

inline std::string to_string(const Occurrence& o) {
    return o.right + "<" + std::to_string(o.position) + "," + std::to_string(o.length) + ">";
}

struct FiredConclusion {
    std::string ruleId;
    int strength = 0;
    RuleHead head;
};

struct ScenarioFindings {
    std::string scenario;
    StatusMap statuses;
    CollisionSet collisions;
    std::vector<PriorityChain> firedChains;
    std::vector<Occurrence> adopted;
    std::vector<Occurrence> demotedOccurrences;
    std::vector<Diagnostic> diagnostics;
};

// ---------------------------------------------------------------------------

inline std::vector<FiredConclusion> fire_rules(const KnowledgeBase& kb, const Scenario& scenario) {
    std::vector<FiredConclusion> out;
    for (const auto& rule : kb.rules)
        if (satisfies(scenario.features, rule.body)) out.push_back({rule.id, rule.strength, rule.head});
    return out;
}

namespace detail {

struct Strongest {
    std::optional<int> strength;
    std::vector<std::string> rules; // every rule at the top strength

    void offer(int s, const std::string& rule) {
        if (!strength || s > *strength) {
            strength = s;
            rules = {rule};
        } else if (s == *strength) {
            rules.push_back(rule);
        }
    }
};

struct Contest {
    Strongest promote, demote, notDemote;
};

inline std::map<std::string, Contest> contests(const std::vector<FiredConclusion>& fired) {
    std::map<std::string, Contest> out;
    for (const auto& f : fired) {
        const auto* a = std::get_if<Assertion>(&f.head);
        if (a == nullptr || a->rights.size() != 1) continue;
        auto& c = out[a->rights.front()];
        if (a->kind == AssertionKind::Promotes) c.promote.offer(f.strength, f.ruleId);
        else if (a->kind == AssertionKind::Demotes) c.demote.offer(f.strength, f.ruleId);
        else if (a->kind == AssertionKind::NotDemotes) c.notDemote.offer(f.strength, f.ruleId);
    }
    return out;
}

inline bool demote_survives(const Contest& c) {
    return c.demote.strength && !(c.notDemote.strength && *c.notDemote.strength >= *c.demote.strength);
}

inline std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
    return out;
}

} // namespace detail

// One status per listed right. Promote and demote heads compete by strength;
// a tie blocks both (status undefined, warning emitted). A not_demotes head
// cancels demote heads of equal or lower strength.
inline StatusMap resolve_statuses(const std::vector<FiredConclusion>& fired, const std::vector<std::string>& rights,
                                  std::vector<Diagnostic>* diagnostics = nullptr) {
    auto table = detail::contests(fired);
    StatusMap out;
    for (const auto& right : rights) {
        auto it = table.find(right);
        if (it == table.end()) {
            out[right] = Status::Undefined;
            continue;
        }
        const auto& c = it->second;
        const bool demote = detail::demote_survives(c);
        Status s = Status::Undefined;
        if (c.promote.strength && demote) {
            if (*c.promote.strength > *c.demote.strength) s = Status::Promoted;
            else if (*c.demote.strength > *c.promote.strength) s = Status::Demoted;
            else if (diagnostics != nullptr)
                diagnostics->push_back({Severity::Warning, "ambiguous status",
                                        "promotes/demotes of '" + right + "' tie at strength " +
                                            std::to_string(*c.promote.strength) + " (rules " +
                                            detail::join_ids(c.promote.rules) + " vs " +
                                            detail::join_ids(c.demote.rules) + ")"});
        } else if (c.promote.strength) {
            s = Status::Promoted;
        } else if (demote) {
            s = Status::Demoted;
        }
        out[right] = s;
    }
    return out;
}

inline std::vector<std::string> right_ids(const KnowledgeBase& kb) {
    std::vector<std::string> ids;
    for (const auto& r : kb.rights) ids.push_back(r.id);
    return ids;
}

namespace detail {

struct CollisionSources {
    std::map<RightPair, int> explicitMax;
    std::map<RightPair, int> negatedMax;
    std::map<RightPair, std::string> explicitRule;
    std::map<RightPair, std::string> negatedRule;
};

inline CollisionSources collision_sources(const std::vector<FiredConclusion>& fired) {
    CollisionSources src;
    for (const auto& f : fired) {
        const auto* a = std::get_if<Assertion>(&f.head);
        if (a == nullptr || a->rights.size() != 2 || a->rights[0] == a->rights[1]) continue;
        if (a->kind != AssertionKind::Collides && a->kind != AssertionKind::NotCollides) continue;
        RightPair p(a->rights[0], a->rights[1]);
        auto& maxes = a->kind == AssertionKind::Collides ? src.explicitMax : src.negatedMax;
        auto& rules = a->kind == AssertionKind::Collides ? src.explicitRule : src.negatedRule;
        auto it = maxes.find(p);
        if (it == maxes.end() || f.strength > it->second) {
            maxes[p] = f.strength;
            rules[p] = f.ruleId;
        }
    }
    return src;
}

inline bool negation_survives(const CollisionSources& src, const RightPair& p) {
    auto neg = src.negatedMax.find(p);
    if (neg == src.negatedMax.end()) return false;
    auto pos = src.explicitMax.find(p);
    return pos == src.explicitMax.end() || neg->second >= pos->second;
}

inline bool logical_clash(const KnowledgeBase& kb, const std::string& a, const std::string& b) {
    try {
        return logically_incompatible(expand_right(kb, a), expand_right(kb, b)).value_or(false);
    } catch (const Error&) {
        return false; // malformed definitions are reported by validate_kb
    }
}

} // namespace detail

// Explicit `collides` heads, logical incompatibilities between rights in
// scope, and (when enabled) every promoted/demoted pair; minus pairs with a
// surviving `not_collides` head.
inline CollisionSet derive_collisions(const KnowledgeBase& kb, const Scenario& scenario,
                                      const std::vector<FiredConclusion>& fired, const StatusMap& statuses,
                                      const EngineOptions& options = {}) {
    auto src = detail::collision_sources(fired);
    CollisionSet out;
    for (const auto& [p, _] : src.explicitMax) out.insert(p);

    const auto scope = rights_in_scope(kb, scenario);
    for (std::size_t i = 0; i < scope.size(); ++i)
        for (std::size_t j = i + 1; j < scope.size(); ++j)
            if (detail::logical_clash(kb, scope[i], scope[j])) out.emplace(scope[i], scope[j]);

    if (options.derivedCollisions)
        for (const auto& [pr, ps] : statuses)
            if (ps == Status::Promoted)
                for (const auto& [dr, ds] : statuses)
                    if (ds == Status::Demoted && dr != pr) out.emplace(pr, dr);

    for (auto it = out.begin(); it != out.end();)
        it = detail::negation_survives(src, *it) ? out.erase(it) : std::next(it);
    return out;
}

inline std::vector<Occurrence> adopt(const PriorityChain& chain, const StatusMap& statuses,
                                     const CollisionSet& collisions) {
    std::vector<Occurrence> out;
    const int length = static_cast<int>(chain.rights.size());
    for (int x = 1; x <= length; ++x) {
        const auto& right = chain.rights[x - 1];
        if (status_of(statuses, right) == Status::Demoted) continue;
        bool clash = std::any_of(out.begin(), out.end(),
                                 [&](const Occurrence& o) { return collide(collisions, o.right, right); });
        if (!clash) out.push_back({right, chain.id, x, length});
    }
    return out;
}

inline const Scenario& require_scenario(const KnowledgeBase& kb, std::string_view id) {
    const Scenario* s = kb.find_scenario(id);
    if (s == nullptr) throw Error("unknown scenario '" + std::string(id) + "'");
    return *s;
}

inline ScenarioFindings assess_scenario(const KnowledgeBase& kb, std::string_view scenarioId,
                                        const EngineOptions& options = {}) {
    const Scenario& scenario = require_scenario(kb, scenarioId);
    ScenarioFindings f;
    f.scenario = scenario.id;

    const auto fired = fire_rules(kb, scenario);
    const auto rights = right_ids(kb);
    f.statuses = resolve_statuses(fired, rights, &f.diagnostics);
    for (auto& d : f.diagnostics) d.message = "scenario '" + scenario.id + "': " + d.message;
    f.collisions = derive_collisions(kb, scenario, fired, f.statuses, options);

    std::set<std::string> chained;
    for (const auto& c : fired) {
        const auto* head = std::get_if<ChainHead>(&c.head);
        if (head == nullptr) continue;
        const Rule* rule = kb.find_rule(c.ruleId);
        PriorityChain chain{c.ruleId, head->rights, rule != nullptr ? rule->body : std::vector<FeatureLiteral>{}};
        for (auto& occ : adopt(chain, f.statuses, f.collisions)) f.adopted.push_back(std::move(occ));
        const int length = static_cast<int>(chain.rights.size());
        for (int x = 1; x <= length; ++x) {
            chained.insert(chain.rights[x - 1]);
            if (status_of(f.statuses, chain.rights[x - 1]) == Status::Demoted)
                f.demotedOccurrences.push_back({chain.rights[x - 1], chain.id, x, length});
        }
        f.firedChains.push_back(std::move(chain));
    }

    // Singleton convention for rights outside every fired chain.
    for (const auto& right : rights) {
        if (chained.count(right) != 0) continue;
        const Status s = status_of(f.statuses, right);
        if (s == Status::Promoted) f.adopted.push_back({right, std::string(kSingletonChain), 1, 1});
        else if (s == Status::Demoted) f.demotedOccurrences.push_back({right, std::string(kSingletonChain), 1, 1});
    }
    return f;
}

// Warn when Y's features include X's yet Y promotes a right X demotes (or
// the reverse).
inline std::vector<Diagnostic> check_monotonicity(const KnowledgeBase& kb, const EngineOptions& options = {}) {
    if (!options.monotonicityCheck) return {};
    const auto rights = right_ids(kb);
    std::vector<StatusMap> statuses;
    std::vector<std::set<FeatureLiteral>> features;
    for (const auto& s : kb.scenarios) {
        statuses.push_back(resolve_statuses(fire_rules(kb, s), rights));
        features.emplace_back(s.features.begin(), s.features.end());
    }
    std::set<Diagnostic> out;
    for (std::size_t x = 0; x < kb.scenarios.size(); ++x) {
        for (std::size_t y = 0; y < kb.scenarios.size(); ++y) {
            if (x == y || !std::includes(features[y].begin(), features[y].end(), features[x].begin(), features[x].end()))
                continue;
            const auto& sx = kb.scenarios[x].id;
            const auto& sy = kb.scenarios[y].id;
            for (const auto& r : rights) {
                const Status ys = status_of(statuses[y], r);
                const Status xs = status_of(statuses[x], r);
                if (ys == Status::Promoted && xs == Status::Demoted)
                    out.insert({Severity::Warning, "monotonicity",
                                "'" + sy + "' includes the features of '" + sx + "' but promotes '" + r + "' while '" +
                                    sx + "' demotes it"});
                else if (ys == Status::Demoted && xs == Status::Promoted)
                    out.insert({Severity::Warning, "monotonicity",
                                "'" + sy + "' includes the features of '" + sx + "' but demotes '" + r + "' while '" +
                                    sx + "' promotes it"});
            }
        }
    }
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Explanations

struct DerivationTrace {
    std::string conclusion;
    std::string rule;
    std::vector<DerivationTrace> premises;

    bool operator==(const DerivationTrace&) const = default;
};

struct Explanation {
    std::optional<DerivationTrace> trace;
    std::string blocked; // closest blocked step when not derivable

    bool derivable() const { return trace.has_value(); }
};

struct Conclusion {
    enum class Kind { Promotes, Demotes, NotDemotes, Collides, Choice };

    Kind kind = Kind::Choice;
    std::optional<std::string> scenario;
    std::vector<std::string> rights;
};

// `pred(S, R)`, `pred(R)`, `collides(S, A, B)` or `collides(A, B)`, with pred
// one of promotes, demotes, not_demotes, choice (case-insensitive).
inline Conclusion parse_conclusion(std::string_view text) {
    auto fail = [&](const std::string& why) -> Conclusion {
        throw ParseError({"<conclusion>", 1, 1, 1, static_cast<int>(text.size()) + 1},
                         "malformed conclusion '" + std::string(text) + "': " + why);
    };
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::string_view body = trim(text);
    auto open = body.find('(');
    if (open == std::string_view::npos || body.back() != ')') return fail("expected pred(args)");
    std::string pred(trim(body.substr(0, open)));
    for (auto& ch : pred) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    std::vector<std::string> args;
    std::string_view rest = body.substr(open + 1, body.size() - open - 2);
    while (true) {
        auto comma = rest.find(',');
        std::string_view arg = trim(rest.substr(0, comma));
        if (arg.empty() || !std::all_of(arg.begin(), arg.end(), [](char c) {
                return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
            }) || std::isdigit(static_cast<unsigned char>(arg.front())))
            return fail("bad argument");
        args.emplace_back(arg);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    Conclusion c;
    if (pred == "promotes") c.kind = Conclusion::Kind::Promotes;
    else if (pred == "demotes") c.kind = Conclusion::Kind::Demotes;
    else if (pred == "not_demotes") c.kind = Conclusion::Kind::NotDemotes;
    else if (pred == "collides" || pred == "collide") c.kind = Conclusion::Kind::Collides;
    else if (pred == "choice") c.kind = Conclusion::Kind::Choice;
    else return fail("unknown predicate '" + pred + "'");
    const std::size_t arity = c.kind == Conclusion::Kind::Collides ? 2 : 1;
    if (args.size() == arity + 1) {
        c.scenario = args.front();
        args.erase(args.begin());
    } else if (args.size() != arity) {
        return fail("wrong number of arguments");
    }
    c.rights = std::move(args);
    return c;
}

inline std::string render_trace(const DerivationTrace& t, int depth = 0) {
    std::string out(static_cast<std::size_t>(depth) * 2, ' ');
    out += t.conclusion + "  [" + t.rule + "]\n";
    for (const auto& p : t.premises) out += render_trace(p, depth + 1);
    return out;
}

namespace detail {

class Explainer {
public:
    Explainer(const KnowledgeBase& kb, const Scenario& s, const EngineOptions& options)
        : kb_(kb), scenario_(s), options_(options), fired_(fire_rules(kb, s)),
          findings_(assess_scenario(kb, s.id, options)), table_(contests(fired_)) {}

    Explanation explain(const Conclusion& c) {
        for (const auto& r : c.rights)
            if (kb_.find_right(r) == nullptr) throw Error("unknown right '" + r + "'");
        switch (c.kind) {
        case Conclusion::Kind::Promotes: return status(c.rights[0], Status::Promoted);
        case Conclusion::Kind::Demotes: return status(c.rights[0], Status::Demoted);
        case Conclusion::Kind::NotDemotes: return not_demotes(c.rights[0]);
        case Conclusion::Kind::Collides: return collision(c.rights[0], c.rights[1]);
        case Conclusion::Kind::Choice: return choice(c.rights[0]);
        }
        return {};
    }

private:
    std::string in_s(const std::string& pred, const std::string& args) const {
        return pred + "(" + scenario_.id + ", " + args + ")";
    }

    DerivationTrace rule_node(const std::string& ruleId, const std::string& conclusion) const {
        DerivationTrace t{conclusion, ruleId, {}};
        const Rule* rule = kb_.find_rule(ruleId);
        if (rule != nullptr && !rule->origin)
            for (const auto& lit : rule->body) t.premises.push_back({to_string(lit), "feature of " + scenario_.id, {}});
        return t;
    }

    // Closest blocked rule with the given head, if any.
    std::string blocked_by_body(AssertionKind kind, const std::string& right) const {
        for (const auto& rule : kb_.rules) {
            const auto* a = std::get_if<Assertion>(&rule.head);
            if (a == nullptr || a->kind != kind || a->rights.size() != 1 || a->rights[0] != right) continue;
            for (const auto& lit : rule.body)
                if (!satisfies(scenario_.features, std::span<const FeatureLiteral>(&lit, 1)))
                    return "rule " + rule.id + " is blocked: '" + to_string(lit) + "' is not a feature of " +
                           scenario_.id;
        }
        return "no rule concludes " + std::string(to_string(kind)) + "(" + right + ")";
    }

    Explanation status(const std::string& right, Status wanted) {
        const Status actual = status_of(findings_.statuses, right);
        const bool promote = wanted == Status::Promoted;
        const std::string text = in_s(promote ? "promotes" : "demotes", right);
        auto it = table_.find(right);
        if (actual == wanted) {
            const auto& winner = promote ? it->second.promote : it->second.demote;
            return {rule_node(winner.rules.front(), text), {}};
        }
        const auto kind = promote ? AssertionKind::Promotes : AssertionKind::Demotes;
        const bool fired = it != table_.end() && (promote ? it->second.promote : it->second.demote).strength;
        if (!fired) return {std::nullopt, blocked_by_body(kind, right)};
        const auto& c = it->second;
        if (!promote && !demote_survives(c))
            return {std::nullopt, "demotion of " + right + " is cancelled by not_demotes rule " +
                                      join_ids(c.notDemote.rules)};
        if (actual == Status::Undefined)
            return {std::nullopt, "promotes/demotes of " + right + " tie at strength " +
                                      std::to_string(*c.promote.strength) + " (rules " + join_ids(c.promote.rules) +
                                      " vs " + join_ids(c.demote.rules) + ")"};
        const auto& winner = promote ? c.demote : c.promote;
        return {std::nullopt, "defeated by rule " + join_ids(winner.rules) + " (strength " +
                                  std::to_string(*winner.strength) + ")"};
    }

    Explanation not_demotes(const std::string& right) {
        auto it = table_.find(right);
        if (it == table_.end() || !it->second.notDemote.strength)
            return {std::nullopt, blocked_by_body(AssertionKind::NotDemotes, right)};
        if (status_of(findings_.statuses, right) == Status::Demoted)
            return {std::nullopt, "overridden by demotes rule " + join_ids(it->second.demote.rules) + " (strength " +
                                      std::to_string(*it->second.demote.strength) + ")"};
        return {rule_node(it->second.notDemote.rules.front(), in_s("not_demotes", right)), {}};
    }

    Explanation collision(const std::string& a, const std::string& b) {
        const RightPair p(a, b);
        const std::string text = in_s("collides", p.first + ", " + p.second);
        auto src = collision_sources(fired_);
        if (findings_.collisions.count(p) == 0) {
            if (negation_survives(src, p))
                return {std::nullopt, "excluded by not_collides rule " + src.negatedRule.at(p)};
            return {std::nullopt, "no rule, definition or promotion/demotion pair makes " + p.first + " and " +
                                      p.second + " collide in " + scenario_.id};
        }
        if (auto e = src.explicitRule.find(p); e != src.explicitRule.end()) return {rule_node(e->second, text), {}};
        if (logical_clash(kb_, p.first, p.second))
            return {DerivationTrace{text, "logical incompatibility", {}}, {}};
        const Status s1 = status_of(findings_.statuses, p.first);
        const std::string& promoted = s1 == Status::Promoted ? p.first : p.second;
        const std::string& demoted = s1 == Status::Promoted ? p.second : p.first;
        DerivationTrace t{text, "promotion/demotion collision", {}};
        t.premises.push_back(*status(promoted, Status::Promoted).trace);
        t.premises.push_back(*status(demoted, Status::Demoted).trace);
        return {t, {}};
    }

    Explanation choice(const std::string& right) {
        const std::string text = in_s("choice", right);
        auto occ = std::find_if(findings_.adopted.begin(), findings_.adopted.end(),
                                [&](const Occurrence& o) { return o.right == right; });
        if (occ == findings_.adopted.end()) return {std::nullopt, choice_blocked(right)};
        if (occ->chain == kSingletonChain) {
            DerivationTrace t{text, "singleton convention", {}};
            t.premises.push_back(*status(right, Status::Promoted).trace);
            return {t, {}};
        }
        return {chain_choice(*occ), {}};
    }

    DerivationTrace chain_choice(const Occurrence& occ) {
        const PriorityChain& chain = *std::find_if(findings_.firedChains.begin(), findings_.firedChains.end(),
                                                   [&](const PriorityChain& c) { return c.id == occ.chain; });
        DerivationTrace chain_node = rule_node(chain.id, to_string(RuleHead{ChainHead{chain.rights}}));
        bool all_demoted = true;
        for (int x = 1; x < occ.position; ++x)
            all_demoted = all_demoted && status_of(findings_.statuses, chain.rights[x - 1]) == Status::Demoted;
        const char* which = occ.position == 1 ? "adoption rule 1" : all_demoted ? "adoption rule 2" : "adoption rule 3";
        DerivationTrace t{in_s("choice", occ.right) + " " + "<" + std::to_string(occ.position) + "," +
                              std::to_string(occ.length) + ">",
                          which,
                          {chain_node}};
        for (int x = 1; x < occ.position; ++x) {
            const auto& earlier = chain.rights[x - 1];
            if (status_of(findings_.statuses, earlier) == Status::Demoted) {
                t.premises.push_back(*status(earlier, Status::Demoted).trace);
                continue;
            }
            auto prev = std::find_if(findings_.adopted.begin(), findings_.adopted.end(), [&](const Occurrence& o) {
                return o.chain == chain.id && o.position == x;
            });
            if (prev == findings_.adopted.end()) continue;
            t.premises.push_back(chain_choice(*prev));
            RightPair p(earlier, occ.right);
            t.premises.push_back({"not collides(" + scenario_.id + ", " + p.first + ", " + p.second + ")",
                                  "no collision derived", {}});
        }
        return t;
    }

    std::string choice_blocked(const std::string& right) const {
        if (status_of(findings_.statuses, right) == Status::Demoted)
            return right + " is demoted in " + scenario_.id;
        for (const auto& chain : findings_.firedChains) {
            auto pos = std::find(chain.rights.begin(), chain.rights.end(), right);
            if (pos == chain.rights.end()) continue;
            for (const auto& o : findings_.adopted)
                if (o.chain == chain.id && collide(findings_.collisions, o.right, right))
                    return right + " collides with " + o.right + ", adopted earlier in chain " + chain.id;
        }
        return right + " is in no fired chain and is not promoted in " + scenario_.id;
    }

    const KnowledgeBase& kb_;
    const Scenario& scenario_;
    EngineOptions options_;
    std::vector<FiredConclusion> fired_;
    ScenarioFindings findings_;
    std::map<std::string, Contest> table_;
};

} // namespace detail

inline Explanation explain(const KnowledgeBase& kb, std::string_view scenarioId, const Conclusion& conclusion,
                           const EngineOptions& options = {}) {
    if (conclusion.scenario && *conclusion.scenario != scenarioId)
        throw Error("conclusion names scenario '" + *conclusion.scenario + "' but '" + std::string(scenarioId) +
                    "' was selected");
    const Scenario& s = require_scenario(kb, scenarioId);
    return detail::Explainer(kb, s, options).explain(conclusion);
}

inline Explanation explain(const KnowledgeBase& kb, const Conclusion& conclusion, const EngineOptions& options = {}) {
    if (!conclusion.scenario) throw Error("conclusion does not name a scenario");
    return explain(kb, *conclusion.scenario, conclusion, options);
}

} // namespace rightsrisk
