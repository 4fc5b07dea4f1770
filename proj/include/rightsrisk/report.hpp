#pragma once

// Assessment bundles and FRIA-style reports.
//
// A bundle gathers engine findings, degrees and the minimizer result for one
// scenario, domain or purpose. build_report() turns it into a report laid out
// after Art. 27 (a), (d), (e), (f) of the AI Act, followed by the eleven
// Art. 26 deployer duties as a checklist whose statuses the analyst supplies.

#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "rightsrisk/dsl.hpp"
#include "rightsrisk/engine.hpp"
#include "rightsrisk/minimizer.hpp"
#include "rightsrisk/riskmatrix.hpp"
#include "rightsrisk/scoring.hpp"

namespace rightsrisk {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Bundles

struct ScenarioAssessment {
    ScenarioFindings findings;
    DegreeBreakdown degree;
    std::optional<MagnitudeResult> risk;
};

struct AssessmentBundle {
    std::string level; // scenario | domain | purpose
    std::string target;
    std::vector<ScenarioAssessment> scenarios;
    std::vector<UnitDegree> unitDegrees; // scenarios of a domain, or domains of a purpose
    Rational totalDegree;
    std::optional<MinimizationResult> minimization;
    std::vector<Diagnostic> diagnostics;
};

namespace detail {

inline ScenarioAssessment assess_one(const KnowledgeBase& kb, const std::string& id, const EngineOptions& options) {
    ScenarioAssessment a;
    a.findings = assess_scenario(kb, id, options);
    a.degree = degree_scenario(a.findings);
    if (const auto* risk = kb.find_risk(id)) {
        try {
            a.risk = assess_risk(*risk);
        } catch (const Error&) {
            // out-of-range annotations are already reported by validate_kb
        }
    }
    return a;
}

inline void collect_diagnostics(const KnowledgeBase& kb, AssessmentBundle& b, const EngineOptions& options) {
    std::set<Diagnostic> all;
    for (auto& d : validate_kb(kb)) all.insert(std::move(d));
    for (auto& d : check_monotonicity(kb, options)) all.insert(std::move(d));
    for (const auto& s : b.scenarios)
        for (const auto& d : s.findings.diagnostics) all.insert(d);
    b.diagnostics.assign(all.begin(), all.end());
}

} // namespace detail

inline AssessmentBundle assess_scenario_bundle(const KnowledgeBase& kb, std::string_view scenarioId,
                                               const EngineOptions& options = {}) {
    AssessmentBundle b;
    b.level = "scenario";
    b.target = std::string(scenarioId);
    b.scenarios.push_back(detail::assess_one(kb, require_scenario(kb, scenarioId).id, options));
    b.unitDegrees.push_back({b.target, b.scenarios.front().degree.degree});
    b.totalDegree = b.scenarios.front().degree.degree;
    detail::collect_diagnostics(kb, b, options);
    return b;
}

// A named group of scenarios; used for declared domains and for the implicit
// domain of a knowledge base that declares none.
inline AssessmentBundle assess_scenarios_bundle(const KnowledgeBase& kb, std::string name,
                                                const std::vector<std::string>& scenarios, SearchMode mode,
                                                const EngineOptions& options = {}) {
    if (scenarios.empty()) throw Error("no scenarios to assess");
    AssessmentBundle b;
    b.level = "domain";
    b.target = std::move(name);
    for (const auto& id : scenarios) {
        b.scenarios.push_back(detail::assess_one(kb, id, options));
        b.unitDegrees.push_back({id, b.scenarios.back().degree.degree});
        b.totalDegree += b.scenarios.back().degree.degree;
    }
    b.minimization = minimize_units(b.unitDegrees, mode);
    detail::collect_diagnostics(kb, b, options);
    return b;
}

inline AssessmentBundle assess_domain_bundle(const KnowledgeBase& kb, std::string_view domainId, SearchMode mode,
                                             const EngineOptions& options = {}) {
    const auto& d = require_domain(kb, domainId);
    if (mode == SearchMode::Exhaustive && d.scenarios.size() > kExhaustiveLimit)
        throw Error("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " units (got " +
                    std::to_string(d.scenarios.size()) + "); use fast mode");
    return assess_scenarios_bundle(kb, d.id, d.scenarios, mode, options);
}

inline AssessmentBundle assess_purpose_bundle(const KnowledgeBase& kb, std::string_view purposeId, SearchMode mode,
                                              const EngineOptions& options = {}) {
    const auto& p = require_purpose(kb, purposeId);
    if (mode == SearchMode::Exhaustive && p.domains.size() > kExhaustiveLimit)
        throw Error("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " units (got " +
                    std::to_string(p.domains.size()) + "); use fast mode");
    AssessmentBundle b;
    b.level = "purpose";
    b.target = p.id;
    std::set<std::string> seen;
    for (const auto& did : p.domains) {
        const auto& d = require_domain(kb, did);
        Rational degree;
        for (const auto& sid : d.scenarios) {
            auto a = detail::assess_one(kb, sid, options);
            degree += a.degree.degree;
            if (seen.insert(sid).second) b.scenarios.push_back(std::move(a));
        }
        b.unitDegrees.push_back({d.id, degree});
        b.totalDegree += degree;
    }
    b.minimization = minimize_units(b.unitDegrees, mode);
    detail::collect_diagnostics(kb, b, options);
    return b;
}

// ---------------------------------------------------------------------------
// JSON helpers shared by bundles and reports

inline json to_json(const Occurrence& o) {
    return json{{"right", o.right}, {"chain", o.chain}, {"position", o.position}, {"length", o.length}};
}

inline Occurrence occurrence_from_json(const json& j) {
    return {j.at("right").get<std::string>(), j.at("chain").get<std::string>(), j.at("position").get<int>(),
            j.at("length").get<int>()};
}

inline json to_json(const MagnitudeResult& m) {
    return json{{"likelihood", m.likelihood},
                {"severity", m.severity},
                {"magnitude", m.magnitude},
                {"band", to_string(m.band)},
                {"label", kRiskMatrixLabel}};
}

inline MagnitudeResult magnitude_from_json(const json& j) {
    MagnitudeResult m{j.at("likelihood").get<int>(), j.at("severity").get<int>(), j.at("magnitude").get<int>(),
                      RiskBand::Low};
    auto band = risk_band_from(j.at("band").get<std::string>());
    if (!band) throw Error("unknown risk band '" + j.at("band").get<std::string>() + "'");
    m.band = *band;
    return m;
}

inline json to_json(const MinimizationResult& r) {
    json degrees = json::object();
    for (const auto& [id, d] : r.perUnitDegrees) degrees[id] = d.str();
    return json{{"method", to_string(r.method)},
                {"optimalDegree", r.optimalDegree.str()},
                {"maximizerCount", r.maximizerCount},
                {"maximizers", r.maximizers},
                {"canonical", r.canonical},
                {"perUnitDegrees", degrees}};
}

inline json to_json(const Diagnostic& d) {
    return json{{"severity", to_string(d.severity)}, {"code", d.code}, {"message", d.message}};
}

inline json to_json(const ScenarioAssessment& a) {
    json statuses = json::object();
    for (const auto& [r, s] : a.findings.statuses) statuses[r] = to_string(s);
    json collisions = json::array();
    for (const auto& p : a.findings.collisions) collisions.push_back({p.first, p.second});
    json chains = json::array();
    for (const auto& c : a.findings.firedChains) chains.push_back({{"id", c.id}, {"rights", c.rights}});
    json adopted = json::array();
    for (const auto& o : a.findings.adopted) adopted.push_back(to_json(o));
    json demoted = json::array();
    for (const auto& o : a.findings.demotedOccurrences) demoted.push_back(to_json(o));
    json occ = json::array();
    for (const auto& w : a.degree.perOccurrence) {
        json j = to_json(w.occurrence);
        j["side"] = to_string(w.side);
        j["weight"] = w.weight.str();
        occ.push_back(std::move(j));
    }
    return json{{"scenario", a.findings.scenario},
                {"statuses", statuses},
                {"collisions", collisions},
                {"firedChains", chains},
                {"adopted", adopted},
                {"demoted", demoted},
                {"degree",
                 {{"xi", a.degree.xi.str()},
                  {"delta", a.degree.delta.str()},
                  {"degree", a.degree.degree.str()},
                  {"perOccurrence", occ}}},
                {"risk", a.risk ? to_json(*a.risk) : json(nullptr)}};
}

inline json to_json(const AssessmentBundle& b) {
    json scenarios = json::array();
    for (const auto& s : b.scenarios) scenarios.push_back(to_json(s));
    json units = json::object();
    for (const auto& u : b.unitDegrees) units[u.id] = u.degree.str();
    json diags = json::array();
    for (const auto& d : b.diagnostics) diags.push_back(to_json(d));
    return json{{"level", b.level},
                {"target", b.target},
                {"scenarios", scenarios},
                {"degrees", {{"total", b.totalDegree.str()}, {"units", units}}},
                {"minimization", b.minimization ? to_json(*b.minimization) : json(nullptr)},
                {"diagnostics", diags}};
}

// ---------------------------------------------------------------------------
// Reports

enum class ChecklistStatus { Addressed, Unaddressed, NotApplicable };

inline const char* to_string(ChecklistStatus s) {
    switch (s) {
    case ChecklistStatus::Addressed: return "addressed";
    case ChecklistStatus::Unaddressed: return "unaddressed";
    case ChecklistStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

inline std::optional<ChecklistStatus> checklist_status_from(std::string_view s) {
    for (auto c : {ChecklistStatus::Addressed, ChecklistStatus::Unaddressed, ChecklistStatus::NotApplicable})
        if (s == to_string(c)) return c;
    return std::nullopt;
}

// Art. 26 deployer duties.
inline constexpr std::array<const char*, 11> kDeployerDuties = {
    "Technical and organisational measures so the system is used according to its instructions",
    "Competent, trained and empowered staff for human oversight",
    "Relevant and representative input data",
    "Monitoring of operation, risk notification to the provider, suspension where needed",
    "Log retention and incident reporting to authorities",
    "Prior information of workers' representatives and affected workers",
    "Registration duties of public authorities and EU bodies",
    "Data protection impact assessment using the provider's information",
    "Authorisation for use in criminal investigations",
    "Documentation and annual reporting of law-enforcement use",
    "Information of affected persons and cooperation with national authorities",
};

struct ChecklistItem {
    int item = 0;
    std::string duty;
    ChecklistStatus status = ChecklistStatus::Unaddressed;

    bool operator==(const ChecklistItem&) const = default;
};

struct HarmEntry {
    std::string scenario;
    std::vector<std::string> features;
    std::vector<std::string> obligations;
    std::map<std::string, std::string> statuses;
    std::vector<std::pair<std::string, std::string>> collisions;
    std::vector<Occurrence> adopted;
    std::vector<Occurrence> demoted;
    Rational xi;
    Rational delta;
    Rational degree;
    std::optional<MagnitudeResult> risk;
    std::vector<std::string> traceRefs;

    bool operator==(const HarmEntry&) const = default;
};

struct MinimizationSummary {
    std::string method;
    Rational optimalDegree;
    std::uint64_t maximizerCount = 0;
    std::vector<std::vector<std::string>> maximizers;
    std::vector<std::string> canonical;

    bool operator==(const MinimizationSummary&) const = default;
};

struct ReportMeta {
    std::string system;
    std::string generatedAt;
    std::string kbHash;
    std::string level;
    std::string target;

    bool operator==(const ReportMeta&) const = default;
};

struct FriaReport {
    ReportMeta meta;
    std::string processDescription;  // Art. 27(a)
    std::vector<HarmEntry> risksOfHarm; // Art. 27(d)
    std::string oversightMeasures;   // Art. 27(e)
    std::string mitigationMeasures;  // Art. 27(f)
    Rational totalDegree;
    std::map<std::string, Rational> unitDegrees;
    std::optional<MinimizationSummary> minimization;
    std::vector<ChecklistItem> checklist;
    std::vector<std::string> diagnostics;

    bool operator==(const FriaReport&) const = default;
};

struct ReportMetadata {
    std::string systemName = "unnamed AI system";
    std::string processDescription;
    std::string oversightMeasures;
    std::string mitigationMeasures;
    std::string generatedAt;
    std::map<int, ChecklistStatus> checklist; // 1-based item -> status
};

// FNV-1a over the canonical printed knowledge base.
inline std::string kb_hash(const KnowledgeBase& kb) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : dsl::print_kb(kb)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

inline FriaReport build_report(const KnowledgeBase& kb, const AssessmentBundle& bundle, const ReportMetadata& meta) {
    for (const auto& s : bundle.scenarios)
        if (kb.find_scenario(s.findings.scenario) == nullptr)
            throw Error("bundle/kb mismatch: scenario '" + s.findings.scenario + "' is not in the knowledge base");
    if (bundle.minimization)
        for (const auto& [id, _] : bundle.minimization->perUnitDegrees)
            if (kb.find_scenario(id) == nullptr && kb.find_domain(id) == nullptr)
                throw Error("bundle/kb mismatch: unit '" + id + "' is not in the knowledge base");
    for (const auto& [item, _] : meta.checklist)
        if (item < 1 || item > static_cast<int>(kDeployerDuties.size()))
            throw Error("checklist item " + std::to_string(item) + " out of range 1..11");

    FriaReport r;
    r.meta = {meta.systemName, meta.generatedAt, kb_hash(kb), bundle.level, bundle.target};
    r.processDescription = meta.processDescription;
    r.oversightMeasures = meta.oversightMeasures;
    r.mitigationMeasures = meta.mitigationMeasures;
    r.totalDegree = bundle.totalDegree;
    for (const auto& u : bundle.unitDegrees) r.unitDegrees[u.id] = u.degree;

    for (const auto& a : bundle.scenarios) {
        HarmEntry h;
        h.scenario = a.findings.scenario;
        for (const auto& f : kb.find_scenario(h.scenario)->features) h.features.push_back(to_string(f));
        h.obligations = obligations_for(kb, h.scenario);
        for (const auto& [right, s] : a.findings.statuses) h.statuses[right] = to_string(s);
        for (const auto& p : a.findings.collisions) h.collisions.emplace_back(p.first, p.second);
        h.adopted = a.findings.adopted;
        h.demoted = a.findings.demotedOccurrences;
        h.xi = a.degree.xi;
        h.delta = a.degree.delta;
        h.degree = a.degree.degree;
        h.risk = a.risk;
        std::set<std::string> refs;
        for (const auto& o : h.demoted)
            if (refs.insert("demotes(" + h.scenario + ", " + o.right + ")").second)
                h.traceRefs.push_back("demotes(" + h.scenario + ", " + o.right + ")");
        for (const auto& o : h.adopted)
            if (refs.insert("choice(" + h.scenario + ", " + o.right + ")").second)
                h.traceRefs.push_back("choice(" + h.scenario + ", " + o.right + ")");
        r.risksOfHarm.push_back(std::move(h));
    }

    if (bundle.minimization) {
        const auto& m = *bundle.minimization;
        r.minimization = MinimizationSummary{to_string(m.method), m.optimalDegree, m.maximizerCount, m.maximizers,
                                             m.canonical};
    }
    for (std::size_t i = 0; i < kDeployerDuties.size(); ++i) {
        const int item = static_cast<int>(i) + 1;
        auto it = meta.checklist.find(item);
        r.checklist.push_back({item, kDeployerDuties[i], it == meta.checklist.end() ? ChecklistStatus::Unaddressed : it->second});
    }
    for (const auto& d : bundle.diagnostics) r.diagnostics.push_back(to_string(d));
    return r;
}

inline std::string recommendation(const MinimizationSummary& m) {
    std::string ids;
    for (const auto& id : m.canonical) ids += (ids.empty() ? "" : ", ") + id;
    return "Restrict deployment to {" + ids + "} (degree " + m.optimalDegree.str() + ", " +
           std::to_string(m.maximizerCount) + " optimal subset" + (m.maximizerCount == 1 ? "" : "s") + ", " +
           m.method + ")";
}

inline json to_json(const FriaReport& r) {
    json scenarios = json::array();
    for (const auto& h : r.risksOfHarm) {
        json collisions = json::array();
        for (const auto& [a, b] : h.collisions) collisions.push_back({a, b});
        json adopted = json::array();
        for (const auto& o : h.adopted) adopted.push_back(to_json(o));
        json demoted = json::array();
        for (const auto& o : h.demoted) demoted.push_back(to_json(o));
        scenarios.push_back({{"scenario", h.scenario},
                             {"features", h.features},
                             {"obligations", h.obligations},
                             {"statuses", h.statuses},
                             {"collisions", collisions},
                             {"adopted", adopted},
                             {"demoted", demoted},
                             {"xi", h.xi.str()},
                             {"delta", h.delta.str()},
                             {"degree", h.degree.str()},
                             {"risk", h.risk ? to_json(*h.risk) : json(nullptr)},
                             {"traceRefs", h.traceRefs}});
    }
    json units = json::object();
    for (const auto& [id, d] : r.unitDegrees) units[id] = d.str();
    json minimization = nullptr;
    if (r.minimization) {
        const auto& m = *r.minimization;
        minimization = {{"method", m.method},
                        {"optimalDegree", m.optimalDegree.str()},
                        {"maximizerCount", m.maximizerCount},
                        {"maximizers", m.maximizers},
                        {"canonical", m.canonical},
                        {"recommendation", recommendation(m)}};
    }
    json checklist = json::array();
    for (const auto& c : r.checklist)
        checklist.push_back({{"item", c.item}, {"duty", c.duty}, {"status", to_string(c.status)}});
    return json{{"meta",
                 {{"system", r.meta.system},
                  {"generatedAt", r.meta.generatedAt},
                  {"kbHash", r.meta.kbHash},
                  {"level", r.meta.level},
                  {"target", r.meta.target},
                  {"riskMatrix", kRiskMatrixLabel}}},
                {"process",
                 {{"description", r.processDescription},
                  {"oversightMeasures", r.oversightMeasures},
                  {"mitigationMeasures", r.mitigationMeasures}}},
                {"scenarios", scenarios},
                {"degrees", {{"total", r.totalDegree.str()}, {"units", units}}},
                {"minimization", minimization},
                {"checklist", checklist},
                {"diagnostics", r.diagnostics}};
}

inline FriaReport report_from_json(const json& j) {
    FriaReport r;
    const auto& meta = j.at("meta");
    r.meta = {meta.at("system").get<std::string>(), meta.at("generatedAt").get<std::string>(),
              meta.at("kbHash").get<std::string>(), meta.at("level").get<std::string>(),
              meta.at("target").get<std::string>()};
    const auto& process = j.at("process");
    r.processDescription = process.at("description").get<std::string>();
    r.oversightMeasures = process.at("oversightMeasures").get<std::string>();
    r.mitigationMeasures = process.at("mitigationMeasures").get<std::string>();
    for (const auto& s : j.at("scenarios")) {
        HarmEntry h;
        h.scenario = s.at("scenario").get<std::string>();
        h.features = s.at("features").get<std::vector<std::string>>();
        h.obligations = s.at("obligations").get<std::vector<std::string>>();
        h.statuses = s.at("statuses").get<std::map<std::string, std::string>>();
        for (const auto& c : s.at("collisions")) h.collisions.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::string>());
        for (const auto& o : s.at("adopted")) h.adopted.push_back(occurrence_from_json(o));
        for (const auto& o : s.at("demoted")) h.demoted.push_back(occurrence_from_json(o));
        h.xi = Rational::parse(s.at("xi").get<std::string>());
        h.delta = Rational::parse(s.at("delta").get<std::string>());
        h.degree = Rational::parse(s.at("degree").get<std::string>());
        if (!s.at("risk").is_null()) h.risk = magnitude_from_json(s.at("risk"));
        h.traceRefs = s.at("traceRefs").get<std::vector<std::string>>();
        r.risksOfHarm.push_back(std::move(h));
    }
    const auto& degrees = j.at("degrees");
    r.totalDegree = Rational::parse(degrees.at("total").get<std::string>());
    for (const auto& [id, d] : degrees.at("units").items()) r.unitDegrees[id] = Rational::parse(d.get<std::string>());
    if (const auto& m = j.at("minimization"); !m.is_null()) {
        r.minimization = MinimizationSummary{m.at("method").get<std::string>(),
                                             Rational::parse(m.at("optimalDegree").get<std::string>()),
                                             m.at("maximizerCount").get<std::uint64_t>(),
                                             m.at("maximizers").get<std::vector<std::vector<std::string>>>(),
                                             m.at("canonical").get<std::vector<std::string>>()};
    }
    for (const auto& c : j.at("checklist")) {
        auto status = checklist_status_from(c.at("status").get<std::string>());
        if (!status) throw Error("unknown checklist status '" + c.at("status").get<std::string>() + "'");
        r.checklist.push_back({c.at("item").get<int>(), c.at("duty").get<std::string>(), *status});
    }
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return r;
}

enum class ReportFormat { Json, Markdown };

namespace detail {

inline std::string or_placeholder(const std::string& s) { return s.empty() ? "_Not provided._" : s; }

inline std::string occurrences(const std::vector<Occurrence>& xs) {
    std::string out;
    for (const auto& o : xs) {
        if (!out.empty()) out += ", ";
        out += to_string(o);
        if (o.chain != kSingletonChain) out += " in " + o.chain;
    }
    return out.empty() ? "none" : out;
}

inline std::string render_markdown(const FriaReport& r) {
    std::string md;
    md += "# Fundamental Rights Impact Assessment: " + r.meta.system + "\n\n";
    md += "- Generated: " + (r.meta.generatedAt.empty() ? std::string("unspecified") : r.meta.generatedAt) + "\n";
    md += "- Knowledge base: `" + r.meta.kbHash + "`\n";
    md += "- Scope: " + r.meta.level + " `" + r.meta.target + "`\n";
    md += "- Overall degree of right impact: " + r.totalDegree.str() + "\n\n";

    md += "## (a) Deployer processes\n\n" + or_placeholder(r.processDescription) + "\n\n";

    md += "## (d) Specific risks of harm\n\n";
    for (const auto& h : r.risksOfHarm) {
        md += "### Scenario `" + h.scenario + "`\n\n";
        std::string feats;
        for (const auto& f : h.features) feats += (feats.empty() ? "" : ", ") + f;
        md += "- Features: " + feats + "\n";
        std::string demoted_rights;
        std::set<std::string> seen;
        for (const auto& o : h.demoted)
            if (seen.insert(o.right).second) demoted_rights += (demoted_rights.empty() ? "" : ", ") + o.right;
        md += "- Demoted rights: " + (demoted_rights.empty() ? std::string("none") : demoted_rights) + "\n";
        md += "- Demoted occurrences: " + occurrences(h.demoted) + "\n";
        md += "- Adopted rights: " + occurrences(h.adopted) + "\n";
        std::string cols;
        for (const auto& [a, b] : h.collisions) cols += (cols.empty() ? "" : ", ") + a + " / " + b;
        md += "- Collisions: " + (cols.empty() ? std::string("none") : cols) + "\n";
        md += "- Degree: " + h.degree.str() + " (xi " + h.xi.str() + ", delta " + h.delta.str() + ")\n";
        if (h.risk)
            md += "- Risk magnitude (" + std::string(kRiskMatrixLabel) + "): likelihood " +
                  std::to_string(h.risk->likelihood) + " x severity " + std::to_string(h.risk->severity) + " = " +
                  std::to_string(h.risk->magnitude) + ", " + to_string(h.risk->band) + "\n";
        else
            md += "- Risk magnitude: not annotated\n";
        std::string obls;
        for (const auto& o : h.obligations) obls += (obls.empty() ? "" : ", ") + o;
        md += "- Obligations: " + (obls.empty() ? std::string("none recorded") : obls) + "\n";
        if (!h.traceRefs.empty()) {
            md += "- Traces:";
            for (const auto& t : h.traceRefs) md += " `" + t + "`";
            md += "\n";
        }
        if (!h.statuses.empty()) {
            md += "\n| Right | Status |\n|---|---|\n";
            for (const auto& [right, s] : h.statuses) md += "| " + right + " | " + s + " |\n";
        }
        md += "\n";
    }

    md += "## (e) Human oversight measures\n\n" + or_placeholder(r.oversightMeasures) + "\n\n";

    md += "## (f) Measures if risks materialise\n\n" + or_placeholder(r.mitigationMeasures) + "\n\n";
    if (r.minimization) {
        md += "Recommendation: " + recommendation(*r.minimization) + ".\n\n";
        if (!r.unitDegrees.empty()) {
            md += "| Unit | Degree |\n|---|---|\n";
            for (const auto& [id, d] : r.unitDegrees) md += "| " + id + " | " + d.str() + " |\n";
            md += "\n";
        }
    }

    md += "## Deployer obligations checklist\n\n";
    for (const auto& c : r.checklist) {
        const char* box = c.status == ChecklistStatus::Addressed ? "[x]" : c.status == ChecklistStatus::NotApplicable ? "[-]" : "[ ]";
        md += std::to_string(c.item) + ". " + box + " " + c.duty + " (" + to_string(c.status) + ")\n";
    }
    if (!r.diagnostics.empty()) {
        md += "\n## Diagnostics\n\n";
        for (const auto& d : r.diagnostics) md += "- " + d + "\n";
    }
    return md;
}

} // namespace detail

inline std::string render(const FriaReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) return to_json(report).dump(2) + "\n";
    return detail::render_markdown(report);
}

} // namespace rightsrisk
