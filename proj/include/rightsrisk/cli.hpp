#pragma once

// `rights` command-line front end: check, assess, minimize, explain, fria.
//
// Exit codes: 0 success, 1 semantic or selection failure, 2 usage, I/O or
// parse failure.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rightsrisk/dsl.hpp"
#include "rightsrisk/engine.hpp"
#include "rightsrisk/minimizer.hpp"
#include "rightsrisk/report.hpp"
#include "rightsrisk/scoring.hpp"

namespace rightsrisk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
    std::string command;
    std::string input;
    std::string scenario;
    std::string domain;
    std::string purpose;
    bool gpai = false;
    bool noDerivedCollision = false;
    bool noMonotonicityCheck = false;
    std::string mode = "fast";
    bool json = false;
    std::string format = "markdown";
    std::string out;
    std::string fixedTime;
    std::string conclusion;
    std::string system = "unnamed AI system";
    std::string process;
    std::string oversight;
    std::string mitigation;
    std::vector<std::string> checklist;

    EngineOptions engine() const { return {!noDerivedCollision, !noMonotonicityCheck}; }
    SearchMode search() const { return mode == "exhaustive" ? SearchMode::Exhaustive : SearchMode::Fast; }
};

// Failure carrying its exit code.
class Failure : public Error {
public:
    Failure(int code, const std::string& what) : Error(what), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

namespace detail {

struct Style {
    bool color = false;
    std::string head(const std::string& s) const { return color ? "\033[1m" + s + "\033[0m" : s; }
};

inline Style style_from_env() {
    const char* v = std::getenv("RIGHTS_COLOR");
    return {v != nullptr && std::string(v) == "1"};
}

inline KnowledgeBase load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure(kExitUsage, "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return dsl::parse_kb(buf.str(), path);
}

inline KnowledgeBase load_valid(const std::string& path, std::ostream& err) {
    KnowledgeBase kb = load(path);
    auto diags = validate_kb(kb);
    if (has_errors(diags)) {
        for (const auto& d : diags) err << path << ": " << to_string(d) << '\n';
        throw Failure(kExitSemantic, "knowledge base has errors");
    }
    return kb;
}

enum class Level { Scenario, Domain, Purpose, Implicit };

struct Selection {
    Level level = Level::Implicit;
    std::string id;
};

inline Selection select(const KnowledgeBase& kb, const CliConfig& cfg, bool allowScenario = true) {
    int given = !cfg.scenario.empty() + !cfg.domain.empty() + !cfg.purpose.empty();
    if (given > 1) throw Failure(kExitUsage, "give at most one of --scenario, --domain, --purpose");
    if (!cfg.scenario.empty()) {
        if (!allowScenario) throw Failure(kExitUsage, "--scenario is not valid for this command");
        if (kb.find_scenario(cfg.scenario) == nullptr) throw Failure(kExitSemantic, "unknown scenario '" + cfg.scenario + "'");
        return {Level::Scenario, cfg.scenario};
    }
    if (!cfg.purpose.empty() || cfg.gpai) {
        if (!cfg.domain.empty()) throw Failure(kExitUsage, "--gpai selects a purpose, not a domain");
        if (!cfg.purpose.empty()) {
            if (kb.find_purpose(cfg.purpose) == nullptr) throw Failure(kExitSemantic, "unknown purpose '" + cfg.purpose + "'");
            return {Level::Purpose, cfg.purpose};
        }
        if (kb.purposes.size() == 1) return {Level::Purpose, kb.purposes.front().id};
        throw Failure(kExitSemantic, kb.purposes.empty() ? "no purpose declared" : "ambiguous purpose: pass --purpose");
    }
    if (!cfg.domain.empty()) {
        if (kb.find_domain(cfg.domain) == nullptr) throw Failure(kExitSemantic, "unknown domain '" + cfg.domain + "'");
        return {Level::Domain, cfg.domain};
    }
    if (kb.domains.size() == 1) return {Level::Domain, kb.domains.front().id};
    if (kb.domains.size() > 1) throw Failure(kExitSemantic, "ambiguous domain: pass --domain");
    if (kb.scenarios.empty()) throw Failure(kExitSemantic, "no scenarios declared");
    return {Level::Implicit, "all"};
}

inline std::vector<std::string> all_scenarios(const KnowledgeBase& kb) {
    std::vector<std::string> ids;
    for (const auto& s : kb.scenarios) ids.push_back(s.id);
    return ids;
}

inline AssessmentBundle bundle_for(const KnowledgeBase& kb, const Selection& sel, const CliConfig& cfg) {
    switch (sel.level) {
    case Level::Scenario: return assess_scenario_bundle(kb, sel.id, cfg.engine());
    case Level::Domain: return assess_domain_bundle(kb, sel.id, cfg.search(), cfg.engine());
    case Level::Purpose: return assess_purpose_bundle(kb, sel.id, cfg.search(), cfg.engine());
    case Level::Implicit: return assess_scenarios_bundle(kb, sel.id, all_scenarios(kb), cfg.search(), cfg.engine());
    }
    throw Error("unreachable");
}

inline std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
    return out;
}

inline std::string set_text(const std::vector<std::string>& xs) { return "{" + join(xs) + "}"; }

inline void print_minimization(std::ostream& out, const MinimizationResult& m, const Style& st) {
    out << st.head("minimization") << " (" << to_string(m.method) << ")\n";
    out << "  optimal degree: " << m.optimalDegree << '\n';
    out << "  maximizers: " << m.maximizerCount;
    if (m.maximizers.size() < m.maximizerCount) out << " (showing " << m.maximizers.size() << ")";
    out << '\n';
    for (const auto& s : m.maximizers) out << "    " << set_text(s) << '\n';
    out << "  canonical: " << set_text(m.canonical) << '\n';
}

inline void print_scenario(std::ostream& out, const KnowledgeBase& kb, const ScenarioAssessment& a, const Style& st) {
    const auto& f = a.findings;
    out << st.head("scenario " + f.scenario) << '\n';
    std::vector<std::string> feats;
    for (const auto& lit : kb.find_scenario(f.scenario)->features) feats.push_back(to_string(lit));
    out << "  features: " << join(feats) << '\n';
    std::vector<std::string> statuses;
    for (const auto& [r, s] : f.statuses)
        if (s != Status::Undefined) statuses.push_back(r + "=" + to_string(s));
    out << "  statuses: " << (statuses.empty() ? "all undefined" : join(statuses)) << '\n';
    std::vector<std::string> cols;
    for (const auto& p : f.collisions) cols.push_back(p.first + "~" + p.second);
    out << "  collisions: " << (cols.empty() ? "none" : join(cols)) << '\n';
    for (const auto& c : f.firedChains) out << "  chain " << c.id << ": " << join(c.rights, " > ") << '\n';
    std::vector<std::string> adopted;
    for (const auto& o : f.adopted) adopted.push_back("Choice(" + f.scenario + ", " + o.right + ")<" +
                                                      std::to_string(o.position) + "," + std::to_string(o.length) + ">");
    out << "  adopted: " << (adopted.empty() ? "none" : join(adopted)) << '\n';
    std::vector<std::string> demoted;
    for (const auto& o : f.demotedOccurrences) demoted.push_back(to_string(o));
    out << "  demoted: " << (demoted.empty() ? "none" : join(demoted)) << '\n';
    out << "  degree: " << a.degree.degree << " (xi " << a.degree.xi << ", delta " << a.degree.delta << ")\n";
    if (a.risk)
        out << "  risk: " << a.risk->magnitude << " " << to_string(a.risk->band) << " (" << kRiskMatrixLabel << ")\n";
}

inline void print_diagnostics(std::ostream& err, const std::string& file, const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) err << file << ": " << to_string(d) << '\n';
}

// --------------------------------------------------------------------------

inline int cmd_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    KnowledgeBase kb = load(cfg.input);
    auto diags = validate_kb(kb);
    if (!has_errors(diags))
        for (auto& d : check_monotonicity(kb, cfg.engine())) diags.push_back(std::move(d));
    const bool ok = !has_errors(diags);
    if (cfg.json) {
        json ds = json::array();
        for (const auto& d : diags) ds.push_back(to_json(d));
        out << json{{"file", cfg.input}, {"ok", ok}, {"diagnostics", ds}}.dump(2) << '\n';
    } else {
        print_diagnostics(err, cfg.input, diags);
        if (ok)
            out << cfg.input << ": ok (" << kb.scenarios.size() << " scenarios, " << kb.rights.size() << " rights, "
                << kb.rules.size() << " rules)\n";
    }
    return ok ? kExitOk : kExitSemantic;
}

inline int cmd_assess(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    KnowledgeBase kb = load_valid(cfg.input, err);
    auto sel = select(kb, cfg);
    auto bundle = bundle_for(kb, sel, cfg);
    if (cfg.json) {
        out << to_json(bundle).dump(2) << '\n';
        return kExitOk;
    }
    const Style st = style_from_env();
    for (const auto& s : bundle.scenarios) print_scenario(out, kb, s, st);
    if (sel.level == Level::Purpose)
        for (const auto& u : bundle.unitDegrees) out << "domain " << u.id << " degree: " << u.degree << '\n';
    if (sel.level != Level::Scenario) out << bundle.level << " " << bundle.target << " degree: " << bundle.totalDegree << '\n';
    if (bundle.minimization) print_minimization(out, *bundle.minimization, st);
    print_diagnostics(err, cfg.input, bundle.diagnostics);
    return kExitOk;
}

inline int cmd_minimize(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    KnowledgeBase kb = load_valid(cfg.input, err);
    auto sel = select(kb, cfg, false);
    MinimizationResult m;
    switch (sel.level) {
    case Level::Domain: m = minimize_domain(kb, sel.id, cfg.search(), cfg.engine()); break;
    case Level::Purpose: m = minimize_purpose(kb, sel.id, cfg.search(), cfg.engine()); break;
    default: m = minimize_scenarios(kb, all_scenarios(kb), cfg.search(), cfg.engine()); break;
    }
    if (cfg.json) {
        json j = to_json(m);
        j["level"] = sel.level == Level::Purpose ? "purpose" : "domain";
        j["target"] = sel.id;
        out << j.dump(2) << '\n';
    } else {
        out << (sel.level == Level::Purpose ? "purpose " : "domain ") << sel.id << '\n';
        print_minimization(out, m, style_from_env());
    }
    return kExitOk;
}

inline json trace_json(const DerivationTrace& t) {
    json premises = json::array();
    for (const auto& p : t.premises) premises.push_back(trace_json(p));
    return json{{"conclusion", t.conclusion}, {"rule", t.rule}, {"premises", premises}};
}

inline int cmd_explain(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    Conclusion c;
    try {
        c = parse_conclusion(cfg.conclusion);
    } catch (const ParseError& e) {
        throw Failure(kExitUsage, e.message());
    }
    KnowledgeBase kb = load_valid(cfg.input, err);
    std::string scenario = cfg.scenario;
    if (scenario.empty() && c.scenario) scenario = *c.scenario;
    if (scenario.empty()) {
        if (kb.scenarios.size() != 1) throw Failure(kExitSemantic, "ambiguous scenario: pass --scenario or name it in the conclusion");
        scenario = kb.scenarios.front().id;
    }
    if (kb.find_scenario(scenario) == nullptr) throw Failure(kExitSemantic, "unknown scenario '" + scenario + "'");
    Explanation e = explain(kb, scenario, c, cfg.engine());
    if (cfg.json) {
        out << json{{"scenario", scenario},
                    {"conclusion", cfg.conclusion},
                    {"derivable", e.derivable()},
                    {"trace", e.trace ? trace_json(*e.trace) : json(nullptr)},
                    {"blocked", e.blocked}}
                   .dump(2)
            << '\n';
    } else if (e.trace) {
        out << render_trace(*e.trace);
    } else {
        out << "not derivable: " << e.blocked << '\n';
    }
    return kExitOk;
}

inline std::string now_rfc3339() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline int cmd_fria(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    static const std::regex rfc3339(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:\d{2}))");
    if (!cfg.fixedTime.empty() && !std::regex_match(cfg.fixedTime, rfc3339))
        throw Failure(kExitUsage, "--fixed-time expects an RFC 3339 timestamp");
    ReportMetadata meta;
    meta.systemName = cfg.system;
    meta.processDescription = cfg.process;
    meta.oversightMeasures = cfg.oversight;
    meta.mitigationMeasures = cfg.mitigation;
    meta.generatedAt = cfg.fixedTime.empty() ? now_rfc3339() : cfg.fixedTime;
    for (const auto& entry : cfg.checklist) {
        auto eq = entry.find('=');
        std::optional<ChecklistStatus> status;
        int item = 0;
        if (eq != std::string::npos) {
            status = checklist_status_from(entry.substr(eq + 1));
            try {
                item = std::stoi(entry.substr(0, eq));
            } catch (const std::exception&) {
                item = 0;
            }
        }
        if (!status || item < 1 || item > static_cast<int>(kDeployerDuties.size()))
            throw Failure(kExitUsage, "--checklist expects N=addressed|unaddressed|not-applicable with N in 1..11");
        meta.checklist[item] = *status;
    }

    KnowledgeBase kb = load_valid(cfg.input, err);
    auto sel = select(kb, cfg);
    auto report = build_report(kb, bundle_for(kb, sel, cfg), meta);
    const auto format = cfg.format == "json" ? ReportFormat::Json : ReportFormat::Markdown;
    const std::string text = render(report, format);

    std::optional<RiskBand> worst;
    for (const auto& h : report.risksOfHarm)
        if (h.risk && (!worst || h.risk->band > *worst)) worst = h.risk->band;
    std::string summary = report.meta.level + " " + report.meta.target + ": degree " + report.totalDegree.str() +
                          ", highest band " + (worst ? to_string(*worst) : "n/a");
    if (cfg.out.empty()) {
        out << text;
        err << summary << '\n';
        return kExitOk;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) throw Failure(kExitUsage, "cannot write '" + cfg.out + "'");
    out << "wrote " << cfg.out << " (" << summary << ")\n";
    return kExitOk;
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Fundamental-rights risk assessment over .rights knowledge bases", "rights"};
    app.require_subcommand(1);

    auto add_engine_flags = [&](CLI::App* sub) {
        sub->add_flag("--no-derived-collision", cfg.noDerivedCollision,
                      "Do not derive collisions from promoted/demoted pairs");
        sub->add_flag("--no-monotonicity-check", cfg.noMonotonicityCheck, "Skip monotonicity warnings");
    };
    auto add_selectors = [&](CLI::App* sub, bool scenario) {
        if (scenario) sub->add_option("--scenario", cfg.scenario, "Assess a single scenario");
        sub->add_option("--domain", cfg.domain, "Deployment domain");
        sub->add_option("--purpose", cfg.purpose, "General purpose (GPAI)");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "Subset search: exhaustive or fast")
            ->check(CLI::IsMember({"exhaustive", "fast"}));
    };

    auto* check = app.add_subcommand("check", "Parse and validate a knowledge base");
    check->add_option("file", cfg.input, "Input .rights file")->required();
    check->add_flag("--json", cfg.json, "Machine-readable output");
    add_engine_flags(check);

    auto* assess = app.add_subcommand("assess", "Statuses, adoptions, collisions and degrees");
    assess->add_option("file", cfg.input, "Input .rights file")->required();
    add_selectors(assess, true);
    add_mode(assess);
    add_engine_flags(assess);
    assess->add_flag("--json", cfg.json, "Emit the assessment bundle as JSON");

    auto* minimize = app.add_subcommand("minimize", "Degree-maximizing subsets of scenarios or domains");
    minimize->add_option("file", cfg.input, "Input .rights file")->required();
    add_selectors(minimize, false);
    minimize->add_flag("--gpai", cfg.gpai, "Minimize over the domains of a purpose");
    add_mode(minimize);
    add_engine_flags(minimize);
    minimize->add_flag("--json", cfg.json, "Machine-readable output");

    auto* explainCmd = app.add_subcommand("explain", "Derivation trace for one conclusion");
    explainCmd->add_option("file", cfg.input, "Input .rights file")->required();
    explainCmd->add_option("conclusion", cfg.conclusion, "e.g. 'choice(S, public_health)'")->required();
    explainCmd->add_option("--scenario", cfg.scenario, "Scenario to explain in");
    add_engine_flags(explainCmd);
    explainCmd->add_flag("--json", cfg.json, "Machine-readable output");

    auto* fria = app.add_subcommand("fria", "Write a fundamental rights impact assessment report");
    fria->add_option("file", cfg.input, "Input .rights file")->required();
    add_selectors(fria, true);
    add_mode(fria);
    add_engine_flags(fria);
    fria->add_option("--format", cfg.format, "markdown or json")->check(CLI::IsMember({"markdown", "json"}));
    fria->add_option("--out", cfg.out, "Output path (default: stdout)");
    fria->add_option("--fixed-time", cfg.fixedTime, "RFC 3339 timestamp to record instead of now");
    fria->add_option("--system", cfg.system, "Name of the assessed AI system");
    fria->add_option("--process", cfg.process, "Description of the deployer's processes");
    fria->add_option("--oversight", cfg.oversight, "Human oversight measures");
    fria->add_option("--mitigation", cfg.mitigation, "Measures if risks materialise");
    fria->add_option("--checklist", cfg.checklist, "Checklist status, N=addressed|unaddressed|not-applicable");

    std::vector<const char*> argv{"rights"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    try {
        if (cfg.command == "check") return detail::cmd_check(cfg, out, err);
        if (cfg.command == "assess") return detail::cmd_assess(cfg, out, err);
        if (cfg.command == "minimize") return detail::cmd_minimize(cfg, out, err);
        if (cfg.command == "explain") return detail::cmd_explain(cfg, out, err);
        if (cfg.command == "fria") return detail::cmd_fria(cfg, out, err);
    } catch (const Failure& e) {
        err << "rights: " << e.what() << '\n';
        return e.code();
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "rights: " << e.what() << '\n';
        return kExitSemantic;
    }
    return kExitUsage;
}

} // namespace rightsrisk::cli
