#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "rightsrisk/dsl.hpp"
#include "rightsrisk/model.hpp"
#include "support/fixtures.hpp"
#include "support/random_kb.hpp"

using namespace rightsrisk;

namespace {

std::vector<FeatureLiteral> lits(std::initializer_list<const char*> xs) {
    std::vector<FeatureLiteral> out;
    for (std::string_view x : xs) {
        if (x.starts_with('!')) out.push_back({std::string(x.substr(1)), false});
        else out.push_back({std::string(x), true});
    }
    return out;
}

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
    return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

} // namespace

TEST(Validate, UnknownRightInRule) {
    auto kb = dsl::parse_kb("right a; scenario S { x } assert promotes(ghost) in S;");
    auto ds = validate_kb(kb);
    ASSERT_EQ(ds.size(), 1U);
    EXPECT_EQ(ds[0].code, "unknown right");
    EXPECT_EQ(ds[0].severity, Severity::Error);
    EXPECT_NE(ds[0].message.find("ghost"), std::string::npos);
}

TEST(Validate, ScholarshipFixtureIsClean) {
    EXPECT_TRUE(validate_kb(rrtest::load_sample("scholarship.rights")).empty());
}

TEST(Validate, PolarityConflict) {
    auto ds = validate_kb(dsl::parse_kb("scenario S { consent, !consent }"));
    ASSERT_EQ(ds.size(), 1U);
    EXPECT_EQ(ds[0].code, "polarity conflict");
}

TEST(Validate, EmptyKbIsClean) { EXPECT_TRUE(validate_kb(KnowledgeBase{}).empty()); }

TEST(Validate, ReferentialAndStructuralErrors) {
    auto kb = dsl::parse_kb(R"(
        basic v;
        right a;
        right a;
        right v := v;
        right d := nope;
        scenario S {}
        domain D { S, S, T }
        purpose P { D, Q }
        obligation o "t" applies Z;
        rule r1: x => collides(a, a);
        rule r2: x & !x => promotes(a);
        risk S { hazard: 9 }
    )");
    auto ds = validate_kb(kb);
    for (const char* code : {"duplicate id", "unknown right", "empty scenario", "duplicate reference",
                             "unknown scenario", "unknown domain", "self collision", "unsatisfiable body",
                             "missing risk field", "risk out of range"})
        EXPECT_TRUE(has_code(ds, code)) << code;
    EXPECT_TRUE(has_errors(ds));
}

TEST(Validate, UnsatisfiableBodyIsOnlyAWarning) {
    auto ds = validate_kb(dsl::parse_kb("right a; rule r: x & !x => promotes(a);"));
    ASSERT_EQ(ds.size(), 1U);
    EXPECT_EQ(ds[0].severity, Severity::Warning);
    EXPECT_FALSE(has_errors(ds));
}

TEST(Validate, AtomicRightMayShareBasicName) {
    EXPECT_TRUE(validate_kb(dsl::parse_kb("basic dignity; right dignity;")).empty());
}

TEST(Validate, RecursiveDefinitionReported) {
    auto ds = validate_kb(dsl::parse_kb("right A := B; right B := A;"));
    EXPECT_TRUE(has_code(ds, "recursive right definition"));
}

TEST(Validate, ArityAndEmptyChainOnHandBuiltRules) {
    KnowledgeBase kb;
    kb.rights = {{"a", std::nullopt}, {"b", std::nullopt}};
    kb.rules.push_back({"r1", 0, {}, Assertion{AssertionKind::Promotes, {"a", "b"}}, std::nullopt});
    kb.rules.push_back({"r2", 0, {}, ChainHead{}, std::nullopt});
    kb.rules.push_back({"r3", 0, {}, ChainHead{{"a", "a"}}, std::nullopt});
    auto ds = validate_kb(kb);
    EXPECT_TRUE(has_code(ds, "arity"));
    EXPECT_TRUE(has_code(ds, "empty chain"));
    EXPECT_TRUE(has_code(ds, "duplicate chain right"));
}

TEST(Validate, IdempotentAndOrderInsensitive) {
    rrtest::RandomKb gen(11);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        rrtest::RandomKbOptions opt;
        opt.definitions = true;
        opt.extras = true;
        auto kb = gen.make(opt);
        // Inject a few problems so the diagnostic list is non-trivial.
        kb.scenarios.push_back(kb.scenarios.front());
        kb.rules.push_back({"bad", 0, {}, Assertion{AssertionKind::Demotes, {"ghost"}}, std::nullopt});
        const auto base = validate_kb(kb);
        EXPECT_EQ(base, validate_kb(kb));
        auto shuffled = kb;
        std::shuffle(shuffled.rights.begin(), shuffled.rights.end(), rng);
        std::shuffle(shuffled.scenarios.begin(), shuffled.scenarios.end(), rng);
        std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), rng);
        std::shuffle(shuffled.obligations.begin(), shuffled.obligations.end(), rng);
        std::shuffle(shuffled.risks.begin(), shuffled.risks.end(), rng);
        std::shuffle(shuffled.basics.begin(), shuffled.basics.end(), rng);
        EXPECT_EQ(base, validate_kb(shuffled));
    }
}

TEST(Validate, RandomKbsAreWellFormed) {
    rrtest::RandomKb gen(5);
    for (int i = 0; i < 200; ++i) {
        rrtest::RandomKbOptions opt;
        opt.definitions = (i % 2) == 0;
        auto ds = validate_kb(gen.make(opt));
        EXPECT_FALSE(has_errors(ds));
    }
}

TEST(Satisfies, ExactFeatureMatch) {
    auto f = lits({"pandemic", "!consent"});
    EXPECT_TRUE(satisfies(f, lits({"pandemic", "!consent"})));
}

TEST(Satisfies, EmptyBodyAlwaysHolds) {
    EXPECT_TRUE(satisfies(lits({"a"}), {}));
    EXPECT_TRUE(satisfies({}, {}));
}

TEST(Satisfies, UnknownAtomDoesNotSatisfy) {
    EXPECT_FALSE(satisfies(lits({"pandemic"}), lits({"!consent"})));
    EXPECT_FALSE(satisfies(lits({"consent"}), lits({"!consent"})));
}

TEST(Satisfies, MonotoneInFeatureSet) {
    std::mt19937_64 rng(3);
    auto random_lits = [&](int n) {
        std::vector<FeatureLiteral> out;
        for (int i = 0; i < n; ++i)
            out.push_back({"f" + std::to_string(rng() % 5), (rng() & 1U) != 0});
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    for (int i = 0; i < 2000; ++i) {
        auto f = random_lits(static_cast<int>(rng() % 4));
        auto body = random_lits(static_cast<int>(rng() % 3));
        auto bigger = f;
        for (const auto& extra : random_lits(3)) bigger.push_back(extra);
        if (satisfies(f, body)) EXPECT_TRUE(satisfies(bigger, body));
    }
}

TEST(ExpandRight, PrivacyConjunction) {
    auto kb = rrtest::load_sample("privacy.rights");
    auto expected = RightExpr::all_of({RightExpr::leaf("data_protection"), RightExpr::leaf("autonomy"),
                                       RightExpr::leaf("confidentiality"), RightExpr::leaf("dignity"),
                                       RightExpr::leaf("control")});
    EXPECT_EQ(expand_right(kb, "privacy"), expected);
}

TEST(ExpandRight, AtomicRightIsALeaf) {
    auto kb = rrtest::load_sample("pandemic.rights");
    EXPECT_EQ(expand_right(kb, "public_health"), RightExpr::leaf("public_health"));
}

TEST(ExpandRight, CycleThrows) {
    auto kb = dsl::parse_kb("right A := B; right B := A;");
    try {
        expand_right(kb, "A");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("recursive right definition"), std::string::npos);
    }
}

TEST(ExpandRight, NestedDefinitionsInline) {
    auto kb = dsl::parse_kb("basic x, y, z; right inner := x | y; right outer := inner & !z;");
    auto expected = RightExpr::all_of({RightExpr::any_of({RightExpr::leaf("x"), RightExpr::leaf("y")}),
                                       RightExpr::negate(RightExpr::leaf("z"))});
    EXPECT_EQ(expand_right(kb, "outer"), expected);
}

TEST(ExpandRight, UnknownRightThrows) {
    EXPECT_THROW(expand_right(KnowledgeBase{}, "nope"), Error);
}

TEST(ExpandRight, TerminatesOnRandomAcyclicDefinitions) {
    rrtest::RandomKb gen(21);
    for (int i = 0; i < 100; ++i) {
        rrtest::RandomKbOptions opt;
        opt.definitions = true;
        auto kb = gen.make(opt);
        for (const auto& r : kb.rights) EXPECT_NO_THROW(expand_right(kb, r.id));
    }
}

TEST(LogicalIncompatibility, NegationPair) {
    auto x = RightExpr::leaf("x");
    EXPECT_EQ(logically_incompatible(x, RightExpr::negate(x)), true);
    EXPECT_EQ(logically_incompatible(x, x), false);
    EXPECT_EQ(logically_incompatible(x, RightExpr::leaf("y")), false);
}

TEST(LogicalIncompatibility, DeMorganEquivalent) {
    auto a = RightExpr::all_of({RightExpr::leaf("x"), RightExpr::leaf("y")});
    auto b = RightExpr::any_of({RightExpr::negate(RightExpr::leaf("x")), RightExpr::negate(RightExpr::leaf("y"))});
    EXPECT_EQ(logically_incompatible(a, b), true);
}

TEST(LogicalIncompatibility, TooManyAtomsIsUndecided) {
    std::vector<RightExpr> leaves;
    for (std::size_t i = 0; i <= kMaxTruthTableAtoms; ++i) leaves.push_back(RightExpr::leaf("v" + std::to_string(i)));
    EXPECT_EQ(logically_incompatible(RightExpr::all_of(leaves), RightExpr::leaf("v0")), std::nullopt);
}

TEST(Model, ObligationsAndScope) {
    auto kb = rrtest::load_sample("scholarship.rights");
    EXPECT_EQ(obligations_for(kb, "S_d"), std::vector<std::string>{"consent_log"});
    EXPECT_TRUE(obligations_for(kb, "S_e").empty());
    auto scope = rights_in_scope(kb, *kb.find_scenario("S_r"));
    std::sort(scope.begin(), scope.end());
    EXPECT_EQ(scope, (std::vector<std::string>{"privacy", "social_assistance"}));
}
