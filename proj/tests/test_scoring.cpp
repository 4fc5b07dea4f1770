#include <gtest/gtest.h>

#include "rightsrisk/dsl.hpp"
#include "rightsrisk/scoring.hpp"
#include "support/fixtures.hpp"
#include "support/random_kb.hpp"

using namespace rightsrisk;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

const char* kTwoDomains = R"(
    right a; right b;
    scenario s1 { f }
    scenario s2 { g }
    scenario s3 { h }
    scenario s4 { k }
    domain zero1 { s1 }
    domain zero2 { s2 }
    domain pos { s3 }
    domain neg { s4 }
    purpose twin { zero1, zero2 }
    purpose mixed { zero1, pos, neg }
    rule r2: h => promotes(a);
    rule r3: k => b > a;
    rule r3d: k => demotes(b);
)";

} // namespace

TEST(Rational, ArithmeticAndNormalization) {
    EXPECT_EQ(q(2, 4), q(1, 2));
    EXPECT_EQ(q(3, -6), q(-1, 2));
    EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
    EXPECT_EQ(q(1, 2) - q(3, 4), q(-1, 4));
    EXPECT_EQ(q(2, 3) * q(9, 4), q(3, 2));
    EXPECT_EQ(q(1, 2) / q(1, 4), q(2));
    EXPECT_LT(q(1, 3), q(1, 2));
    EXPECT_GT(q(-1, 3), q(-1, 2));
    EXPECT_EQ(q(-5, 2).str(), "-5/2");
    EXPECT_EQ(q(4).str(), "4");
    EXPECT_EQ(Rational::parse("-7/14"), q(-1, 2));
    EXPECT_EQ(Rational::parse("3"), q(3));
    EXPECT_THROW(Rational(1, 0), Error);
    EXPECT_THROW(Rational::parse("1/x"), Error);
    EXPECT_THROW(q(1) / q(0), Error);
    EXPECT_THROW(q(std::numeric_limits<std::int64_t>::max()) + q(1), Error);
}

TEST(Weight, Examples) {
    EXPECT_EQ(weight(1, 2), q(2));
    for (int y = 1; y <= 6; ++y) EXPECT_EQ(weight(y, y), q(1));
    EXPECT_EQ(weight(2, 3), q(3, 2));
}

TEST(Weight, InvalidPositions) {
    EXPECT_THROW(weight(0, 3), Error);
    EXPECT_THROW(weight(4, 3), Error);
    try {
        weight(0, 1);
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("invalid chain position"), std::string::npos);
    }
}

TEST(Weight, BoundsOneToLength) {
    for (int y = 1; y <= 8; ++y)
        for (int x = 1; x <= y; ++x) {
            EXPECT_GE(weight(x, y), q(1));
            EXPECT_LE(weight(x, y), q(y));
        }
}

TEST(DegreeScenario, Pandemic) {
    auto kb = rrtest::load_sample("pandemic.rights");
    auto d = degree_scenario(assess_scenario(kb, "S"));
    EXPECT_EQ(d.xi, q(1));
    EXPECT_EQ(d.delta, q(2));
    EXPECT_EQ(d.degree, q(-1));
    ASSERT_EQ(d.perOccurrence.size(), 2U);
    EXPECT_EQ(d.perOccurrence[0].side, Side::Xi);
    EXPECT_EQ(d.perOccurrence[1].side, Side::Delta);
    EXPECT_EQ(d.perOccurrence[1].weight, q(2));
}

TEST(DegreeScenario, ChainWithFirstDemoted) {
    ScenarioFindings f;
    f.scenario = "S";
    f.adopted = {{"B", "c", 2, 3}, {"C", "c", 3, 3}};
    f.demotedOccurrences = {{"A", "c", 1, 3}};
    auto d = degree_scenario(f);
    EXPECT_EQ(d.xi, q(5, 2));
    EXPECT_EQ(d.delta, q(3));
    EXPECT_EQ(d.degree, q(-1, 2));
}

TEST(DegreeScenario, ChainWithFirstDemotedThroughEngine) {
    auto kb = dsl::parse_kb("right A; right B; right C; scenario S { f } rule c: f => A > B > C; rule d: f => demotes(A);");
    auto d = degree_scenario(assess_scenario(kb, "S", {.derivedCollisions = false}));
    EXPECT_EQ(d.degree, q(-1, 2));
}

TEST(DegreeScenario, EmptyFindings) {
    auto d = degree_scenario(ScenarioFindings{});
    EXPECT_EQ(d.xi, q(0));
    EXPECT_EQ(d.delta, q(0));
    EXPECT_EQ(d.degree, q(0));
}

TEST(DegreeDomain, Scholarship) {
    auto kb = rrtest::load_sample("scholarship.rights");
    EXPECT_EQ(degree_scenario(assess_scenario(kb, "S_d")).degree, q(3));
    EXPECT_EQ(degree_scenario(assess_scenario(kb, "S_r")).degree, q(0));
    EXPECT_EQ(degree_scenario(assess_scenario(kb, "S_e")).degree, q(0));
    EXPECT_EQ(degree_domain(kb, "scholarship").degree, q(3));
}

TEST(DegreeDomain, Subsets) {
    auto kb = rrtest::load_sample("scholarship.rights");
    EXPECT_EQ(degree_domain(kb, "scholarship", std::vector<std::string>{"S_r"}).degree, q(0));
    EXPECT_EQ(degree_domain(kb, "scholarship", std::vector<std::string>{"S_d", "S_e"}).degree, q(3));
}

TEST(DegreeDomain, Errors) {
    auto kb = rrtest::load_sample("scholarship.rights");
    try {
        degree_domain(kb, "scholarship", std::vector<std::string>{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "empty subset");
    }
    EXPECT_THROW(degree_domain(kb, "scholarship", std::vector<std::string>{"S_x"}), Error);
    EXPECT_THROW(degree_domain(kb, "scholarship", std::vector<std::string>{"S_d", "S_d"}), Error);
    EXPECT_THROW(degree_domain(kb, "nope"), Error);
}

TEST(DegreePurpose, SingleScholarshipDomain) {
    auto kb = rrtest::load_sample("scholarship.rights");
    kb.purposes.push_back({"gpai", {"scholarship"}});
    EXPECT_EQ(degree_purpose(kb, "gpai").degree, q(3));
}

TEST(DegreePurpose, ZeroDomainsAndSubsets) {
    auto kb = dsl::parse_kb(kTwoDomains);
    ASSERT_TRUE(validate_kb(kb).empty());
    EXPECT_EQ(degree_domain(kb, "zero1").degree, q(0));
    EXPECT_EQ(degree_purpose(kb, "twin").degree, q(0));
    EXPECT_EQ(degree_purpose(kb, "mixed", std::vector<std::string>{"pos"}).degree, q(1));
    EXPECT_EQ(degree_domain(kb, "neg").degree, q(-1));
    EXPECT_EQ(degree_purpose(kb, "mixed").degree, q(0));
    EXPECT_EQ(degree_purpose(kb, "mixed", std::vector<std::string>{"zero1", "pos"}).degree, q(1));
    EXPECT_THROW(degree_purpose(kb, "mixed", std::vector<std::string>{"zero2"}), Error);
    EXPECT_THROW(degree_purpose(kb, "mixed", std::vector<std::string>{}), Error);
    EXPECT_THROW(degree_purpose(kb, "nope"), Error);
}

TEST(DegreeProperties, BreakdownConsistency) {
    rrtest::RandomKb gen(41);
    for (int i = 0; i < 200; ++i) {
        auto kb = gen.make();
        for (const auto& s : kb.scenarios) {
            auto f = assess_scenario(kb, s.id);
            auto d = degree_scenario(f);
            EXPECT_EQ(d.degree, d.xi - d.delta);
            Rational xi, delta;
            for (const auto& w : d.perOccurrence) {
                EXPECT_EQ(w.weight, weight(w.occurrence.position, w.occurrence.length));
                (w.side == Side::Xi ? xi : delta) += w.weight;
            }
            EXPECT_EQ(xi, d.xi);
            EXPECT_EQ(delta, d.delta);
            if (f.demotedOccurrences.empty()) EXPECT_GE(d.degree, q(0));
            if (f.adopted.empty()) EXPECT_LE(d.degree, q(0));
        }
    }
}

TEST(DegreeProperties, AdditivityOverDisjointUnions) {
    rrtest::RandomKb gen(43);
    for (int i = 0; i < 200; ++i) {
        rrtest::RandomKbOptions opt;
        opt.minScenarios = 2;
        auto kb = gen.make(opt);
        std::vector<std::string> a, b;
        for (const auto& s : kb.scenarios) (gen.coin(0.5) ? a : b).push_back(s.id);
        if (a.empty()) a.push_back(b.back()), b.pop_back();
        if (b.empty()) b.push_back(a.back()), a.pop_back();
        auto all = a;
        all.insert(all.end(), b.begin(), b.end());
        EXPECT_EQ(degree_scenarios(kb, all).degree,
                  degree_scenarios(kb, a).degree + degree_scenarios(kb, b).degree);
    }
}
