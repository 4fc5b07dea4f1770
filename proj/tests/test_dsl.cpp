#include <gtest/gtest.h>

#include "rightsrisk/dsl.hpp"
#include "support/fixtures.hpp"
#include "support/random_kb.hpp"

using namespace rightsrisk;
using dsl::TokenKind;

namespace {

std::vector<TokenKind> kinds(std::string_view text) {
    std::vector<TokenKind> out;
    for (const auto& t : dsl::tokenize(text)) out.push_back(t.kind);
    return out;
}

ParseError parse_error(std::string_view text) {
    try {
        dsl::parse_kb(text, "in.rights");
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no parse error for: " << text;
    return ParseError({}, "none");
}

std::size_t count_chains(const KnowledgeBase& kb) {
    std::size_t n = 0;
    for (const auto& r : kb.rules) n += std::holds_alternative<ChainHead>(r.head);
    return n;
}

} // namespace

TEST(Tokenize, ScenarioHeader) {
    EXPECT_EQ(kinds("scenario S_d { student_consent }"),
              (std::vector<TokenKind>{TokenKind::kw_scenario, TokenKind::ident, TokenKind::lbrace, TokenKind::ident,
                                      TokenKind::rbrace, TokenKind::end_of_file}));
}

TEST(Tokenize, ChainOperator) {
    EXPECT_EQ(kinds("privacy > public_health"),
              (std::vector<TokenKind>{TokenKind::ident, TokenKind::gt, TokenKind::ident, TokenKind::end_of_file}));
}

TEST(Tokenize, IllegalCharacterAtOneOne) {
    try {
        dsl::tokenize("§");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.span().startLine, 1);
        EXPECT_EQ(e.span().startCol, 1);
        EXPECT_NE(e.message().find("illegal character"), std::string::npos);
    }
}

TEST(Tokenize, CommentsWhitespaceAndCrlfSkipped) {
    auto toks = dsl::tokenize("// header\r\nright a; // trailing\r\n  right b;");
    ASSERT_EQ(toks.size(), 7U);
    EXPECT_EQ(toks[0].kind, TokenKind::kw_right);
    EXPECT_EQ(toks[0].span.startLine, 2);
    EXPECT_EQ(toks[3].span.startLine, 3);
    EXPECT_EQ(toks[3].span.startCol, 3);
}

TEST(Tokenize, MultiCharacterOperatorsAndLiterals) {
    auto toks = dsl::tokenize(R"(:= => : [-3] "a\"b\\c\n")");
    ASSERT_GE(toks.size(), 7U);
    EXPECT_EQ(toks[0].kind, TokenKind::assign);
    EXPECT_EQ(toks[1].kind, TokenKind::arrow);
    EXPECT_EQ(toks[2].kind, TokenKind::colon);
    EXPECT_EQ(toks[4].kind, TokenKind::integer);
    EXPECT_EQ(toks[4].text, "-3");
    EXPECT_EQ(toks[6].kind, TokenKind::string);
    EXPECT_EQ(toks[6].text, "a\"b\\c\n");
}

TEST(Tokenize, ColumnsCountCodePoints) {
    try {
        dsl::tokenize("\"é\" §");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.span().startCol, 5);
    }
}

TEST(Tokenize, UnterminatedStringFails) { EXPECT_THROW(dsl::tokenize("\"abc"), ParseError); }

TEST(Parse, ScholarshipFixtureCounts) {
    auto kb = rrtest::load_sample("scholarship.rights");
    EXPECT_EQ(kb.scenarios.size(), 3U);
    EXPECT_EQ(kb.rights.size(), 5U);
    EXPECT_EQ(kb.rules.size(), 7U);
    for (const auto& r : kb.rules) EXPECT_TRUE(r.origin.has_value());
}

TEST(Parse, EmptyFile) {
    auto kb = dsl::parse_kb("");
    EXPECT_TRUE(kb.empty());
    EXPECT_TRUE(validate_kb(kb).empty());
    EXPECT_TRUE(dsl::parse_kb("  // only a comment\n").empty());
}

TEST(Parse, PandemicFixtureShape) {
    auto kb = rrtest::load_sample("pandemic.rights");
    EXPECT_EQ(kb.scenarios.size(), 1U);
    EXPECT_EQ(count_chains(kb), 1U);
    EXPECT_EQ(kb.rules.size() - count_chains(kb), 2U);
    const auto& s = kb.scenarios.front();
    EXPECT_EQ(s.features, (std::vector<FeatureLiteral>{{"pandemic", true}, {"consent", false}}));
    EXPECT_EQ(std::get<ChainHead>(kb.rules[0].head).rights, (std::vector<std::string>{"privacy", "public_health"}));
}

TEST(Parse, AssertDesugarsToScenarioBody) {
    auto kb = dsl::parse_kb("right a; assert promotes(a) in S; scenario S { x, !y }");
    ASSERT_EQ(kb.rules.size(), 1U);
    const auto& r = kb.rules[0];
    EXPECT_EQ(r.id, "assert1");
    EXPECT_EQ(r.origin, std::optional<std::string>("S"));
    EXPECT_EQ(r.body, kb.scenarios[0].features);
    EXPECT_EQ(r.strength, 0);
    EXPECT_EQ(std::get<Assertion>(r.head), (Assertion{AssertionKind::Promotes, {"a"}}));
}

TEST(Parse, RuleWithStrengthAndEmptyBody) {
    auto kb = dsl::parse_kb("right a; right b; rule r1 [-2]: => collides(a, b); rule r2 [7]: x & !y => a > b;");
    ASSERT_EQ(kb.rules.size(), 2U);
    EXPECT_EQ(kb.rules[0].strength, -2);
    EXPECT_TRUE(kb.rules[0].body.empty());
    EXPECT_EQ(kb.rules[1].strength, 7);
    EXPECT_EQ(kb.rules[1].body.size(), 2U);
}

TEST(Parse, RightExpressionPrecedence) {
    auto kb = dsl::parse_kb("basic a, b, c; right r := a & !b | c;");
    auto expected = RightExpr::any_of(
        {RightExpr::all_of({RightExpr::leaf("a"), RightExpr::negate(RightExpr::leaf("b"))}), RightExpr::leaf("c")});
    EXPECT_EQ(kb.rights[0].definition, expected);
}

TEST(Parse, RiskDeclaration) {
    auto kb = dsl::parse_kb("scenario S { x } risk S { hazard: 4, response: 2, intensity: 3, sensitivity: 1, vulnerability: 5 }");
    ASSERT_EQ(kb.risks.size(), 1U);
    EXPECT_EQ(kb.risks[0], (RiskAnnotation{"S", 4, 2, 3, 1, 5}));
}

TEST(ParseErrors, ReportSpanAndExpectedSet) {
    auto e = parse_error("right a;\nscenario S { x y }");
    EXPECT_EQ(e.span().file, "in.rights");
    EXPECT_EQ(e.span().startLine, 2);
    EXPECT_EQ(e.span().startCol, 16);
    EXPECT_EQ(e.expected(), (std::vector<std::string>{"','", "'}'"}));
    EXPECT_NE(std::string(e.what()).find("in.rights:2:16"), std::string::npos);
}

TEST(ParseErrors, Cases) {
    for (const char* text : {"rigth a;", "right a", "rule r: x => promotes(a, b);", "rule r: x => collides(a);",
                             "rule r: x => frobs(a);", "rule r x => a > b;", "rule r: x => a;",
                             "risk S { hazard: 0 }", "risk S { hazard: 1, hazard: 2 }", "risk S { colour: 1 }",
                             "risk S { }", "domain D { }", "right a := ;", "right a := (b;", "assert a > b S;",
                             "basic ;", "rule r [x]: => a > b;", "obligation o applies S;"}) {
        auto e = parse_error(text);
        EXPECT_FALSE(e.message().empty()) << text;
        EXPECT_GE(e.span().startLine, 1) << text;
        EXPECT_GE(e.span().startCol, 1) << text;
    }
}

TEST(ParseErrors, SpanLiesInsideInput) {
    rrtest::RandomKb gen(77);
    for (int i = 0; i < 100; ++i) {
        auto text = dsl::print_kb(gen.make());
        const auto cut = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(text.size())));
        text = text.substr(0, cut) + "%" + text.substr(cut);
        auto e = parse_error(text);
        int lines = 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
        EXPECT_LE(e.span().startLine, lines);
        EXPECT_LE(e.span().startLine, e.span().endLine);
    }
}

TEST(Print, EmptyKbIsEmptyText) { EXPECT_EQ(dsl::print_kb(KnowledgeBase{}), ""); }

TEST(Print, ChainOfThree) {
    KnowledgeBase kb;
    kb.rules.push_back({"c", 0, {}, ChainHead{{"A", "B", "C"}}, std::nullopt});
    EXPECT_EQ(dsl::print_kb(kb), "rule c: => A > B > C;\n");
}

TEST(Print, PandemicCanonicalText) {
    EXPECT_EQ(dsl::print_kb(rrtest::load_sample("pandemic.rights")),
              "right privacy;\n"
              "right public_health;\n"
              "scenario S { pandemic, !consent }\n"
              "domain pandemic_response { S }\n"
              "assert privacy > public_health in S;\n"
              "assert demotes(privacy) in S;\n"
              "assert promotes(public_health) in S;\n");
}

TEST(Print, ExpressionParenthesization) {
    auto x = RightExpr::leaf("x"), y = RightExpr::leaf("y"), z = RightExpr::leaf("z");
    EXPECT_EQ(dsl::print_expr(RightExpr::all_of({RightExpr::any_of({x, y}), z})), "(x | y) & z");
    EXPECT_EQ(dsl::print_expr(RightExpr::any_of({RightExpr::all_of({x, y}), z})), "x & y | z");
    EXPECT_EQ(dsl::print_expr(RightExpr::negate(RightExpr::negate(x))), "!(!x)");
    EXPECT_EQ(dsl::print_expr(RightExpr::all_of({RightExpr::all_of({x, y}), z})), "(x & y) & z");
}

TEST(RoundTrip, AllFixtures) {
    for (const auto& name : rrtest::sample_names()) {
        auto kb = rrtest::load_sample(name);
        EXPECT_EQ(dsl::parse_kb(dsl::print_kb(kb)), kb) << name;
    }
}

TEST(RoundTrip, RandomKbs) {
    rrtest::RandomKb gen(2024);
    for (int i = 0; i < 200; ++i) {
        rrtest::RandomKbOptions opt;
        opt.definitions = true;
        opt.extras = true;
        auto kb = gen.make(opt);
        auto text = dsl::print_kb(kb);
        EXPECT_EQ(dsl::parse_kb(text), kb) << text;
        EXPECT_EQ(dsl::print_kb(dsl::parse_kb(text)), text);
    }
}

TEST(RoundTrip, ParsingIsDeterministic) {
    auto text = rrtest::read_text(rrtest::sample_path("assistant.rights"));
    EXPECT_EQ(dsl::parse_kb(text), dsl::parse_kb(text));
}
