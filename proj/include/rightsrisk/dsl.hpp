#pragma once

// Lexer, recursive-descent parser and canonical printer for `.rights` files.
//
//   basic data_protection, autonomy;
//   right privacy := data_protection & autonomy;
//   scenario S { pandemic, !consent }
//   rule c1 [2]: pandemic => privacy > public_health;
//   assert demotes(privacy) in S;
//
// `assert HEAD in S;` becomes a rule named assert<k> (k counts asserts in
// source order) whose body is S's feature conjunction.

#include <cctype>
#include <charconv>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rightsrisk/error.hpp"
#include "rightsrisk/model.hpp"

namespace rightsrisk::dsl {

enum class TokenKind {
    kw_basic,
    kw_right,
    kw_scenario,
    kw_domain,
    kw_purpose,
    kw_obligation,
    kw_applies,
    kw_assert,
    kw_in,
    kw_rule,
    kw_risk,
    ident,
    integer,
    string,
    lbrace,
    rbrace,
    lparen,
    rparen,
    lbracket,
    rbracket,
    comma,
    semicolon,
    colon,
    assign, // :=
    arrow,  // =>
    gt,
    amp,
    pipe,
    bang,
    end_of_file,
};

inline const char* to_string(TokenKind k) {
    switch (k) {
    case TokenKind::kw_basic: return "'basic'";
    case TokenKind::kw_right: return "'right'";
    case TokenKind::kw_scenario: return "'scenario'";
    case TokenKind::kw_domain: return "'domain'";
    case TokenKind::kw_purpose: return "'purpose'";
    case TokenKind::kw_obligation: return "'obligation'";
    case TokenKind::kw_applies: return "'applies'";
    case TokenKind::kw_assert: return "'assert'";
    case TokenKind::kw_in: return "'in'";
    case TokenKind::kw_rule: return "'rule'";
    case TokenKind::kw_risk: return "'risk'";
    case TokenKind::ident: return "identifier";
    case TokenKind::integer: return "integer";
    case TokenKind::string: return "string";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::lbracket: return "'['";
    case TokenKind::rbracket: return "']'";
    case TokenKind::comma: return "','";
    case TokenKind::semicolon: return "';'";
    case TokenKind::colon: return "':'";
    case TokenKind::assign: return "':='";
    case TokenKind::arrow: return "'=>'";
    case TokenKind::gt: return "'>'";
    case TokenKind::amp: return "'&'";
    case TokenKind::pipe: return "'|'";
    case TokenKind::bang: return "'!'";
    case TokenKind::end_of_file: return "end of input";
    }
    return "?";
}

struct Token {
    TokenKind kind = TokenKind::end_of_file;
    std::string text; // identifier name, decoded string, or integer digits
    SourceSpan span;
};

namespace detail {

inline const std::map<std::string_view, TokenKind>& keywords() {
    static const std::map<std::string_view, TokenKind> table = {
        {"basic", TokenKind::kw_basic},       {"right", TokenKind::kw_right},
        {"scenario", TokenKind::kw_scenario}, {"domain", TokenKind::kw_domain},
        {"purpose", TokenKind::kw_purpose},   {"obligation", TokenKind::kw_obligation},
        {"applies", TokenKind::kw_applies},   {"assert", TokenKind::kw_assert},
        {"in", TokenKind::kw_in},             {"rule", TokenKind::kw_rule},
        {"risk", TokenKind::kw_risk},
    };
    return table;
}

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (pos_ >= text_.size()) {
                out.push_back({TokenKind::end_of_file, {}, span_from(line_, col_)});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0U) != 0x80U) {
            ++col_; // columns count code points, not bytes
        }
    }

    SourceSpan span_from(int line, int col) const { return {file_, line, col, line_, col_}; }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < text_.size() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        const int line = line_;
        const int col = col_;
        auto simple = [&](TokenKind k, int len) {
            for (int i = 0; i < len; ++i) advance();
            return Token{k, std::string(text_.substr(pos_ - len, len)), span_from(line, col)};
        };
        char c = peek();
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(peek())) advance();
            std::string word(text_.substr(start, pos_ - start));
            auto kw = keywords().find(word);
            return {kw == keywords().end() ? TokenKind::ident : kw->second, word, span_from(line, col)};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            std::size_t start = pos_;
            advance();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
            return {TokenKind::integer, std::string(text_.substr(start, pos_ - start)), span_from(line, col)};
        }
        switch (c) {
        case '{': return simple(TokenKind::lbrace, 1);
        case '}': return simple(TokenKind::rbrace, 1);
        case '(': return simple(TokenKind::lparen, 1);
        case ')': return simple(TokenKind::rparen, 1);
        case '[': return simple(TokenKind::lbracket, 1);
        case ']': return simple(TokenKind::rbracket, 1);
        case ',': return simple(TokenKind::comma, 1);
        case ';': return simple(TokenKind::semicolon, 1);
        case '>': return simple(TokenKind::gt, 1);
        case '&': return simple(TokenKind::amp, 1);
        case '|': return simple(TokenKind::pipe, 1);
        case '!': return simple(TokenKind::bang, 1);
        case ':': return peek(1) == '=' ? simple(TokenKind::assign, 2) : simple(TokenKind::colon, 1);
        case '=':
            if (peek(1) == '>') return simple(TokenKind::arrow, 2);
            break;
        case '"': return string_literal(line, col);
        default: break;
        }
        // Illegal character: span covers one code point.
        std::size_t start = pos_;
        advance();
        while (pos_ < text_.size() && (static_cast<unsigned char>(peek()) & 0xC0U) == 0x80U) advance();
        throw ParseError(span_from(line, col), "illegal character '" + std::string(text_.substr(start, pos_ - start)) + "'");
    }

    Token string_literal(int line, int col) {
        advance(); // opening quote
        std::string value;
        for (;;) {
            if (pos_ >= text_.size() || peek() == '\n')
                throw ParseError(span_from(line, col), "unterminated string literal");
            char c = peek();
            advance();
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) throw ParseError(span_from(line, col), "unterminated string literal");
                char e = peek();
                advance();
                switch (e) {
                case 'n': value += '\n'; break;
                case 't': value += '\t'; break;
                case '"': value += '"'; break;
                case '\\': value += '\\'; break;
                default: throw ParseError(span_from(line, col), std::string("unknown escape '\\") + e + "'");
                }
            } else {
                value += c;
            }
        }
        return {TokenKind::string, std::move(value), span_from(line, col)};
    }

    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace detail

inline std::vector<Token> tokenize(std::string_view text, std::string file = {}) {
    return detail::Lexer(text, std::move(file)).run();
}

namespace detail {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    KnowledgeBase run() {
        KnowledgeBase kb;
        std::vector<std::pair<std::size_t, std::string>> pending_asserts; // rule index, scenario
        while (!at(TokenKind::end_of_file)) statement(kb, pending_asserts);
        for (const auto& [index, scenario] : pending_asserts)
            if (const Scenario* s = kb.find_scenario(scenario)) kb.rules[index].body = s->features;
        return kb;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool at(TokenKind k) const { return cur().kind == k; }
    bool at_ident(std::string_view word) const { return at(TokenKind::ident) && cur().text == word; }

    [[noreturn]] void fail(std::vector<TokenKind> expected, std::string message = {}) const {
        std::vector<std::string> names;
        for (auto k : expected) names.emplace_back(to_string(k));
        if (message.empty()) message = std::string("unexpected ") + to_string(cur().kind);
        throw ParseError(cur().span, std::move(message), std::move(names));
    }

    Token expect(TokenKind k) {
        if (!at(k)) fail({k});
        return toks_[pos_++];
    }

    bool accept(TokenKind k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }

    std::string ident() { return expect(TokenKind::ident).text; }

    std::vector<std::string> ident_list() {
        std::vector<std::string> out{ident()};
        while (accept(TokenKind::comma)) out.push_back(ident());
        return out;
    }

    FeatureLiteral literal() {
        bool negative = accept(TokenKind::bang);
        return {ident(), !negative};
    }

    void statement(KnowledgeBase& kb, std::vector<std::pair<std::size_t, std::string>>& pending) {
        switch (cur().kind) {
        case TokenKind::kw_basic: {
            ++pos_;
            for (auto& id : ident_list()) kb.basics.push_back(std::move(id));
            expect(TokenKind::semicolon);
            return;
        }
        case TokenKind::kw_right: {
            ++pos_;
            FundamentalRight fr{ident(), std::nullopt};
            if (accept(TokenKind::assign)) fr.definition = rexpr();
            expect(TokenKind::semicolon);
            kb.rights.push_back(std::move(fr));
            return;
        }
        case TokenKind::kw_scenario: {
            ++pos_;
            Scenario s{ident(), {}};
            expect(TokenKind::lbrace);
            if (!at(TokenKind::rbrace)) {
                s.features.push_back(literal());
                while (accept(TokenKind::comma)) s.features.push_back(literal());
            }
            if (!at(TokenKind::rbrace)) fail({TokenKind::comma, TokenKind::rbrace});
            ++pos_;
            kb.scenarios.push_back(std::move(s));
            return;
        }
        case TokenKind::kw_domain: {
            ++pos_;
            DeploymentDomain d{ident(), {}};
            expect(TokenKind::lbrace);
            d.scenarios = ident_list();
            if (!at(TokenKind::rbrace)) fail({TokenKind::comma, TokenKind::rbrace});
            ++pos_;
            kb.domains.push_back(std::move(d));
            return;
        }
        case TokenKind::kw_purpose: {
            ++pos_;
            Purpose p{ident(), {}};
            expect(TokenKind::lbrace);
            p.domains = ident_list();
            if (!at(TokenKind::rbrace)) fail({TokenKind::comma, TokenKind::rbrace});
            ++pos_;
            kb.purposes.push_back(std::move(p));
            return;
        }
        case TokenKind::kw_obligation: {
            ++pos_;
            Obligation o;
            o.id = ident();
            o.text = expect(TokenKind::string).text;
            expect(TokenKind::kw_applies);
            o.appliesTo = ident();
            expect(TokenKind::semicolon);
            kb.obligations.push_back(std::move(o));
            return;
        }
        case TokenKind::kw_assert: {
            ++pos_;
            Rule r;
            r.head = head();
            expect(TokenKind::kw_in);
            r.origin = ident();
            expect(TokenKind::semicolon);
            r.id = "assert" + std::to_string(++assert_count_);
            pending.emplace_back(kb.rules.size(), *r.origin);
            kb.rules.push_back(std::move(r));
            return;
        }
        case TokenKind::kw_rule: {
            ++pos_;
            Rule r;
            r.id = ident();
            if (accept(TokenKind::lbracket)) {
                r.strength = integer();
                expect(TokenKind::rbracket);
            }
            expect(TokenKind::colon);
            if (!at(TokenKind::arrow)) {
                r.body.push_back(literal());
                while (accept(TokenKind::amp)) r.body.push_back(literal());
            }
            if (!at(TokenKind::arrow)) fail({TokenKind::amp, TokenKind::arrow});
            ++pos_;
            r.head = head();
            expect(TokenKind::semicolon);
            kb.rules.push_back(std::move(r));
            return;
        }
        case TokenKind::kw_risk: {
            ++pos_;
            RiskAnnotation risk;
            risk.scenario = ident();
            expect(TokenKind::lbrace);
            risk_field(risk);
            while (accept(TokenKind::comma)) risk_field(risk);
            if (!at(TokenKind::rbrace)) fail({TokenKind::comma, TokenKind::rbrace});
            ++pos_;
            kb.risks.push_back(std::move(risk));
            return;
        }
        default:
            fail({TokenKind::kw_basic, TokenKind::kw_right, TokenKind::kw_scenario, TokenKind::kw_domain,
                  TokenKind::kw_purpose, TokenKind::kw_obligation, TokenKind::kw_assert, TokenKind::kw_rule,
                  TokenKind::kw_risk});
        }
    }

    int integer() {
        Token t = expect(TokenKind::integer);
        int value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
            throw ParseError(t.span, "integer out of range");
        return value;
    }

    void risk_field(RiskAnnotation& risk) {
        if (!at(TokenKind::ident)) fail({TokenKind::ident}, "expected risk field name");
        const Token name = toks_[pos_++];
        int RiskAnnotation::*field = nullptr;
        if (name.text == "hazard") field = &RiskAnnotation::hazard;
        else if (name.text == "response") field = &RiskAnnotation::response;
        else if (name.text == "intensity") field = &RiskAnnotation::intensity;
        else if (name.text == "sensitivity") field = &RiskAnnotation::sensitivity;
        else if (name.text == "vulnerability") field = &RiskAnnotation::vulnerability;
        else
            throw ParseError(name.span, "unknown risk field '" + name.text + "'",
                             {"hazard", "response", "intensity", "sensitivity", "vulnerability"});
        expect(TokenKind::colon);
        const Token value_tok = cur();
        int value = integer();
        if (risk.*field != 0) throw ParseError(name.span, "risk field '" + name.text + "' given twice");
        if (value == 0) throw ParseError(value_tok.span, "risk field '" + name.text + "' must be in 1..5");
        risk.*field = value;
    }

    RuleHead head() {
        if (!at(TokenKind::ident)) fail({TokenKind::ident});
        const Token first = toks_[pos_++];
        if (at(TokenKind::lparen)) {
            auto kind = assertion_kind_from(first.text);
            if (!kind)
                throw ParseError(first.span, "unknown predicate '" + first.text + "'",
                                 {"promotes", "demotes", "not_demotes", "collides", "not_collides"});
            ++pos_;
            Assertion a{*kind, {ident()}};
            if (accept(TokenKind::comma)) a.rights.push_back(ident());
            expect(TokenKind::rparen);
            const std::size_t want = is_pair_kind(*kind) ? 2 : 1;
            if (a.rights.size() != want)
                throw ParseError(first.span, first.text + " takes " + std::to_string(want) + (want == 1 ? " right" : " rights"));
            return a;
        }
        ChainHead chain{{first.text}};
        if (!at(TokenKind::gt)) fail({TokenKind::lparen, TokenKind::gt});
        while (accept(TokenKind::gt)) chain.rights.push_back(ident());
        return chain;
    }

    RightExpr rexpr() {
        std::vector<RightExpr> terms{rterm()};
        while (accept(TokenKind::pipe)) terms.push_back(rterm());
        return terms.size() == 1 ? std::move(terms.front()) : RightExpr::any_of(std::move(terms));
    }

    RightExpr rterm() {
        std::vector<RightExpr> factors{rfactor()};
        while (accept(TokenKind::amp)) factors.push_back(rfactor());
        return factors.size() == 1 ? std::move(factors.front()) : RightExpr::all_of(std::move(factors));
    }

    RightExpr rfactor() {
        bool negated = accept(TokenKind::bang);
        RightExpr inner;
        if (accept(TokenKind::lparen)) {
            inner = rexpr();
            expect(TokenKind::rparen);
        } else if (at(TokenKind::ident)) {
            inner = RightExpr::leaf(ident());
        } else {
            fail({TokenKind::ident, TokenKind::lparen});
        }
        return negated ? RightExpr::negate(std::move(inner)) : inner;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int assert_count_ = 0;
};

} // namespace detail

// Syntax errors throw ParseError; semantic problems are left to validate_kb.
inline KnowledgeBase parse_kb(std::string_view text, std::string file = {}) {
    return detail::Parser(tokenize(text, std::move(file))).run();
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + '"';
}

inline void print_expr(const RightExpr& e, std::string& out);

inline void print_child(const RightExpr& child, RightExpr::Op parent, std::string& out) {
    // Parenthesize any compound child of an And/Or so the tree shape survives.
    bool parens = child.op == RightExpr::Op::Or || (child.op == RightExpr::Op::And && parent == RightExpr::Op::And);
    if (parens) out += '(';
    print_expr(child, out);
    if (parens) out += ')';
}

inline void print_expr(const RightExpr& e, std::string& out) {
    switch (e.op) {
    case RightExpr::Op::Leaf: out += e.name; return;
    case RightExpr::Op::Not: {
        const auto& c = e.children.front();
        out += '!';
        if (c.op == RightExpr::Op::Leaf) {
            out += c.name;
        } else {
            out += '(';
            print_expr(c, out);
            out += ')';
        }
        return;
    }
    case RightExpr::Op::And:
    case RightExpr::Op::Or: {
        const char* sep = e.op == RightExpr::Op::And ? " & " : " | ";
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            if (i) out += sep;
            print_child(e.children[i], e.op, out);
        }
        return;
    }
    }
}

template <class T, class F>
std::string join(const std::vector<T>& xs, std::string_view sep, F&& render) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += render(xs[i]);
    }
    return out;
}

inline std::string literal_text(const FeatureLiteral& f) { return to_string(f); }

} // namespace detail

inline std::string print_expr(const RightExpr& e) {
    std::string out;
    detail::print_expr(e, out);
    return out;
}

// Canonical text grouped by declaration kind; parse_kb(print_kb(kb)) == kb.
inline std::string print_kb(const KnowledgeBase& kb) {
    using detail::join;
    auto id = [](const std::string& s) { return s; };
    std::string out;
    if (!kb.basics.empty()) out += "basic " + join(kb.basics, ", ", id) + ";\n";
    for (const auto& r : kb.rights) {
        out += "right " + r.id;
        if (r.definition) out += " := " + print_expr(*r.definition);
        out += ";\n";
    }
    for (const auto& s : kb.scenarios) {
        out += "scenario " + s.id;
        out += s.features.empty() ? std::string(" {}\n") : " { " + join(s.features, ", ", detail::literal_text) + " }\n";
    }
    for (const auto& d : kb.domains) out += "domain " + d.id + " { " + join(d.scenarios, ", ", id) + " }\n";
    for (const auto& p : kb.purposes) out += "purpose " + p.id + " { " + join(p.domains, ", ", id) + " }\n";
    for (const auto& o : kb.obligations)
        out += "obligation " + o.id + " " + detail::quote(o.text) + " applies " + o.appliesTo + ";\n";
    for (const auto& r : kb.risks) {
        const std::pair<const char*, int> fields[] = {{"hazard", r.hazard},
                                                      {"response", r.response},
                                                      {"intensity", r.intensity},
                                                      {"sensitivity", r.sensitivity},
                                                      {"vulnerability", r.vulnerability}};
        std::string body;
        for (const auto& [name, value] : fields) {
            if (value == 0) continue;
            if (!body.empty()) body += ", ";
            body += std::string(name) + ": " + std::to_string(value);
        }
        out += "risk " + r.scenario + " { " + body + " }\n";
    }
    for (const auto& r : kb.rules) {
        if (r.origin) {
            out += "assert " + to_string(r.head) + " in " + *r.origin + ";\n";
            continue;
        }
        out += "rule " + r.id;
        if (r.strength != 0) out += " [" + std::to_string(r.strength) + "]";
        out += ":";
        if (!r.body.empty()) out += " " + join(r.body, " & ", detail::literal_text);
        out += " => " + to_string(r.head) + ";\n";
    }
    return out;
}

} // namespace rightsrisk::dsl
