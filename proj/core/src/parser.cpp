// SPDX-License-Identifier: Apache-2.0
#include "qccs/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qccs {

namespace {

enum class Tok {
    Ident,
    Number, // integer or decimal text
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Dot,
    Question,
    Bang,
    Plus,
    Minus,
    Star,
    Slash,
    Backslash,
    Par,  // ||
    AndAnd,
    Eq,
    Lt,
    Not, // !
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line = 1;
    int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& text, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string t, int l, int c) { out.push_back({k, std::move(t), l, c}); };
    while (i < text.size()) {
        char c = text[i];
        int l = line, co = col;
        auto adv = [&](std::size_t n = 1) {
            for (std::size_t k = 0; k < n && i < text.size(); ++k) {
                if (text[i] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
                ++i;
            }
        };
        if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
            adv();
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') adv();
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            push(Tok::Ident, text.substr(i, j - i), l, co);
            adv(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && text[j] == '.' && j + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    ++k;
                    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                    j = k;
                }
            }
            push(Tok::Number, text.substr(i, j - i), l, co);
            adv(j - i);
            continue;
        }
        if (c == '|' && i + 1 < text.size() && text[i + 1] == '|') {
            push(Tok::Par, "||", l, co);
            adv(2);
            continue;
        }
        if (c == '&' && i + 1 < text.size() && text[i + 1] == '&') {
            push(Tok::AndAnd, "&&", l, co);
            adv(2);
            continue;
        }
        switch (c) {
        case '(': push(Tok::LParen, "(", l, co); break;
        case ')': push(Tok::RParen, ")", l, co); break;
        case '[': push(Tok::LBracket, "[", l, co); break;
        case ']': push(Tok::RBracket, "]", l, co); break;
        case '{': push(Tok::LBrace, "{", l, co); break;
        case '}': push(Tok::RBrace, "}", l, co); break;
        case ',': push(Tok::Comma, ",", l, co); break;
        case ';': push(Tok::Semi, ";", l, co); break;
        case ':': push(Tok::Colon, ":", l, co); break;
        case '.': push(Tok::Dot, ".", l, co); break;
        case '?': push(Tok::Question, "?", l, co); break;
        case '!': push(Tok::Bang, "!", l, co); break;
        case '+': push(Tok::Plus, "+", l, co); break;
        case '-': push(Tok::Minus, "-", l, co); break;
        case '*': push(Tok::Star, "*", l, co); break;
        case '/': push(Tok::Slash, "/", l, co); break;
        case '\\': push(Tok::Backslash, "\\", l, co); break;
        case '=': push(Tok::Eq, "=", l, co); break;
        case '<': push(Tok::Lt, "<", l, co); break;
        default: {
            if (diags.size() < 128) {
                Diagnostic d;
                d.message = "unexpected character";
                d.line = l;
                d.col = co;
                diags.push_back(d);
            }
            break;
        }
        }
        adv();
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool is_keyword(const std::string& s) {
    static const std::set<std::string> kw = {"nil",  "tau",      "if",      "then",    "true",
                                             "false", "proc",     "qubits",  "channel", "qchannel",
                                             "superop", "unitary", "observable"};
    return kw.count(s) > 0;
}

struct Parser {
    const std::vector<Token>& toks;
    std::vector<Diagnostic>& diags;
    Program& prog;
    std::size_t pos = 0;
    int error_budget = 200;
    int depth = 0;

    struct DepthGuard {
        Parser& p;
        bool ok;
        explicit DepthGuard(Parser& parser) : p(parser), ok(++p.depth < 400) {
            if (!ok) {
                p.error("nesting too deep");
                p.pos = p.toks.size() - 1; // abort at End
            }
        }
        ~DepthGuard() { --p.depth; }
    };

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t p = pos + ahead;
        return p < toks.size() ? toks[p] : toks.back();
    }
    const Token& advance() {
        const Token& t = peek();
        if (pos + 1 < toks.size()) ++pos;
        return t;
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (at(k)) {
            advance();
            return true;
        }
        return false;
    }
    bool accept_ident(const char* word) {
        if (at(Tok::Ident) && peek().text == word) {
            advance();
            return true;
        }
        return false;
    }

    void error(const std::string& msg) {
        if (--error_budget < 0) return;
        Diagnostic d;
        d.message = msg;
        d.line = peek().line;
        d.col = peek().col;
        diags.push_back(d);
    }

    bool expect(Tok k, const char* what) {
        if (accept(k)) return true;
        error(std::string("expected ") + what);
        return false;
    }

    std::string expect_ident(const char* what) {
        if (at(Tok::Ident) && !is_keyword(peek().text)) return advance().text;
        error(std::string("expected ") + what);
        return "";
    }

    void skip_to_semi() {
        while (!at(Tok::End) && !at(Tok::Semi)) advance();
        accept(Tok::Semi);
    }

    // -- literals ----------------------------------------------------------

    std::optional<Rational> parse_rational() {
        bool neg = accept(Tok::Minus);
        if (!at(Tok::Number)) {
            error("expected rational literal");
            return std::nullopt;
        }
        std::string numtext = advance().text;
        if (numtext.find('.') != std::string::npos || numtext.find('e') != std::string::npos ||
            numtext.find('E') != std::string::npos) {
            error("channel domains take exact rationals, not decimals");
            return std::nullopt;
        }
        std::int64_t num = 0;
        std::from_chars(numtext.data(), numtext.data() + numtext.size(), num);
        std::int64_t den = 1;
        if (accept(Tok::Slash)) {
            if (!at(Tok::Number)) {
                error("expected denominator");
                return std::nullopt;
            }
            std::string dent = advance().text;
            std::from_chars(dent.data(), dent.data() + dent.size(), den);
            if (den == 0) {
                error("zero denominator");
                return std::nullopt;
            }
        }
        return Rational(neg ? -num : num, den);
    }

    // one real or imaginary component: NUMBER['/'NUMBER]['i'] | 'i'
    bool parse_complex_part(double sign, Complex& acc) {
        if (at(Tok::Ident) && peek().text == "i") {
            advance();
            acc += Complex(0.0, sign);
            return true;
        }
        if (!at(Tok::Number)) {
            error("expected number in complex literal");
            return false;
        }
        std::string t = advance().text;
        double v = std::strtod(t.c_str(), nullptr);
        if (accept(Tok::Slash)) {
            if (!at(Tok::Number)) {
                error("expected denominator");
                return false;
            }
            double d = std::strtod(advance().text.c_str(), nullptr);
            if (d == 0.0) {
                error("zero denominator");
                return false;
            }
            v /= d;
        }
        if (at(Tok::Ident) && peek().text == "i") {
            advance();
            acc += Complex(0.0, sign * v);
        } else {
            acc += Complex(sign * v, 0.0);
        }
        return true;
    }

    std::optional<Complex> parse_complex() {
        Complex acc(0.0, 0.0);
        double sign = accept(Tok::Minus) ? -1.0 : 1.0;
        if (!parse_complex_part(sign, acc)) return std::nullopt;
        if (at(Tok::Plus) || at(Tok::Minus)) {
            double s2 = advance().kind == Tok::Minus ? -1.0 : 1.0;
            if (!parse_complex_part(s2, acc)) return std::nullopt;
        }
        return acc;
    }

    std::optional<ComplexMatrix> parse_matrix() {
        if (!expect(Tok::LBracket, "'['")) return std::nullopt;
        std::vector<std::vector<Complex>> rows;
        do {
            if (!expect(Tok::LBracket, "'[' starting a row")) return std::nullopt;
            std::vector<Complex> row;
            do {
                auto c = parse_complex();
                if (!c) return std::nullopt;
                row.push_back(*c);
            } while (accept(Tok::Comma));
            if (!expect(Tok::RBracket, "']' closing a row")) return std::nullopt;
            rows.push_back(std::move(row));
        } while (accept(Tok::Comma));
        if (!expect(Tok::RBracket, "']' closing the matrix")) return std::nullopt;
        std::size_t cols = rows.front().size();
        for (const auto& r : rows)
            if (r.size() != cols) {
                error("ragged matrix literal");
                return std::nullopt;
            }
        ComplexMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
        return m;
    }

    // -- expressions --------------------------------------------------------

    ExprPtr parse_expr() {
        DepthGuard guard(*this);
        if (!guard.ok) return Expr::literal(Rational(0));
        return parse_or();
    }

    ExprPtr parse_or() {
        ExprPtr l = parse_and();
        while (accept(Tok::Par)) l = Expr::binary(ExprKind::Or, l, parse_and());
        return l;
    }
    ExprPtr parse_and() {
        ExprPtr l = parse_cmp();
        while (accept(Tok::AndAnd)) l = Expr::binary(ExprKind::And, l, parse_cmp());
        return l;
    }
    ExprPtr parse_cmp() {
        ExprPtr l = parse_add();
        if (accept(Tok::Eq)) return Expr::binary(ExprKind::Eq, l, parse_add());
        if (accept(Tok::Lt)) return Expr::binary(ExprKind::Lt, l, parse_add());
        return l;
    }
    ExprPtr parse_add() {
        ExprPtr l = parse_mul();
        for (;;) {
            if (accept(Tok::Plus))
                l = Expr::binary(ExprKind::Add, l, parse_mul());
            else if (accept(Tok::Minus))
                l = Expr::binary(ExprKind::Sub, l, parse_mul());
            else
                return l;
        }
    }
    ExprPtr parse_mul() {
        ExprPtr l = parse_unary();
        while (accept(Tok::Star)) l = Expr::binary(ExprKind::Mul, l, parse_unary());
        return l;
    }
    ExprPtr parse_unary() {
        if (accept(Tok::Bang)) return Expr::negation(parse_unary());
        if (accept(Tok::Minus)) return Expr::binary(ExprKind::Sub, Expr::literal(Rational(0)), parse_unary());
        return parse_prim();
    }
    ExprPtr parse_prim() {
        if (at(Tok::Number)) {
            std::string t = advance().text;
            if (t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
                t.find('E') != std::string::npos) {
                error("classical expressions use exact rationals, not decimals");
                return Expr::literal(Rational(0));
            }
            std::int64_t n = 0;
            std::from_chars(t.data(), t.data() + t.size(), n);
            if (accept(Tok::Slash)) {
                if (at(Tok::Number)) {
                    std::int64_t d = 0;
                    std::string dt = advance().text;
                    std::from_chars(dt.data(), dt.data() + dt.size(), d);
                    if (d != 0) return Expr::literal(Rational(n, d));
                }
                error("malformed rational literal");
                return Expr::literal(Rational(n));
            }
            return Expr::literal(Rational(n));
        }
        if (accept_ident("true")) return Expr::boolean(true);
        if (accept_ident("false")) return Expr::boolean(false);
        if (at(Tok::Ident) && !is_keyword(peek().text)) return Expr::variable(advance().text);
        if (accept(Tok::LParen)) {
            ExprPtr e = parse_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        error("expected expression");
        advance();
        return Expr::literal(Rational(0));
    }

    // -- processes ----------------------------------------------------------

    std::vector<std::string> parse_wire_list(Tok closer, const char* what) {
        std::vector<std::string> ws;
        do {
            std::string w = expect_ident(what);
            if (!w.empty()) ws.push_back(w);
        } while (accept(Tok::Comma));
        expect(closer, closer == Tok::RParen ? "')'" : "']'");
        return ws;
    }

    TermPtr parse_proc() { return parse_sum(); }

    TermPtr parse_sum() {
        DepthGuard guard(*this);
        if (!guard.ok) return ProcessTerm::nil();
        TermPtr l = parse_par();
        while (accept(Tok::Plus)) l = ProcessTerm::sum(l, parse_par());
        return l;
    }

    TermPtr parse_par() {
        TermPtr l = parse_post();
        while (accept(Tok::Par)) l = ProcessTerm::parallel(l, parse_post());
        return l;
    }

    TermPtr parse_post() {
        TermPtr t = parse_prefix();
        for (;;) {
            if (at(Tok::Backslash)) {
                advance();
                expect(Tok::LBrace, "'{'");
                std::set<std::string> chans;
                do {
                    std::string c = expect_ident("channel name");
                    if (!c.empty()) chans.insert(c);
                } while (accept(Tok::Comma));
                expect(Tok::RBrace, "'}'");
                t = ProcessTerm::restricted(t, std::move(chans));
            } else if (at(Tok::LBracket) && bracket_is_relabel()) {
                advance();
                Relabeling f;
                if (!accept(Tok::RBracket)) { // [] is the identity relabeling
                    do {
                        std::string to = expect_ident("channel name");
                        expect(Tok::Slash, "'/'");
                        std::string from = expect_ident("channel name");
                        if (!to.empty() && !from.empty()) f.table.emplace_back(from, to);
                    } while (accept(Tok::Comma));
                    expect(Tok::RBracket, "']'");
                }
                t = ProcessTerm::relabeled(t, std::move(f));
            } else {
                return t;
            }
        }
    }

    // lookahead: does the bracket starting at `pos` contain a '/', i.e. a
    // relabeling rather than an operator application ([] is the identity
    // relabeling)
    bool bracket_is_relabel() const {
        if (pos + 1 < toks.size() && toks[pos + 1].kind == Tok::RBracket) return true;
        int depth = 0;
        for (std::size_t p = pos; p < toks.size(); ++p) {
            switch (toks[p].kind) {
            case Tok::LBracket: ++depth; break;
            case Tok::RBracket:
                if (--depth == 0) return false;
                break;
            case Tok::Slash:
                if (depth == 1) return true;
                break;
            case Tok::End: return false;
            default: break;
            }
        }
        return false;
    }

    TermPtr parse_prefix() {
        DepthGuard guard(*this);
        if (!guard.ok) return ProcessTerm::nil();
        if (accept_ident("nil")) return ProcessTerm::nil();
        if (accept_ident("tau")) {
            expect(Tok::Dot, "'.' after tau");
            return ProcessTerm::tau(parse_prefix());
        }
        if (accept_ident("if")) {
            ExprPtr cond = parse_expr();
            if (!accept_ident("then")) error("expected 'then'");
            return ProcessTerm::guarded(cond, parse_prefix());
        }
        if (accept(Tok::LParen)) {
            TermPtr t = parse_proc();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (!at(Tok::Ident) || is_keyword(peek().text)) {
            error("expected a process");
            advance();
            return ProcessTerm::nil();
        }
        std::string id = advance().text;

        if (accept(Tok::Question)) { // input prefix
            bool quantum = prog.is_quantum_channel(id);
            if (!quantum && !prog.is_classical_channel(id))
                error("'" + id + "' is not a declared channel");
            if (quantum) {
                std::vector<std::string> vars;
                if (accept(Tok::LParen))
                    vars = parse_wire_list(Tok::RParen, "bound wire");
                else
                    vars.push_back(expect_ident("bound wire"));
                expect(Tok::Dot, "'.'");
                return ProcessTerm::q_input(id, std::move(vars), parse_prefix());
            }
            std::string var = expect_ident("bound variable");
            expect(Tok::Dot, "'.'");
            return ProcessTerm::c_input(id, var, parse_prefix());
        }

        if (accept(Tok::Bang)) { // output prefix
            if (prog.is_quantum_channel(id)) {
                std::vector<std::string> vars;
                if (accept(Tok::LParen))
                    vars = parse_wire_list(Tok::RParen, "wire");
                else
                    vars.push_back(expect_ident("wire"));
                expect(Tok::Dot, "'.'");
                return ProcessTerm::q_output(id, std::move(vars), parse_prefix());
            }
            if (!prog.is_classical_channel(id)) error("'" + id + "' is not a declared channel");
            ExprPtr e = parse_expr();
            expect(Tok::Dot, "'.'");
            return ProcessTerm::c_output(id, e, parse_prefix());
        }

        if (at(Tok::LBracket) && !bracket_is_relabel()) { // operator prefix
            advance();
            std::vector<std::string> wires;
            do {
                std::string w = expect_ident("wire");
                if (!w.empty()) wires.push_back(w);
            } while (accept(Tok::Comma));
            if (accept(Tok::Semi)) {
                std::string var = expect_ident("bound variable");
                expect(Tok::RBracket, "']'");
                expect(Tok::Dot, "'.'");
                return ProcessTerm::measurement(id, std::move(wires), var, parse_prefix());
            }
            expect(Tok::RBracket, "']'");
            expect(Tok::Dot, "'.'");
            return ProcessTerm::super_op(id, std::move(wires), parse_prefix());
        }

        // process constant, possibly with quantum arguments
        std::vector<std::string> actuals;
        if (accept(Tok::LParen)) {
            if (!accept(Tok::RParen)) {
                actuals = parse_wire_list(Tok::RParen, "wire argument");
            }
        }
        return ProcessTerm::constant(id, std::move(actuals));
    }

    // -- declarations --------------------------------------------------------

    void predeclare_proc_signatures() {
        for (std::size_t p = 0; p + 1 < toks.size(); ++p) {
            bool at_decl_start = p == 0 || toks[p - 1].kind == Tok::Semi;
            if (!at_decl_start || toks[p].kind != Tok::Ident || toks[p].text != "proc") continue;
            if (toks[p + 1].kind != Tok::Ident) continue;
            std::string name = toks[p + 1].text;
            std::vector<std::string> params;
            std::size_t q = p + 2;
            if (q < toks.size() && toks[q].kind == Tok::LParen) {
                ++q;
                while (q < toks.size() && toks[q].kind == Tok::Ident) {
                    params.push_back(toks[q].text);
                    ++q;
                    if (q < toks.size() && toks[q].kind == Tok::Comma) ++q;
                }
            }
            if (!prog.constants.emplace(name, ConstantDef{params, ProcessTerm::nil()}).second) {
                Diagnostic d;
                d.message = "duplicate process declaration '" + name + "'";
                d.line = toks[p].line;
                d.col = toks[p].col;
                diags.push_back(d);
            }
        }
    }

    void parse_declarations() {
        while (!at(Tok::End)) {
            if (accept_ident("qubits")) {
                std::set<std::string> names(prog.universe.wires().begin(), prog.universe.wires().end());
                while (at(Tok::Ident) && !is_keyword(peek().text)) {
                    if (!names.insert(advance().text).second) error("duplicate qubit name");
                }
                prog.universe = QubitRegister::canonical(names);
                expect(Tok::Semi, "';'");
            } else if (accept_ident("channel")) {
                std::string name = expect_ident("channel name");
                expect(Tok::Colon, "':'");
                expect(Tok::LBrace, "'{'");
                std::vector<Rational> domain;
                do {
                    auto r = parse_rational();
                    if (r) domain.push_back(*r);
                } while (accept(Tok::Comma));
                expect(Tok::RBrace, "'}'");
                expect(Tok::Semi, "';'");
                if (!name.empty() && !declare_unique(name)) continue;
                if (!name.empty()) prog.classical_channels[name] = std::move(domain);
            } else if (accept_ident("qchannel")) {
                std::string name = expect_ident("channel name");
                std::size_t cap = 1;
                if (accept(Tok::Colon)) {
                    if (at(Tok::Number)) {
                        cap = static_cast<std::size_t>(std::strtoull(advance().text.c_str(), nullptr, 10));
                    } else {
                        error("expected capacity");
                    }
                }
                expect(Tok::Semi, "';'");
                if (!name.empty() && !declare_unique(name)) continue;
                if (!name.empty()) prog.quantum_channels[name] = cap;
            } else if (accept_ident("unitary")) {
                std::string name = expect_ident("name");
                expect(Tok::Eq, "'='");
                auto m = parse_matrix();
                expect(Tok::Semi, "';'");
                if (name.empty() || !declare_unique(name) || !m) continue;
                try {
                    prog.superops.emplace(name, SuperOperator::unitary(*m));
                } catch (const QccsError& e) {
                    error(std::string("invalid unitary '") + name + "': " + e.what());
                }
            } else if (accept_ident("superop")) {
                std::string name = expect_ident("name");
                expect(Tok::Eq, "'='");
                std::vector<ComplexMatrix> kraus;
                bool ok = expect(Tok::LBrace, "'{'");
                if (ok) {
                    do {
                        auto m = parse_matrix();
                        if (!m) {
                            ok = false;
                            break;
                        }
                        kraus.push_back(std::move(*m));
                    } while (accept(Tok::Comma));
                    if (ok) expect(Tok::RBrace, "'}'");
                }
                expect(Tok::Semi, "';'");
                if (name.empty() || !declare_unique(name) || !ok) continue;
                try {
                    prog.superops.emplace(name, SuperOperator::from_kraus(std::move(kraus)));
                } catch (const QccsError& e) {
                    error(std::string("invalid super-operator '") + name + "': " + e.what());
                }
            } else if (accept_ident("observable")) {
                std::string name = expect_ident("name");
                expect(Tok::Eq, "'='");
                auto m = parse_matrix();
                expect(Tok::Semi, "';'");
                if (name.empty() || !declare_unique(name) || !m) continue;
                try {
                    prog.observables.emplace(name, Observable::spectral_decompose(*m));
                } catch (const QccsError& e) {
                    error(std::string("invalid observable '") + name + "': " + e.what());
                }
            } else if (accept_ident("proc")) {
                int decl_line = peek().line, decl_col = peek().col;
                std::string name = expect_ident("process name");
                std::vector<std::string> params;
                if (accept(Tok::LParen)) {
                    while (at(Tok::Ident) && !is_keyword(peek().text)) {
                        params.push_back(advance().text);
                        accept(Tok::Comma);
                    }
                    expect(Tok::RParen, "')'");
                }
                expect(Tok::Eq, "'='");
                TermPtr body = parse_proc();
                expect(Tok::Semi, "';'");
                if (!name.empty()) {
                    proc_spans[name] = {decl_line, decl_col};
                    prog.constants[name] = ConstantDef{std::move(params), std::move(body)};
                }
            } else {
                error("expected a declaration");
                skip_to_semi();
            }
        }
    }

    bool declare_unique(const std::string& name) {
        bool taken = prog.classical_channels.count(name) || prog.quantum_channels.count(name) ||
                     prog.superops.count(name) || prog.observables.count(name);
        if (taken) {
            error("redeclaration of '" + name + "'");
            return false;
        }
        return true;
    }

    std::map<std::string, std::pair<int, int>> proc_spans;
};

} // namespace

const std::vector<std::string>& builtin_unitary_names() {
    static const std::vector<std::string> names = {"H", "CN", "X", "Y", "Z", "I", "SWAP"};
    return names;
}

Program empty_program_with_builtins() {
    Program p;
    p.superops.emplace("H", SuperOperator::unitary(mat_hadamard()));
    p.superops.emplace("CN", SuperOperator::unitary(mat_cnot()));
    p.superops.emplace("X", SuperOperator::unitary(mat_pauli_x()));
    p.superops.emplace("Y", SuperOperator::unitary(mat_pauli_y()));
    p.superops.emplace("Z", SuperOperator::unitary(mat_pauli_z()));
    p.superops.emplace("I", SuperOperator::unitary(mat_identity2()));
    p.superops.emplace("SWAP", SuperOperator::unitary(mat_swap()));
    return p;
}

ParseResult parse_source(const std::string& text, const std::string& filename) {
    (void)filename;
    ParseResult res;
    auto tokens = lex(text, res.diagnostics);
    Program prog = empty_program_with_builtins();
    Parser p{tokens, res.diagnostics, prog};
    p.predeclare_proc_signatures();
    p.pos = 0;
    p.parse_declarations();

    if (!has_errors(res.diagnostics)) {
        auto wf = well_formed(prog);
        for (auto& d : wf) {
            // attach the declaration's source position when the path names it
            for (const auto& [name, span] : p.proc_spans) {
                if (d.path.rfind("proc " + name, 0) == 0) {
                    d.line = span.first;
                    d.col = span.second;
                    break;
                }
            }
            res.diagnostics.push_back(std::move(d));
        }
    }
    if (!has_errors(res.diagnostics)) res.program = std::move(prog);
    return res;
}

ParseResult parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult res;
        Diagnostic d;
        d.message = "cannot open file: " + path;
        res.diagnostics.push_back(d);
        return res;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_source(ss.str(), path);
}

std::optional<ComplexMatrix> parse_matrix_literal(const std::string& text,
                                                  std::vector<Diagnostic>& diagnostics) {
    auto tokens = lex(text, diagnostics);
    Program scratch;
    Parser p{tokens, diagnostics, scratch};
    auto m = p.parse_matrix();
    if (!p.at(Tok::End)) p.error("trailing input after matrix literal");
    if (has_errors(diagnostics)) return std::nullopt;
    return m;
}

ParseTermResult parse_proc_expression(const std::string& text, const Program& program) {
    ParseTermResult res;
    auto tokens = lex(text, res.diagnostics);
    Program copy = program;
    Parser p{tokens, res.diagnostics, copy};
    TermPtr t = p.parse_proc();
    if (!p.at(Tok::End)) p.error("trailing input after process expression");
    if (!has_errors(res.diagnostics)) res.term = t;
    return res;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_complex(Complex c) {
    double re = c.real(), im = c.imag();
    if (im == 0.0) return format_double(re);
    std::string imag = format_double(std::abs(im)) + "i";
    if (re == 0.0) return (im < 0 ? "-" : "") + imag;
    return format_double(re) + (im < 0 ? "-" : "+") + imag;
}

std::string format_matrix(const ComplexMatrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) out += ",";
        out += "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ",";
            out += format_complex(m.at(r, c));
        }
        out += "]";
    }
    out += "]";
    return out;
}

} // namespace

std::string render_program(const Program& program) {
    std::ostringstream os;
    if (program.universe.size() > 0) {
        os << "qubits";
        for (const auto& w : program.universe.wires()) os << " " << w;
        os << ";\n";
    }
    for (const auto& [name, domain] : program.classical_channels) {
        os << "channel " << name << " : {";
        for (std::size_t i = 0; i < domain.size(); ++i) os << (i ? "," : "") << domain[i].str();
        os << "};\n";
    }
    for (const auto& [name, cap] : program.quantum_channels) {
        os << "qchannel " << name;
        if (cap != 1) os << " : " << cap;
        os << ";\n";
    }
    const auto& builtins = builtin_unitary_names();
    for (const auto& [name, op] : program.superops) {
        if (std::find(builtins.begin(), builtins.end(), name) != builtins.end()) continue;
        if (op.kraus().size() == 1 && op.trace_preserving()) {
            os << "unitary " << name << " = " << format_matrix(op.kraus().front()) << ";\n";
        } else {
            os << "superop " << name << " = {";
            for (std::size_t i = 0; i < op.kraus().size(); ++i)
                os << (i ? "," : "") << format_matrix(op.kraus()[i]);
            os << "};\n";
        }
    }
    for (const auto& [name, obs] : program.observables) {
        os << "observable " << name << " = " << format_matrix(obs.matrix()) << ";\n";
    }
    for (const auto& [name, def] : program.constants) {
        os << "proc " << name << "(";
        for (std::size_t i = 0; i < def.params.size(); ++i) os << (i ? "," : "") << def.params[i];
        os << ") = " << render_term(def.body) << ";\n";
    }
    return os.str();
}

} // namespace qccs
