// Concrete syntax.
//
//   formula  := imp
//   imp      := or ('->' imp)?
//   or       := and ('|' or)?
//   and      := unary ('&' and)?
//   unary    := '~' unary | ('all' | 'ex') ident '.' formula | primary
//   primary  := '(' formula ')' | 'top' | 'bot' | ident ('(' terms ')')? | term '=' term
//   term     := ('eps' | 'tau') ident '.' formula | ident ('(' terms ')')? | '(' term ')'
//
// Binders extend as far right as possible. A bare identifier in term position
// is a bound variable if one is in scope, a free variable if it looks like
// u, v, w, x, y, z followed by digits, primes or underscores, and a constant
// otherwise.
#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "ops.hpp"

namespace etau {

inline bool is_keyword(std::string_view s) {
    return s == "eps" || s == "tau" || s == "all" || s == "ex" || s == "top" || s == "bot";
}

inline bool is_variable_name(std::string_view s) {
    if (s.empty() || s[0] < 'u' || s[0] > 'z') return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
    }
    return true;
}

inline bool is_identifier(std::string_view s) {
    if (s.empty() || is_keyword(s)) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
    return true;
}

// ---- Printing ----------------------------------------------------------------

namespace detail {

class Printer {
public:
    explicit Printer(bool canonical) : canonical_(canonical) {}

    void avoid_names_of(const Formula& f) { collect(f); }
    void avoid_names_of(const Term& t) { collect(t); }

    std::string term(const Term& t) {
        switch (t.kind()) {
            case TermKind::Var: return t.name();
            case TermKind::Bound:
                if (t.index() >= scope_.size()) return "#" + std::to_string(t.index());
                return scope_[scope_.size() - 1 - t.index()];
            case TermKind::App: {
                if (t.args().empty()) return t.name();
                std::string s = t.name() + "(";
                for (std::size_t i = 0; i < t.args().size(); ++i) {
                    if (i) s += ", ";
                    s += term(t.args()[i]);
                }
                return s + ")";
            }
            case TermKind::Eps:
            case TermKind::Tau: {
                std::string v = bind(t.name(), t.body().loose());
                std::string s = (t.kind() == TermKind::Eps ? "eps " : "tau ") + v + ". " + formula(t.body());
                scope_.pop_back();
                return s;
            }
        }
        return "?";
    }

    std::string formula(const Formula& f) {
        switch (f.kind()) {
            case FormulaKind::Top: return "top";
            case FormulaKind::Bot: return "bot";
            case FormulaKind::Atom: {
                if (f.is_equality() && f.args().size() == 2)
                    return eq_side(f.args()[0]) + " = " + eq_side(f.args()[1]);
                if (f.args().empty()) return f.name();
                std::string s = f.name() + "(";
                for (std::size_t i = 0; i < f.args().size(); ++i) {
                    if (i) s += ", ";
                    s += term(f.args()[i]);
                }
                return s + ")";
            }
            case FormulaKind::Not: return "~" + operand(f.lhs(), prec(f.lhs()) < 4);
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Imp: {
                int p = prec(f);
                const char* op = f.kind() == FormulaKind::And ? " & " : f.kind() == FormulaKind::Or ? " | " : " -> ";
                std::string l = operand(f.lhs(), prec(f.lhs()) <= p);
                std::string r = operand(f.rhs(), prec(f.rhs()) < p);
                return l + op + r;
            }
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                std::string v = bind(f.name(), f.body().loose());
                std::string s = (f.kind() == FormulaKind::Forall ? "all " : "ex ") + v + ". " + formula(f.body());
                scope_.pop_back();
                return s;
            }
        }
        return "?";
    }

private:
    static int prec(const Formula& f) {
        switch (f.kind()) {
            case FormulaKind::Imp: return 1;
            case FormulaKind::Or: return 2;
            case FormulaKind::And: return 3;
            case FormulaKind::Not: return 4;
            case FormulaKind::Forall:
            case FormulaKind::Exists: return 0;
            default: return 5;
        }
    }

    std::string operand(const Formula& f, bool paren) {
        std::string s = formula(f);
        return paren ? "(" + s + ")" : s;
    }

    std::string eq_side(const Term& t) {
        std::string s = term(t);
        return t.is_binder() ? "(" + s + ")" : s;
    }

    // Pushes a printable name for a binder whose body has the given loose mask.
    std::string bind(const std::string& hint, std::uint64_t body_loose) {
        std::string name;
        if (canonical_) {
            name = "#" + std::to_string(scope_.size());
        } else {
            name = is_identifier(hint) ? hint : "x";
            std::set<std::string> referenced;
            for (std::size_t k = 1; k < 64 && k <= scope_.size(); ++k)
                if (body_loose >> k & 1) referenced.insert(scope_[scope_.size() - k]);
            while (avoid_.count(name) || referenced.count(name)) name += "'";
        }
        scope_.push_back(name);
        return name;
    }

    void collect(const Formula& f) {
        auto fn = [&](const Term& t, std::uint32_t) {
            if (t.kind() == TermKind::Var || t.kind() == TermKind::App) avoid_.insert(t.name());
            return false;
        };
        detail::visit_terms(f, 0, fn);
        collect_atoms(f);
    }
    void collect(const Term& t) {
        auto fn = [&](const Term& u, std::uint32_t) {
            if (u.kind() == TermKind::Var || u.kind() == TermKind::App) avoid_.insert(u.name());
            return false;
        };
        detail::visit_terms(t, 0, fn);
    }
    // Propositional atoms share the identifier space with bare terms.
    void collect_atoms(const Formula& f) {
        switch (f.kind()) {
            case FormulaKind::Atom:
                if (f.args().empty()) avoid_.insert(f.name());
                break;
            case FormulaKind::Not:
            case FormulaKind::Forall:
            case FormulaKind::Exists: collect_atoms(f.lhs()); break;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Imp:
                collect_atoms(f.lhs());
                collect_atoms(f.rhs());
                break;
            default: break;
        }
    }

    bool canonical_;
    std::set<std::string> avoid_;
    std::vector<std::string> scope_;
};

}  // namespace detail

inline std::string to_string(const Formula& f) {
    detail::Printer p(false);
    p.avoid_names_of(f);
    return p.formula(f);
}

inline std::string to_string(const Term& t) {
    detail::Printer p(false);
    p.avoid_names_of(t);
    return p.term(t);
}

// Hint-independent rendering, used for deterministic tie-breaking.
inline std::string canonical_string(const Term& t) { return detail::Printer(true).term(t); }
inline std::string canonical_string(const Formula& f) { return detail::Printer(true).formula(f); }

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

// ---- Parsing -----------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Not, And, Or, Arrow, Eq, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\''))
                ++i;
            out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
            continue;
        }
        switch (c) {
            case '(': out.push_back({Tok::LParen, "(", start}); break;
            case ')': out.push_back({Tok::RParen, ")", start}); break;
            case ',': out.push_back({Tok::Comma, ",", start}); break;
            case '.': out.push_back({Tok::Dot, ".", start}); break;
            case '~': out.push_back({Tok::Not, "~", start}); break;
            case '&': out.push_back({Tok::And, "&", start}); break;
            case '|': out.push_back({Tok::Or, "|", start}); break;
            case '=': out.push_back({Tok::Eq, "=", start}); break;
            case '-':
                if (i + 1 < src.size() && src[i + 1] == '>') {
                    out.push_back({Tok::Arrow, "->", start});
                    ++i;
                    break;
                }
                throw ParseError("expected '->'", start);
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        ++i;
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Formula whole_formula() {
        Formula f = formula();
        expect(Tok::End, "end of input");
        return f;
    }
    Term whole_term() {
        Term t = term();
        expect(Tok::End, "end of input");
        return t;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    void expect(Tok k, const char* what) {
        if (!at(k)) throw ParseError(std::string("expected ") + what, peek().offset);
        advance();
    }
    std::string binder_name() {
        if (!at(Tok::Ident) || is_keyword(peek().text))
            throw ParseError("expected variable name", peek().offset);
        return advance().text;
    }

    Formula formula() {
        Formula l = disjunction();
        if (at(Tok::Arrow)) {
            advance();
            return Formula::imp(l, formula());
        }
        return l;
    }
    Formula disjunction() {
        Formula l = conjunction();
        if (at(Tok::Or)) {
            advance();
            return Formula::disj(l, disjunction());
        }
        return l;
    }
    Formula conjunction() {
        Formula l = unary();
        if (at(Tok::And)) {
            advance();
            return Formula::conj(l, conjunction());
        }
        return l;
    }
    Formula unary() {
        if (at(Tok::Not)) {
            advance();
            return Formula::neg(unary());
        }
        if (at_word("all") || at_word("ex")) {
            bool univ = advance().text == "all";
            std::string v = binder_name();
            expect(Tok::Dot, "'.'");
            scope_.push_back(v);
            Formula body = formula();
            scope_.pop_back();
            return univ ? Formula::forall(v, body) : Formula::exists(v, body);
        }
        return primary();
    }

    Formula primary() {
        if (at(Tok::LParen)) {
            std::size_t save = pos_;
            try {
                advance();
                Term t = term();
                expect(Tok::RParen, "')'");
                if (at(Tok::Eq)) {
                    advance();
                    return Formula::eq(t, term());
                }
            } catch (const ParseError&) {
            }
            pos_ = save;
            advance();
            Formula f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (at_word("top")) {
            advance();
            return Formula::top();
        }
        if (at_word("bot")) {
            advance();
            return Formula::bot();
        }
        if (at_word("eps") || at_word("tau")) {
            Term t = term();
            expect(Tok::Eq, "'=' after epsilon/tau term");
            return Formula::eq(t, term());
        }
        if (!at(Tok::Ident)) throw ParseError("expected formula", peek().offset);
        std::size_t save = pos_;
        const Token& id = advance();
        std::string name = id.text;
        std::vector<Term> args;
        if (at(Tok::LParen)) args = arguments();
        if (at(Tok::Eq)) {
            pos_ = save;
            Term l = term();
            expect(Tok::Eq, "'='");
            return Formula::eq(l, term());
        }
        return Formula::atom(name, std::move(args));
    }

    std::vector<Term> arguments() {
        expect(Tok::LParen, "'('");
        std::vector<Term> args;
        if (!at(Tok::RParen)) {
            args.push_back(term());
            while (at(Tok::Comma)) {
                advance();
                args.push_back(term());
            }
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    Term term() {
        if (at(Tok::LParen)) {
            advance();
            Term t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (at_word("eps") || at_word("tau")) {
            bool e = advance().text == "eps";
            std::string v = binder_name();
            expect(Tok::Dot, "'.'");
            scope_.push_back(v);
            Formula body = formula();
            scope_.pop_back();
            return e ? Term::eps(v, body) : Term::tau(v, body);
        }
        if (!at(Tok::Ident) || is_keyword(peek().text)) throw ParseError("expected term", peek().offset);
        std::string name = advance().text;
        if (at(Tok::LParen)) return Term::app(name, arguments());
        for (std::size_t i = scope_.size(); i-- > 0;)
            if (scope_[i] == name) return Term::bound(static_cast<std::uint32_t>(scope_.size() - 1 - i));
        if (is_variable_name(name)) return Term::var(name);
        return Term::app(name);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::string> scope_;
};

}  // namespace detail

inline Formula parse_formula(std::string_view src) { return detail::Parser(src).whole_formula(); }
inline Term parse_term(std::string_view src) { return detail::Parser(src).whole_term(); }

}  // namespace etau
