// Locally nameless terms and formulas of the epsilon/tau calculus.
//
// Bound variables are de Bruijn indices; binders keep the user's name only as
// a printing hint. Equality is therefore alpha-equivalence.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace etau {

class Formula;
struct TermNode;
struct FormulaNode;

enum class TermKind : std::uint8_t { Var, Bound, App, Eps, Tau };
enum class FormulaKind : std::uint8_t { Atom, Top, Bot, Not, And, Or, Imp, Forall, Exists };

// Binder depth is tracked in a 64-bit mask of loose indices.
inline constexpr std::uint32_t kMaxDepth = 64;

class Term {
public:
    Term() = default;

    static Term var(std::string name);
    static Term bound(std::uint32_t index);
    static Term app(std::string fn, std::vector<Term> args = {});
    static Term eps(std::string hint, Formula body);
    static Term tau(std::string hint, Formula body);
    static Term binder(TermKind kind, std::string hint, Formula body);

    TermKind kind() const;
    const std::string& name() const;  // variable, function symbol or binder hint
    std::uint32_t index() const;
    const std::vector<Term>& args() const;
    const Formula& body() const;

    bool is_binder() const { return kind() == TermKind::Eps || kind() == TermKind::Tau; }
    std::size_t hash() const;
    std::uint64_t loose() const;
    bool closed() const { return loose() == 0; }
    bool has_binder() const;
    std::size_t size() const;
    bool valid() const { return static_cast<bool>(node_); }
    const TermNode* node() const { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const TermNode> node_;
};

class Formula {
public:
    Formula() = default;

    static Formula atom(std::string pred, std::vector<Term> args = {});
    static Formula eq(Term a, Term b) { return atom("=", {std::move(a), std::move(b)}); }
    static Formula top();
    static Formula bot();
    static Formula neg(Formula a);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula imp(Formula a, Formula b);
    static Formula forall(std::string hint, Formula body);
    static Formula exists(std::string hint, Formula body);
    static Formula binary(FormulaKind k, Formula a, Formula b);
    static Formula quant(FormulaKind k, std::string hint, Formula body);

    FormulaKind kind() const;
    const std::string& name() const;  // predicate or binder hint
    const std::vector<Term>& args() const;
    const Formula& lhs() const;  // also the operand of Not and the body of a quantifier
    const Formula& rhs() const;
    const Formula& body() const { return lhs(); }

    bool is_binary() const {
        auto k = kind();
        return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Imp;
    }
    bool is_quantifier() const {
        return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists;
    }
    bool is_equality() const { return kind() == FormulaKind::Atom && name() == "="; }
    std::size_t hash() const;
    std::uint64_t loose() const;
    bool closed() const { return loose() == 0; }
    bool has_quantifier() const;
    bool has_binder_term() const;
    std::size_t size() const;
    bool valid() const { return static_cast<bool>(node_); }
    const FormulaNode* node() const { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const FormulaNode> node_;
};

struct TermNode {
    TermKind kind;
    std::string name;
    std::uint32_t index = 0;
    std::vector<Term> args;
    Formula body;
    std::size_t hash = 0;
    std::uint64_t loose = 0;
    std::size_t size = 1;
    bool has_binder = false;
};

struct FormulaNode {
    FormulaKind kind;
    std::string name;
    std::vector<Term> args;
    Formula lhs, rhs;
    std::size_t hash = 0;
    std::uint64_t loose = 0;
    std::size_t size = 1;
    bool has_quantifier = false;
    bool has_binder_term = false;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

namespace detail {

inline std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::uint64_t drop_binder(std::uint64_t mask) { return mask >> 1; }

}  // namespace detail

// ---- Term -----------------------------------------------------------------

inline Term Term::var(std::string name) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Var;
    n->hash = detail::mix(std::hash<std::string>{}(name), 1);
    n->name = std::move(name);
    return Term(std::move(n));
}

inline Term Term::bound(std::uint32_t index) {
    if (index >= kMaxDepth) throw std::length_error("binder nesting exceeds 64 levels");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Bound;
    n->index = index;
    n->loose = std::uint64_t{1} << index;
    n->hash = detail::mix(index, 2);
    return Term(std::move(n));
}

inline Term Term::app(std::string fn, std::vector<Term> args) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::App;
    std::size_t h = detail::mix(std::hash<std::string>{}(fn), 3);
    for (const auto& a : args) {
        h = detail::mix(h, a.hash());
        n->loose |= a.loose();
        n->size += a.size();
        n->has_binder = n->has_binder || a.has_binder();
    }
    n->hash = detail::mix(h, args.size());
    n->name = std::move(fn);
    n->args = std::move(args);
    return Term(std::move(n));
}

inline Term Term::binder(TermKind kind, std::string hint, Formula body) {
    if (kind != TermKind::Eps && kind != TermKind::Tau)
        throw std::invalid_argument("binder term must be eps or tau");
    auto n = std::make_shared<TermNode>();
    n->kind = kind;
    n->hash = detail::mix(body.hash(), kind == TermKind::Eps ? 4 : 5);
    n->loose = detail::drop_binder(body.loose());
    n->size = 1 + body.size();
    n->has_binder = true;
    n->name = std::move(hint);
    n->body = std::move(body);
    return Term(std::move(n));
}

inline Term Term::eps(std::string hint, Formula body) {
    return binder(TermKind::Eps, std::move(hint), std::move(body));
}
inline Term Term::tau(std::string hint, Formula body) {
    return binder(TermKind::Tau, std::move(hint), std::move(body));
}

inline TermKind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline std::uint32_t Term::index() const { return node_->index; }
inline const std::vector<Term>& Term::args() const { return node_->args; }
inline const Formula& Term::body() const { return node_->body; }
inline std::size_t Term::hash() const { return node_->hash; }
inline std::uint64_t Term::loose() const { return node_->loose; }
inline bool Term::has_binder() const { return node_->has_binder; }
inline std::size_t Term::size() const { return node_->size; }

inline bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    const TermNode& x = *a.node_;
    const TermNode& y = *b.node_;
    if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
    switch (x.kind) {
        case TermKind::Var: return x.name == y.name;
        case TermKind::Bound: return x.index == y.index;
        case TermKind::App:
            if (x.name != y.name || x.args.size() != y.args.size()) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i)
                if (!(x.args[i] == y.args[i])) return false;
            return true;
        case TermKind::Eps:
        case TermKind::Tau: return x.body == y.body;
    }
    return false;
}

// ---- Formula --------------------------------------------------------------

inline Formula Formula::atom(std::string pred, std::vector<Term> args) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Atom;
    std::size_t h = detail::mix(std::hash<std::string>{}(pred), 11);
    for (const auto& a : args) {
        h = detail::mix(h, a.hash());
        n->loose |= a.loose();
        n->size += a.size();
        n->has_binder_term = n->has_binder_term || a.has_binder();
    }
    n->hash = detail::mix(h, args.size());
    n->name = std::move(pred);
    n->args = std::move(args);
    return Formula(std::move(n));
}

inline Formula Formula::top() {
    static const Formula t = [] {
        auto n = std::make_shared<FormulaNode>();
        n->kind = FormulaKind::Top;
        n->hash = 12;
        return Formula(std::move(n));
    }();
    return t;
}

inline Formula Formula::bot() {
    static const Formula b = [] {
        auto n = std::make_shared<FormulaNode>();
        n->kind = FormulaKind::Bot;
        n->hash = 13;
        return Formula(std::move(n));
    }();
    return b;
}

inline Formula Formula::neg(Formula a) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Not;
    n->hash = detail::mix(a.hash(), 14);
    n->loose = a.loose();
    n->size = 1 + a.size();
    n->has_quantifier = a.has_quantifier();
    n->has_binder_term = a.has_binder_term();
    n->lhs = std::move(a);
    return Formula(std::move(n));
}

inline Formula Formula::binary(FormulaKind k, Formula a, Formula b) {
    if (k != FormulaKind::And && k != FormulaKind::Or && k != FormulaKind::Imp)
        throw std::invalid_argument("not a binary connective");
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    n->hash = detail::mix(detail::mix(a.hash(), b.hash()), 15 + static_cast<int>(k));
    n->loose = a.loose() | b.loose();
    n->size = 1 + a.size() + b.size();
    n->has_quantifier = a.has_quantifier() || b.has_quantifier();
    n->has_binder_term = a.has_binder_term() || b.has_binder_term();
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return Formula(std::move(n));
}

inline Formula Formula::conj(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
inline Formula Formula::disj(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
inline Formula Formula::imp(Formula a, Formula b) { return binary(FormulaKind::Imp, std::move(a), std::move(b)); }

inline Formula Formula::quant(FormulaKind k, std::string hint, Formula body) {
    if (k != FormulaKind::Forall && k != FormulaKind::Exists)
        throw std::invalid_argument("not a quantifier");
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    n->hash = detail::mix(body.hash(), k == FormulaKind::Forall ? 31 : 32);
    n->loose = detail::drop_binder(body.loose());
    n->size = 1 + body.size();
    n->has_quantifier = true;
    n->has_binder_term = body.has_binder_term();
    n->name = std::move(hint);
    n->lhs = std::move(body);
    return Formula(std::move(n));
}

inline Formula Formula::forall(std::string hint, Formula body) {
    return quant(FormulaKind::Forall, std::move(hint), std::move(body));
}
inline Formula Formula::exists(std::string hint, Formula body) {
    return quant(FormulaKind::Exists, std::move(hint), std::move(body));
}

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::vector<Term>& Formula::args() const { return node_->args; }
inline const Formula& Formula::lhs() const { return node_->lhs; }
inline const Formula& Formula::rhs() const { return node_->rhs; }
inline std::size_t Formula::hash() const { return node_->hash; }
inline std::uint64_t Formula::loose() const { return node_->loose; }
inline bool Formula::has_quantifier() const { return node_->has_quantifier; }
inline bool Formula::has_binder_term() const { return node_->has_binder_term; }
inline std::size_t Formula::size() const { return node_->size; }

inline bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    const FormulaNode& x = *a.node_;
    const FormulaNode& y = *b.node_;
    if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
    switch (x.kind) {
        case FormulaKind::Atom:
            if (x.name != y.name || x.args.size() != y.args.size()) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i)
                if (!(x.args[i] == y.args[i])) return false;
            return true;
        case FormulaKind::Top:
        case FormulaKind::Bot: return true;
        case FormulaKind::Not:
        case FormulaKind::Forall:
        case FormulaKind::Exists: return x.lhs == y.lhs;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Imp: return x.lhs == y.lhs && x.rhs == y.rhs;
    }
    return false;
}

// ---- Small helpers ---------------------------------------------------------

// Insertion-ordered set under alpha-equivalence.
template <class T, class H>
class OrderedSet {
public:
    bool insert(const T& x) {
        if (!seen_.insert(x).second) return false;
        items_.push_back(x);
        return true;
    }
    bool contains(const T& x) const { return seen_.count(x) != 0; }
    const std::vector<T>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::vector<T> items_;
    std::unordered_set<T, H> seen_;
};

using TermSet = OrderedSet<Term, TermHash>;
using FormulaSet = OrderedSet<Formula, FormulaHash>;

template <class T, class H>
std::vector<T> dedup(const std::vector<T>& xs) {
    OrderedSet<T, H> s;
    for (const auto& x : xs) s.insert(x);
    return s.items();
}
inline std::vector<Formula> dedup(const std::vector<Formula>& xs) { return dedup<Formula, FormulaHash>(xs); }
inline std::vector<Term> dedup(const std::vector<Term>& xs) { return dedup<Term, TermHash>(xs); }

inline Formula big_or(const std::vector<Formula>& xs) {
    if (xs.empty()) return Formula::bot();
    Formula acc = xs.back();
    for (std::size_t i = xs.size() - 1; i-- > 0;) acc = Formula::disj(xs[i], acc);
    return acc;
}

inline Formula big_and(const std::vector<Formula>& xs) {
    if (xs.empty()) return Formula::top();
    Formula acc = xs.back();
    for (std::size_t i = xs.size() - 1; i-- > 0;) acc = Formula::conj(xs[i], acc);
    return acc;
}

// Splits a right- or left-nested chain of one connective into its operands.
inline std::vector<Formula> flatten(const Formula& f, FormulaKind k) {
    std::vector<Formula> out;
    std::vector<Formula> stack{f};
    while (!stack.empty()) {
        Formula g = stack.back();
        stack.pop_back();
        if (g.kind() == k) {
            stack.push_back(g.rhs());
            stack.push_back(g.lhs());
        } else {
            out.push_back(g);
        }
    }
    return out;
}

}  // namespace etau
