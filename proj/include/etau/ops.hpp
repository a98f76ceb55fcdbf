// Substitution, binder opening/closing, occurrence tests and matching.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "syntax.hpp"

namespace etau {

namespace detail {

// Generic bottom-up rewriter. The visitor supplies
//   std::optional<Term> at(const Term&, std::uint32_t depth)   -- replacement, no descent
//   bool skip(std::uint64_t loose, const auto& node, std::uint32_t depth)
// and unchanged subtrees are returned by reference.
template <class V>
Term rewrite(const Term& t, std::uint32_t depth, V& v);
template <class V>
Formula rewrite(const Formula& f, std::uint32_t depth, V& v);

template <class V>
Term rewrite(const Term& t, std::uint32_t depth, V& v) {
    if (v.skip(t, depth)) return t;
    if (auto r = v.at(t, depth)) return *r;
    switch (t.kind()) {
        case TermKind::Var:
        case TermKind::Bound: return t;
        case TermKind::App: {
            std::vector<Term> args;
            bool changed = false;
            args.reserve(t.args().size());
            for (const auto& a : t.args()) {
                args.push_back(rewrite(a, depth, v));
                changed = changed || args.back().node() != a.node();
            }
            return changed ? Term::app(t.name(), std::move(args)) : t;
        }
        case TermKind::Eps:
        case TermKind::Tau: {
            Formula b = rewrite(t.body(), depth + 1, v);
            return b.node() == t.body().node() ? t : Term::binder(t.kind(), t.name(), std::move(b));
        }
    }
    return t;
}

template <class V>
Formula rewrite(const Formula& f, std::uint32_t depth, V& v) {
    if (v.skip(f, depth)) return f;
    switch (f.kind()) {
        case FormulaKind::Top:
        case FormulaKind::Bot: return f;
        case FormulaKind::Atom: {
            std::vector<Term> args;
            bool changed = false;
            args.reserve(f.args().size());
            for (const auto& a : f.args()) {
                args.push_back(rewrite(a, depth, v));
                changed = changed || args.back().node() != a.node();
            }
            return changed ? Formula::atom(f.name(), std::move(args)) : f;
        }
        case FormulaKind::Not: {
            Formula a = rewrite(f.lhs(), depth, v);
            return a.node() == f.lhs().node() ? f : Formula::neg(std::move(a));
        }
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Imp: {
            Formula a = rewrite(f.lhs(), depth, v);
            Formula b = rewrite(f.rhs(), depth, v);
            if (a.node() == f.lhs().node() && b.node() == f.rhs().node()) return f;
            return Formula::binary(f.kind(), std::move(a), std::move(b));
        }
        case FormulaKind::Forall:
        case FormulaKind::Exists: {
            Formula b = rewrite(f.body(), depth + 1, v);
            return b.node() == f.body().node() ? f : Formula::quant(f.kind(), f.name(), std::move(b));
        }
    }
    return f;
}

// Visits every term occurrence with its binder depth; returning true stops descent.
template <class Fn>
void visit_terms(const Term& t, std::uint32_t depth, Fn& fn);
template <class Fn>
void visit_terms(const Formula& f, std::uint32_t depth, Fn& fn);

template <class Fn>
void visit_terms(const Term& t, std::uint32_t depth, Fn& fn) {
    if (fn(t, depth)) return;
    if (t.kind() == TermKind::App)
        for (const auto& a : t.args()) visit_terms(a, depth, fn);
    else if (t.is_binder())
        visit_terms(t.body(), depth + 1, fn);
}

template <class Fn>
void visit_terms(const Formula& f, std::uint32_t depth, Fn& fn) {
    switch (f.kind()) {
        case FormulaKind::Atom:
            for (const auto& a : f.args()) visit_terms(a, depth, fn);
            break;
        case FormulaKind::Top:
        case FormulaKind::Bot: break;
        case FormulaKind::Not: visit_terms(f.lhs(), depth, fn); break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Imp:
            visit_terms(f.lhs(), depth, fn);
            visit_terms(f.rhs(), depth, fn);
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists: visit_terms(f.body(), depth + 1, fn); break;
    }
}

struct Instantiate {
    const Term& value;
    template <class N>
    bool skip(const N& n, std::uint32_t depth) const {
        return depth >= kMaxDepth || (n.loose() >> depth) == 0;
    }
    std::optional<Term> at(const Term& t, std::uint32_t depth) const {
        if (t.kind() != TermKind::Bound) return std::nullopt;
        if (t.index() == depth) return value;
        if (t.index() > depth) return Term::bound(t.index() - 1);
        return t;
    }
};

struct Abstract {
    const std::string& name;
    template <class N>
    bool skip(const N&, std::uint32_t) const { return false; }
    std::optional<Term> at(const Term& t, std::uint32_t depth) const {
        if (t.kind() == TermKind::Var && t.name() == name) return Term::bound(depth);
        if (t.kind() == TermKind::Bound && t.index() >= depth) return Term::bound(t.index() + 1);
        return std::nullopt;
    }
};

struct ReplaceVar {
    const std::string& name;
    const Term& value;
    template <class N>
    bool skip(const N&, std::uint32_t) const { return false; }
    std::optional<Term> at(const Term& t, std::uint32_t) const {
        if (t.kind() == TermKind::Var && t.name() == name) return value;
        return std::nullopt;
    }
};

struct ReplaceTerm {
    const Term& target;
    const Term& value;
    bool skip(const Term& t, std::uint32_t) const { return t.size() < target.size(); }
    bool skip(const Formula& f, std::uint32_t) const { return f.size() < target.size(); }
    std::optional<Term> at(const Term& t, std::uint32_t) const {
        if (t == target) return value;
        return std::nullopt;
    }
};

}  // namespace detail

// Replaces the outermost bound variable of a binder body by a term.
inline Formula instantiate(const Formula& body, const Term& t) {
    if (!t.closed()) throw std::invalid_argument("instantiate: term has loose bound variables");
    detail::Instantiate v{t};
    return detail::rewrite(body, 0, v);
}
inline Term instantiate(const Term& body, const Term& t) {
    if (!t.closed()) throw std::invalid_argument("instantiate: term has loose bound variables");
    detail::Instantiate v{t};
    return detail::rewrite(body, 0, v);
}

// Turns free occurrences of a named variable into the body's bound variable.
inline Formula abstract(const Formula& f, const std::string& x) {
    detail::Abstract v{x};
    return detail::rewrite(f, 0, v);
}

inline Formula subst_var(const Formula& f, const std::string& x, const Term& t) {
    if (!t.closed()) throw std::invalid_argument("subst_var: term has loose bound variables");
    detail::ReplaceVar v{x, t};
    return detail::rewrite(f, 0, v);
}
inline Term subst_var(const Term& u, const std::string& x, const Term& t) {
    if (!t.closed()) throw std::invalid_argument("subst_var: term has loose bound variables");
    detail::ReplaceVar v{x, t};
    return detail::rewrite(u, 0, v);
}

// Replaces every occurrence of a closed subterm, outermost first. Occurrences
// inside the replacement are not revisited.
inline Formula subst_term(const Formula& f, const Term& e, const Term& s) {
    if (!e.closed() || !s.closed()) throw std::invalid_argument("subst_term: open term");
    if (e == s) return f;
    detail::ReplaceTerm v{e, s};
    return detail::rewrite(f, 0, v);
}
inline Term subst_term(const Term& u, const Term& e, const Term& s) {
    if (!e.closed() || !s.closed()) throw std::invalid_argument("subst_term: open term");
    if (e == s) return u;
    detail::ReplaceTerm v{e, s};
    return detail::rewrite(u, 0, v);
}

template <class Obj>
bool occurs(const Term& e, const Obj& obj) {
    bool found = false;
    auto fn = [&](const Term& t, std::uint32_t) {
        if (found || t.size() < e.size()) return true;
        if (t == e) found = true;
        return found;
    };
    detail::visit_terms(obj, 0, fn);
    return found;
}

template <class Obj>
bool has_var(const Obj& obj, const std::string& x) {
    bool found = false;
    auto fn = [&](const Term& t, std::uint32_t) {
        if (t.kind() == TermKind::Var && t.name() == x) found = true;
        return found;
    };
    detail::visit_terms(obj, 0, fn);
    return found;
}

template <class Obj>
std::set<std::string> free_vars(const Obj& obj) {
    std::set<std::string> out;
    auto fn = [&](const Term& t, std::uint32_t) {
        if (t.kind() == TermKind::Var) out.insert(t.name());
        return false;
    };
    detail::visit_terms(obj, 0, fn);
    return out;
}

// Closed epsilon/tau subterms in order of first occurrence (outer before inner).
template <class Obj>
std::vector<Term> binder_terms(const Obj& obj) {
    TermSet out;
    auto fn = [&](const Term& t, std::uint32_t) {
        if (!t.has_binder()) return true;
        if (t.is_binder() && t.closed()) out.insert(t);
        return false;
    };
    detail::visit_terms(obj, 0, fn);
    return out.items();
}

// Closed epsilon/tau subterms not contained in another one.
template <class Obj>
std::vector<Term> maximal_binder_terms(const Obj& obj) {
    TermSet out;
    auto fn = [&](const Term& t, std::uint32_t) {
        if (!t.has_binder()) return true;
        if (t.is_binder() && t.closed()) {
            out.insert(t);
            return true;
        }
        return false;
    };
    detail::visit_terms(obj, 0, fn);
    return out.items();
}

inline bool binder_free(const Formula& f) { return !f.has_binder_term(); }
inline bool binder_free(const Term& t) { return !t.has_binder(); }

inline Formula subst_term_all(const Formula& f, const std::vector<std::pair<Term, Term>>& pairs) {
    Formula g = f;
    for (const auto& [e, s] : pairs) g = subst_term(g, e, s);
    return g;
}

// ---- Matching ---------------------------------------------------------------

namespace detail {

struct Matcher {
    const std::set<std::string>* holes = nullptr;  // named holes
    bool bound_hole = false;                       // the body's own bound variable is a hole
    std::map<std::string, Term> named;
    std::optional<Term> at_bound;

    bool bind(std::optional<Term>& slot, const Term& value) {
        if (!value.closed()) return false;
        if (slot) return *slot == value;
        slot = value;
        return true;
    }

    bool term(const Term& p, const Term& t, std::uint32_t depth) {
        if (bound_hole && p.kind() == TermKind::Bound && p.index() == depth) return bind(at_bound, t);
        if (holes && p.kind() == TermKind::Var && holes->count(p.name())) {
            if (!t.closed()) return false;
            auto it = named.find(p.name());
            if (it != named.end()) return it->second == t;
            named.emplace(p.name(), t);
            return true;
        }
        if (p.kind() != t.kind()) return false;
        switch (p.kind()) {
            case TermKind::Var: return p.name() == t.name();
            case TermKind::Bound: return p.index() == t.index();
            case TermKind::App:
                if (p.name() != t.name() || p.args().size() != t.args().size()) return false;
                for (std::size_t i = 0; i < p.args().size(); ++i)
                    if (!term(p.args()[i], t.args()[i], depth)) return false;
                return true;
            case TermKind::Eps:
            case TermKind::Tau: return formula(p.body(), t.body(), depth + 1);
        }
        return false;
    }

    bool formula(const Formula& p, const Formula& t, std::uint32_t depth) {
        if (p.kind() != t.kind()) return false;
        switch (p.kind()) {
            case FormulaKind::Atom:
                if (p.name() != t.name() || p.args().size() != t.args().size()) return false;
                for (std::size_t i = 0; i < p.args().size(); ++i)
                    if (!term(p.args()[i], t.args()[i], depth)) return false;
                return true;
            case FormulaKind::Top:
            case FormulaKind::Bot: return true;
            case FormulaKind::Not: return formula(p.lhs(), t.lhs(), depth);
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Imp:
                return formula(p.lhs(), t.lhs(), depth) && formula(p.rhs(), t.rhs(), depth);
            case FormulaKind::Forall:
            case FormulaKind::Exists: return formula(p.body(), t.body(), depth + 1);
        }
        return false;
    }
};

}  // namespace detail

// Outcome of matching a pattern with one hole against a closed target.
struct BodyMatch {
    bool matched = false;
    std::optional<Term> binding;  // empty when the hole does not occur
};

// Matches a binder body (hole = its bound variable) against a closed formula.
inline BodyMatch match_body(const Formula& body, const Formula& target) {
    detail::Matcher m;
    m.bound_hole = true;
    BodyMatch r;
    r.matched = m.formula(body, target, 0);
    if (r.matched) r.binding = m.at_bound;
    return r;
}

// Finds t with pattern[t/hole] == target. Returns {} on mismatch, and also
// when the hole does not occur (then no term is determined).
inline std::vector<Term> match_matrix(const Formula& pattern, const std::string& hole, const Formula& target) {
    auto r = match_body(abstract(pattern, hole), target);
    if (r.matched && r.binding) return {*r.binding};
    return {};
}

// Simultaneous matching of several named holes.
inline std::optional<std::map<std::string, Term>> match_holes(const Formula& pattern,
                                                              const std::set<std::string>& holes,
                                                              const Formula& target) {
    detail::Matcher m;
    m.holes = &holes;
    if (!m.formula(pattern, target, 0)) return std::nullopt;
    return m.named;
}

}  // namespace etau
