// Critical formulas, their recognition, and the rank/degree measures.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>

#include "text.hpp"

namespace etau {

enum class BinderKind { Epsilon, Tau };

// eps:  A(s) -> A(eps x. A(x))      tau:  A(tau x. A(x)) -> A(s)
struct CriticalFormula {
    BinderKind kind;
    Formula body;  // A with its hole as bound variable 0
    std::string hint;
    Term witness;
    Term critical_term;
    Formula rendered;

    Formula matrix_at(const Term& t) const { return instantiate(body, t); }
};

inline Term binder_term(BinderKind k, const std::string& hint, const Formula& body) {
    return k == BinderKind::Epsilon ? Term::eps(hint, body) : Term::tau(hint, body);
}

inline BinderKind binder_kind(const Term& e) {
    if (e.kind() == TermKind::Eps) return BinderKind::Epsilon;
    if (e.kind() == TermKind::Tau) return BinderKind::Tau;
    throw std::invalid_argument("not an epsilon or tau term: " + to_string(e));
}

inline CriticalFormula critical_from_body(BinderKind kind, const std::string& hint, const Formula& body,
                                          const Term& witness) {
    if (!witness.closed()) throw std::invalid_argument("critical formula: witness has loose bound variables");
    if (body.loose() & ~std::uint64_t{1})
        throw std::invalid_argument("critical formula: matrix has loose bound variables");
    CriticalFormula c{kind, body, hint, witness, binder_term(kind, hint, body), {}};
    Formula at_witness = instantiate(body, witness);
    Formula at_term = instantiate(body, c.critical_term);
    c.rendered = kind == BinderKind::Epsilon ? Formula::imp(at_witness, at_term) : Formula::imp(at_term, at_witness);
    return c;
}

// Builds the critical formula of A(x) with witness t.
inline CriticalFormula make_critical(const Formula& matrix, const std::string& hole, BinderKind kind,
                                     const Term& witness) {
    if (matrix.has_quantifier()) throw std::invalid_argument("critical formula: matrix contains quantifiers");
    return critical_from_body(kind, hole, abstract(matrix, hole), witness);
}

// All readings of a formula as a critical formula.
inline std::vector<CriticalFormula> recognize_critical(const Formula& phi) {
    std::vector<CriticalFormula> out;
    if (phi.kind() != FormulaKind::Imp || !phi.closed()) return out;
    const Formula& l = phi.lhs();
    const Formula& r = phi.rhs();
    for (const Term& e : binder_terms(phi)) {
        bool eps = e.kind() == TermKind::Eps;
        const Formula& conclusion_side = eps ? r : l;
        const Formula& witness_side = eps ? l : r;
        if (instantiate(e.body(), e) != conclusion_side) continue;
        BodyMatch m = match_body(e.body(), witness_side);
        if (!m.matched || !m.binding) continue;
        out.push_back(critical_from_body(binder_kind(e), e.name(), e.body(), *m.binding));
    }
    return out;
}

inline bool is_critical(const Formula& phi) { return !recognize_critical(phi).empty(); }

// Readings whose critical term is e.
inline std::optional<CriticalFormula> reading_for(const Formula& phi, const Term& e) {
    for (auto& c : recognize_critical(phi))
        if (c.critical_term == e) return c;
    return std::nullopt;
}

inline bool is_predicative(const CriticalFormula& c) { return !occurs(c.critical_term, c.witness); }

inline bool is_weak(const CriticalFormula& c, const std::vector<Term>& critical_terms) {
    for (const Term& e : critical_terms)
        if (occurs(e, c.witness)) return false;
    return true;
}

struct ClassifiedCritical {
    CriticalFormula reading;
    bool predicative;
    bool weak;
};

inline std::vector<ClassifiedCritical> classify(const Formula& phi, const std::vector<Term>& critical_terms) {
    std::vector<ClassifiedCritical> out;
    for (auto& c : recognize_critical(phi)) out.push_back({c, is_predicative(c), is_weak(c, critical_terms)});
    return out;
}

// ---- Rank and degree -----------------------------------------------------------

namespace detail {

// Epsilon/tau subterms of a binder body together with their binder depth
// relative to the body (the body's own bound variable is index depth there).
inline std::vector<std::pair<Term, std::uint32_t>> inner_binder_terms(const Term& e) {
    std::vector<std::pair<Term, std::uint32_t>> out;
    auto fn = [&](const Term& t, std::uint32_t depth) {
        if (!t.has_binder()) return true;
        if (t.is_binder()) out.emplace_back(t, depth);
        return false;
    };
    visit_terms(e.body(), 0, fn);
    return out;
}

inline std::uint64_t up_to(std::uint32_t k) {
    return k >= 63 ? ~std::uint64_t{0} : (std::uint64_t{2} << k) - 1;
}

}  // namespace detail

// A subterm of e's body is nested in e when none of its free variables are
// bound inside e, and subordinate to e when it contains e's variable free.
inline bool nested_in(const Term& inner, std::uint32_t depth) { return (inner.loose() & detail::up_to(depth)) == 0; }
inline bool subordinate_to(const Term& inner, std::uint32_t depth) { return depth < 64 && (inner.loose() >> depth & 1); }

inline int degree(const Term& e) {
    if (!e.is_binder()) return 0;
    int best = 0;
    for (const auto& [t, d] : detail::inner_binder_terms(e))
        if (nested_in(t, d)) best = std::max(best, degree(t));
    return best + 1;
}

inline int rank(const Term& e) {
    if (!e.is_binder()) throw std::invalid_argument("rank of a term that is not an epsilon or tau term");
    int best = 0;
    for (const auto& [t, d] : detail::inner_binder_terms(e))
        if (subordinate_to(t, d)) best = std::max(best, rank(t));
    return best + 1;
}

// Highest rank, then highest degree, ties broken by the least canonical string.
inline Term select_max(const std::vector<Term>& terms) {
    if (terms.empty()) throw std::invalid_argument("select_max of an empty set");
    std::optional<std::tuple<int, int, std::string>> best_key;
    Term best;
    for (const Term& e : terms) {
        std::tuple<int, int, std::string> key{-rank(e), -degree(e), canonical_string(e)};
        if (!best_key || key < *best_key) {
            best_key = key;
            best = e;
        }
    }
    return best;
}

}  // namespace etau
