// Named judgments used across the test suites, and independent truth-table
// oracles that do not go through the library's propositional network.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>

#include "etau/eliminate.hpp"

namespace etau::testing {

inline Formula F(const std::string& s) { return parse_formula(s); }
inline Term T(const std::string& s) { return parse_term(s); }

// e = eps z.(P(f(z)) -> P(z)), e' = eps x. P(x);  U = A(e'),  U -> V critical for e.
inline Judgment forking_judgment() {
    Judgment j;
    j.logic = Logic::classical();
    Formula U = F("P(f(eps x. P(x))) -> P(eps x. P(x))");
    Formula V = F("P(f(eps z. (P(f(z)) -> P(z)))) -> P(eps z. (P(f(z)) -> P(z)))");
    j.criticals = {U, Formula::imp(U, V)};
    j.goal = {V};
    return j;
}

inline const char* forking_matrix() { return "P(f(z)) -> P(z)"; }

// Four critical formulas for e = eps x. A(x): two impredicative (witnesses
// s(e), t(e)) and two predicative (witnesses a, b). The goal D(e) is the
// conjunction of their values at e, so the judgment holds in any logic.
inline Formula worked_goal_at(const Term& x) {
    auto A = [](const Term& t) { return Formula::atom("A", {t}); };
    return big_and({Formula::imp(A(Term::app("s", {x})), A(x)), Formula::imp(A(Term::app("t", {x})), A(x)),
                    Formula::imp(A(Term::app("a")), A(x)), Formula::imp(A(Term::app("b")), A(x))});
}

inline Term worked_term() { return T("eps x. A(x)"); }

inline Judgment worked_judgment(Logic logic = Logic::lcm(3)) {
    Judgment j;
    j.logic = logic;
    Term e = worked_term();
    Formula body = abstract(F("A(x)"), "x");
    for (const char* w : {"s(eps x. A(x))", "t(eps x. A(x))", "a", "b"})
        j.criticals.push_back(critical_from_body(BinderKind::Epsilon, "x", body, T(w)).rendered);
    j.goal = {worked_goal_at(e)};
    return j;
}

// (A(f(y)) -> A(x)) & (B(g(x)) -> B(y)) at e_A = eps x. A(x), e_B = eps y. B(y).
inline Judgment crossing_judgment() {
    Judgment j;
    j.logic = Logic::lc();
    j.criticals = {F("A(f(eps y. B(y))) -> A(eps x. A(x))"), F("B(g(eps x. A(x))) -> B(eps y. B(y))")};
    j.goal = {F("(A(f(eps y. B(y))) -> A(eps x. A(x))) & (B(g(eps x. A(x))) -> B(eps y. B(y)))")};
    return j;
}

// k critical formulas A(c_i) -> A(e) with ground witnesses; the goal is their
// conjunction at e, so the judgment is valid.
inline Judgment ground_witness_judgment(int k, bool tau = false) {
    Judgment j;
    j.logic = Logic::classical();
    Formula body = abstract(F("A(x)"), "x");
    BinderKind kind = tau ? BinderKind::Tau : BinderKind::Epsilon;
    std::vector<Formula> parts;
    for (int i = 1; i <= k; ++i) {
        auto c = critical_from_body(kind, "x", body, Term::app("c" + std::to_string(i)));
        j.criticals.push_back(c.rendered);
        parts.push_back(c.rendered);
    }
    j.goal = {big_and(parts)};
    return j;
}

// Negated goal with two critical formulas for one epsilon term:
// A(a) -> A(e), A(b) -> A(e)  |-  ~(A(e) -> B) ... shaped so it holds in H.
inline Judgment jankov_judgment(Logic logic = Logic::kc()) {
    Judgment j;
    j.logic = logic;
    j.criticals = {F("A(a) -> A(eps x. A(x))"), F("A(b) -> A(eps x. A(x))")};
    j.goal = {F("~((A(a) | A(b)) & ~A(eps x. A(x)))")};
    return j;
}

// Classical judgment over at most three critical terms of rank at most 2,
// with one to three critical formulas each. The goal is the conjunction of
// the critical formulas, sometimes weakened by a further disjunct.
inline Judgment random_classical_judgment(std::mt19937_64& rng) {
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    static const char* pool[] = {"eps x. P(x)",
                                 "eps x. Q(x, a)",
                                 "tau x. S(x)",
                                 "eps y. Q(y, eps x. P(x))",
                                 "eps y. Q(y, eps x. Q(x, y))",
                                 "tau y. P(y) & S(f(y))"};
    std::vector<Term> chosen;
    std::size_t want = 1 + pick(3);
    while (chosen.size() < want) {
        Term t = T(pool[pick(std::size(pool))]);
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    Judgment j;
    j.logic = Logic::classical();
    for (const auto& e : chosen) {
        std::size_t k = 1 + pick(3);
        for (std::size_t i = 0; i < k; ++i) {
            Term w;
            switch (pick(5)) {
                case 0: w = T("a"); break;
                case 1: w = T("f(b)"); break;
                case 2: w = Term::app("g", {T("a"), chosen[pick(chosen.size())]}); break;
                case 3: w = Term::app("f", {e}); break;
                default: w = chosen[pick(chosen.size())]; break;
            }
            if (w == e) w = T("b");
            j.criticals.push_back(critical_from_body(binder_kind(e), e.name(), e.body(), w).rendered);
        }
    }
    j.criticals = dedup(j.criticals);
    Formula goal = big_and(j.criticals);
    if (pick(2) == 0) goal = Formula::disj(goal, Formula::atom("R", {chosen[pick(chosen.size())]}));
    j.goal = {goal};
    return j;
}

// ---- Oracles ---------------------------------------------------------------------

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case FormulaKind::Atom: out.insert(to_string(f)); break;
        case FormulaKind::Not: collect_atoms(f.lhs(), out); break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Imp:
            collect_atoms(f.lhs(), out);
            collect_atoms(f.rhs(), out);
            break;
        default: break;
    }
}

// Goedel semantics on {0, ..., top}, atoms keyed by their printed form.
inline int godel_value(const Formula& f, const std::map<std::string, int>& v, int top) {
    switch (f.kind()) {
        case FormulaKind::Top: return top;
        case FormulaKind::Bot: return 0;
        case FormulaKind::Atom: return v.at(to_string(f));
        case FormulaKind::Not: return godel_value(f.lhs(), v, top) == 0 ? top : 0;
        case FormulaKind::And: return std::min(godel_value(f.lhs(), v, top), godel_value(f.rhs(), v, top));
        case FormulaKind::Or: return std::max(godel_value(f.lhs(), v, top), godel_value(f.rhs(), v, top));
        case FormulaKind::Imp: {
            int a = godel_value(f.lhs(), v, top), b = godel_value(f.rhs(), v, top);
            return a <= b ? top : b;
        }
        default: throw std::invalid_argument("oracle: quantifier");
    }
}

// Brute-force validity on the chain with `size` elements (size 2 = classical).
inline bool oracle_valid(const Formula& f, int size) {
    std::set<std::string> names;
    collect_atoms(f, names);
    std::vector<std::string> atoms(names.begin(), names.end());
    std::map<std::string, int> v;
    for (const auto& a : atoms) v[a] = 0;
    for (;;) {
        if (godel_value(f, v, size - 1) != size - 1) return false;
        std::size_t i = 0;
        for (; i < atoms.size(); ++i) {
            if (++v[atoms[i]] < size) break;
            v[atoms[i]] = 0;
        }
        if (i == atoms.size()) return true;
    }
}

namespace detail {

// Clauses over variables 1..n, literals as signed ints.
struct Cnf {
    int vars = 0;
    std::vector<std::vector<int>> clauses;
    std::map<std::string, int> atoms;

    // Tseitin variable equivalent to f
    int encode(const Formula& f) {
        switch (f.kind()) {
            case FormulaKind::Atom: {
                auto [it, fresh] = atoms.emplace(to_string(f), vars + 1);
                if (fresh) ++vars;
                return it->second;
            }
            case FormulaKind::Top:
            case FormulaKind::Bot: {
                int v = ++vars;
                clauses.push_back({f.kind() == FormulaKind::Top ? v : -v});
                return v;
            }
            case FormulaKind::Not: return -encode(f.lhs());
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Imp: {
                int a = encode(f.lhs()), b = encode(f.rhs()), v = ++vars;
                if (f.kind() == FormulaKind::Imp) a = -a;
                if (f.kind() == FormulaKind::And) {
                    clauses.push_back({-v, a});
                    clauses.push_back({-v, b});
                    clauses.push_back({v, -a, -b});
                } else {
                    clauses.push_back({-v, a, b});
                    clauses.push_back({v, -a});
                    clauses.push_back({v, -b});
                }
                return v;
            }
            default: throw std::invalid_argument("oracle: quantifier");
        }
    }
};

// DPLL with unit propagation, branching on a literal of a shortest open
// clause; value[v] is 1, -1 or 0 (unassigned).
inline bool dpll(const Cnf& cnf, std::vector<int> value) {
    for (;;) {
        bool changed = false;
        int branch = 0;
        std::size_t shortest = SIZE_MAX;
        for (const auto& c : cnf.clauses) {
            std::size_t open = 0;
            int last = 0;
            bool satisfied = false;
            for (int lit : c) {
                int v = value[static_cast<std::size_t>(std::abs(lit))];
                if (v == 0) {
                    ++open;
                    last = lit;
                } else if ((v > 0) == (lit > 0)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (open == 0) return false;
            if (open == 1) {
                value[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : -1;
                changed = true;
            } else if (open < shortest) {
                shortest = open;
                branch = last;
            }
        }
        if (changed) continue;
        if (branch == 0) return true;
        for (int lit : {branch, -branch}) {
            value[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
            if (dpll(cnf, value)) return true;
        }
        return false;
    }
}

}  // namespace detail

// Classical validity: the negation has no model. Independent of the
// library's propositional network and chain solver.
inline bool oracle_tautology(const Formula& f) {
    detail::Cnf cnf;
    int root = cnf.encode(f);
    cnf.clauses.push_back({-root});
    return !detail::dpll(cnf, std::vector<int>(static_cast<std::size_t>(cnf.vars) + 1, 0));
}

// Distinct formulas by printed form, for order-insensitive comparison.
inline std::set<std::string> sorted_set(const std::vector<Formula>& fs) {
    std::set<std::string> out;
    for (const auto& f : fs) out.insert(to_string(f));
    return out;
}

inline Formula entailment(const std::vector<Formula>& premises, const Formula& goal) {
    return premises.empty() ? goal : Formula::imp(big_and(premises), goal);
}

}  // namespace etau::testing
