// Propositional schemas characterizing the intermediate logics, recognizers
// for their substitution instances, and the standard relations between them.
#pragma once

#include <optional>
#include <string>

#include "chains.hpp"
#include "prover.hpp"

namespace etau {

enum class SchemaKind { EM, J, Lin, Bm, Rn, BigDisjEps, BigDisjTau, IteratedLin };

inline const char* schema_name(SchemaKind k) {
    switch (k) {
        case SchemaKind::EM: return "EM";
        case SchemaKind::J: return "J";
        case SchemaKind::Lin: return "Lin";
        case SchemaKind::Bm: return "Bm";
        case SchemaKind::Rn: return "Rn";
        case SchemaKind::BigDisjEps: return "bigdisj_eps";
        case SchemaKind::BigDisjTau: return "bigdisj_tau";
        case SchemaKind::IteratedLin: return "iterated_lin";
    }
    return "?";
}

inline std::vector<Formula> schema_atoms(std::size_t n, const std::string& base = "A") {
    std::vector<Formula> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(Formula::atom(base + std::to_string(i)));
    return out;
}

// Number of atoms each schema expects for parameter n.
inline std::size_t schema_arity(SchemaKind k, int n) {
    switch (k) {
        case SchemaKind::EM:
        case SchemaKind::J: return 1;
        case SchemaKind::Lin: return 2;
        case SchemaKind::Bm:
        case SchemaKind::IteratedLin: return static_cast<std::size_t>(n) + 1;
        case SchemaKind::Rn:
        case SchemaKind::BigDisjEps:
        case SchemaKind::BigDisjTau: return static_cast<std::size_t>(n);
    }
    return 0;
}

// (A1 -> A2) | ... | (Am -> Am+1)
inline Formula chain_disjunction(const std::vector<Formula>& a) {
    std::vector<Formula> links;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) links.push_back(Formula::imp(a[i], a[i + 1]));
    return big_or(links);
}

// bigdisj_eps: OR_j AND_i (Ai -> Aj);  bigdisj_tau: OR_j AND_i (Aj -> Ai)
inline Formula big_disjunction(const std::vector<Formula>& a, bool eps) {
    std::vector<Formula> disj;
    for (const auto& aj : a) {
        std::vector<Formula> conj;
        for (const auto& ai : a) conj.push_back(eps ? Formula::imp(ai, aj) : Formula::imp(aj, ai));
        disj.push_back(big_and(conj));
    }
    return big_or(disj);
}

inline Formula schema(SchemaKind k, const std::vector<Formula>& a, int n = 0) {
    if (k == SchemaKind::Bm || k == SchemaKind::IteratedLin || k == SchemaKind::Rn || k == SchemaKind::BigDisjEps ||
        k == SchemaKind::BigDisjTau) {
        if (n < 1) throw std::invalid_argument(std::string(schema_name(k)) + ": parameter must be positive");
    }
    if (a.size() != schema_arity(k, n))
        throw std::invalid_argument(std::string(schema_name(k)) + ": expected " +
                                    std::to_string(schema_arity(k, n)) + " atoms, got " + std::to_string(a.size()));
    using F = Formula;
    switch (k) {
        case SchemaKind::EM: return F::disj(a[0], F::neg(a[0]));
        case SchemaKind::J: return F::disj(F::neg(a[0]), F::neg(F::neg(a[0])));
        case SchemaKind::Lin: return F::disj(F::imp(a[0], a[1]), F::imp(a[1], a[0]));
        case SchemaKind::Bm: return chain_disjunction(a);
        case SchemaKind::Rn: {
            std::vector<Formula> parts{a[0]};
            for (std::size_t i = 0; i + 1 < a.size(); ++i) parts.push_back(F::imp(a[i], a[i + 1]));
            parts.push_back(F::neg(a.back()));
            return big_or(parts);
        }
        case SchemaKind::BigDisjEps: return big_disjunction(a, true);
        case SchemaKind::BigDisjTau: return big_disjunction(a, false);
        case SchemaKind::IteratedLin: return F::imp(F::imp(a.front(), a.back()), chain_disjunction(a));
    }
    return F::top();
}

inline Formula schema(SchemaKind k, int n = 0) { return schema(k, schema_atoms(schema_arity(k, n)), n); }

// ---- Recognizing instances ---------------------------------------------------

struct SchemaMatch {
    SchemaKind kind;
    int parameter = 0;  // m for chains, p for big disjunctions, k for the EM family
};

namespace detail {

inline std::optional<int> chain_length(const Formula& f) {
    auto links = flatten(f, FormulaKind::Or);
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (links[i].kind() != FormulaKind::Imp) return std::nullopt;
        if (i > 0 && links[i - 1].rhs() != links[i].lhs()) return std::nullopt;
    }
    return static_cast<int>(links.size());
}

inline bool is_negation_of(const Formula& n, const Formula& a) {
    if (n.kind() == FormulaKind::Not) return n.lhs() == a;
    return n.kind() == FormulaKind::Imp && n.rhs().kind() == FormulaKind::Bot && n.lhs() == a;
}

// (OR xs) | (AND ~xs), or with the roles of the two sides exchanged. The
// negated side fixes k; the other side is peeled k - 1 times along its right
// spine, so the xs may themselves be conjunctions or disjunctions.
inline std::optional<int> em_family(const Formula& f) {
    if (f.kind() != FormulaKind::Or) return std::nullopt;
    for (int orient = 0; orient < 2; ++orient) {
        for (FormulaKind pos : {FormulaKind::Or, FormulaKind::And}) {
            FormulaKind neg = pos == FormulaKind::Or ? FormulaKind::And : FormulaKind::Or;
            const Formula& ps = orient == 0 ? f.lhs() : f.rhs();
            const Formula& ns = orient == 0 ? f.rhs() : f.lhs();
            auto ys = flatten(ns, neg);
            std::vector<Formula> xs;
            Formula rest = ps;
            for (std::size_t i = 0; i + 1 < ys.size() && rest.kind() == pos; ++i) {
                xs.push_back(rest.lhs());
                rest = rest.rhs();
            }
            xs.push_back(rest);
            if (xs.size() != ys.size()) continue;
            bool ok = true;
            for (std::size_t i = 0; i < xs.size() && ok; ++i) ok = is_negation_of(ys[i], xs[i]);
            if (ok) return static_cast<int>(xs.size());
        }
    }
    return std::nullopt;
}

inline std::optional<int> big_disjunction_size(const Formula& f, bool eps) {
    auto rows = flatten(f, FormulaKind::Or);
    std::vector<std::vector<Formula>> table;
    for (const auto& r : rows) {
        table.push_back(flatten(r, FormulaKind::And));
        if (table.back().size() != rows.size()) return std::nullopt;
        for (const auto& c : table.back())
            if (c.kind() != FormulaKind::Imp) return std::nullopt;
    }
    // eps rows: AND_i (Xi -> Xj);  tau rows: AND_i (Xj -> Xi)
    auto varying = [&](const Formula& c) -> const Formula& { return eps ? c.lhs() : c.rhs(); };
    auto fixed = [&](const Formula& c) -> const Formula& { return eps ? c.rhs() : c.lhs(); };
    for (std::size_t j = 0; j < table.size(); ++j)
        for (std::size_t i = 0; i < table.size(); ++i)
            if (varying(table[j][i]) != varying(table[0][i]) || fixed(table[j][i]) != varying(table[0][j]))
                return std::nullopt;
    return static_cast<int>(rows.size());
}

// (X1 -> Xm+1) -> chain from X1 to Xm+1
inline std::optional<int> iterated_lin_length(const Formula& f) {
    if (f.kind() != FormulaKind::Imp || f.lhs().kind() != FormulaKind::Imp) return std::nullopt;
    auto m = chain_length(f.rhs());
    if (!m) return std::nullopt;
    auto links = flatten(f.rhs(), FormulaKind::Or);
    if (links.front().lhs() != f.lhs().lhs() || links.back().rhs() != f.lhs().rhs()) return std::nullopt;
    return m;
}

}  // namespace detail

// Which schema, if any, a formula instantiates. Checked from the most
// specific shape to the most general.
inline std::optional<SchemaMatch> match_schema(const Formula& f) {
    if (f.kind() == FormulaKind::Or && f.lhs().kind() == FormulaKind::Not && f.rhs().kind() == FormulaKind::Not &&
        f.rhs().lhs() == f.lhs())
        return SchemaMatch{SchemaKind::J, 1};
    if (auto k = detail::em_family(f)) return SchemaMatch{SchemaKind::EM, *k};
    if (f.kind() == FormulaKind::Or && f.lhs().kind() == FormulaKind::Imp && f.rhs().kind() == FormulaKind::Imp &&
        f.lhs().lhs() == f.rhs().rhs() && f.lhs().rhs() == f.rhs().lhs())
        return SchemaMatch{SchemaKind::Lin, 2};
    if (auto m = detail::iterated_lin_length(f)) return SchemaMatch{SchemaKind::IteratedLin, *m};
    if (auto p = detail::big_disjunction_size(f, true)) return SchemaMatch{SchemaKind::BigDisjEps, *p};
    if (auto p = detail::big_disjunction_size(f, false)) return SchemaMatch{SchemaKind::BigDisjTau, *p};
    if (auto m = detail::chain_length(f)) return SchemaMatch{SchemaKind::Bm, *m};
    return std::nullopt;
}

// ---- Countermodels and relations ---------------------------------------------

// Strictly descending values m, m-1, ..., 0 on the chain of size m+1: an
// order-isomorphic copy of v(Ai) = 1/i with the last atom at 0.
inline std::vector<int> counterexample_Bm(int m) {
    if (m < 1) throw std::invalid_argument("counterexample_Bm: m must be positive");
    std::vector<int> v;
    for (int i = 0; i <= m; ++i) v.push_back(m - i);
    return v;
}

struct RelationCheck {
    int m;
    bool entails_lin;       // alternating instance of Bm entails Lin in H
    bool entails_hosoi;     // top/bottom instance of Bm entails R_{m-1} in H
    Formula alternating;    // the substituted Bm instances
    Formula shifted;
};

// For each m: Bm with A for odd and B for even atoms entails Lin, and Bm with
// top for A1, bottom for Am+1 and A_{i-1} for A_i entails R_{m-1}.
inline std::vector<RelationCheck> schema_relations_check(int from = 2, int to = 5) {
    if (from < 2) throw std::invalid_argument("schema relations need m >= 2");
    std::vector<RelationCheck> out;
    Formula A = Formula::atom("A"), B = Formula::atom("B");
    for (int m = from; m <= to; ++m) {
        std::vector<Formula> alt, shifted;
        for (int i = 1; i <= m + 1; ++i) alt.push_back(i % 2 ? A : B);
        auto atoms = schema_atoms(static_cast<std::size_t>(m));
        shifted.push_back(Formula::top());
        for (int i = 2; i <= m; ++i) shifted.push_back(atoms[static_cast<std::size_t>(i - 2)]);
        shifted.push_back(Formula::bot());
        RelationCheck r{m, false, false, schema(SchemaKind::Bm, alt, m), schema(SchemaKind::Bm, shifted, m)};
        r.entails_lin = prove_H({r.alternating}, schema(SchemaKind::Lin, {A, B})).provable;
        std::vector<Formula> r_atoms(atoms.begin(), atoms.begin() + (m - 1));
        r.entails_hosoi = prove_H({r.shifted}, schema(SchemaKind::Rn, r_atoms, m - 1)).provable;
        out.push_back(r);
    }
    return out;
}

}  // namespace etau
