// Elimination of critical formulas: elimination sets for classical logic,
// negated goals, finite-valued and infinite-valued Goedel logics, and the
// drivers that run them until no critical formula is left.
#pragma once

#include <functional>
#include <map>

#include "judgment.hpp"
#include "names.hpp"

namespace etau {

struct EliminationStep {
    std::string rule;
    Term target;
    std::vector<Formula> eliminated;       // the critical formulas removed
    std::vector<Term> elimination_set;     // terms substituted for the target
    std::vector<Formula> axiom_instances;  // instances added by this step
    Judgment before;
    Judgment after;
    std::size_t raw_disjuncts = 0;         // goal disjuncts before deduplication
    std::vector<Formula> demoted;          // substituted critical formulas that stopped being critical
    std::optional<Verification> verification;
};

// ---- Building blocks -------------------------------------------------------------

// Critical formulas with a reading for e, and the rest.
struct Partition {
    std::vector<Formula> rest;
    std::vector<Formula> formulas;
    std::vector<CriticalFormula> readings;  // reading for e of each formula

    std::vector<Term> witnesses(const Term& e) const {
        TermSet out;
        for (const auto& r : readings)
            if (r.witness != e) out.insert(r.witness);
        return out.items();
    }
    Formula matrix_at(const Term& t) const { return readings.front().matrix_at(t); }
};

inline Partition partition(const Judgment& j, const Term& e) {
    Partition p;
    for (const auto& f : j.criticals) {
        if (auto r = reading_for(f, e)) {
            p.formulas.push_back(f);
            p.readings.push_back(*r);
        } else {
            p.rest.push_back(f);
        }
    }
    if (p.formulas.empty()) throw std::invalid_argument(to_string(e) + " is not critical in the judgment");
    return p;
}

namespace detail {

// Replaces e by each t in turn in the remaining premises and the goal.
inline void substitute_over(const Judgment& j, const std::vector<Formula>& rest, const Term& e,
                            const std::vector<Term>& set, bool dedup_goal, EliminationStep& step) {
    Judgment& a = step.after;
    a.logic = j.logic;
    for (const auto& t : set) {
        for (const auto& f : rest) {
            Formula g = subst_term(f, e, t);
            if (is_critical(g)) {
                a.criticals.push_back(g);
            } else {
                a.residues.push_back(g);
                step.demoted.push_back(g);
            }
        }
        for (const auto& f : j.residues) a.residues.push_back(subst_term(f, e, t));
        for (const auto& f : j.instances) a.instances.push_back(subst_term(f, e, t));
    }
    for (const auto& t : set)
        for (const auto& g : j.goal) a.goal.push_back(subst_term(g, e, t));
    step.raw_disjuncts = a.goal.size();
    if (dedup_goal) a.goal = dedup(a.goal);
}

inline void finish(EliminationStep& step) {
    Judgment& a = step.after;
    a.instances.insert(a.instances.end(), step.axiom_instances.begin(), step.axiom_instances.end());
    a.criticals = dedup(a.criticals);
    a.residues = dedup(a.residues);
    a.instances = dedup(a.instances);
    step.demoted = dedup(step.demoted);
}

inline EliminationStep start(const char* rule, const Judgment& j, const Term& e, const Partition& p) {
    EliminationStep s;
    s.rule = rule;
    s.target = e;
    s.before = j;
    s.eliminated = p.formulas;
    return s;
}

inline std::vector<Formula> negations(const std::vector<Formula>& xs) {
    std::vector<Formula> out;
    for (const auto& x : xs) out.push_back(Formula::neg(x));
    return out;
}

}  // namespace detail

// ---- Classical logic ------------------------------------------------------------

// Removes one critical formula A(s) -> A(e) (or A(e) -> A(s)) using excluded
// middle on A(s). The other critical formulas of e stay as they are.
inline EliminationStep eliminate_single_classical(const Judgment& j, const CriticalFormula& c, bool dedup_goal = true) {
    if (j.logic.kind != Logic::Classical) throw std::invalid_argument("single elimination needs classical logic");
    const Term& e = c.critical_term;
    std::optional<Formula> chosen;
    std::vector<Formula> others_of_e, rest;
    for (const auto& f : j.criticals) {
        auto r = reading_for(f, e);
        if (!r) rest.push_back(f);
        else if (!chosen && f == c.rendered) chosen = f;
        else others_of_e.push_back(f);
    }
    if (!chosen) throw std::invalid_argument("critical formula " + to_string(c.rendered) + " is not in the judgment");
    EliminationStep s;
    s.rule = "classical-single";
    s.target = e;
    s.before = j;
    s.eliminated = {*chosen};
    s.elimination_set = {e};
    if (c.witness != e) {
        s.elimination_set.push_back(c.witness);
        Formula a = c.matrix_at(c.witness);
        s.axiom_instances.push_back(c.kind == BinderKind::Epsilon ? Formula::disj(a, Formula::neg(a))
                                                                  : Formula::disj(Formula::neg(a), a));
    }
    // the e-branch keeps the remaining critical formulas of e unsubstituted
    detail::substitute_over(j, rest, e, s.elimination_set, dedup_goal, s);
    s.after.criticals.insert(s.after.criticals.end(), others_of_e.begin(), others_of_e.end());
    detail::finish(s);
    return s;
}

// All critical formulas of e at once: elimination set e, s1, ..., sk.
inline EliminationStep eliminate_complete_classical(const Judgment& j, const Term& e, bool dedup_goal = true) {
    if (j.logic.kind != Logic::Classical) throw std::invalid_argument("complete classical elimination needs classical logic");
    Partition p = partition(j, e);
    EliminationStep s = detail::start("classical-complete", j, e, p);
    auto ws = p.witnesses(e);
    s.elimination_set = {e};
    s.elimination_set.insert(s.elimination_set.end(), ws.begin(), ws.end());
    if (!ws.empty()) {
        std::vector<Formula> as;
        for (const auto& w : ws) as.push_back(p.matrix_at(w));
        auto nots = detail::negations(as);
        // eps: OR A(si) | AND ~A(si);  tau: OR ~A(si) | AND A(si)
        s.axiom_instances.push_back(binder_kind(e) == BinderKind::Epsilon
                                        ? Formula::disj(big_or(as), big_and(nots))
                                        : Formula::disj(big_or(nots), big_and(as)));
    }
    detail::substitute_over(j, p.rest, e, s.elimination_set, dedup_goal, s);
    detail::finish(s);
    return s;
}

// ---- Negated goals with weak excluded middle ----------------------------------------

// Goal ~D(e). Records one instance ~A(si) | ~~A(si) per witness; together
// they give (AND ~A(si)) | OR ~~A(si) intuitionistically.
inline EliminationStep eliminate_negated_jankov(const Judgment& j, const Term& e, bool dedup_goal = true) {
    if (j.logic.kind == Logic::H) throw std::invalid_argument("weak excluded middle is not available in H");
    if (j.goal.size() != 1 || j.goal.front().kind() != FormulaKind::Not)
        throw std::invalid_argument("negated-goal elimination needs a goal of the form ~D");
    Partition p = partition(j, e);
    EliminationStep s = detail::start("jankov", j, e, p);
    auto ws = p.witnesses(e);
    s.elimination_set = {e};
    s.elimination_set.insert(s.elimination_set.end(), ws.begin(), ws.end());
    for (const auto& w : ws) {
        Formula a = p.matrix_at(w);
        s.axiom_instances.push_back(Formula::disj(Formula::neg(a), Formula::neg(Formula::neg(a))));
    }
    detail::substitute_over(j, p.rest, e, s.elimination_set, dedup_goal, s);
    detail::finish(s);
    return s;
}

// ---- Finite-valued Goedel logics -----------------------------------------------------

// Words over the impredicative witnesses s_1..s_r, and the terms they build.
struct WordTerms {
    std::vector<std::size_t> word;  // i_1 .. i_k
    std::vector<Term> terms;        // w_1(e), ..., w_k(e), e
};

namespace detail {

inline std::vector<std::vector<std::size_t>> words(std::size_t letters, int length) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (int l = 0; l < length; ++l) {
        std::vector<std::vector<std::size_t>> next;
        for (std::size_t last = 0; last < letters; ++last)
            for (const auto& w : out) {
                auto v = w;
                v.insert(v.begin(), last);
                next.push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace detail

inline WordTerms word_terms(const std::vector<Term>& witnesses, const Term& e, const std::vector<std::size_t>& word) {
    WordTerms out{word, std::vector<Term>(word.size() + 1, e)};
    for (std::size_t pos = word.size(); pos-- > 0;)
        out.terms[pos] = subst_term(witnesses[word[pos]], e, out.terms[pos + 1]);
    return out;
}

// Atoms of a word's chain in chain order: for eps A(w_1 e), ..., A(e);
// for tau the reverse.
inline std::vector<Formula> word_chain_atoms(const Partition& p, BinderKind kind, const WordTerms& w) {
    std::vector<Formula> atoms;
    for (const auto& t : w.terms) atoms.push_back(p.matrix_at(t));
    if (kind == BinderKind::Tau) std::reverse(atoms.begin(), atoms.end());
    return atoms;
}

// Elimination of the impredicative critical formulas of e carried `stage`
// levels deep. At stage m with a logic proving Bm the chain disjunctions are
// axiom instances; at an earlier stage they remain as premises.
inline EliminationStep impredicative_stage(const Judgment& j, const Term& e, int stage, bool chains_are_instances,
                                           bool dedup_goal = true) {
    if (stage < 1) throw std::invalid_argument("impredicative elimination: stage must be positive");
    Partition p = partition(j, e);
    BinderKind kind = binder_kind(e);
    std::vector<Formula> delta, pi;
    TermSet impredicative, predicative;
    for (std::size_t i = 0; i < p.formulas.size(); ++i) {
        if (is_predicative(p.readings[i])) {
            pi.push_back(p.formulas[i]);
            predicative.insert(p.readings[i].witness);
        } else {
            delta.push_back(p.formulas[i]);
            impredicative.insert(p.readings[i].witness);
        }
    }
    if (delta.empty()) throw std::invalid_argument("no impredicative critical formulas for " + to_string(e));
    auto ss = impredicative.items();
    auto us = predicative.items();

    EliminationStep s;
    s.rule = chains_are_instances ? "impredicative-Bm" : "impredicative-stage";
    s.target = e;
    s.before = j;
    s.eliminated = delta;

    // T_0 = {e}, T_{i+1} = {s_j(t) : t in T_i}
    std::vector<Term> level{e}, all{e};
    for (int i = 1; i < stage; ++i) {
        std::vector<Term> next;
        for (const auto& t : level)
            for (const auto& sj : ss) next.push_back(subst_term(sj, e, t));
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
    }
    s.elimination_set = dedup(all);

    std::vector<Formula> chains;
    for (const auto& w : detail::words(ss.size(), stage))
        chains.push_back(chain_disjunction(word_chain_atoms(p, kind, word_terms(ss, e, w))));
    chains = dedup(chains);
    if (chains_are_instances) s.axiom_instances = chains;

    // (A(u) -> A(e)) -> chain from A(u) over A(v_1 e), ..., A(e), for shorter words v
    for (int len = 1; len < stage; ++len)
        for (const auto& v : detail::words(ss.size(), len)) {
            auto atoms = word_chain_atoms(p, kind, word_terms(ss, e, v));
            for (const auto& u : us) {
                auto full = atoms;
                if (kind == BinderKind::Epsilon) full.insert(full.begin(), p.matrix_at(u));
                else full.push_back(p.matrix_at(u));
                s.axiom_instances.push_back(schema(SchemaKind::IteratedLin, full, len + 1));
            }
        }
    s.axiom_instances = dedup(s.axiom_instances);

    detail::substitute_over(j, p.rest, e, s.elimination_set, dedup_goal, s);
    s.after.criticals.insert(s.after.criticals.end(), pi.begin(), pi.end());
    if (!chains_are_instances) s.after.residues.insert(s.after.residues.end(), chains.begin(), chains.end());
    detail::finish(s);
    return s;
}

inline EliminationStep eliminate_impredicative_Bm(const Judgment& j, const Term& e, int m, bool dedup_goal = true) {
    if (m < 2) throw std::invalid_argument("impredicative elimination needs m >= 2");
    if (j.logic.chain() == 0 || j.logic.chain() > m)
        throw std::invalid_argument("logic " + j.logic.name() + " does not prove B" + std::to_string(m));
    return impredicative_stage(j, e, m, true, dedup_goal);
}

// ---- Linearity ----------------------------------------------------------------------

inline EliminationStep eliminate_predicative_lin(const Judgment& j, const Term& e, bool dedup_goal = true) {
    if (!j.logic.linear()) throw std::invalid_argument("logic " + j.logic.name() + " does not prove Lin");
    Partition p = partition(j, e);
    for (std::size_t i = 0; i < p.formulas.size(); ++i)
        if (!is_predicative(p.readings[i]))
            throw std::invalid_argument("impredicative critical formula " + to_string(p.formulas[i]));
    EliminationStep s = detail::start("predicative-lin", j, e, p);
    s.elimination_set = p.witnesses(e);
    std::vector<Formula> as;
    for (const auto& u : s.elimination_set) as.push_back(p.matrix_at(u));
    s.axiom_instances.push_back(big_disjunction(as, binder_kind(e) == BinderKind::Epsilon));
    detail::substitute_over(j, p.rest, e, s.elimination_set, dedup_goal, s);
    detail::finish(s);
    return s;
}

// Impredicative phase with Bm, then linearity on what is left.
inline std::vector<EliminationStep> eliminate_complete_Gm(const Judgment& j, const Term& e, int m,
                                                          bool dedup_goal = true) {
    Partition p = partition(j, e);
    bool impredicative = std::any_of(p.readings.begin(), p.readings.end(),
                                     [](const CriticalFormula& c) { return !is_predicative(c); });
    std::vector<EliminationStep> out;
    Judgment current = j;
    if (impredicative) {
        out.push_back(eliminate_impredicative_Bm(current, e, m, dedup_goal));
        current = out.back().after;
        bool left = std::any_of(current.criticals.begin(), current.criticals.end(),
                                [&](const Formula& f) { return reading_for(f, e).has_value(); });
        if (!left) return out;
    }
    out.push_back(eliminate_predicative_lin(current, e, dedup_goal));
    return out;
}

// ---- Drivers -------------------------------------------------------------------------

// (highest rank, highest degree at that rank, number of terms there)
struct Measure {
    int rank = 0;
    int degree = 0;
    std::size_t count = 0;

    friend bool operator<(const Measure& a, const Measure& b) {
        return std::tie(a.rank, a.degree, a.count) < std::tie(b.rank, b.degree, b.count);
    }
    friend bool operator==(const Measure& a, const Measure& b) {
        return std::tie(a.rank, a.degree, a.count) == std::tie(b.rank, b.degree, b.count);
    }
};

inline Measure measure(const std::vector<Term>& critical_terms) {
    Measure m;
    for (const auto& e : critical_terms) {
        int r = rank(e), d = degree(e);
        if (std::tie(r, d) > std::tie(m.rank, m.degree)) m = {r, d, 0};
        if (r == m.rank && d == m.degree) ++m.count;
    }
    return m;
}

inline Measure measure(const Judgment& j) { return measure(j.critical_terms()); }

enum class Driver { HilbertBernays, WeakLin, Jankov };

inline const char* driver_name(Driver d) {
    switch (d) {
        case Driver::HilbertBernays: return "hb";
        case Driver::WeakLin: return "weak-lin";
        case Driver::Jankov: return "jankov";
    }
    return "?";
}

struct ElimOptions {
    bool dedup = true;
    bool verify = false;  // verify the initial judgment and every step
    ChainOptions chain;
    // picks the next target among the critical terms; select_max by default
    std::function<Term(const std::vector<Term>&, std::size_t step)> select;
};

struct FailureReport {
    std::size_t step = 0;  // index of the step that could not be taken
    Term target;
    std::vector<Formula> offending;
    std::string reason;
};

struct EliminationTrace {
    Driver driver = Driver::HilbertBernays;
    Judgment initial;
    std::optional<Verification> initial_verification;
    std::vector<EliminationStep> steps;
    std::vector<Measure> measures;  // before each target, and at the end
    Judgment final_judgment;        // after grounding
    std::vector<Formula> result_disjuncts;
    Formula result;
    std::vector<std::pair<Term, std::string>> grounding;
    std::optional<FailureReport> failure;

    bool ok() const { return !failure; }
};

// Replaces the maximal remaining epsilon/tau terms by fresh constants c0, c1, ...
inline std::vector<std::pair<Term, std::string>> ground_judgment(Judgment& j, NameSupply& names) {
    TermSet terms;
    for (const auto* part : {&j.goal, &j.residues, &j.instances, &j.criticals})
        for (const auto& f : *part)
            for (const auto& t : maximal_binder_terms(f)) terms.insert(t);
    std::vector<std::pair<Term, std::string>> map;
    std::vector<std::pair<Term, Term>> pairs;
    for (const auto& t : terms.items()) {
        map.emplace_back(t, names.numbered("c"));
        pairs.emplace_back(t, Term::app(map.back().second));
    }
    // a maximal term can also occur inside another one; replace the outer first
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& x, const auto& y) { return degree(x.first) > degree(y.first); });
    for (auto* part : {&j.goal, &j.residues, &j.instances, &j.criticals})
        for (auto& f : *part) f = subst_term_all(f, pairs);
    return map;
}

namespace detail {

using StepFn = std::function<std::vector<EliminationStep>(const Judgment&, const Term&, EliminationTrace&)>;

inline EliminationTrace drive(Driver driver, const Judgment& j, const ElimOptions& opt, const StepFn& fn,
                              const std::function<void(Judgment&)>& prepare = {}) {
    for (const auto& f : j.criticals)
        if (!is_critical(f)) throw std::invalid_argument("premise listed as critical is not a critical formula: " + to_string(f));
    EliminationTrace tr;
    tr.driver = driver;
    tr.initial = j;
    if (opt.verify) tr.initial_verification = verify_judgment(j, opt.chain);
    Judgment current = j;
    for (;;) {
        auto terms = current.critical_terms();
        Measure before = measure(terms);
        tr.measures.push_back(before);
        if (terms.empty()) break;
        Term e = opt.select ? opt.select(terms, tr.steps.size()) : select_max(terms);
        if (prepare) prepare(current);
        auto steps = fn(current, e, tr);
        if (tr.failure) break;
        if (steps.empty()) throw std::logic_error("no elimination step for " + to_string(e));
        for (auto& s : steps) {
            if (!s.demoted.empty())
                throw std::logic_error("substitution produced a formula that is no longer critical: " +
                                       to_string(s.demoted.front()));
            if (opt.verify) s.verification = verify_judgment(s.after, opt.chain);
            tr.steps.push_back(std::move(s));
        }
        current = tr.steps.back().after;
        Measure after = measure(current);
        if (!(after < before))
            throw std::logic_error("elimination measure did not decrease after eliminating " + to_string(e));
    }
    NameSupply names;
    for (const auto& f : j.goal) names.reserve_from(f);
    for (const auto& f : j.premises()) names.reserve_from(f);
    for (const auto& f : current.premises()) names.reserve_from(f);
    for (const auto& f : current.goal) names.reserve_from(f);
    tr.final_judgment = current;
    if (!tr.failure) {
        tr.grounding = ground_judgment(tr.final_judgment, names);
        tr.final_judgment.goal = dedup(tr.final_judgment.goal);
        tr.final_judgment.residues = dedup(tr.final_judgment.residues);
        tr.final_judgment.instances = dedup(tr.final_judgment.instances);
    }
    tr.result_disjuncts = tr.final_judgment.goal;
    tr.result = big_or(tr.result_disjuncts);
    return tr;
}

}  // namespace detail

// Hilbert-Bernays order: always a term of maximal rank and degree.
inline EliminationTrace run_elimination(const Judgment& j, const ElimOptions& opt = {}) {
    if (j.logic.kind != Logic::Classical && j.logic.kind != Logic::LCm)
        throw std::invalid_argument("run_elimination supports classical and finite-valued logics, not " +
                                    j.logic.name());
    return detail::drive(Driver::HilbertBernays, j, opt, [&](const Judgment& cur, const Term& e, EliminationTrace&) {
        if (cur.logic.kind == Logic::Classical)
            return std::vector<EliminationStep>{eliminate_complete_classical(cur, e, opt.dedup)};
        return eliminate_complete_Gm(cur, e, cur.logic.m, opt.dedup);
    });
}

// Linearity only: succeeds when every eliminated critical formula is predicative.
inline EliminationTrace run_weak_lin(const Judgment& j, const ElimOptions& opt = {}) {
    if (!j.logic.linear()) throw std::invalid_argument("weak elimination needs a logic proving Lin");
    return detail::drive(Driver::WeakLin, j, opt, [&](const Judgment& cur, const Term& e, EliminationTrace& tr) {
        Partition p = partition(cur, e);
        std::vector<Formula> bad;
        for (std::size_t i = 0; i < p.formulas.size(); ++i)
            if (!is_predicative(p.readings[i])) bad.push_back(p.formulas[i]);
        if (!bad.empty()) {
            tr.failure = FailureReport{tr.steps.size(), e, bad,
                                       "impredicative critical formula for " + to_string(e)};
            return std::vector<EliminationStep>{};
        }
        return std::vector<EliminationStep>{eliminate_predicative_lin(cur, e, opt.dedup)};
    });
}

// Negated goals: ~D1 | ... | ~Dn is packaged as ~(D1 & ... & Dn) before each step.
inline EliminationTrace run_jankov(const Judgment& j, const ElimOptions& opt = {}) {
    auto package = [](Judgment& cur) {
        if (cur.goal.size() < 2) return;
        std::vector<Formula> inner;
        for (const auto& g : cur.goal) {
            if (g.kind() != FormulaKind::Not) throw std::invalid_argument("goal disjunct is not a negation");
            inner.push_back(g.lhs());
        }
        cur.goal = {Formula::neg(big_and(inner))};
    };
    return detail::drive(
        Driver::Jankov, j, opt,
        [&](const Judgment& cur, const Term& e, EliminationTrace&) {
            return std::vector<EliminationStep>{eliminate_negated_jankov(cur, e, opt.dedup)};
        },
        package);
}

inline EliminationTrace run_driver(Driver d, const Judgment& j, const ElimOptions& opt = {}) {
    switch (d) {
        case Driver::HilbertBernays: return run_elimination(j, opt);
        case Driver::WeakLin: return run_weak_lin(j, opt);
        case Driver::Jankov: return run_jankov(j, opt);
    }
    throw std::invalid_argument("unknown driver");
}

// ---- Combining judgments ---------------------------------------------------------------

// From  G, A |- C  and  G', B |- D  to  G, G', A | B |- C | D.
inline Judgment combine_disjunction(const Judgment& j1, const Formula& a, const Judgment& j2, const Formula& b) {
    if (!(j1.logic == j2.logic)) throw std::invalid_argument("combine_disjunction: logics differ");
    Judgment out;
    out.logic = j1.logic;
    auto cat = [](std::vector<Formula> x, const std::vector<Formula>& y) {
        x.insert(x.end(), y.begin(), y.end());
        return dedup(x);
    };
    out.criticals = cat(j1.criticals, j2.criticals);
    out.residues = cat(j1.residues, j2.residues);
    out.residues.push_back(a == b ? a : Formula::disj(a, b));
    out.residues = dedup(out.residues);
    out.instances = cat(j1.instances, j2.instances);
    out.goal = cat(j1.goal, j2.goal);
    return out;
}

// From  G, A |- C  and  B |- A  to  G, B |- C.
inline Judgment strengthen_premise(const Judgment& j, const Formula& a, const Formula& b, bool verify = false,
                                   const ChainOptions& opt = {}) {
    if (verify && !verify_entailment(j.logic, {b}, a, opt).ok)
        throw std::invalid_argument(to_string(b) + " does not entail " + to_string(a));
    Judgment out = j;
    bool found = false;
    for (auto* part : {&out.criticals, &out.residues, &out.instances}) {
        auto it = std::find(part->begin(), part->end(), a);
        if (it == part->end()) continue;
        part->erase(it);
        found = true;
        break;
    }
    if (!found) throw std::invalid_argument("premise " + to_string(a) + " is not in the judgment");
    out.residues.push_back(b);
    out.residues = dedup(out.residues);
    return out;
}

// ---- Herbrand disjunctions -------------------------------------------------------------

namespace detail {

// f^j(s) with s not headed by f
inline std::pair<Term, int> tower(Term t, const std::string& f) {
    int j = 0;
    while (t.kind() == TermKind::App && t.name() == f && t.args().size() == 1) {
        t = t.args()[0];
        ++j;
    }
    return {t, j};
}

inline std::vector<std::pair<Term, int>> herbrand_links(const Formula& herbrand, const std::string& f,
                                                        const std::string& pred) {
    std::vector<std::pair<Term, int>> out;
    for (const auto& d : flatten(herbrand, FormulaKind::Or)) {
        auto unary = [&](const Formula& a) {
            return a.kind() == FormulaKind::Atom && a.name() == pred && a.args().size() == 1;
        };
        bool ok = d.kind() == FormulaKind::Imp && unary(d.lhs()) && unary(d.rhs());
        if (ok) {
            const Term& up = d.lhs().args()[0];
            ok = up.kind() == TermKind::App && up.name() == f && up.args().size() == 1 && up.args()[0] == d.rhs().args()[0];
        }
        if (!ok)
            throw std::invalid_argument("disjunct " + to_string(d) + " is not of the form " + pred + "(" + f +
                                        "(t)) -> " + pred + "(t)");
        out.push_back(tower(d.rhs().args()[0], f));
    }
    return out;
}

}  // namespace detail

// Length of the implication chain obtained by padding each f-tower over its
// base term to a contiguous chain and identifying P(f^i(s)) across bases.
inline int bm_extract(const Formula& herbrand, const std::string& f = "f", const std::string& pred = "P") {
    int m = 0;
    for (const auto& [base, j] : detail::herbrand_links(herbrand, f, pred)) m = std::max(m, j + 1);
    return m;
}

// The padded chain itself over atoms A1..Am+1, with A_{i+1} for P(f^i(s)):
// (A_{m+1} -> A_m) | ... | (A2 -> A1) reversed into chain order.
inline Formula bm_chain(const Formula& herbrand, const std::string& f = "f", const std::string& pred = "P") {
    int m = bm_extract(herbrand, f, pred);
    auto atoms = schema_atoms(static_cast<std::size_t>(m) + 1);
    std::reverse(atoms.begin(), atoms.end());
    return chain_disjunction(atoms);
}

// Judgment with nested epsilon terms whose predicative elimination gives back
// the disjunction, and the trace of that elimination under LC.
inline std::pair<Judgment, EliminationTrace> reconstruct_from_herbrand(const Formula& disjunction,
                                                                       const Formula& skeleton,
                                                                       const std::vector<std::string>& holes,
                                                                       const ElimOptions& opt = {}) {
    if (holes.empty()) throw std::invalid_argument("reconstruction needs at least one hole");
    std::set<std::string> hole_set(holes.begin(), holes.end());
    std::size_t width = flatten(skeleton, FormulaKind::Or).size();
    auto parts = flatten(disjunction, FormulaKind::Or);
    if (parts.size() % width != 0)
        throw std::invalid_argument("disjunction does not split into instances of the skeleton");
    std::vector<std::vector<Term>> rows;
    for (std::size_t i = 0; i < parts.size(); i += width) {
        Formula d = big_or(std::vector<Formula>(parts.begin() + static_cast<std::ptrdiff_t>(i),
                                                parts.begin() + static_cast<std::ptrdiff_t>(i + width)));
        auto m = match_holes(skeleton, hole_set, d);
        if (!m) throw std::invalid_argument("disjunct " + to_string(d) + " does not match the skeleton");
        std::vector<Term> row;
        for (const auto& h : holes) {
            auto it = m->find(h);
            if (it == m->end()) throw std::invalid_argument("hole " + h + " does not occur in the skeleton");
            if (!binder_free(it->second)) throw std::invalid_argument("Herbrand terms must be epsilon-free");
            row.push_back(it->second);
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = holes.size();
    // completion(j, prefix): the skeleton with holes 0..j-1 from prefix and the
    // rest filled by the nested epsilon terms e_j(prefix), e_{j+1}(...), ...
    std::function<Formula(std::size_t, const std::vector<Term>&)> completion;
    std::function<Term(std::size_t, const std::vector<Term>&)> eps_at;
    completion = [&](std::size_t j, const std::vector<Term>& prefix) {
        if (j == n) {
            // through placeholders, so that terms mentioning a hole name stay intact
            Formula f = skeleton;
            for (std::size_t i = 0; i < n; ++i) f = subst_var(f, holes[i], Term::var("%h" + std::to_string(i)));
            for (std::size_t i = 0; i < n; ++i) f = subst_var(f, "%h" + std::to_string(i), prefix[i]);
            return f;
        }
        auto next = prefix;
        next.push_back(eps_at(j, prefix));
        return completion(j + 1, next);
    };
    eps_at = [&](std::size_t j, const std::vector<Term>& prefix) {
        std::string v = internal_var(j);
        auto next = prefix;
        next.push_back(Term::var(v));
        return Term::eps(holes[j], abstract(completion(j + 1, next), v));
    };
    Judgment jd;
    jd.logic = Logic::lc();
    for (const auto& row : rows)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Term> prefix(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(j));
            auto with = prefix;
            with.push_back(row[j]);
            jd.criticals.push_back(Formula::imp(completion(j + 1, with), completion(j, prefix)));
        }
    jd.criticals = dedup(jd.criticals);
    jd.goal = {completion(0, {})};
    return {jd, run_weak_lin(jd, opt)};
}

// ---- Versions of the theorem -----------------------------------------------------------

enum class FormDirection { OneToThree, TwoToOne };

namespace detail {

inline Formula replace_atom(const Formula& f, const std::string& name, const Formula& by) {
    switch (f.kind()) {
        case FormulaKind::Atom: return f.name() == name && f.args().empty() ? by : f;
        case FormulaKind::Not: return Formula::neg(replace_atom(f.lhs(), name, by));
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Imp:
            return Formula::binary(f.kind(), replace_atom(f.lhs(), name, by), replace_atom(f.rhs(), name, by));
        case FormulaKind::Forall:
        case FormulaKind::Exists: return Formula::quant(f.kind(), f.name(), replace_atom(f.lhs(), name, by));
        default: return f;
    }
}

inline bool mentions_atom(const Formula& f, const std::string& name) {
    return replace_atom(f, name, Formula::top()) != f;
}

}  // namespace detail

// OneToThree: premises B with critical formulas; packages B -> goal, runs the
// elimination, and unpacks to  B_1, ..., B_k |- C_1 | ... | C_k.
// TwoToOne: premises A_i -> X with goal X for an atom X; substitutes OR A_i for X.
inline Judgment theorem_form_convert(FormDirection dir, const Judgment& j, const ElimOptions& opt = {}) {
    if (dir == FormDirection::OneToThree) {
        bool has_terms = !j.criticals.empty();
        for (const auto& f : j.residues) has_terms = has_terms || !binder_free(f);
        for (const auto& f : j.goal) has_terms = has_terms || !binder_free(f);
        if (!has_terms) return j;
        Judgment packed = j;
        packed.residues.clear();
        packed.goal = {Formula::imp(big_and(j.residues), j.goal_formula())};
        EliminationTrace tr = run_elimination(packed, opt);
        Judgment out;
        out.logic = j.logic;
        out.instances = tr.final_judgment.instances;
        for (const auto& d : tr.result_disjuncts) {
            if (d.kind() != FormulaKind::Imp) throw std::logic_error("unpacking expected an implication");
            for (const auto& b : flatten(d.lhs(), FormulaKind::And))
                if (b.kind() != FormulaKind::Top) out.residues.push_back(b);
            for (const auto& c : flatten(d.rhs(), FormulaKind::Or)) out.goal.push_back(c);
        }
        out.residues = dedup(out.residues);
        out.goal = dedup(out.goal);
        return out;
    }
    if (j.residues.empty()) return j;
    if (j.goal.size() != 1 || j.goal.front().kind() != FormulaKind::Atom || !j.goal.front().args().empty())
        throw std::invalid_argument("expected a propositional atom as the goal");
    const std::string x = j.goal.front().name();
    std::vector<Formula> as;
    for (const auto& r : j.residues) {
        if (r.kind() != FormulaKind::Imp || r.rhs() != j.goal.front() || detail::mentions_atom(r.lhs(), x))
            throw std::invalid_argument("premise " + to_string(r) + " is not of the form A -> " + x);
        as.push_back(r.lhs());
    }
    for (const auto* part : {&j.criticals, &j.instances})
        for (const auto& f : *part)
            if (detail::mentions_atom(f, x)) throw std::invalid_argument(x + " occurs outside the premises");
    Formula disj = big_or(as);
    Judgment out = j;
    out.residues.clear();
    for (const auto& r : j.residues) out.residues.push_back(detail::replace_atom(r, x, disj));
    out.goal = as;
    return out;
}

}  // namespace etau
