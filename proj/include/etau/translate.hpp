// Quantifier elimination into epsilon/tau terms, propositional shadows,
// Herbrand forms and the standard quantifier shifts.
#pragma once

#include <string>

#include "names.hpp"
#include "text.hpp"

namespace etau {

namespace detail {

struct Translator {
    std::size_t counter = 0;

    Formula run(const Formula& f) {
        if (!f.has_quantifier()) return f;
        switch (f.kind()) {
            case FormulaKind::Not: return Formula::neg(run(f.lhs()));
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Imp: return Formula::binary(f.kind(), run(f.lhs()), run(f.rhs()));
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                std::string v = internal_var(counter++);
                Formula open = run(instantiate(f.body(), Term::var(v)));
                Formula body = abstract(open, v);
                Term witness = f.kind() == FormulaKind::Exists ? Term::eps(f.name(), body) : Term::tau(f.name(), body);
                return instantiate(body, witness);
            }
            default: return f;
        }
    }
};

}  // namespace detail

// (ex x. A)  ->  A(eps x. A),   (all x. A)  ->  A(tau x. A), innermost first.
inline Formula et_translate(const Formula& f) {
    if (!f.closed()) throw std::invalid_argument("et_translate: formula has loose bound variables");
    detail::Translator t;
    return t.run(f);
}

// Erases terms and quantifiers: P(t1..tn) becomes X_P, identities become top.
inline Formula shadow(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Atom:
            if (f.is_equality()) return Formula::top();
            return Formula::atom("X_" + f.name());
        case FormulaKind::Top:
        case FormulaKind::Bot: return f;
        case FormulaKind::Not: return Formula::neg(shadow(f.lhs()));
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Imp: return Formula::binary(f.kind(), shadow(f.lhs()), shadow(f.rhs()));
        case FormulaKind::Forall:
        case FormulaKind::Exists: return shadow(f.body());
    }
    return f;
}

struct HerbrandResult {
    Formula formula;
    std::vector<std::string> new_symbols;  // one per eliminated universal, in prefix order
};

// Validity Herbrandization of a prenex formula: each universal variable is
// replaced by a fresh function of the existential variables before it.
inline HerbrandResult herbrand_form(const Formula& f) {
    if (!f.closed()) throw std::invalid_argument("herbrand_form: formula has loose bound variables");
    NameSupply names;
    names.reserve_from(f);
    std::vector<std::pair<std::string, std::string>> existentials;  // hint, internal name
    std::vector<Term> ex_vars;
    HerbrandResult out;
    Formula cur = f;
    std::size_t k = 0;
    while (cur.is_quantifier()) {
        if (cur.kind() == FormulaKind::Exists) {
            std::string v = internal_var(k++);
            existentials.emplace_back(cur.name(), v);
            ex_vars.push_back(Term::var(v));
            cur = instantiate(cur.body(), Term::var(v));
        } else {
            std::string hint = is_identifier(cur.name()) ? cur.name() : "x";
            std::string sym = names.fresh((ex_vars.empty() ? "c_" : "f_") + hint);
            out.new_symbols.push_back(sym);
            cur = instantiate(cur.body(), Term::app(sym, ex_vars));
        }
    }
    if (cur.has_quantifier()) throw std::invalid_argument("herbrand_form: formula is not in prenex form");
    for (std::size_t i = existentials.size(); i-- > 0;)
        cur = Formula::exists(existentials[i].first, abstract(cur, existentials[i].second));
    out.formula = cur;
    return out;
}

// ---- Quantifier shifts ---------------------------------------------------------

enum class ShiftKind {
    // the translation is itself a critical formula C(t1) -> C(t2)
    CD,               // all x.(A | B) -> (all x.A) | B
    ExistsOr,         // (ex x.A) | B -> ex x.(A | B)
    ForallAnd,        // all x.(A & B) -> (all x.A) & B
    ExistsAnd,        // (ex x.A) & B -> ex x.(A & B)
    QExists,          // (B -> ex x.A) -> ex x.(B -> A)
    ForallImp,        // all x.(B -> A) -> (B -> all x.A)
    QForall,          // ((all x.A) -> B) -> ex x.(A -> B)
    ForallImpExists,  // all x.(A -> B) -> ((ex x.A) -> B)
    K,                // all x.~~A -> ~~all x.A
    // the translation follows from a critical formula A1 -> A2 and a propositional principle
    ForallOr,          // (all x.A) | B -> all x.(A | B)
    ExistsOrSplit,     // ex x.(A | B) -> (ex x.A) | B
    ForallAndIn,       // (all x.A) & B -> all x.(A & B)
    ExistsAndSplit,    // ex x.(A & B) -> (ex x.A) & B
    ExistsImpSplit,    // ex x.(B -> A) -> (B -> ex x.A)
    ForallImpIn,       // (B -> all x.A) -> all x.(B -> A)
    ExistsImpAnte,     // ex x.(A -> B) -> ((all x.A) -> B)
    ExistsAnteForall,  // ((ex x.A) -> B) -> all x.(A -> B)
};

inline const std::vector<std::pair<ShiftKind, const char*>>& shift_kinds() {
    static const std::vector<std::pair<ShiftKind, const char*>> v = {
        {ShiftKind::CD, "cd"},
        {ShiftKind::ExistsOr, "exists-or"},
        {ShiftKind::ForallAnd, "forall-and"},
        {ShiftKind::ExistsAnd, "exists-and"},
        {ShiftKind::QExists, "q-exists"},
        {ShiftKind::ForallImp, "forall-imp"},
        {ShiftKind::QForall, "q-forall"},
        {ShiftKind::ForallImpExists, "forall-imp-exists"},
        {ShiftKind::K, "k"},
        {ShiftKind::ForallOr, "forall-or"},
        {ShiftKind::ExistsOrSplit, "exists-or-split"},
        {ShiftKind::ForallAndIn, "forall-and-in"},
        {ShiftKind::ExistsAndSplit, "exists-and-split"},
        {ShiftKind::ExistsImpSplit, "exists-imp-split"},
        {ShiftKind::ForallImpIn, "forall-imp-in"},
        {ShiftKind::ExistsImpAnte, "exists-imp-ante"},
        {ShiftKind::ExistsAnteForall, "exists-ante-forall"},
    };
    return v;
}

inline bool translation_is_critical(ShiftKind k) { return static_cast<int>(k) <= static_cast<int>(ShiftKind::K); }

// Translation of a binder body: the hole stays the body's bound variable.
inline Formula et_translate_body(const Formula& body) {
    const std::string v = "%hole";
    return abstract(et_translate(instantiate(body, Term::var(v))), v);
}

struct ShiftInstance {
    ShiftKind kind;
    Formula formula;      // first-order shift
    Formula translation;  // its epsilon/tau translation
    // rows whose translation is critical: translation == C(t1) -> C(t2)
    Formula matrix;  // C with the hole abstracted
    Term t1, t2;
    // remaining rows: critical A1 -> A2 and principle (A1 -> A2) -> translation
    Formula a1, a2, critical, principle;
};

inline ShiftInstance quantifier_shift_instance(ShiftKind kind, const Formula& a, const std::string& x,
                                               const Formula& b) {
    if (has_var(b, x)) throw std::invalid_argument("quantifier shift: the side formula mentions the shifted variable");
    using F = Formula;
    Formula A = abstract(a, x);
    Formula B = b;
    auto all = [&](Formula body) { return F::forall(x, std::move(body)); };
    auto ex = [&](Formula body) { return F::exists(x, std::move(body)); };
    auto tau = [&](Formula body) { return Term::tau(x, et_translate_body(body)); };
    auto eps = [&](Formula body) { return Term::eps(x, et_translate_body(body)); };
    auto at = [&](const Formula& body, const Term& t) { return instantiate(et_translate_body(body), t); };

    ShiftInstance s;
    s.kind = kind;
    Formula C;
    switch (kind) {
        case ShiftKind::CD:
            C = F::disj(A, B);
            s.formula = F::imp(all(C), F::disj(all(A), B));
            s.t1 = tau(C), s.t2 = tau(A);
            break;
        case ShiftKind::ExistsOr:
            C = F::disj(A, B);
            s.formula = F::imp(F::disj(ex(A), B), ex(C));
            s.t1 = eps(A), s.t2 = eps(C);
            break;
        case ShiftKind::ForallAnd:
            C = F::conj(A, B);
            s.formula = F::imp(all(C), F::conj(all(A), B));
            s.t1 = tau(C), s.t2 = tau(A);
            break;
        case ShiftKind::ExistsAnd:
            C = F::conj(A, B);
            s.formula = F::imp(F::conj(ex(A), B), ex(C));
            s.t1 = eps(A), s.t2 = eps(C);
            break;
        case ShiftKind::QExists:
            C = F::imp(B, A);
            s.formula = F::imp(F::imp(B, ex(A)), ex(C));
            s.t1 = eps(A), s.t2 = eps(C);
            break;
        case ShiftKind::ForallImp:
            C = F::imp(B, A);
            s.formula = F::imp(all(C), F::imp(B, all(A)));
            s.t1 = tau(C), s.t2 = tau(A);
            break;
        case ShiftKind::QForall:
            C = F::imp(A, B);
            s.formula = F::imp(F::imp(all(A), B), ex(C));
            s.t1 = tau(A), s.t2 = eps(C);
            break;
        case ShiftKind::ForallImpExists:
            C = F::imp(A, B);
            s.formula = F::imp(all(C), F::imp(ex(A), B));
            s.t1 = tau(C), s.t2 = eps(A);
            break;
        case ShiftKind::K:
            C = F::neg(F::neg(A));
            s.formula = F::imp(all(C), F::neg(F::neg(all(A))));
            s.t1 = tau(C), s.t2 = tau(A);
            break;
        case ShiftKind::ForallOr:
            s.formula = F::imp(F::disj(all(A), B), all(F::disj(A, B)));
            s.a1 = at(A, tau(A)), s.a2 = at(A, tau(F::disj(A, B)));
            break;
        case ShiftKind::ExistsOrSplit:
            s.formula = F::imp(ex(F::disj(A, B)), F::disj(ex(A), B));
            s.a1 = at(A, eps(F::disj(A, B))), s.a2 = at(A, eps(A));
            break;
        case ShiftKind::ForallAndIn:
            s.formula = F::imp(F::conj(all(A), B), all(F::conj(A, B)));
            s.a1 = at(A, tau(A)), s.a2 = at(A, tau(F::conj(A, B)));
            break;
        case ShiftKind::ExistsAndSplit:
            s.formula = F::imp(ex(F::conj(A, B)), F::conj(ex(A), B));
            s.a1 = at(A, eps(F::conj(A, B))), s.a2 = at(A, eps(A));
            break;
        case ShiftKind::ExistsImpSplit:
            s.formula = F::imp(ex(F::imp(B, A)), F::imp(B, ex(A)));
            s.a1 = at(A, eps(F::imp(B, A))), s.a2 = at(A, eps(A));
            break;
        case ShiftKind::ForallImpIn:
            s.formula = F::imp(F::imp(B, all(A)), all(F::imp(B, A)));
            s.a1 = at(A, tau(A)), s.a2 = at(A, tau(F::imp(B, A)));
            break;
        case ShiftKind::ExistsImpAnte:
            s.formula = F::imp(ex(F::imp(A, B)), F::imp(all(A), B));
            s.a1 = at(A, tau(A)), s.a2 = at(A, eps(F::imp(A, B)));
            break;
        case ShiftKind::ExistsAnteForall:
            s.formula = F::imp(F::imp(ex(A), B), all(F::imp(A, B)));
            s.a1 = at(A, tau(F::imp(A, B))), s.a2 = at(A, eps(A));
            break;
    }
    s.translation = et_translate(s.formula);
    if (translation_is_critical(kind)) {
        s.matrix = et_translate_body(C);
    } else {
        Formula Bt = et_translate(B);
        s.critical = F::imp(s.a1, s.a2);
        Formula conclusion;
        switch (kind) {
            case ShiftKind::ForallOr:
            case ShiftKind::ExistsOrSplit: conclusion = F::imp(F::disj(s.a1, Bt), F::disj(s.a2, Bt)); break;
            case ShiftKind::ForallAndIn:
            case ShiftKind::ExistsAndSplit: conclusion = F::imp(F::conj(s.a1, Bt), F::conj(s.a2, Bt)); break;
            case ShiftKind::ExistsImpSplit:
            case ShiftKind::ForallImpIn: conclusion = F::imp(F::imp(Bt, s.a1), F::imp(Bt, s.a2)); break;
            default: conclusion = F::imp(F::imp(s.a2, Bt), F::imp(s.a1, Bt)); break;
        }
        s.principle = F::imp(s.critical, conclusion);
    }
    return s;
}

}  // namespace etau
