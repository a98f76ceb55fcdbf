// Fresh-name supply seeded from the symbols of existing formulas.
#pragma once

#include <string>

#include "ops.hpp"

namespace etau {

class NameSupply {
public:
    NameSupply() = default;

    template <class Obj>
    void reserve_from(const Obj& obj) {
        auto fn = [&](const Term& t, std::uint32_t) {
            if (t.kind() == TermKind::Var || t.kind() == TermKind::App) used_.insert(t.name());
            return false;
        };
        detail::visit_terms(obj, 0, fn);
        reserve_predicates(obj);
    }
    void reserve(const std::string& name) { used_.insert(name); }
    bool used(const std::string& name) const { return used_.count(name) != 0; }

    // base itself if unused, otherwise base followed by the first free counter.
    std::string fresh(const std::string& base) {
        if (!used_.count(base)) {
            used_.insert(base);
            return base;
        }
        return numbered(base);
    }

    // Always carries a counter: base0, base1, ...
    std::string numbered(const std::string& base) {
        std::size_t& k = counters_[base];
        for (;; ++k) {
            std::string cand = base + std::to_string(k);
            if (!used_.count(cand)) {
                used_.insert(cand);
                ++k;
                return cand;
            }
        }
    }

private:
    void reserve_predicates(const Term&) {}
    void reserve_predicates(const Formula& f) {
        switch (f.kind()) {
            case FormulaKind::Atom: used_.insert(f.name()); break;
            case FormulaKind::Not:
            case FormulaKind::Forall:
            case FormulaKind::Exists: reserve_predicates(f.lhs()); break;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Imp:
                reserve_predicates(f.lhs());
                reserve_predicates(f.rhs());
                break;
            default: break;
        }
    }

    std::set<std::string> used_;
    std::map<std::string, std::size_t> counters_;
};

// Internal variable names that the parser can never produce.
inline std::string internal_var(std::size_t k) { return "%" + std::to_string(k); }

}  // namespace etau
