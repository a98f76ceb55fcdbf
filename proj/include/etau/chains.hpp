// Validity on finite Goedel chains: exhaustive search over valuations, and an
// order-encoded SAT query for instances too large to enumerate.
#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "prop.hpp"
#include "sat.hpp"

namespace etau {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ChainMethod { Auto, Exhaustive, Sat };

struct ChainOptions {
    ChainMethod method = ChainMethod::Auto;
    std::uint64_t budget = 20'000'000;        // valuations the exhaustive route may visit
    std::uint64_t exhaustive_limit = 1 << 16;  // Auto enumerates up to this many valuations
    std::uint64_t seed = 0;
};

struct ChainVerdict {
    bool valid = true;
    ChainMethod method = ChainMethod::Exhaustive;
    // On failure: value of every atom (indexed like the net's atoms) and of the formula.
    std::vector<int> countervaluation;
    int value = 0;
};

inline std::uint64_t valuation_count(std::size_t atoms, int m) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < atoms; ++i) {
        if (c > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(m))
            return std::numeric_limits<std::uint64_t>::max();
        c *= static_cast<std::uint64_t>(m);
    }
    return c;
}

namespace detail {

inline ChainVerdict chain_exhaustive(const PropNet& net, int root, int m, std::uint64_t budget) {
    std::vector<int> used = net.atoms_below(root);
    if (valuation_count(used.size(), m) > budget)
        throw BudgetExceeded("exhaustive check needs " + std::to_string(m) + "^" + std::to_string(used.size()) +
                             " valuations, over the budget of " + std::to_string(budget));
    std::vector<int> vals(net.atom_count(), 0);
    std::vector<int> scratch;
    ChainVerdict out;
    out.method = ChainMethod::Exhaustive;
    for (;;) {
        int v = eval_net(net, root, vals, m - 1, 0, scratch);
        if (v != m - 1) {
            out.valid = false;
            out.countervaluation = vals;
            out.value = v;
            return out;
        }
        std::size_t i = 0;
        for (; i < used.size(); ++i) {
            int& x = vals[static_cast<std::size_t>(used[i])];
            if (++x < m) break;
            x = 0;
        }
        if (i == used.size()) return out;
    }
}

// Order encoding: for every node and k in 1..m-1 a variable "value >= k".
class ChainEncoder {
public:
    ChainEncoder(const PropNet& net, int m, std::uint64_t seed) : net_(net), m_(m), sat_(seed) {}

    ChainVerdict run(int root) {
        int t = sat_.new_var();
        sat_.add_clause({t});
        true_ = t;
        lits_.assign(net_.size(), {});
        for (int id = 0; id <= root; ++id) encode(id);
        sat_.add_clause({-level(root, m_ - 1)});
        ChainVerdict out;
        out.method = ChainMethod::Sat;
        if (!sat_.solve()) return out;
        out.valid = false;
        out.countervaluation.assign(net_.atom_count(), 0);
        for (int id = 0; id <= root; ++id) {
            const PropNode& n = net_.node(id);
            if (n.op != Op::Atom) continue;
            int v = 0;
            for (int k = 1; k < m_; ++k)
                if (sat_.model(level(id, k))) v = k;
            out.countervaluation[static_cast<std::size_t>(n.a)] = v;
        }
        std::vector<int> scratch;
        out.value = eval_net(net_, root, out.countervaluation, m_ - 1, 0, scratch);
        if (out.value == m_ - 1) throw std::logic_error("chain encoding produced a spurious countermodel");
        return out;
    }

private:
    // literal for "node >= k", k in 1..m-1
    int level(int id, int k) const { return lits_[static_cast<std::size_t>(id)][static_cast<std::size_t>(k - 1)]; }

    void encode(int id) {
        const PropNode& n = net_.node(id);
        auto& ls = lits_[static_cast<std::size_t>(id)];
        ls.resize(static_cast<std::size_t>(m_ - 1));
        switch (n.op) {
            case Op::Top:
                for (auto& l : ls) l = true_;
                return;
            case Op::Bot:
                for (auto& l : ls) l = -true_;
                return;
            case Op::Atom:
                for (auto& l : ls) l = sat_.new_var();
                for (int k = 1; k + 1 < m_; ++k) sat_.add_clause({-level(id, k + 1), level(id, k)});
                return;
            default: break;
        }
        for (auto& l : ls) l = sat_.new_var();
        for (int k = 1; k < m_; ++k) {
            int g = level(id, k), a = level(n.a, k), b = level(n.b, k);
            if (n.op == Op::And) {
                sat_.add_clause({-g, a});
                sat_.add_clause({-g, b});
                sat_.add_clause({g, -a, -b});
            } else if (n.op == Op::Or) {
                sat_.add_clause({-g, a, b});
                sat_.add_clause({g, -a});
                sat_.add_clause({g, -b});
            }
        }
        if (n.op != Op::Imp) return;
        // le <-> value(a) <= value(b); value(a -> b) >= k  <->  le or value(b) >= k
        int le = sat_.new_var();
        std::vector<int> witness{le};
        for (int k = 1; k < m_; ++k) {
            int a = level(n.a, k), b = level(n.b, k);
            sat_.add_clause({-le, -a, b});
            int q = sat_.new_var();
            sat_.add_clause({-q, a});
            sat_.add_clause({-q, -b});
            witness.push_back(q);
        }
        sat_.add_clause(witness);
        for (int k = 1; k < m_; ++k) {
            int g = level(id, k), b = level(n.b, k);
            sat_.add_clause({-g, le, b});
            sat_.add_clause({g, -le});
            sat_.add_clause({g, -b});
        }
    }

    const PropNet& net_;
    int m_;
    SatSolver sat_;
    int true_ = 0;
    std::vector<std::vector<int>> lits_;
};

}  // namespace detail

// Is the formula at root top under every valuation into the m-element chain?
inline ChainVerdict valid_on_chain(const PropNet& net, int root, int m, const ChainOptions& opt = {}) {
    if (m < 2) throw std::invalid_argument("chain must have at least two elements");
    ChainMethod method = opt.method;
    if (method == ChainMethod::Auto) {
        std::uint64_t n = valuation_count(net.atoms_below(root).size(), m);
        method = n <= std::min(opt.budget, opt.exhaustive_limit) ? ChainMethod::Exhaustive : ChainMethod::Sat;
    }
    if (method == ChainMethod::Exhaustive) return detail::chain_exhaustive(net, root, m, opt.budget);
    return detail::ChainEncoder(net, m, opt.seed).run(root);
}

inline ChainVerdict valid_in_LCm(const Formula& f, int m, const ChainOptions& opt = {}) {
    PropNet net;
    int root = net.add(f);
    return valid_on_chain(net, root, m, opt);
}

// Infinite-valued case: n atoms realize at most n + 2 order positions
// together with top and bottom, so the chain of that size decides it.
inline int lc_chain_size(std::size_t atoms) { return static_cast<int>(atoms) + 2; }

inline ChainVerdict valid_in_LC(const Formula& f, const ChainOptions& opt = {}) {
    PropNet net;
    int root = net.add(f);
    return valid_on_chain(net, root, lc_chain_size(net.atoms_below(root).size()), opt);
}

}  // namespace etau
