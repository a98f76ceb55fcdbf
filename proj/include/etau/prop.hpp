// Propositional abstraction into a hash-consed DAG, and Goedel evaluation.
#pragma once

#include <algorithm>
#include <unordered_map>

#include "text.hpp"

namespace etau {

enum class Op : std::uint8_t { Atom, Top, Bot, And, Or, Imp };

struct PropNode {
    Op op;
    int a = -1;  // left operand, or atom index
    int b = -1;
};

// Negation is stored as implication into bottom. Node ids are topologically
// ordered: operands always precede the nodes that use them.
class PropNet {
public:
    PropNet() {
        top_ = intern({Op::Top, -1, -1});
        bot_ = intern({Op::Bot, -1, -1});
    }

    int top() const { return top_; }
    int bot() const { return bot_; }
    int mk(Op op, int a, int b) { return intern({op, a, b}); }
    int neg(int a) { return mk(Op::Imp, a, bot_); }

    // Atoms are atomic formulas up to alpha-equivalence. Quantifiers are rejected.
    int add(const Formula& f) {
        switch (f.kind()) {
            case FormulaKind::Top: return top_;
            case FormulaKind::Bot: return bot_;
            case FormulaKind::Atom: return atom(f);
            case FormulaKind::Not: return neg(add(f.lhs()));
            case FormulaKind::And: return mk(Op::And, add(f.lhs()), add(f.rhs()));
            case FormulaKind::Or: return mk(Op::Or, add(f.lhs()), add(f.rhs()));
            case FormulaKind::Imp: return mk(Op::Imp, add(f.lhs()), add(f.rhs()));
            default: throw std::invalid_argument("propositional abstraction of a quantified formula");
        }
    }

    int atom(const Formula& f) {
        auto it = atom_ids_.find(f);
        if (it != atom_ids_.end()) return it->second;
        int k = static_cast<int>(atoms_.size());
        atoms_.push_back(f);
        int id = intern({Op::Atom, k, -1});
        atom_ids_.emplace(f, id);
        return id;
    }

    const PropNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t atom_count() const { return atoms_.size(); }
    const std::vector<Formula>& atoms() const { return atoms_; }

    Formula to_formula(int id) const {
        const PropNode& n = node(id);
        switch (n.op) {
            case Op::Atom: return atoms_[static_cast<std::size_t>(n.a)];
            case Op::Top: return Formula::top();
            case Op::Bot: return Formula::bot();
            case Op::And: return Formula::conj(to_formula(n.a), to_formula(n.b));
            case Op::Or: return Formula::disj(to_formula(n.a), to_formula(n.b));
            case Op::Imp:
                if (n.b == bot_) return Formula::neg(to_formula(n.a));
                return Formula::imp(to_formula(n.a), to_formula(n.b));
        }
        return Formula::top();
    }

    // Atom indices reachable from a root, in increasing order.
    std::vector<int> atoms_below(int root) const {
        std::vector<char> seen(nodes_.size(), 0);
        std::vector<int> stack{root}, out;
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            if (seen[static_cast<std::size_t>(id)]) continue;
            seen[static_cast<std::size_t>(id)] = 1;
            const PropNode& n = node(id);
            if (n.op == Op::Atom) out.push_back(n.a);
            else if (n.op != Op::Top && n.op != Op::Bot) {
                stack.push_back(n.a);
                stack.push_back(n.b);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct Key {
        std::size_t operator()(const PropNode& n) const {
            return (static_cast<std::size_t>(n.op) * 1000003u) ^ (static_cast<std::size_t>(n.a + 1) * 40503u) ^
                   (static_cast<std::size_t>(n.b + 1) << 20);
        }
    };
    struct Eq {
        bool operator()(const PropNode& x, const PropNode& y) const {
            return x.op == y.op && x.a == y.a && x.b == y.b;
        }
    };

    int intern(const PropNode& n) {
        auto it = index_.find(n);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back(n);
        index_.emplace(n, id);
        return id;
    }

    std::vector<PropNode> nodes_;
    std::unordered_map<PropNode, int, Key, Eq> index_;
    std::vector<Formula> atoms_;
    std::unordered_map<Formula, int, FormulaHash> atom_ids_;
    int top_ = -1, bot_ = -1;
};

// Goedel truth functions over any totally ordered value type.
template <class V>
V godel_op(Op op, V a, V b, V top, V bot) {
    switch (op) {
        case Op::Top: return top;
        case Op::Bot: return bot;
        case Op::And: return std::min(a, b);
        case Op::Or: return std::max(a, b);
        case Op::Imp: return a <= b ? top : b;
        default: return bot;
    }
}

// Evaluates every node up to root; atom values are indexed by atom index.
template <class V>
V eval_net(const PropNet& net, int root, const std::vector<V>& atom_values, V top, V bot,
           std::vector<V>& scratch) {
    scratch.resize(static_cast<std::size_t>(root) + 1);
    for (int id = 0; id <= root; ++id) {
        const PropNode& n = net.node(id);
        V v;
        if (n.op == Op::Atom)
            v = atom_values[static_cast<std::size_t>(n.a)];
        else if (n.op == Op::Top || n.op == Op::Bot)
            v = godel_op(n.op, bot, bot, top, bot);
        else
            v = godel_op(n.op, scratch[static_cast<std::size_t>(n.a)], scratch[static_cast<std::size_t>(n.b)], top,
                         bot);
        scratch[static_cast<std::size_t>(id)] = v;
    }
    return scratch[static_cast<std::size_t>(root)];
}

// Value of a quantifier-free formula on the chain 0 < 1 < ... < m-1; atoms
// missing from the valuation are an error.
inline int eval_godel(const Formula& f, const std::vector<std::pair<Formula, int>>& valuation, int m) {
    if (m < 2) throw std::invalid_argument("chain must have at least two elements");
    PropNet net;
    for (const auto& [a, v] : valuation) {
        net.atom(a);
        if (v < 0 || v >= m) throw std::invalid_argument("valuation outside the chain");
    }
    int root = net.add(f);
    std::vector<int> vals(net.atom_count(), -1);
    for (const auto& [a, v] : valuation) vals[static_cast<std::size_t>(net.node(net.atom(a)).a)] = v;
    for (int v : vals)
        if (v < 0) throw std::invalid_argument("valuation does not cover every atom");
    std::vector<int> scratch;
    return eval_net(net, root, vals, m - 1, 0, scratch);
}

inline double eval_godel_real(const Formula& f, const std::vector<std::pair<Formula, double>>& valuation) {
    PropNet net;
    for (const auto& [a, v] : valuation) net.atom(a);
    int root = net.add(f);
    std::vector<double> vals(net.atom_count(), -1.0);
    for (const auto& [a, v] : valuation) vals[static_cast<std::size_t>(net.node(net.atom(a)).a)] = v;
    for (double v : vals)
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("valuation does not cover every atom");
    std::vector<double> scratch;
    return eval_net(net, root, vals, 1.0, 0.0, scratch);
}

}  // namespace etau
