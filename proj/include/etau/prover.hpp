// Intuitionistic propositional provability by contraction-free sequent
// search (Dyckhoff's G4ip). Contexts are sets of net node ids.
#pragma once

#include <map>
#include <string>

#include "prop.hpp"

namespace etau {

struct ProofResult {
    bool provable = false;
    std::vector<std::string> trace;  // rule applications, indented by depth
};

class G4Prover {
public:
    explicit G4Prover(PropNet& net) : net_(net) {}

    bool prove(std::vector<int> ctx, int goal) {
        normalize(ctx);
        return search(ctx, goal, nullptr, 0);
    }

    std::vector<std::string> derivation(std::vector<int> ctx, int goal) {
        normalize(ctx);
        std::vector<std::string> out;
        if (!search(ctx, goal, nullptr, 0)) return out;
        search(ctx, goal, &out, 0);
        return out;
    }

    std::size_t memo_size() const { return memo_.size(); }

private:
    static void normalize(std::vector<int>& ctx) {
        std::sort(ctx.begin(), ctx.end());
        ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());
    }
    static std::vector<int> with(std::vector<int> ctx, std::initializer_list<int> add, int drop = -1) {
        if (drop >= 0) {
            auto it = std::lower_bound(ctx.begin(), ctx.end(), drop);
            if (it != ctx.end() && *it == drop) ctx.erase(it);
        }
        for (int x : add) {
            auto it = std::lower_bound(ctx.begin(), ctx.end(), x);
            if (it == ctx.end() || *it != x) ctx.insert(it, x);
        }
        return ctx;
    }
    static bool has(const std::vector<int>& ctx, int x) { return std::binary_search(ctx.begin(), ctx.end(), x); }

    void note(std::vector<std::string>* log, int depth, const char* rule, const std::vector<int>& ctx, int goal) {
        if (!log) return;
        std::string s(static_cast<std::size_t>(depth) * 2, ' ');
        s += rule;
        s += ":  ";
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            if (i) s += ", ";
            s += to_string(net_.to_formula(ctx[i]));
        }
        s += " => " + to_string(net_.to_formula(goal));
        log->push_back(std::move(s));
    }

    bool search(const std::vector<int>& ctx, int goal, std::vector<std::string>* log, int depth) {
        std::vector<int> key = ctx;
        key.push_back(goal);
        if (!log) {
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        bool r = step(ctx, goal, log, depth);
        if (!log) memo_[key] = r;
        return r;
    }

    bool step(const std::vector<int>& ctx, int goal, std::vector<std::string>* log, int depth) {
        const int top = net_.top(), bot = net_.bot();
        if (goal == top || has(ctx, goal) || has(ctx, bot)) {
            note(log, depth, "axiom", ctx, goal);
            return true;
        }
        // invertible left rules that do not branch
        for (int f : ctx) {
            const PropNode n = net_.node(f);
            if (n.op == Op::Top) {
                note(log, depth, "L-top", ctx, goal);
                return search(with(ctx, {}, f), goal, log, depth + 1);
            }
            if (n.op == Op::And) {
                note(log, depth, "L-and", ctx, goal);
                return search(with(ctx, {n.a, n.b}, f), goal, log, depth + 1);
            }
            if (n.op != Op::Imp) continue;
            const PropNode ante = net_.node(n.a);
            if (ante.op == Op::Bot) {
                note(log, depth, "L-bot-imp", ctx, goal);
                return search(with(ctx, {}, f), goal, log, depth + 1);
            }
            if (ante.op == Op::Top || (ante.op == Op::Atom && has(ctx, n.a))) {
                note(log, depth, "L-atom-imp", ctx, goal);
                return search(with(ctx, {n.b}, f), goal, log, depth + 1);
            }
            if (ante.op == Op::And) {
                note(log, depth, "L-and-imp", ctx, goal);
                int inner = net_.mk(Op::Imp, ante.b, n.b);
                return search(with(ctx, {net_.mk(Op::Imp, ante.a, inner)}, f), goal, log, depth + 1);
            }
            if (ante.op == Op::Or) {
                note(log, depth, "L-or-imp", ctx, goal);
                int l = net_.mk(Op::Imp, ante.a, n.b);
                int r = net_.mk(Op::Imp, ante.b, n.b);
                return search(with(ctx, {l, r}, f), goal, log, depth + 1);
            }
        }
        // invertible right rules
        const PropNode g = net_.node(goal);
        if (g.op == Op::And) {
            note(log, depth, "R-and", ctx, goal);
            return search(ctx, g.a, log, depth + 1) && search(ctx, g.b, log, depth + 1);
        }
        if (g.op == Op::Imp) {
            note(log, depth, "R-imp", ctx, goal);
            return search(with(ctx, {g.a}), g.b, log, depth + 1);
        }
        // disjunction on the left, invertible but branching
        for (int f : ctx) {
            const PropNode n = net_.node(f);
            if (n.op != Op::Or) continue;
            note(log, depth, "L-or", ctx, goal);
            return search(with(ctx, {n.a}, f), goal, log, depth + 1) &&
                   search(with(ctx, {n.b}, f), goal, log, depth + 1);
        }
        // non-invertible choices
        if (g.op == Op::Or) {
            if (search(ctx, g.a, nullptr, depth + 1)) {
                note(log, depth, "R-or-left", ctx, goal);
                if (log) search(ctx, g.a, log, depth + 1);
                return true;
            }
            if (search(ctx, g.b, nullptr, depth + 1)) {
                note(log, depth, "R-or-right", ctx, goal);
                if (log) search(ctx, g.b, log, depth + 1);
                return true;
            }
        }
        for (int f : ctx) {
            const PropNode n = net_.node(f);
            if (n.op != Op::Imp) continue;
            const PropNode ante = net_.node(n.a);
            if (ante.op != Op::Imp) continue;
            // ((c -> d) -> b):  from  d -> b, c  =>  d   and   b  =>  goal
            int d_to_b = net_.mk(Op::Imp, ante.b, n.b);
            auto first_ctx = with(ctx, {d_to_b, ante.a}, f);
            auto second_ctx = with(ctx, {n.b}, f);
            if (search(first_ctx, ante.b, nullptr, depth + 1) && search(second_ctx, goal, nullptr, depth + 1)) {
                note(log, depth, "L-imp-imp", ctx, goal);
                if (log) {
                    search(first_ctx, ante.b, log, depth + 1);
                    search(second_ctx, goal, log, depth + 1);
                }
                return true;
            }
        }
        return false;
    }

    PropNet& net_;
    std::map<std::vector<int>, bool> memo_;
};

// Intuitionistic consequence of a quantifier-free goal from premises.
inline ProofResult prove_H(const std::vector<Formula>& premises, const Formula& goal, bool with_trace = false) {
    PropNet net;
    std::vector<int> ctx;
    for (const auto& p : premises) ctx.push_back(net.add(p));
    int g = net.add(goal);
    G4Prover prover(net);
    ProofResult r;
    if (with_trace) {
        r.trace = prover.derivation(ctx, g);
        r.provable = !r.trace.empty();
    } else {
        r.provable = prover.prove(ctx, g);
    }
    return r;
}

}  // namespace etau
