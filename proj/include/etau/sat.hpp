// A small CDCL SAT solver: two watched literals, first-UIP learning,
// VSIDS-style activities, phase saving and Luby restarts.
#pragma once

#include <cstdint>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

namespace etau {

class SatSolver {
public:
    explicit SatSolver(std::uint64_t seed = 0) : rng_(seed) {}

    // Variables are 1-based; literals are signed integers as in DIMACS.
    int new_var() {
        ++nvars_;
        value_.push_back(kUndef);
        level_.push_back(0);
        reason_.push_back(-1);
        activity_.push_back(0.0);
        phase_.push_back(0);
        seen_.push_back(0);
        watches_.emplace_back();
        watches_.emplace_back();
        heap_.push({0.0, nvars_ - 1});
        return nvars_;
    }

    int vars() const { return nvars_; }

    void add_clause(std::vector<int> lits) {
        if (!ok_) return;
        std::vector<int> c;
        c.reserve(lits.size());
        for (int l : lits) {
            if (l == 0 || std::abs(l) > nvars_) throw std::invalid_argument("literal out of range");
            int x = encode(l);
            bool dup = false;
            for (int y : c) {
                if (y == x) dup = true;
                if (y == (x ^ 1)) return;  // tautology
            }
            if (!dup) c.push_back(x);
        }
        if (c.empty()) {
            ok_ = false;
            return;
        }
        if (c.size() == 1) {
            if (lit_value(c[0]) == kFalse) ok_ = false;
            else if (lit_value(c[0]) == kUndef) assign(c[0], -1);
            return;
        }
        attach(std::move(c), false);
    }

    bool solve() {
        if (!ok_) return false;
        if (propagate() >= 0) return ok_ = false;
        std::uint64_t restart_no = 0;
        for (;;) {
            std::uint64_t budget = 64 * luby(restart_no++);
            int r = search(budget);
            if (r == 1) return true;
            if (r == 0) return ok_ = false;
            backtrack(0);
        }
    }

    bool model(int var) const { return value_[static_cast<std::size_t>(var - 1)] == kTrue; }

    std::uint64_t conflicts() const { return conflicts_; }

private:
    static constexpr std::int8_t kFalse = 0, kTrue = 1, kUndef = 2;

    static int encode(int l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }
    static int var_of(int x) { return x >> 1; }

    std::int8_t lit_value(int x) const {
        std::int8_t v = value_[static_cast<std::size_t>(var_of(x))];
        if (v == kUndef) return kUndef;
        return static_cast<std::int8_t>(v ^ (x & 1));
    }

    void assign(int x, int reason) {
        auto v = static_cast<std::size_t>(var_of(x));
        value_[v] = static_cast<std::int8_t>((x & 1) ? kFalse : kTrue);
        level_[v] = static_cast<int>(trail_lim_.size());
        reason_[v] = reason;
        trail_.push_back(x);
    }

    int attach(std::vector<int> c, bool learnt) {
        int id = static_cast<int>(clauses_.size());
        watches_[static_cast<std::size_t>(c[0] ^ 1)].push_back(id);
        watches_[static_cast<std::size_t>(c[1] ^ 1)].push_back(id);
        clauses_.push_back(std::move(c));
        (void)learnt;
        return id;
    }

    // Returns a conflicting clause id, or -1.
    int propagate() {
        while (qhead_ < trail_.size()) {
            int p = trail_[qhead_++];  // p is true; clauses watching ~p must move
            auto& ws = watches_[static_cast<std::size_t>(p)];
            std::size_t i = 0, j = 0;
            int conflict = -1;
            while (i < ws.size()) {
                int cid = ws[i++];
                auto& c = clauses_[static_cast<std::size_t>(cid)];
                int false_lit = p ^ 1;
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == kTrue) {
                    ws[j++] = cid;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (lit_value(c[k]) != kFalse) {
                        std::swap(c[1], c[k]);
                        watches_[static_cast<std::size_t>(c[1] ^ 1)].push_back(cid);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = cid;
                if (lit_value(c[0]) == kFalse) {
                    conflict = cid;
                    while (i < ws.size()) ws[j++] = ws[i++];
                } else {
                    assign(c[0], cid);
                }
            }
            ws.resize(j);
            if (conflict >= 0) return conflict;
        }
        return -1;
    }

    void bump(int v) {
        auto u = static_cast<std::size_t>(v);
        activity_[u] += inc_;
        if (activity_[u] > 1e100) {
            for (auto& a : activity_) a *= 1e-100;
            inc_ *= 1e-100;
        }
        heap_.push({activity_[u], v});
    }

    // First-UIP conflict analysis.
    std::vector<int> analyze(int conflict, int& back_level) {
        std::vector<int> learnt{-1};
        int pending = 0;
        int p = -1;
        std::size_t idx = trail_.size();
        int current = static_cast<int>(trail_lim_.size());
        int cid = conflict;
        do {
            const auto& c = clauses_[static_cast<std::size_t>(cid)];
            for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
                int q = c[k];
                auto v = static_cast<std::size_t>(var_of(q));
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                bump(var_of(q));
                if (level_[v] >= current) ++pending;
                else learnt.push_back(q);
            }
            do {
                p = trail_[--idx];
            } while (!seen_[static_cast<std::size_t>(var_of(p))]);
            cid = reason_[static_cast<std::size_t>(var_of(p))];
            seen_[static_cast<std::size_t>(var_of(p))] = 0;
            --pending;
            if (pending > 0 && cid >= 0) {
                // the reason clause has p in position 0
                auto& rc = clauses_[static_cast<std::size_t>(cid)];
                if (rc[0] != p) {
                    for (std::size_t k = 1; k < rc.size(); ++k)
                        if (rc[k] == p) {
                            std::swap(rc[0], rc[k]);
                            break;
                        }
                }
            }
        } while (pending > 0);
        learnt[0] = p ^ 1;
        back_level = 0;
        std::size_t max_i = 1;
        for (std::size_t k = 1; k < learnt.size(); ++k) {
            int lv = level_[static_cast<std::size_t>(var_of(learnt[k]))];
            if (lv > back_level) {
                back_level = lv;
                max_i = k;
            }
        }
        if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
        for (int q : learnt) seen_[static_cast<std::size_t>(var_of(q))] = 0;
        inc_ *= 1.05;
        return learnt;
    }

    void backtrack(int lvl) {
        if (static_cast<int>(trail_lim_.size()) <= lvl) return;
        std::size_t stop = trail_lim_[static_cast<std::size_t>(lvl)];
        for (std::size_t k = trail_.size(); k-- > stop;) {
            auto v = static_cast<std::size_t>(var_of(trail_[k]));
            phase_[v] = static_cast<std::int8_t>(trail_[k] & 1);
            value_[v] = kUndef;
            reason_[v] = -1;
            heap_.push({activity_[v], static_cast<int>(v)});
        }
        trail_.resize(stop);
        trail_lim_.resize(static_cast<std::size_t>(lvl));
        qhead_ = trail_.size();
    }

    int pick_branch() {
        if (std::uniform_int_distribution<int>(0, 49)(rng_) == 0) {
            int v = std::uniform_int_distribution<int>(0, nvars_ - 1)(rng_);
            if (value_[static_cast<std::size_t>(v)] == kUndef) return v;
        }
        while (!heap_.empty()) {
            auto [act, v] = heap_.top();
            heap_.pop();
            if (value_[static_cast<std::size_t>(v)] == kUndef && act == activity_[static_cast<std::size_t>(v)])
                return v;
        }
        for (int v = 0; v < nvars_; ++v)
            if (value_[static_cast<std::size_t>(v)] == kUndef) return v;
        return -1;
    }

    // 1 = sat, 0 = unsat, -1 = restart.
    int search(std::uint64_t budget) {
        std::uint64_t local = 0;
        for (;;) {
            int conflict = propagate();
            if (conflict >= 0) {
                ++conflicts_;
                ++local;
                if (trail_lim_.empty()) return 0;
                int back = 0;
                std::vector<int> learnt = analyze(conflict, back);
                backtrack(back);
                if (learnt.size() == 1) {
                    assign(learnt[0], -1);
                } else {
                    int lit0 = learnt[0];
                    int id = attach(std::move(learnt), true);
                    assign(lit0, id);
                }
                continue;
            }
            if (local >= budget) return -1;
            int v = pick_branch();
            if (v < 0) return 1;
            trail_lim_.push_back(trail_.size());
            assign(2 * v + phase_[static_cast<std::size_t>(v)], -1);
        }
    }

    static std::uint64_t luby(std::uint64_t i) {
        std::uint64_t size = 1, seq = 0;
        while (size < i + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != i) {
            size = (size - 1) >> 1;
            --seq;
            i = i % size;
        }
        return std::uint64_t{1} << seq;
    }

    int nvars_ = 0;
    bool ok_ = true;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;  // indexed by literal that, when true, falsifies a watch
    std::vector<std::int8_t> value_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<double> activity_;
    std::vector<std::int8_t> phase_;
    std::vector<char> seen_;
    std::vector<int> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;
    double inc_ = 1.0;
    std::priority_queue<std::pair<double, int>> heap_;
    std::uint64_t conflicts_ = 0;
    std::mt19937_64 rng_;
};

}  // namespace etau
