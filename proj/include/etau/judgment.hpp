// Logics, judgments (premises entail a disjunction) and their verification.
#pragma once

#include <fstream>
#include <sstream>

#include "critical.hpp"
#include "schemas.hpp"

namespace etau {

struct Logic {
    enum Kind { Classical, LCm, LC, KC, H } kind = Classical;
    int m = 2;  // chain size for LCm

    static Logic classical() { return {Classical, 2}; }
    static Logic lcm(int m) {
        if (m < 2) throw std::invalid_argument("finite Goedel logic needs at least two truth values");
        return {LCm, m};
    }
    static Logic lc() { return {LC, 0}; }
    static Logic kc() { return {KC, 0}; }
    static Logic h() { return {H, 0}; }

    // Chain used by the semantic check; 0 when decided otherwise.
    int chain() const { return kind == Classical ? 2 : kind == LCm ? m : 0; }
    bool linear() const { return kind == Classical || kind == LCm || kind == LC; }

    std::string name() const {
        switch (kind) {
            case Classical: return "classical";
            case LCm: return "lc" + std::to_string(m);
            case LC: return "lc";
            case KC: return "kc";
            case H: return "h";
        }
        return "?";
    }

    static Logic parse(const std::string& s) {
        if (s == "classical" || s == "c") return classical();
        if (s == "lc") return lc();
        if (s == "kc") return kc();
        if (s == "h" || s == "int") return h();
        if (s.size() > 2 && s.rfind("lc", 0) == 0) {
            int m = std::stoi(s.substr(2));
            return m == 2 ? classical() : lcm(m);
        }
        throw std::invalid_argument("unknown logic '" + s + "'");
    }

    friend bool operator==(const Logic& a, const Logic& b) { return a.kind == b.kind && a.chain() == b.chain(); }
};

struct Judgment {
    Logic logic;
    std::vector<Formula> criticals;
    std::vector<Formula> residues;   // premises that are not critical formulas
    std::vector<Formula> instances;  // axiom instances of the logic
    std::vector<Formula> goal;       // read as a disjunction

    Formula goal_formula() const { return big_or(goal); }

    std::vector<Formula> premises() const {
        std::vector<Formula> out = criticals;
        out.insert(out.end(), residues.begin(), residues.end());
        out.insert(out.end(), instances.begin(), instances.end());
        return out;
    }

    // Critical terms of all readings of all critical formulas.
    std::vector<Term> critical_terms() const {
        TermSet out;
        for (const auto& c : criticals)
            for (const auto& r : recognize_critical(c)) out.insert(r.critical_term);
        return out.items();
    }
};

// ---- Admissible axiom instances ----------------------------------------------

inline bool schema_admissible(const SchemaMatch& s, const Logic& l) {
    switch (s.kind) {
        case SchemaKind::EM: return l.kind == Logic::Classical;
        case SchemaKind::J: return l.kind != Logic::H;
        case SchemaKind::Lin:
        case SchemaKind::BigDisjEps:
        case SchemaKind::BigDisjTau:
        case SchemaKind::IteratedLin: return l.linear();
        case SchemaKind::Bm: return l.chain() != 0 && s.parameter >= l.chain();
        case SchemaKind::Rn: return l.chain() != 0 && s.parameter + 1 >= l.chain();
    }
    return false;
}

// The schema an instance belongs to, if it is admissible in the logic.
inline std::optional<SchemaMatch> admissible_instance(const Formula& f, const Logic& l) {
    auto s = match_schema(f);
    if (s && schema_admissible(*s, l)) return s;
    return std::nullopt;
}

// ---- Verification --------------------------------------------------------------

struct Verification {
    bool ok = false;
    std::string method;
    std::vector<std::pair<Formula, int>> countervaluation;  // on failure, when semantic
    std::string detail;
};

inline Verification verify_entailment(const Logic& logic, const std::vector<Formula>& premises, const Formula& goal,
                                      const ChainOptions& opt = {}) {
    Verification v;
    if (logic.kind == Logic::KC || logic.kind == Logic::H) {
        v.method = "g4ip";
        v.ok = prove_H(premises, goal).provable;
        if (!v.ok) v.detail = "not intuitionistically derivable from the premises";
        return v;
    }
    PropNet net;
    std::vector<int> ps;
    for (const auto& p : premises) ps.push_back(net.add(p));
    int g = net.add(goal);
    int lhs = net.top();
    for (std::size_t i = ps.size(); i-- > 0;) lhs = lhs == net.top() ? ps[i] : net.mk(Op::And, ps[i], lhs);
    int root = net.mk(Op::Imp, lhs, g);
    int m = logic.kind == Logic::LC ? lc_chain_size(net.atoms_below(root).size()) : logic.chain();
    ChainVerdict c = valid_on_chain(net, root, m, opt);
    v.method = std::string(c.method == ChainMethod::Sat ? "sat" : "exhaustive") + " on chain " + std::to_string(m);
    v.ok = c.valid;
    if (!v.ok) {
        for (std::size_t i = 0; i < net.atom_count(); ++i)
            v.countervaluation.emplace_back(net.atoms()[i], c.countervaluation[i]);
        v.detail = "countervaluation found";
    }
    return v;
}

inline Verification verify_judgment(const Judgment& j, const ChainOptions& opt = {}) {
    return verify_entailment(j.logic, j.premises(), j.goal_formula(), opt);
}

// ---- Text format ---------------------------------------------------------------
//
//   # comment
//   logic: classical | lcN | lc | kc | h
//   critical: <formula>
//   premise: <formula>
//   instance: <formula>
//   goal: <formula>          (repeat for a disjunction)

inline Judgment parse_judgment(std::istream& in) {
    Judgment j;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto colon = line.find(':');
        std::string key = line.substr(0, colon == std::string::npos ? line.size() : colon);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t\r") + 1);
        if (key.empty()) continue;
        if (colon == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": missing ':'");
        std::string value = line.substr(colon + 1);
        try {
            if (key == "logic") {
                value.erase(0, value.find_first_not_of(" \t"));
                value.erase(value.find_last_not_of(" \t\r") + 1);
                j.logic = Logic::parse(value);
            } else if (key == "critical") {
                j.criticals.push_back(parse_formula(value));
            } else if (key == "premise") {
                j.residues.push_back(parse_formula(value));
            } else if (key == "instance") {
                j.instances.push_back(parse_formula(value));
            } else if (key == "goal") {
                j.goal.push_back(parse_formula(value));
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const ParseError& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (j.goal.empty()) throw std::invalid_argument("judgment has no goal");
    return j;
}

inline Judgment parse_judgment(const std::string& text) {
    std::istringstream in(text);
    return parse_judgment(in);
}

inline Judgment load_judgment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return parse_judgment(in);
}

inline std::string format_judgment(const Judgment& j) {
    std::ostringstream out;
    out << "logic: " << j.logic.name() << "\n";
    for (const auto& f : j.criticals) out << "critical: " << f << "\n";
    for (const auto& f : j.residues) out << "premise: " << f << "\n";
    for (const auto& f : j.instances) out << "instance: " << f << "\n";
    for (const auto& f : j.goal) out << "goal: " << f << "\n";
    return out.str();
}

}  // namespace etau
