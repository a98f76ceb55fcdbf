// JSON rendering of elimination traces and judgments.
#pragma once

#include <json.hpp>

#include "eliminate.hpp"

namespace etau {

inline nlohmann::json strings_of(const std::vector<Formula>& fs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& f : fs) a.push_back(to_string(f));
    return a;
}

inline nlohmann::json strings_of(const std::vector<Term>& ts) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& t : ts) a.push_back(to_string(t));
    return a;
}

inline nlohmann::json verification_json(const Verification& v) {
    nlohmann::json o{{"ok", v.ok}, {"method", v.method}};
    if (!v.ok) {
        nlohmann::json cv = nlohmann::json::object();
        for (const auto& [atom, value] : v.countervaluation) cv[to_string(atom)] = value;
        o["countervaluation"] = cv;
        o["detail"] = v.detail;
    }
    return o;
}

inline nlohmann::json judgment_json(const Judgment& j) {
    return {{"logic", j.logic.name()},
            {"criticals", strings_of(j.criticals)},
            {"premises", strings_of(j.residues)},
            {"instances", strings_of(j.instances)},
            {"goal", strings_of(j.goal)}};
}

inline nlohmann::json trace_json(const EliminationTrace& tr) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : tr.steps) {
        nlohmann::json o{{"rule", s.rule},
                         {"target", to_string(s.target)},
                         {"eliminated", strings_of(s.eliminated)},
                         {"elimination_set", strings_of(s.elimination_set)},
                         {"axiom_instances", strings_of(s.axiom_instances)},
                         {"goal_after", strings_of(s.after.goal)}};
        if (s.verification) o["verified"] = verification_json(*s.verification);
        steps.push_back(o);
    }
    nlohmann::json grounding = nlohmann::json::object();
    for (const auto& [t, c] : tr.grounding) grounding[c] = to_string(t);
    nlohmann::json measures = nlohmann::json::array();
    for (const auto& m : tr.measures) measures.push_back({m.rank, m.degree, m.count});
    nlohmann::json out{{"version", 1},
                       {"driver", driver_name(tr.driver)},
                       {"logic", tr.initial.logic.name()},
                       {"steps", steps},
                       {"measures", measures},
                       {"result", to_string(tr.result)},
                       {"result_disjuncts", strings_of(tr.result_disjuncts)},
                       {"grounding", grounding}};
    if (tr.initial_verification) out["initial_verified"] = verification_json(*tr.initial_verification);
    if (!tr.final_judgment.residues.empty()) out["premises"] = strings_of(tr.final_judgment.residues);
    if (tr.failure) {
        out["failure"] = {{"step", tr.failure->step},
                          {"target", to_string(tr.failure->target)},
                          {"offending", strings_of(tr.failure->offending)},
                          {"reason", tr.failure->reason}};
    }
    return out;
}

}  // namespace etau
