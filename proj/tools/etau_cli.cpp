// etau: translation, elimination and checking from the command line.
//
// Exit codes: 0 success or valid, 1 invalid or failure report, 2 usage error,
// 3 budget exceeded.

#include <CLI11.hpp>
#include <iostream>

#include "etau/etau.hpp"
#include "etau/trace_json.hpp"

using namespace etau;
using nlohmann::json;

namespace {

struct Globals {
    std::string format = "text";
    std::uint64_t seed = 0;
    std::uint64_t budget = 20'000'000;

    bool as_json() const { return format == "json"; }
    ChainOptions chain(ChainMethod method = ChainMethod::Auto) const {
        ChainOptions o;
        o.method = method;
        o.budget = budget;
        o.seed = seed;
        return o;
    }
};

struct Failure : std::runtime_error {
    int code;
    Failure(const std::string& m, int c) : std::runtime_error(m), code(c) {}
};

void emit(const Globals& g, const json& j, const std::string& text) {
    if (g.as_json()) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

std::string lines(const std::vector<Formula>& fs, const std::string& indent = "  ") {
    std::string out;
    for (const auto& f : fs) out += indent + to_string(f) + "\n";
    return out;
}

ChainMethod parse_method(const std::string& s) {
    if (s == "auto") return ChainMethod::Auto;
    if (s == "exhaustive") return ChainMethod::Exhaustive;
    if (s == "sat") return ChainMethod::Sat;
    throw Failure("unknown method '" + s + "'", 2);
}

Driver parse_driver(const std::string& s) {
    if (s == "hb") return Driver::HilbertBernays;
    if (s == "weak-lin") return Driver::WeakLin;
    if (s == "jankov") return Driver::Jankov;
    throw Failure("unknown driver '" + s + "'", 2);
}

json countervaluation_json(const std::vector<std::pair<Formula, int>>& cv) {
    json o = json::object();
    for (const auto& [a, v] : cv) o[to_string(a)] = v;
    return o;
}

std::string countervaluation_text(const std::vector<std::pair<Formula, int>>& cv) {
    std::string out;
    for (const auto& [a, v] : cv) out += "  " + to_string(a) + " = " + std::to_string(v) + "\n";
    return out;
}

// ---- translate ------------------------------------------------------------------

int cmd_translate(const Globals& g, const std::string& input, bool shadow_only, bool herbrandize) {
    Formula f = parse_formula(input);
    json out{{"input", to_string(f)}};
    std::string text;
    if (herbrandize) {
        HerbrandResult h = herbrand_form(f);
        out["herbrand"] = to_string(h.formula);
        out["new_symbols"] = h.new_symbols;
        text = to_string(h.formula) + "\n";
    } else if (shadow_only) {
        out["shadow"] = to_string(shadow(f));
        text = to_string(shadow(f)) + "\n";
    } else {
        out["translation"] = to_string(et_translate(f));
        text = to_string(et_translate(f)) + "\n";
    }
    emit(g, out, text);
    return 0;
}

// ---- eliminate ----------------------------------------------------------------------

int cmd_eliminate(const Globals& g, const std::string& path, const std::string& driver_name,
                  const std::string& logic, const std::string& verify, bool no_dedup) {
    Judgment j = load_judgment(path);
    if (!logic.empty()) j.logic = Logic::parse(logic);
    if (verify != "none" && verify != "steps" && verify != "full") throw Failure("unknown verification level", 2);
    ElimOptions opt;
    opt.dedup = !no_dedup;
    opt.verify = verify != "none";
    opt.chain = g.chain();
    EliminationTrace tr = run_driver(parse_driver(driver_name), j, opt);
    json out = trace_json(tr);

    std::ostringstream text;
    text << "driver " << driver_name << ", logic " << j.logic.name() << "\n";
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const auto& s = tr.steps[i];
        text << "step " << i + 1 << " [" << s.rule << "] target " << s.target << "\n";
        text << "  eliminated:\n" << lines(s.eliminated, "    ");
        text << "  elimination set:";
        for (const auto& t : s.elimination_set) text << " " << t << ";";
        text << "\n  axiom instances:\n" << lines(s.axiom_instances, "    ");
        text << "  goal:\n" << lines(s.after.goal, "    ");
        if (s.verification) text << "  verified: " << (s.verification->ok ? "yes" : "NO") << " (" << s.verification->method << ")\n";
    }
    if (tr.failure) {
        text << "failure at step " << tr.failure->step + 1 << ": " << tr.failure->reason << "\n";
        text << lines(tr.failure->offending);
        emit(g, out, text.str());
        return 1;
    }
    for (const auto& [t, c] : tr.grounding) text << "ground " << c << " := " << t << "\n";
    if (!tr.final_judgment.residues.empty()) text << "premises:\n" << lines(tr.final_judgment.residues);
    text << "result:\n" << lines(tr.result_disjuncts);

    auto reject = [&](const Judgment& bad, const Verification& v, const std::string& what) {
        std::cerr << what << " does not verify (" << v.method << ")\n" << format_judgment(bad);
        if (!v.countervaluation.empty()) std::cerr << "countervaluation:\n" << countervaluation_text(v.countervaluation);
        return 1;
    };
    if (tr.initial_verification && !tr.initial_verification->ok)
        return reject(tr.initial, *tr.initial_verification, "input judgment");
    for (std::size_t i = 0; i < tr.steps.size(); ++i)
        if (tr.steps[i].verification && !tr.steps[i].verification->ok)
            return reject(tr.steps[i].after, *tr.steps[i].verification, "judgment after step " + std::to_string(i + 1));
    if (verify == "full") {
        Verification v = verify_judgment(tr.final_judgment, g.chain());
        out["result_verified"] = verification_json(v);
        text << "result verified: " << (v.ok ? "yes" : "NO") << " (" << v.method << ")\n";
        if (!v.ok) {
            emit(g, out, text.str());
            return reject(tr.final_judgment, v, "result");
        }
    }
    emit(g, out, text.str());
    return 0;
}

int cmd_verify(const Globals& g, const std::string& path, const std::string& logic, const std::string& method) {
    Judgment j = load_judgment(path);
    if (!logic.empty()) j.logic = Logic::parse(logic);
    Verification v = verify_judgment(j, g.chain(parse_method(method)));
    json out = verification_json(v);
    out["logic"] = j.logic.name();
    std::string text = std::string(v.ok ? "valid" : "invalid") + " in " + j.logic.name() + " (" + v.method + ")\n";
    if (!v.ok) text += countervaluation_text(v.countervaluation);
    emit(g, out, text);
    return v.ok ? 0 : 1;
}

// ---- check ------------------------------------------------------------------------

int cmd_check(const Globals& g, const std::string& input, const std::string& logic_name, const std::string& method,
              bool trace) {
    Formula f = parse_formula(input);
    Logic logic = Logic::parse(logic_name);
    json out{{"formula", to_string(f)}, {"logic", logic.name()}};
    std::ostringstream text;
    bool ok = false;
    if (logic.kind == Logic::H || logic.kind == Logic::KC) {
        std::vector<Formula> premises;
        if (logic.kind == Logic::KC) {
            // weak excluded middle on every subformula
            std::function<void(const Formula&)> walk = [&](const Formula& x) {
                if (x.kind() == FormulaKind::Top || x.kind() == FormulaKind::Bot) return;
                premises.push_back(schema(SchemaKind::J, {x}));
                if (x.kind() == FormulaKind::Not) walk(x.lhs());
                if (x.kind() == FormulaKind::And || x.kind() == FormulaKind::Or || x.kind() == FormulaKind::Imp) {
                    walk(x.lhs());
                    walk(x.rhs());
                }
            };
            walk(f);
            premises = dedup(premises);
        }
        ProofResult r = prove_H(premises, f, trace);
        ok = r.provable;
        out["method"] = logic.kind == Logic::KC ? "g4ip with weak excluded middle on subformulas" : "g4ip";
        out["valid"] = ok;
        if (trace && ok) out["derivation"] = r.trace;
        text << (ok ? "valid" : "not derivable") << " in " << logic.name() << "\n";
        if (trace && ok)
            for (const auto& l : r.trace) text << l << "\n";
    } else {
        PropNet net;
        int root = net.add(f);
        int m = logic.kind == Logic::LC ? lc_chain_size(net.atoms_below(root).size()) : logic.chain();
        ChainVerdict c = valid_on_chain(net, root, m, g.chain(parse_method(method)));
        ok = c.valid;
        out["method"] = std::string(c.method == ChainMethod::Sat ? "sat" : "exhaustive") + " on chain " + std::to_string(m);
        out["valid"] = ok;
        text << (ok ? "valid" : "invalid") << " in " << logic.name() << " (" << out["method"].get<std::string>() << ")\n";
        if (!ok) {
            std::vector<std::pair<Formula, int>> cv;
            for (int a : net.atoms_below(root)) {
                std::size_t i = static_cast<std::size_t>(a);
                cv.emplace_back(net.atoms()[i], c.countervaluation[i]);
            }
            out["countervaluation"] = countervaluation_json(cv);
            out["value"] = c.value;
            out["top"] = m - 1;
            text << "countervaluation (top = " << m - 1 << "):\n" << countervaluation_text(cv);
        }
    }
    emit(g, out, text.str());
    return ok ? 0 : 1;
}

// ---- terms and critical formulas ------------------------------------------------------

int cmd_measure(const Globals& g, const std::string& input, bool want_rank) {
    Term t = parse_term(input);
    int v = want_rank ? rank(t) : degree(t);
    json out{{"term", to_string(t)}, {want_rank ? "rank" : "degree", v}};
    emit(g, out, std::to_string(v) + "\n");
    return 0;
}

int cmd_classify(const Globals& g, const std::string& input, const std::vector<std::string>& context) {
    Formula f = parse_formula(input);
    std::vector<Term> terms;
    for (const auto& s : context) terms.push_back(parse_term(s));
    auto readings = recognize_critical(f);
    if (context.empty())
        for (const auto& r : readings) terms.push_back(r.critical_term);
    json arr = json::array();
    std::ostringstream text;
    for (const auto& c : classify(f, terms)) {
        const auto& r = c.reading;
        arr.push_back({{"kind", r.kind == BinderKind::Epsilon ? "eps" : "tau"},
                       {"critical_term", to_string(r.critical_term)},
                       {"witness", to_string(r.witness)},
                       {"rank", rank(r.critical_term)},
                       {"degree", degree(r.critical_term)},
                       {"predicative", c.predicative},
                       {"weak", c.weak}});
        text << (r.kind == BinderKind::Epsilon ? "eps" : "tau") << " reading: critical term " << r.critical_term
             << ", witness " << r.witness << ", rank " << rank(r.critical_term) << ", degree "
             << degree(r.critical_term) << ", " << (c.predicative ? "predicative" : "impredicative")
             << (c.weak ? ", weak" : "") << "\n";
    }
    if (readings.empty()) text << "not a critical formula\n";
    emit(g, json{{"formula", to_string(f)}, {"readings", arr}}, text.str());
    return readings.empty() ? 1 : 0;
}

int cmd_reconstruct(const Globals& g, const std::string& input, const std::string& skeleton,
                    const std::vector<std::string>& holes) {
    Formula d = parse_formula(input);
    Formula sk = parse_formula(skeleton);
    ElimOptions opt;
    opt.chain = g.chain();
    auto [jd, tr] = reconstruct_from_herbrand(d, sk, holes, opt);
    json out{{"judgment", judgment_json(jd)}, {"trace", trace_json(tr)}};
    std::string text = format_judgment(jd) + "result:\n" + lines(tr.result_disjuncts);
    if (tr.failure) text += "failure: " + tr.failure->reason + "\n";
    emit(g, out, text);
    return tr.failure ? 1 : 0;
}

// ---- schemas ------------------------------------------------------------------------

int cmd_schemas(const Globals& g, int from, int to) {
    json rows = json::array();
    std::ostringstream text;
    bool all = true;
    auto opt = g.chain();
    for (int m = from; m <= to; ++m) {
        Formula b = schema(SchemaKind::Bm, m);
        bool on_m = valid_in_LCm(b, m, opt).valid;
        bool on_next = valid_in_LCm(b, m + 1, opt).valid;
        auto cex = counterexample_Bm(m);
        std::vector<std::pair<Formula, int>> cv;
        std::vector<Formula> atoms = schema_atoms(static_cast<std::size_t>(m) + 1);
        for (std::size_t i = 0; i < atoms.size(); ++i) cv.emplace_back(atoms[i], cex[i]);
        int value = eval_godel(b, cv, m + 1);
        rows.push_back({{"m", m}, {"valid_on_m", on_m}, {"valid_on_m_plus_1", on_next},
                        {"counterexample", cex}, {"counterexample_value", value}});
        text << "B" << m << ": valid on chain " << m << ": " << (on_m ? "yes" : "no") << ", on chain " << m + 1 << ": "
             << (on_next ? "yes" : "no") << ", refuted by descending valuation (value " << value << ")\n";
        all = all && on_m && !on_next && value < m;
    }
    json rel = json::array();
    for (const auto& r : schema_relations_check(std::max(from, 2), to)) {
        rel.push_back({{"m", r.m}, {"entails_lin", r.entails_lin}, {"entails_hosoi", r.entails_hosoi}});
        text << "B" << r.m << " |-H Lin: " << (r.entails_lin ? "yes" : "no") << ", |-H R" << r.m - 1 << ": "
             << (r.entails_hosoi ? "yes" : "no") << "\n";
        all = all && r.entails_lin && r.entails_hosoi;
    }
    emit(g, json{{"bm", rows}, {"relations", rel}}, text.str());
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Epsilon/tau calculus: translation, critical formulas and their elimination"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", g.seed, "Seed for the SAT solver's randomized decisions");
    app.add_option("--budget", g.budget, "Valuations the exhaustive checker may visit")->check(CLI::PositiveNumber);

    std::string input, path, logic, driver = "hb", verify = "none", method = "auto", skeleton;
    bool shadow_flag = false, herbrand_flag = false, no_dedup = false, trace = false;
    std::vector<std::string> holes, context;
    int from = 2, to = 5;

    auto* translate = app.add_subcommand("translate", "Epsilon/tau translation of a formula");
    translate->add_option("formula", input)->required();
    translate->add_flag("--shadow", shadow_flag, "Print the propositional shadow instead");
    translate->add_flag("--herbrandize", herbrand_flag, "Print the Herbrand form of a prenex formula");

    auto* eliminate = app.add_subcommand("eliminate", "Eliminate the critical formulas of a judgment file");
    eliminate->add_option("file", path)->required()->check(CLI::ExistingFile);
    eliminate->add_option("--driver", driver)->check(CLI::IsMember({"hb", "weak-lin", "jankov"}));
    eliminate->add_option("--logic", logic, "Override the logic given in the file");
    eliminate->add_option("--verify", verify)->check(CLI::IsMember({"none", "steps", "full"}));
    eliminate->add_flag("--no-dedup", no_dedup, "Keep duplicate goal disjuncts");

    auto* verify_cmd = app.add_subcommand("verify", "Check that a judgment file holds in its logic");
    verify_cmd->add_option("file", path)->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--logic", logic);
    verify_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "exhaustive", "sat"}));

    auto* check = app.add_subcommand("check", "Validity of a quantifier-free formula");
    check->add_option("formula", input)->required();
    std::string check_logic = "classical";
    check->add_option("--logic", check_logic);
    check->add_option("--method", method)->check(CLI::IsMember({"auto", "exhaustive", "sat"}));
    check->add_flag("--trace", trace, "Print the derivation for h and kc");

    auto* rank_cmd = app.add_subcommand("rank", "Rank of an epsilon/tau term");
    rank_cmd->add_option("term", input)->required();
    auto* degree_cmd = app.add_subcommand("degree", "Degree of an epsilon/tau term");
    degree_cmd->add_option("term", input)->required();

    auto* classify_cmd = app.add_subcommand("classify", "Readings of a formula as a critical formula");
    classify_cmd->add_option("formula", input)->required();
    classify_cmd->add_option("--terms", context, "Critical terms of the surrounding proof");

    auto* reconstruct = app.add_subcommand("reconstruct", "Elimination sequence behind a Herbrand disjunction");
    reconstruct->add_option("disjunction", input)->required();
    reconstruct->add_option("--skeleton", skeleton)->required();
    reconstruct->add_option("--holes", holes)->required()->delimiter(',');

    auto* schemas = app.add_subcommand("schemas", "Validity table of the chain schemas");
    schemas->add_option("--from", from)->check(CLI::Range(1, 12));
    schemas->add_option("--to", to)->check(CLI::Range(1, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*translate) return cmd_translate(g, input, shadow_flag, herbrand_flag);
        if (*eliminate) return cmd_eliminate(g, path, driver, logic, verify, no_dedup);
        if (*verify_cmd) return cmd_verify(g, path, logic, method);
        if (*check) return cmd_check(g, input, check_logic, method, trace);
        if (*rank_cmd) return cmd_measure(g, input, true);
        if (*degree_cmd) return cmd_measure(g, input, false);
        if (*classify_cmd) return cmd_classify(g, input, context);
        if (*reconstruct) return cmd_reconstruct(g, input, skeleton, holes);
        if (*schemas) return cmd_schemas(g, from, to);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const Failure& e) {
        std::cerr << e.what() << "\n";
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
