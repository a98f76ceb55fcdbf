#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace etau;
using namespace etau::testing;

namespace {

ElimOptions verifying() {
    ElimOptions o;
    o.verify = true;
    return o;
}

// Every recorded axiom instance belongs to a schema the logic proves.
void check_instances(const EliminationTrace& tr) {
    for (const auto& s : tr.steps)
        for (const auto& a : s.axiom_instances) {
            INFO(s.rule << ": " << a);
            CHECK(admissible_instance(a, tr.initial.logic));
        }
}

void check_steps_verified(const EliminationTrace& tr) {
    REQUIRE(tr.initial_verification);
    CHECK(tr.initial_verification->ok);
    for (const auto& s : tr.steps) {
        REQUIRE(s.verification);
        INFO(s.rule << " on " << s.target);
        CHECK(s.verification->ok);
    }
}

void check_measures_decrease(const EliminationTrace& tr) {
    for (std::size_t i = 0; i + 1 < tr.measures.size(); ++i) CHECK(tr.measures[i + 1] < tr.measures[i]);
    CHECK(tr.measures.back() == Measure{});
}

bool ground_tautology(const EliminationTrace& tr) {
    return oracle_tautology(entailment(tr.final_judgment.premises(), tr.result));
}

}  // namespace

TEST_CASE("forking judgment under classical elimination") {
    EliminationTrace tr = run_elimination(forking_judgment(), verifying());
    REQUIRE(tr.ok());
    check_steps_verified(tr);
    check_instances(tr);
    check_measures_decrease(tr);
    CHECK(binder_free(tr.result));
    for (const auto& d : tr.result_disjuncts) CHECK_FALSE(match_matrix(F(forking_matrix()), "z", d).empty());
    CHECK(ground_tautology(tr));
    CHECK(oracle_valid(tr.result, 2));
    CHECK(bm_extract(tr.result) <= 2);
}

TEST_CASE("ground witnesses: single and complete classical elimination") {
    for (bool tau : {false, true})
        for (int k = 1; k <= 3; ++k) {
            Judgment j = ground_witness_judgment(k, tau);
            Term e = j.critical_terms().front();
            EliminationStep complete = eliminate_complete_classical(j, e);
            CHECK(complete.after.goal.size() <= static_cast<std::size_t>(k) + 1);
            CHECK(complete.after.criticals.empty());
            CHECK(verify_judgment(complete.after).ok);
            REQUIRE(complete.axiom_instances.size() == 1);
            CHECK(match_schema(complete.axiom_instances.front())->kind == SchemaKind::EM);
            CHECK(match_schema(complete.axiom_instances.front())->parameter == k);

            // one at a time, always the first remaining critical formula
            Judgment cur = j;
            std::size_t raw = 0;
            while (!cur.criticals.empty()) {
                auto c = recognize_critical(cur.criticals.front()).front();
                EliminationStep s = eliminate_single_classical(cur, c, false);
                CHECK(verify_judgment(s.after).ok);
                raw = s.raw_disjuncts;
                cur = s.after;
            }
            CHECK(raw == (std::size_t{1} << k));
            if (k == 1) CHECK(cur.goal == complete.after.goal);
        }
}

TEST_CASE("a single elimination keeps the other critical formulas of the term") {
    Judgment j = ground_witness_judgment(2);
    auto c = recognize_critical(j.criticals[1]).front();
    EliminationStep s = eliminate_single_classical(j, c);
    CHECK(s.eliminated == std::vector<Formula>{j.criticals[1]});
    // only the branch at e itself still needs it
    CHECK(s.after.criticals == std::vector<Formula>{j.criticals[0]});
    CHECK(verify_judgment(s.after).ok);
    CHECK_THROWS_AS(eliminate_single_classical(worked_judgment(), c), std::invalid_argument);
}

TEST_CASE("worked three-valued example: impredicative stage") {
    Judgment j = worked_judgment();
    Term e = worked_term();
    Partition p = partition(j, e);
    REQUIRE(p.formulas.size() == 4);

    // two levels deep the chains are still premises
    EliminationStep two = impredicative_stage(j, e, 2, false);
    CHECK(two.elimination_set.size() == 3);
    CHECK(two.after.goal.size() == 3);
    CHECK(two.after.criticals.size() == 2);
    std::size_t chains = 0;
    for (const auto& r : two.after.residues)
        if (auto m = match_schema(r); m && m->kind == SchemaKind::Bm && m->parameter == 2) ++chains;
    CHECK(chains == 4);
    CHECK(verify_judgment(two.after).ok);

    EliminationStep three = eliminate_impredicative_Bm(j, e, 3);
    std::vector<Formula> expected;
    for (const char* t : {"eps x. A(x)", "s(eps x. A(x))", "t(eps x. A(x))", "s(s(eps x. A(x)))",
                          "s(t(eps x. A(x)))", "t(s(eps x. A(x)))", "t(t(eps x. A(x)))"})
        expected.push_back(worked_goal_at(T(t)));
    CHECK(three.after.goal.size() == 7);
    for (const auto& d : expected) CHECK(std::count(three.after.goal.begin(), three.after.goal.end(), d) == 1);
    std::size_t bm3 = 0, iterated = 0;
    for (const auto& a : three.axiom_instances) {
        auto m = match_schema(a);
        REQUIRE(m);
        if (m->kind == SchemaKind::Bm) {
            CHECK(m->parameter == 3);
            ++bm3;
        } else {
            CHECK(m->kind == SchemaKind::IteratedLin);
            ++iterated;
        }
    }
    CHECK(bm3 == 8);
    CHECK(iterated == 12);
    CHECK(verify_judgment(three.after).ok);
    CHECK_THROWS_AS(eliminate_impredicative_Bm(worked_judgment(Logic::lcm(4)), e, 3), std::invalid_argument);
}

TEST_CASE("worked three-valued example: complete elimination") {
    Judgment j = worked_judgment();
    auto steps = eliminate_complete_Gm(j, worked_term(), 3);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].rule == "impredicative-Bm");
    CHECK(steps[1].rule == "predicative-lin");
    CHECK(steps[1].after.criticals.empty());
    CHECK(steps[1].after.goal.size() == 14);
    CHECK(verify_judgment(steps[1].after).ok);

    EliminationTrace tr = run_elimination(j, verifying());
    REQUIRE(tr.ok());
    check_steps_verified(tr);
    check_instances(tr);
    check_measures_decrease(tr);
    CHECK(binder_free(tr.result));
}

TEST_CASE("predicative elimination with linearity") {
    for (bool tau : {false, true})
        for (int k = 1; k <= 3; ++k) {
            Judgment j = ground_witness_judgment(k, tau);
            j.logic = Logic::lc();
            EliminationTrace tr = run_weak_lin(j, verifying());
            REQUIRE(tr.ok());
            check_steps_verified(tr);
            check_instances(tr);
            REQUIRE(tr.steps.size() == 1);
            CHECK(tr.steps[0].elimination_set.size() == static_cast<std::size_t>(k));
            CHECK(tr.result_disjuncts.size() == static_cast<std::size_t>(k));
            const Formula& instance = tr.steps[0].axiom_instances.front();
            if (k == 1) {
                CHECK(instance.lhs() == instance.rhs());
            } else {
                CHECK(match_schema(instance)->kind == (tau ? SchemaKind::BigDisjTau : SchemaKind::BigDisjEps));
                CHECK(match_schema(instance)->parameter == k);
            }
        }
    CHECK_THROWS_AS(eliminate_predicative_lin(worked_judgment(), worked_term()), std::invalid_argument);
    CHECK_THROWS_AS(eliminate_predicative_lin(worked_judgment(Logic::kc()), worked_term()), std::invalid_argument);
}

TEST_CASE("weak elimination stops at an impredicative formula, whichever term goes first") {
    for (int first = 0; first < 2; ++first) {
        ElimOptions opt;
        opt.select = [first](const std::vector<Term>& terms, std::size_t step) {
            REQUIRE(terms.size() >= 1);
            if (step > 0 || terms.size() < 2) return terms.front();
            return terms[static_cast<std::size_t>(first)];
        };
        EliminationTrace tr = run_weak_lin(crossing_judgment(), opt);
        REQUIRE(tr.failure);
        CHECK(tr.failure->step == 1);
        REQUIRE(tr.failure->offending.size() == 1);
        auto r = reading_for(tr.failure->offending.front(), tr.failure->target);
        REQUIRE(r);
        CHECK_FALSE(is_predicative(*r));
    }
}

TEST_CASE("negated goals with weak excluded middle") {
    Judgment j = jankov_judgment();
    EliminationStep s = eliminate_negated_jankov(j, worked_term());
    CHECK(s.axiom_instances.size() == 2);
    for (const auto& a : s.axiom_instances) CHECK(match_schema(a)->kind == SchemaKind::J);
    CHECK(prove_H(s.after.premises(), s.after.goal_formula()).provable);
    // without the instances the goal does not follow
    Judgment bare = s.after;
    bare.instances.clear();
    CHECK_FALSE(prove_H(bare.premises(), bare.goal_formula()).provable);

    EliminationTrace tr = run_jankov(j, verifying());
    REQUIRE(tr.ok());
    check_steps_verified(tr);
    check_instances(tr);
    CHECK_THROWS_AS(eliminate_negated_jankov(jankov_judgment(Logic::h()), worked_term()), std::invalid_argument);
    Judgment positive = j;
    positive.goal = {F("A(eps x. A(x))")};
    CHECK_THROWS_AS(eliminate_negated_jankov(positive, worked_term()), std::invalid_argument);
}

TEST_CASE("drivers reject logics they cannot handle") {
    CHECK_THROWS_AS(run_elimination(worked_judgment(Logic::lc())), std::invalid_argument);
    CHECK_THROWS_AS(run_weak_lin(jankov_judgment()), std::invalid_argument);
    CHECK_THROWS_AS(partition(forking_judgment(), T("eps q. R(q)")), std::invalid_argument);
    Judgment mislabeled = parse_judgment("logic: classical\ncritical: P(tau y. R(y)) -> P(c)\ngoal: R\n");
    CHECK_THROWS_AS(run_elimination(mislabeled), std::invalid_argument);
}

TEST_CASE("turning off deduplication keeps every substituted disjunct") {
    ElimOptions opt;
    opt.dedup = false;
    EliminationTrace raw = run_elimination(ground_witness_judgment(3), opt);
    CHECK(raw.steps.front().after.goal.size() == raw.steps.front().raw_disjuncts);
    EliminationTrace dd = run_elimination(ground_witness_judgment(3));
    CHECK(dd.result_disjuncts.size() <= raw.steps.front().raw_disjuncts);
}

TEST_CASE("random classical judgments") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        Judgment j = random_classical_judgment(rng);
        INFO(format_judgment(j));
        EliminationTrace tr = run_elimination(j, verifying());
        REQUIRE(tr.ok());
        check_steps_verified(tr);
        check_instances(tr);
        check_measures_decrease(tr);
        CHECK(binder_free(tr.result));
        CHECK(ground_tautology(tr));
    }
}

TEST_CASE("combining and strengthening judgments") {
    Judgment j1 = parse_judgment("logic: lc\npremise: A\npremise: C0\ngoal: C\n");
    Judgment j2 = parse_judgment("logic: lc\npremise: B\ngoal: D\n");
    Judgment c = combine_disjunction(j1, F("A"), j2, F("B"));
    CHECK(std::count(c.residues.begin(), c.residues.end(), F("A | B")) == 1);
    CHECK(c.goal == std::vector<Formula>{F("C"), F("D")});
    CHECK_THROWS_AS(combine_disjunction(j1, F("A"), parse_judgment("logic: h\ngoal: D\n"), F("B")),
                    std::invalid_argument);

    Judgment s = strengthen_premise(j1, F("A"), F("A & E"), true);
    CHECK(std::count(s.residues.begin(), s.residues.end(), F("A")) == 0);
    CHECK(std::count(s.residues.begin(), s.residues.end(), F("A & E")) == 1);
    CHECK_THROWS_AS(strengthen_premise(j1, F("A"), F("E"), true), std::invalid_argument);
    CHECK_THROWS_AS(strengthen_premise(j1, F("Z"), F("Z & E")), std::invalid_argument);
}

TEST_CASE("chains read off Herbrand disjunctions") {
    CHECK(bm_extract(F("P(f(c)) -> P(c)")) == 1);
    CHECK(bm_extract(F("(P(f(c)) -> P(c)) | (P(f(f(c))) -> P(f(c)))")) == 2);
    CHECK(bm_extract(F("(P(f(c)) -> P(c)) | (P(f(d)) -> P(d))")) == 1);
    CHECK(bm_extract(F("(P(f(c)) -> P(c)) | (P(f(f(f(d)))) -> P(f(f(d))))")) == 3);
    CHECK(bm_chain(F("(P(f(c)) -> P(c)) | (P(f(f(c))) -> P(f(c)))")) == schema(SchemaKind::Bm, {F("A3"), F("A2"), F("A1")}, 2));
    CHECK_THROWS_AS(bm_extract(F("P(c) -> P(f(c))")), std::invalid_argument);
}

TEST_CASE("the three forms of the theorem convert into each other") {
    // form 2 to form 1: A_i -> X |- X  becomes  |- A_1 | ... | A_k
    Judgment two = parse_judgment(
        "logic: lc\ninstance: R(a) | R(b) & S\npremise: R(a) -> X\npremise: R(b) & S -> X\ngoal: X\n");
    REQUIRE(verify_judgment(two).ok);
    Judgment one = theorem_form_convert(FormDirection::TwoToOne, two);
    CHECK(one.goal == std::vector<Formula>{F("R(a)"), F("R(b) & S")});
    CHECK(verify_judgment(one).ok);
    CHECK_THROWS_AS(theorem_form_convert(FormDirection::TwoToOne, parse_judgment("logic: lc\npremise: X -> X\ngoal: X\n")),
                    std::invalid_argument);

    // form 1 to form 3: premises B with critical formulas become B_i |- C_i
    Judgment three = forking_judgment();
    three.residues = {F("S(eps z. (P(f(z)) -> P(z)))")};
    three.goal = {Formula::conj(three.goal.front(), three.residues.front())};
    Judgment out = theorem_form_convert(FormDirection::OneToThree, three);
    CHECK(out.criticals.empty());
    CHECK(binder_free(big_and(out.residues)));
    CHECK(binder_free(out.goal_formula()));
    CHECK(verify_judgment(out).ok);

    // nothing to do without epsilon/tau terms
    Judgment plain = parse_judgment("logic: classical\npremise: A\ngoal: A\n");
    CHECK(theorem_form_convert(FormDirection::OneToThree, plain).goal == plain.goal);
    CHECK(theorem_form_convert(FormDirection::TwoToOne, parse_judgment("logic: lc\ngoal: X\n")).goal ==
          std::vector<Formula>{F("X")});
}
