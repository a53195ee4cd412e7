#include <random>

#include "doctest.h"
#include "nscm/model.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nscm;
using namespace nscm::test;

TEST_SUITE("model") {

TEST_CASE("late preemption solves to the single narrated world") {
    Nscm m = late_preemption();
    auto sols = solutions(m, {});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0] == Assignment{1, 1, 1, 0, 1});
    CHECK(sols == oracle::brute_solutions(m, {}));
}

TEST_CASE("two treatments admits both outcomes") {
    Nscm m = two_treatments();
    auto sols = solutions(m, {});
    CHECK(sols == std::vector<Assignment>{{1, 0}, {1, 1}});
    CHECK(is_solution(m, World{{}, {1, 0}}));
    CHECK(is_solution(m, World{{}, {1, 1}}));
    CHECK_FALSE(is_solution(m, World{{}, {0, 0}}));
}

TEST_CASE("is_solution checks equation membership") {
    Nscm m = late_preemption();
    CHECK(is_solution(m, lp_actual_world()));
    CHECK_FALSE(is_solution(m, World{{}, {0, 0, 0, 0, 0}}));
    CHECK_THROWS_AS(is_solution(m, World{{}, {0, 0, 0, 0, 7}}), SemanticError);
    CHECK_THROWS_AS(is_solution(m, World{{}, {0, 0}}), SemanticError);
}

TEST_CASE("intervening reroutes the story") {
    Nscm m = late_preemption();
    Nscm suzy_holds = intervene(m, do_(m, {{"ST", "0"}}));
    auto sols = solutions(suzy_holds, {});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0] == Assignment{0, 1, 0, 1, 1});  // Billy's rock shatters the bottle

    CHECK(intervene(m, {}) == m);

    SUBCASE("pinning every endogenous variable leaves exactly that state") {
        Intervention all = do_(m, {{"ST", "0"}, {"BT", "0"}, {"SH", "1"}, {"BH", "1"}, {"BS", "0"}});
        auto pinned = solutions(intervene(m, all), {});
        REQUIRE(pinned.size() == 1);
        CHECK(pinned[0] == Assignment{0, 0, 1, 1, 0});
    }

    SUBCASE("bad interventions are rejected") {
        CHECK_THROWS_AS(intervene(m, Intervention{{{99, 0}}}), SemanticError);
        CHECK_THROWS_AS(intervene(m, Intervention{{{var(m, "ST"), 5}}}), SemanticError);
        Nscm chain = signed_chain();
        CHECK_THROWS_AS(intervene(chain, Intervention{{{0, 0}}}), SemanticError);  // exogenous
    }
}

TEST_CASE("refinement pins only the actual rows") {
    Nscm m = two_treatments();
    World w{{}, {1, 0}};
    Nscm refined = refine(m, w);
    const MultiFunction& fy = refined.equations[1];
    CHECK(fy.rows[fy.row_index({1})] == ValueSet::single(0));
    CHECK(fy.rows[fy.row_index({0})] == ValueSet::from_bits(0b11));

    SUBCASE("a deterministic model refines to itself") {
        Nscm lp = late_preemption();
        CHECK(refine(lp, lp_actual_world()) == lp);
    }

    SUBCASE("refinement at a non-solution is rejected") {
        CHECK_THROWS_AS(refine(m, World{{}, {0, 0}}), SemanticError);
    }

    SUBCASE("refinement and intervention do not commute") {
        Nscm refine_then_do = intervene(refined, do_(m, {{"X", "0"}}));
        CHECK(solutions(refine_then_do, {}) == std::vector<Assignment>{{0, 0}, {0, 1}});
        Nscm do_then_refine = refine(intervene(m, do_(m, {{"X", "0"}})), World{{}, {0, 0}});
        CHECK(solutions(do_then_refine, {}) == std::vector<Assignment>{{0, 0}});
    }
}

TEST_CASE("validation accepts the bundled models and lints dead edges") {
    for (const Nscm& m : {late_preemption(), two_treatments(), inaccurate_thrower(), signed_chain()}) {
        auto diags = validate_model(m);
        CHECK_FALSE(has_errors(diags));
        CHECK_FALSE(has_warnings(diags));
    }

    SUBCASE("constant singleton equation flags its edge") {
        auto diags = validate_model(irrelevant_edge_model());
        CHECK_FALSE(has_errors(diags));
        REQUIRE(has_warnings(diags));
        CHECK(diags[0].message.find("A -> B") != std::string::npos);
    }

    SUBCASE("multi-valued equations are exempt from the lint") {
        // f_Y is the constant set {0,1}; the edge X -> Y stays unflagged.
        auto diags = validate_model(two_treatments());
        CHECK_FALSE(has_warnings(diags));
    }

    SUBCASE("structural defects are reported") {
        Nscm m = two_treatments();
        m.equations[1].rows[0] = ValueSet{};  // empty output
        CHECK(has_errors(validate_model(m)));

        Nscm m2 = two_treatments();
        m2.graph.parents[1].clear();  // equation parents no longer match the graph
        CHECK(has_errors(validate_model(m2)));

        Nscm m3 = two_treatments();
        m3.equations.pop_back();
        CHECK(has_errors(validate_model(m3)));
    }
}

TEST_CASE("ancestor queries") {
    Nscm m = late_preemption();
    const Dag& g = m.graph;
    CHECK(g.ancestors_of(var(m, "BS")) ==
          std::vector<VarId>{var(m, "ST"), var(m, "BT"), var(m, "SH"), var(m, "BH")});
    CHECK(g.is_ancestor(var(m, "ST"), var(m, "BS")));
    CHECK_FALSE(g.is_ancestor(var(m, "BS"), var(m, "ST")));
    CHECK_FALSE(g.is_ancestor(var(m, "BS"), var(m, "BS")));
    CHECK(coin().graph.ancestors_of(0).empty());
}

TEST_CASE("contexts enumerate lexicographically") {
    Nscm m = signed_chain();
    CHECK(all_contexts(*m.sig) == std::vector<Assignment>{{0}, {1}});
    CHECK(all_contexts(*late_preemption().sig) == std::vector<Assignment>{{}});
}

TEST_CASE("random models: solver equals brute force and respects the laws") {
    std::mt19937 rng(20250801);
    for (int trial = 0; trial < 150; ++trial) {
        Nscm m = random_model(rng);
        REQUIRE_FALSE(has_errors(validate_model(m)));
        for (const auto& u : all_contexts(*m.sig)) {
            auto sols = solutions(m, u);
            CHECK_FALSE(sols.empty());
            CHECK(sols == oracle::brute_solutions(m, u));
            if (m.is_deterministic()) CHECK(sols.size() == 1);

            // Effectiveness: intervened variables take their values.
            Intervention iv = random_intervention(rng, *m.sig, endo_vars(*m.sig));
            Nscm mi = intervene(m, iv);
            for (const auto& st : solutions(mi, u))
                for (const auto& [v, val] : iv.assignments)
                    CHECK(st[m.sig->endo_index(v)] == val);

            // Refinement keeps the world solvable and can only narrow.
            if (!sols.empty()) {
                World w{u, sols[trial % sols.size()]};
                Nscm refined = refine(m, w);
                CHECK(is_solution(refined, w));
                auto refined_sols = solutions(refined, u);
                CHECK(std::includes(sols.begin(), sols.end(), refined_sols.begin(),
                                    refined_sols.end()));
            }
        }
    }
}

}  // TEST_SUITE
