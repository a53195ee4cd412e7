#include <random>

#include "doctest.h"
#include "nscm/actual_cause.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nscm;
using namespace nscm::test;

namespace {

CauseQuery query(const Nscm& m, const World& w, const std::string& cause_name,
                 const std::string& cause_tok, const std::string& effect_name,
                 const std::string& effect_tok) {
    CauseQuery q;
    q.model = m;
    q.world = w;
    q.cause_var = var(m, cause_name);
    q.cause_val = val(m, cause_name, cause_tok);
    q.effect_var = var(m, effect_name);
    q.effect_val = val(m, effect_name, effect_tok);
    return q;
}

}  // namespace

TEST_SUITE("actual_cause") {

TEST_CASE("late preemption: the thrower whose rock hit is the cause") {
    Nscm lp = late_preemption();
    const World w = lp_actual_world();

    auto suzy = actual_cause(query(lp, w, "ST", "1", "BS", "1"));
    REQUIRE(suzy.is_cause);
    bool has_bh_bs_removal = false;
    for (const auto& wit : suzy.witnesses) {
        if (wit.removed_edges == std::vector<Edge>{{var(lp, "BH"), var(lp, "BS")}}) {
            has_bh_bs_removal = true;
            CHECK(wit.x_alt == 0);
            CHECK(wit.counterfactual_solution[lp.sig->endo_index(var(lp, "BS"))] == 0);
        }
    }
    CHECK(has_bh_bs_removal);

    auto billy = actual_cause(query(lp, w, "BT", "1", "BS", "1"));
    CHECK_FALSE(billy.is_cause);
    CHECK(billy.witnesses.empty());
}

TEST_CASE("the inaccurate-thrower variant has no spurious cause") {
    Nscm m = inaccurate_thrower();
    auto r = actual_cause(query(m, accuracy_actual_world(), "ST", "0", "BS", "1"));
    CHECK_FALSE(r.is_cause);

    // Billy's throw is the actual cause there.
    auto billy = actual_cause(query(m, accuracy_actual_world(), "BT", "1", "BS", "1"));
    CHECK(billy.is_cause);
}

TEST_CASE("setting-simplification census") {
    Nscm lp = late_preemption();
    auto census = list_setting_simplifications(lp, lp_actual_world());
    std::vector<std::vector<Edge>> removals;
    for (const auto& [removed, model] : census) removals.push_back(removed);
    const std::vector<std::vector<Edge>> expected = {
        {},
        {{var(lp, "BT"), var(lp, "BH")}},
        {{var(lp, "BH"), var(lp, "BS")}},
        {{var(lp, "BT"), var(lp, "BH")}, {var(lp, "BH"), var(lp, "BS")}},
    };
    CHECK(removals == expected);

    SUBCASE("two treatments admits only the trivial one at (1, 0)") {
        Nscm ex2 = two_treatments();
        auto only = list_setting_simplifications(ex2, World{{}, {1, 0}});
        REQUIRE(only.size() == 1);
        CHECK(only[0].first.empty());
    }

    SUBCASE("an edgeless model admits only the trivial one") {
        auto only = list_setting_simplifications(coin(), World{{}, {0}});
        REQUIRE(only.size() == 1);
        CHECK(only[0].first.empty());
    }
}

TEST_CASE("query preconditions") {
    Nscm lp = late_preemption();
    CHECK_THROWS_AS(actual_cause(query(lp, lp_actual_world(), "BS", "1", "BS", "1")),
                    SemanticError);
    CHECK_THROWS_AS(actual_cause(query(lp, World{{}, {0, 0, 0, 0, 0}}, "ST", "0", "BS", "0")),
                    SemanticError);
    // A world that does not realize the queried values is a trivial no.
    auto r = actual_cause(query(lp, lp_actual_world(), "ST", "0", "BS", "1"));
    CHECK_FALSE(r.is_cause);
}

TEST_CASE("a cause variable with a singleton range is never a cause") {
    Nscm m = model_from_json(Json::parse(R"({
      "exogenous": [],
      "endogenous": [
        {"name": "A", "range": ["0"], "parents": [], "otherwise": ["0"]},
        {"name": "B", "range": ["0", "1"], "parents": ["A"], "otherwise": ["0", "1"]}
      ]
    })"));
    CauseQuery q;
    q.model = m;
    q.world = World{{}, {0, 1}};
    q.cause_var = var(m, "A");
    q.cause_val = 0;
    q.effect_var = var(m, "B");
    q.effect_val = 1;
    CHECK_FALSE(actual_cause(q).is_cause);
    CauseOptions strict;
    strict.require_distinct = true;
    CHECK_FALSE(actual_cause(q, strict).is_cause);
}

TEST_CASE("explain pairs the verdict with plain dependence") {
    Nscm lp = late_preemption();
    auto report = explain(query(lp, lp_actual_world(), "ST", "1", "BS", "1"));
    CHECK(report.result.is_cause);
    CHECK_FALSE(report.plain_dependence);  // preemption hides the dependence

    auto billy = explain(query(lp, lp_actual_world(), "BT", "1", "BS", "1"));
    CHECK_FALSE(billy.result.is_cause);
    CHECK(billy.result.witnesses.empty());

    Nscm ex2 = two_treatments();
    auto direct = explain(query(ex2, World{{}, {1, 0}}, "X", "1", "Y", "0"));
    CHECK(direct.result.is_cause);
    CHECK(direct.plain_dependence);
}

TEST_CASE("witness ordering and the empty removal") {
    std::mt19937 rng(4001);
    GenOptions opt;
    opt.max_endo = 3;
    for (int i = 0; i < 40; ++i) {
        Nscm m = random_model(rng, opt);
        for (const auto& u : all_contexts(*m.sig)) {
            auto sols = solutions(m, u);
            const World w{u, sols[pick(rng, 0, static_cast<int>(sols.size()) - 1)]};
            const int a = pick(rng, 0, m.sig->endo_count() - 1);
            int b = pick(rng, 0, m.sig->endo_count() - 2);
            if (b >= a) ++b;
            const VarId va = m.sig->endo_var(a), vb = m.sig->endo_var(b);
            CauseQuery q;
            q.model = m;
            q.world = w;
            q.cause_var = va;
            q.cause_val = w.state[a];
            q.effect_var = vb;
            q.effect_val = w.state[b];
            auto r = actual_cause(q);
            const bool plain = cf_depends_star(m, w, va, q.cause_val, vb, q.effect_val).holds;

            // Plain counterfactual dependence implies causation via the empty
            // removal, which then leads the witness list.
            if (plain) {
                REQUIRE(r.is_cause);
                REQUIRE_FALSE(r.witnesses.empty());
                CHECK(r.witnesses.front().removed_edges.empty());
            } else if (!r.witnesses.empty()) {
                CHECK_FALSE(r.witnesses.front().removed_edges.empty());
            }
            for (std::size_t k = 1; k < r.witnesses.size(); ++k)
                CHECK(r.witnesses[k - 1].removed_edges.size() <=
                      r.witnesses[k].removed_edges.size());

            // Causation implies ancestry.
            if (r.is_cause) CHECK(is_ancestor(m.graph, va, vb));

            // The ancestor prune is invisible in the verdicts.
            CauseOptions no_prune;
            no_prune.prune = false;
            auto r2 = actual_cause(q, no_prune);
            CHECK(r.is_cause == r2.is_cause);
            CHECK(r.witnesses.size() == r2.witnesses.size());
        }
    }
}

TEST_CASE("tiny instances agree with the all-models oracle") {
    std::mt19937 rng(4002);
    GenOptions opt;
    opt.max_exo = 1;
    opt.max_endo = 3;
    opt.min_endo = 2;
    opt.max_range = 2;
    for (int i = 0; i < 10; ++i) {
        Nscm m = random_model(rng, opt);
        const auto contexts = all_contexts(*m.sig);
        const auto& u = contexts[pick(rng, 0, static_cast<int>(contexts.size()) - 1)];
        auto sols = solutions(m, u);
        const World w{u, sols[pick(rng, 0, static_cast<int>(sols.size()) - 1)]};
        const int a = pick(rng, 0, m.sig->endo_count() - 1);
        int b = pick(rng, 0, m.sig->endo_count() - 2);
        if (b >= a) ++b;
        CauseQuery q;
        q.model = m;
        q.world = w;
        q.cause_var = m.sig->endo_var(a);
        q.cause_val = w.state[a];
        q.effect_var = m.sig->endo_var(b);
        q.effect_val = w.state[b];
        const bool expect = oracle::actual_cause_bruteforce(m, w, q.cause_var, q.cause_val,
                                                            q.effect_var, q.effect_val);
        CHECK(actual_cause(q).is_cause == expect);
    }
}

}  // TEST_SUITE
