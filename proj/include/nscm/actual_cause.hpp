#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "nscm/dependence.hpp"
#include "nscm/model.hpp"
#include "nscm/simplification.hpp"

namespace nscm {

struct CauseQuery {
    Nscm model;
    World world;
    VarId cause_var = -1;
    ValueId cause_val = -1;
    VarId effect_var = -1;
    ValueId effect_val = -1;
};

// One structural simplification witnessing actual causation: the setting
// simplification along removed_edges in which the effect counterfactually
// depends on the cause.
struct CauseWitness {
    std::vector<Edge> removed_edges;
    Nscm simplified_model;
    ValueId x_alt = -1;
    Assignment counterfactual_solution;
};

struct CauseOptions {
    // Skipping removal sets where the cause is no longer an ancestor of the
    // effect is sound (dependence implies ancestry); disable to cross-check
    // against oracles.
    bool prune = true;
    bool require_distinct = false;
};

struct CauseResult {
    bool is_cause = false;
    std::vector<CauseWitness> witnesses;  // by |removed_edges| ascending, then lexicographic
};

// X=x is an actual cause of Y=y at (m, w) iff the effect counterfactually
// depends on the cause in some setting simplification of (m, w). The world
// must be a solution; a world that does not realize X=x and Y=y yields a
// trivially false verdict.
CauseResult actual_cause(const CauseQuery& q, const CauseOptions& opts = {});

// All edge-removal sets whose structural simplification is a setting
// simplification at w, with the simplified models.
std::vector<std::pair<std::vector<Edge>, Nscm>> list_setting_simplifications(const Nscm& m,
                                                                             const World& w);

struct CauseReport {
    VarId cause_var = -1;
    ValueId cause_val = -1;
    VarId effect_var = -1;
    ValueId effect_val = -1;
    CauseResult result;
    bool plain_dependence = false;  // counterfactual dependence without simplification
    std::optional<DependenceWitness> plain_witness;
};

// actual_cause plus the unsimplified counterfactual-dependence verdict, so
// preemption cases show why simplification was needed.
CauseReport explain(const CauseQuery& q, const CauseOptions& opts = {});

nlohmann::ordered_json cause_report_to_json(const Signature& sig, const CauseReport& report,
                                            bool include_models);

}  // namespace nscm
