#pragma once

#include <optional>

#include "json.hpp"
#include "nscm/model.hpp"

namespace nscm {

// Evidence for a dependence verdict. `state` is present for full-setting
// notions; `counterfactual_solution` is a solution achieving Y != y and is
// present for diamond-form notions.
struct DependenceWitness {
    Intervention base_intervention;
    Assignment context;
    std::optional<Assignment> state;
    VarId from_var = -1;
    VarId to_var = -1;
    ValueId x = -1;
    ValueId x_alt = -1;
    ValueId y = -1;
    std::optional<Assignment> counterfactual_solution;
};

struct DependenceResult {
    bool holds = false;
    std::optional<DependenceWitness> witness;
};

struct DependenceOptions {
    // When set, the alternative value x' must differ from x. The definitions
    // only ask for some x' in the range, which under nondeterminism can be x
    // itself; that permissive reading is the default.
    bool require_distinct = false;
};

// Y=y depends* on X=x at (m, u): some solution realizes X=x and Y=y, and for
// some x' every counterfactual under X<-x' certainly avoids Y=y.
DependenceResult depends_star(const Nscm& m, const Assignment& context, VarId x_var, ValueId x,
                              VarId y_var, ValueId y, const DependenceOptions& opts = {});

// Y=y counterfactually depends* on X=x at (m, w): w realizes X=x and Y=y, and
// for some x' it is possible that Y != y under X<-x'.
DependenceResult cf_depends_star(const Nscm& m, const World& w, VarId x_var, ValueId x,
                                 VarId y_var, ValueId y, const DependenceOptions& opts = {});

// The interventional variants evaluate the same conditions in the intervened
// model M_{Z<-z}. X in Z is a contract violation; so is Y in Z, where the
// certainty condition would be vacuously false.
DependenceResult depends(const Nscm& m, const Intervention& z_int, const Assignment& context,
                         VarId x_var, ValueId x, VarId y_var, ValueId y,
                         const DependenceOptions& opts = {});

DependenceResult cf_depends(const Nscm& m, const Intervention& z_int, const World& w, VarId x_var,
                            ValueId x, VarId y_var, ValueId y, const DependenceOptions& opts = {});

// Y depends on X: counterfactual dependence holds in some intervened setting
// (Z <- z, u, w) with Z ranging over subsets of V \ {X, Y}. The search runs in
// canonical order (|Z| ascending then lexicographic, then contexts, then
// solutions, then x' in range order) and reports the first witness.
DependenceResult depends_on(const Nscm& m, VarId x_var, VarId y_var,
                            const DependenceOptions& opts = {});

// Y directly depends on X: the same with Z fixed to all of V \ {X, Y}.
DependenceResult directly_depends(const Nscm& m, VarId x_var, VarId y_var,
                                  const DependenceOptions& opts = {});

// Strict-ancestor queries on the model graph.
std::vector<VarId> ancestors(const Dag& g, VarId v);
bool is_ancestor(const Dag& g, VarId a, VarId b);

nlohmann::ordered_json witness_to_json(const Signature& sig, const DependenceWitness& w);

}  // namespace nscm
