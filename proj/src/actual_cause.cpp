#include "nscm/actual_cause.hpp"

#include "nscm/json_io.hpp"

namespace nscm {

namespace {

void check_query(const CauseQuery& q) {
    const Signature& sig = *q.model.sig;
    for (VarId v : {q.cause_var, q.effect_var}) {
        if (v < 0 || v >= sig.var_count()) throw SemanticError("unknown variable id");
        if (sig.is_exogenous(v))
            throw SemanticError("cause and effect must be endogenous; " + sig.name_of(v) +
                                " is exogenous");
    }
    if (q.cause_var == q.effect_var)
        throw SemanticError("cause and effect must be distinct variables");
    if (q.cause_val < 0 || q.cause_val >= sig.range_size(q.cause_var))
        throw SemanticError("cause value out of range");
    if (q.effect_val < 0 || q.effect_val >= sig.range_size(q.effect_var))
        throw SemanticError("effect value out of range");
    if (!is_solution(q.model, q.world))
        throw SemanticError("the world is not a solution of the model");
}

}  // namespace

CauseResult actual_cause(const CauseQuery& q, const CauseOptions& opts) {
    check_query(q);
    const Signature& sig = *q.model.sig;
    CauseResult out;
    // CD1 is inherited by every refinement, so a world that does not realize
    // the cause and effect values settles the query.
    if (q.world.state[sig.endo_index(q.cause_var)] != q.cause_val ||
        q.world.state[sig.endo_index(q.effect_var)] != q.effect_val)
        return out;

    DependenceOptions dep_opts;
    dep_opts.require_distinct = opts.require_distinct;
    for (const auto& gs : enumerate_graph_simplifications(q.model.graph)) {
        if (opts.prune && !gs.result_graph.is_ancestor(q.cause_var, q.effect_var)) continue;
        Nscm simplified = structural_simplify(q.model, gs);
        if (!is_solution(simplified, q.world)) continue;
        if (!is_setting_simplification(q.model, simplified, q.world)) continue;
        auto dep = cf_depends_star(simplified, q.world, q.cause_var, q.cause_val, q.effect_var,
                                   q.effect_val, dep_opts);
        if (!dep.holds) continue;
        CauseWitness w;
        w.removed_edges = gs.removed_edges;
        w.simplified_model = std::move(simplified);
        w.x_alt = dep.witness->x_alt;
        w.counterfactual_solution = *dep.witness->counterfactual_solution;
        out.witnesses.push_back(std::move(w));
    }
    out.is_cause = !out.witnesses.empty();
    return out;
}

std::vector<std::pair<std::vector<Edge>, Nscm>> list_setting_simplifications(const Nscm& m,
                                                                             const World& w) {
    if (!is_solution(m, w)) throw SemanticError("the world is not a solution of the model");
    std::vector<std::pair<std::vector<Edge>, Nscm>> out;
    for (const auto& gs : enumerate_graph_simplifications(m.graph)) {
        Nscm simplified = structural_simplify(m, gs);
        if (!is_solution(simplified, w)) continue;
        if (!is_setting_simplification(m, simplified, w)) continue;
        out.emplace_back(gs.removed_edges, std::move(simplified));
    }
    return out;
}

CauseReport explain(const CauseQuery& q, const CauseOptions& opts) {
    check_query(q);
    CauseReport report;
    report.cause_var = q.cause_var;
    report.cause_val = q.cause_val;
    report.effect_var = q.effect_var;
    report.effect_val = q.effect_val;
    report.result = actual_cause(q, opts);
    const Signature& sig = *q.model.sig;
    if (q.world.state[sig.endo_index(q.cause_var)] == q.cause_val &&
        q.world.state[sig.endo_index(q.effect_var)] == q.effect_val) {
        DependenceOptions dep_opts;
        dep_opts.require_distinct = opts.require_distinct;
        auto plain = cf_depends_star(q.model, q.world, q.cause_var, q.cause_val, q.effect_var,
                                     q.effect_val, dep_opts);
        report.plain_dependence = plain.holds;
        report.plain_witness = plain.witness;
    }
    return report;
}

nlohmann::ordered_json cause_report_to_json(const Signature& sig, const CauseReport& report,
                                            bool include_models) {
    using Json = nlohmann::ordered_json;
    Json witnesses = Json::array();
    for (const auto& w : report.result.witnesses) {
        Json wj;
        Json removed = Json::array();
        for (const auto& [p, c] : w.removed_edges)
            removed.push_back(Json::array({sig.name_of(p), sig.name_of(c)}));
        wj["removed_edges"] = removed;
        wj["x_alt"] = sig.value_token(report.cause_var, w.x_alt);
        wj["counterfactual_solution"] = state_to_json(sig, w.counterfactual_solution);
        if (include_models) wj["simplified_model"] = model_to_json(w.simplified_model);
        witnesses.push_back(std::move(wj));
    }
    return Json{{"verdict", report.result.is_cause},
                {"plain_dependence", report.plain_dependence},
                {"witnesses", witnesses}};
}

}  // namespace nscm
