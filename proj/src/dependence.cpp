#include "nscm/dependence.hpp"

#include <algorithm>

#include "nscm/json_io.hpp"

namespace nscm {

namespace {

void check_pair(const Nscm& m, VarId x_var, VarId y_var) {
    const Signature& sig = *m.sig;
    for (VarId v : {x_var, y_var}) {
        if (v < 0 || v >= sig.var_count()) throw SemanticError("unknown variable id");
        if (sig.is_exogenous(v))
            throw SemanticError("dependence is defined between endogenous variables; " +
                                sig.name_of(v) + " is exogenous");
    }
    if (x_var == y_var) throw SemanticError("dependence requires two distinct variables");
}

void check_value(const Nscm& m, VarId var, ValueId val) {
    if (val < 0 || val >= m.sig->range_size(var))
        throw SemanticError("value out of range for " + m.sig->name_of(var));
}

// Is w a solution of M_{z}?
bool solution_under(const Nscm& m, const Intervention& z, const World& w) {
    detail::check_context(m, w.context);
    detail::check_state(m, w.state);
    std::vector<ValueId> pv;
    for (int i = 0; i < m.sig->endo_count(); ++i) {
        const VarId v = m.sig->endo_var(i);
        const ValueId pinned = z.value_for(v);
        if (pinned >= 0) {
            if (w.state[i] != pinned) return false;
            continue;
        }
        const MultiFunction& f = m.equations[i];
        pv.resize(f.parents.size());
        for (std::size_t k = 0; k < f.parents.size(); ++k)
            pv[k] = m.world_value(w.context, w.state, f.parents[k]);
        if (!f.rows[f.row_index(pv)].contains(w.state[i])) return false;
    }
    return true;
}

// CD2 certainty form: every solution of ((M_z)^w)_{X<-x'} satisfies Y != y.
bool certainly_avoids(const Nscm& m, const Intervention& z, const World& w, VarId x_var,
                      ValueId x_alt, int y_endo, ValueId y) {
    Intervention post;
    post.assignments = {{x_var, x_alt}};
    SolveMods mods;
    mods.pre = &z;
    mods.refine_at = &w;
    mods.post = &post;
    return for_each_solution(m, w.context, mods,
                             [&](const Assignment& st) { return st[y_endo] != y; });
}

// CD2 possibility form: the lexicographically least solution of
// ((M_z)^w)_{X<-x'} with Y != y, if any.
std::optional<Assignment> possibly_avoids(const Nscm& m, const Intervention& z, const World& w,
                                          VarId x_var, ValueId x_alt, int y_endo, ValueId y) {
    Intervention post;
    post.assignments = {{x_var, x_alt}};
    SolveMods mods;
    mods.pre = &z;
    mods.refine_at = &w;
    mods.post = &post;
    std::optional<Assignment> best;
    for_each_solution(m, w.context, mods, [&](const Assignment& st) {
        if (st[y_endo] != y && (!best || st < *best)) best = st;
        return true;
    });
    return best;
}

DependenceResult depends_core(const Nscm& m, const Intervention& z, const Assignment& context,
                              VarId x_var, ValueId x, VarId y_var, ValueId y,
                              const DependenceOptions& opts) {
    const int x_endo = m.sig->endo_index(x_var);
    const int y_endo = m.sig->endo_index(y_var);

    // CD1: possibly X=x and Y=y.
    SolveMods base;
    base.pre = &z;
    bool cd1 = false;
    std::vector<Assignment> sols;
    for_each_solution(m, context, base, [&](const Assignment& st) {
        sols.push_back(st);
        if (st[x_endo] == x && st[y_endo] == y) cd1 = true;
        return true;
    });
    if (!cd1) return {};

    // CD2: for some x', certainly Y != y under X <- x', at every solution.
    for (ValueId x_alt = 0; x_alt < m.sig->range_size(x_var); ++x_alt) {
        if (opts.require_distinct && x_alt == x) continue;
        bool all = true;
        for (const auto& st : sols) {
            if (!certainly_avoids(m, z, World{context, st}, x_var, x_alt, y_endo, y)) {
                all = false;
                break;
            }
        }
        if (all) {
            DependenceWitness wit;
            wit.base_intervention = z;
            wit.context = context;
            wit.from_var = x_var;
            wit.to_var = y_var;
            wit.x = x;
            wit.x_alt = x_alt;
            wit.y = y;
            return {true, wit};
        }
    }
    return {};
}

DependenceResult cf_depends_core(const Nscm& m, const Intervention& z, const World& w, VarId x_var,
                                 ValueId x, VarId y_var, ValueId y, const DependenceOptions& opts) {
    const int x_endo = m.sig->endo_index(x_var);
    const int y_endo = m.sig->endo_index(y_var);
    if (w.state[x_endo] != x || w.state[y_endo] != y) return {};  // CD1 fails

    for (ValueId x_alt = 0; x_alt < m.sig->range_size(x_var); ++x_alt) {
        if (opts.require_distinct && x_alt == x) continue;
        if (auto cf = possibly_avoids(m, z, w, x_var, x_alt, y_endo, y)) {
            DependenceWitness wit;
            wit.base_intervention = z;
            wit.context = w.context;
            wit.state = w.state;
            wit.from_var = x_var;
            wit.to_var = y_var;
            wit.x = x;
            wit.x_alt = x_alt;
            wit.y = y;
            wit.counterfactual_solution = std::move(cf);
            return {true, wit};
        }
    }
    return {};
}

void check_base_intervention(const Nscm& m, const Intervention& z, VarId x_var, VarId y_var) {
    detail::check_intervention(m, z);
    if (z.value_for(x_var) >= 0)
        throw SemanticError("the dependence candidate " + m.sig->name_of(x_var) +
                            " may not be intervened on");
    if (z.value_for(y_var) >= 0)
        throw SemanticError("the dependent variable " + m.sig->name_of(y_var) +
                            " may not be intervened on; the certainty condition would be "
                            "vacuously false");
}

// Existential search shared by depends_on and directly_depends. `z_subsets`
// lists the candidate intervention targets in canonical order.
DependenceResult search_dependence(const Nscm& m, VarId x_var, VarId y_var,
                                   const std::vector<std::vector<VarId>>& z_subsets,
                                   const DependenceOptions& opts) {
    const Signature& sig = *m.sig;
    const int x_endo = sig.endo_index(x_var);
    const int y_endo = sig.endo_index(y_var);
    const auto contexts = all_contexts(sig);

    for (const auto& zvars : z_subsets) {
        Intervention z;
        z.assignments.resize(zvars.size());
        for (std::size_t i = 0; i < zvars.size(); ++i) z.assignments[i] = {zvars[i], 0};
        while (true) {  // odometer over z values, lexicographic
            for (const auto& u : contexts) {
                SolveMods base;
                base.pre = &z;
                std::vector<Assignment> sols;
                for_each_solution(m, u, base, [&](const Assignment& st) {
                    sols.push_back(st);
                    return true;
                });
                std::sort(sols.begin(), sols.end());
                for (const auto& st : sols) {
                    auto r = cf_depends_core(m, z, World{u, st}, x_var, st[x_endo], y_var,
                                             st[y_endo], opts);
                    if (r.holds) return r;
                }
            }
            int pos = static_cast<int>(z.assignments.size()) - 1;
            while (pos >= 0) {
                if (++z.assignments[pos].second < sig.range_size(z.assignments[pos].first)) break;
                z.assignments[pos].second = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return {};
}

}  // namespace

DependenceResult depends_star(const Nscm& m, const Assignment& context, VarId x_var, ValueId x,
                              VarId y_var, ValueId y, const DependenceOptions& opts) {
    check_pair(m, x_var, y_var);
    check_value(m, x_var, x);
    check_value(m, y_var, y);
    detail::check_context(m, context);
    return depends_core(m, Intervention{}, context, x_var, x, y_var, y, opts);
}

DependenceResult cf_depends_star(const Nscm& m, const World& w, VarId x_var, ValueId x,
                                 VarId y_var, ValueId y, const DependenceOptions& opts) {
    check_pair(m, x_var, y_var);
    check_value(m, x_var, x);
    check_value(m, y_var, y);
    if (!is_solution(m, w))
        throw SemanticError("counterfactual dependence requires a solution world");
    return cf_depends_core(m, Intervention{}, w, x_var, x, y_var, y, opts);
}

DependenceResult depends(const Nscm& m, const Intervention& z_int, const Assignment& context,
                         VarId x_var, ValueId x, VarId y_var, ValueId y,
                         const DependenceOptions& opts) {
    check_pair(m, x_var, y_var);
    check_value(m, x_var, x);
    check_value(m, y_var, y);
    check_base_intervention(m, z_int, x_var, y_var);
    detail::check_context(m, context);
    return depends_core(m, z_int, context, x_var, x, y_var, y, opts);
}

DependenceResult cf_depends(const Nscm& m, const Intervention& z_int, const World& w, VarId x_var,
                            ValueId x, VarId y_var, ValueId y, const DependenceOptions& opts) {
    check_pair(m, x_var, y_var);
    check_value(m, x_var, x);
    check_value(m, y_var, y);
    check_base_intervention(m, z_int, x_var, y_var);
    if (!solution_under(m, z_int, w))
        throw SemanticError("the world is not a solution of the intervened model");
    return cf_depends_core(m, z_int, w, x_var, x, y_var, y, opts);
}

namespace {

// Subsets of the endogenous variables other than X and Y, ordered by size
// then lexicographically.
std::vector<std::vector<VarId>> candidate_subsets(const Signature& sig, VarId x_var, VarId y_var,
                                                  bool full_only) {
    std::vector<VarId> pool;
    for (int i = 0; i < sig.endo_count(); ++i) {
        VarId v = sig.endo_var(i);
        if (v != x_var && v != y_var) pool.push_back(v);
    }
    std::vector<std::vector<VarId>> out;
    if (full_only) {
        out.push_back(pool);
        return out;
    }
    const int n = static_cast<int>(pool.size());
    for (int k = 0; k <= n; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<VarId> subset(k);
            for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
            out.push_back(std::move(subset));
            if (k == 0) break;
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == n - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return out;
}

}  // namespace

DependenceResult depends_on(const Nscm& m, VarId x_var, VarId y_var,
                            const DependenceOptions& opts) {
    check_pair(m, x_var, y_var);
    return search_dependence(m, x_var, y_var, candidate_subsets(*m.sig, x_var, y_var, false),
                             opts);
}

DependenceResult directly_depends(const Nscm& m, VarId x_var, VarId y_var,
                                  const DependenceOptions& opts) {
    check_pair(m, x_var, y_var);
    return search_dependence(m, x_var, y_var, candidate_subsets(*m.sig, x_var, y_var, true),
                             opts);
}

std::vector<VarId> ancestors(const Dag& g, VarId v) {
    if (v < 0 || v >= g.var_count()) throw SemanticError("unknown variable id");
    return g.ancestors_of(v);
}

bool is_ancestor(const Dag& g, VarId a, VarId b) {
    if (a < 0 || a >= g.var_count() || b < 0 || b >= g.var_count())
        throw SemanticError("unknown variable id");
    return g.is_ancestor(a, b);
}

nlohmann::ordered_json witness_to_json(const Signature& sig, const DependenceWitness& w) {
    nlohmann::ordered_json j;
    j["base_intervention"] = intervention_to_json(sig, w.base_intervention);
    j["context"] = context_to_json(sig, w.context);
    if (w.state) j["state"] = state_to_json(sig, *w.state);
    j["x"] = sig.value_token(w.from_var, w.x);
    j["x_alt"] = sig.value_token(w.from_var, w.x_alt);
    j["y"] = sig.value_token(w.to_var, w.y);
    if (w.counterfactual_solution)
        j["counterfactual_solution"] = state_to_json(sig, *w.counterfactual_solution);
    return j;
}

}  // namespace nscm
