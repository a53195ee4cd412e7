#include "nscm/discovery.hpp"

#include <algorithm>
#include <fstream>

#include "nscm/enumerate.hpp"
#include "nscm/json_io.hpp"

namespace nscm {

PossibilitySet generate_possibilities(const Nscm& m) {
    PossibilitySet s;
    s.sig = m.sig;
    const auto contexts = all_contexts(*m.sig);
    for_each_intervention(*m.sig, [&](const Intervention& iv) {
        SolveMods mods;
        mods.pre = &iv;
        for (const auto& u : contexts) {
            std::vector<Assignment> states;
            for_each_solution(m, u, mods, [&](const Assignment& st) {
                states.push_back(st);
                return true;
            });
            std::sort(states.begin(), states.end());
            s.records.emplace(PossibilityKey{iv, u}, std::move(states));
        }
    });
    return s;
}

namespace {

const std::vector<Assignment>& record_for(const PossibilitySet& s, const Intervention& iv,
                                          const Assignment& u) {
    auto it = s.records.find(PossibilityKey{iv, u});
    if (it == s.records.end())
        throw SemanticError("possibility set does not cover every (context, intervention) pair");
    return it->second;
}

// Odometer over value tuples for a fixed variable list; fn(Intervention).
template <typename Fn>
void for_each_assignment_of(const Signature& sig, const std::vector<VarId>& vars, Fn&& fn) {
    Intervention iv;
    iv.assignments.resize(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) iv.assignments[i] = {vars[i], 0};
    while (true) {
        fn(iv);
        int pos = static_cast<int>(vars.size()) - 1;
        while (pos >= 0) {
            if (++iv.assignments[pos].second < sig.range_size(iv.assignments[pos].first)) break;
            iv.assignments[pos].second = 0;
            --pos;
        }
        if (pos < 0) return;
    }
}

Intervention extend(const Intervention& base, VarId var, ValueId val) {
    Intervention out = base;
    out.assignments.emplace_back(var, val);
    std::sort(out.assignments.begin(), out.assignments.end());
    return out;
}

// Pin every endogenous variable except Y and ask whether the set of Y-values
// the records allow varies with the pinned value of X. If X is not a parent
// of Y the pinned row of Y's equation is unchanged, so the set cannot vary;
// when it does vary, the dependence is witnessed inside S.
bool endo_edge_witnessed(const PossibilitySet& s, VarId x_var, VarId y_var) {
    const Signature& sig = *s.sig;
    const int y_endo = sig.endo_index(y_var);
    std::vector<VarId> z_vars;
    for (int i = 0; i < sig.endo_count(); ++i) {
        VarId v = sig.endo_var(i);
        if (v != x_var && v != y_var) z_vars.push_back(v);
    }
    bool found = false;
    for (const auto& u : all_contexts(sig)) {
        for_each_assignment_of(sig, z_vars, [&](const Intervention& z) {
            if (found) return;
            ValueSet first;
            for (ValueId c = 0; c < sig.range_size(x_var); ++c) {
                ValueSet reachable;
                for (const auto& st : record_for(s, extend(z, x_var, c), u))
                    reachable.insert(st[y_endo]);
                if (c == 0) {
                    first = reachable;
                } else if (!(reachable == first)) {
                    found = true;
                    return;
                }
            }
        });
        if (found) break;
    }
    return found;
}

bool exo_edge_witnessed(const PossibilitySet& s, int exo_idx, VarId child) {
    const Signature& sig = *s.sig;
    const int child_endo = sig.endo_index(child);
    std::vector<VarId> z_vars;
    for (int i = 0; i < sig.endo_count(); ++i) {
        VarId v = sig.endo_var(i);
        if (v != child) z_vars.push_back(v);
    }
    bool found = false;
    for_each_assignment_of(sig, z_vars, [&](const Intervention& z) {
        if (found) return;
        // Group contexts by the values of the other exogenous coordinates.
        for (const auto& u : all_contexts(sig)) {
            if (u[exo_idx] != 0) continue;  // canonical representative per group
            std::vector<ValueSet> per_value(sig.range_size(exo_idx));
            for (ValueId val = 0; val < sig.range_size(exo_idx); ++val) {
                Assignment u2 = u;
                u2[exo_idx] = val;
                for (const auto& st : record_for(s, z, u2)) per_value[val].insert(st[child_endo]);
            }
            for (std::size_t k = 1; k < per_value.size(); ++k)
                if (!(per_value[k] == per_value[0])) {
                    found = true;
                    return;
                }
        }
    });
    return found;
}

}  // namespace

Dag infer_gs(const PossibilitySet& s) {
    const Signature& sig = *s.sig;
    Dag g;
    g.exo_count = sig.exo_count();
    g.parents.resize(sig.endo_count());
    for (int yi = 0; yi < sig.endo_count(); ++yi) {
        const VarId y_var = sig.endo_var(yi);
        for (int xi = 0; xi < sig.exo_count(); ++xi)
            if (exo_edge_witnessed(s, xi, y_var)) g.parents[yi].push_back(xi);
        for (int xi = 0; xi < sig.endo_count(); ++xi) {
            const VarId x_var = sig.endo_var(xi);
            if (x_var == y_var) continue;
            if (endo_edge_witnessed(s, x_var, y_var)) g.parents[yi].push_back(x_var);
        }
        std::sort(g.parents[yi].begin(), g.parents[yi].end());
    }
    return g;
}

Nscm build_model(const PossibilitySet& s, const Dag& g) {
    const Signature& sig = *s.sig;
    if (g.exo_count != sig.exo_count() || g.endo_count() != sig.endo_count())
        throw SemanticError("graph is over a different node set than the possibility set");
    for (const auto& ps : g.parents)
        if (!std::is_sorted(ps.begin(), ps.end()) ||
            std::adjacent_find(ps.begin(), ps.end()) != ps.end())
            throw SemanticError("graph parent lists must be sorted and distinct");
    if (!g.is_acyclic()) throw SemanticError("graph must be acyclic");
    const auto gs_edges = infer_gs(s).edges();
    const auto g_edges = g.edges();
    if (!std::includes(g_edges.begin(), g_edges.end(), gs_edges.begin(), gs_edges.end()))
        throw SemanticError("graph must contain every edge identified by the possibility set");

    Nscm m;
    m.sig = s.sig;
    m.graph = g;
    m.equations.resize(sig.endo_count());
    const auto contexts = all_contexts(sig);
    for (int i = 0; i < sig.endo_count(); ++i) {
        MultiFunction f;
        f.child = sig.endo_var(i);
        f.parents = g.parents[i];
        for (VarId p : f.parents) f.parent_sizes.push_back(sig.range_size(p));
        long long product = 1;
        for (int sz : f.parent_sizes) product *= sz;
        f.rows.resize(static_cast<std::size_t>(product));
        for (int r = 0; r < f.row_count(); ++r) {
            const auto vals = f.row_assignment(r);
            Intervention endo_part;
            std::vector<std::pair<int, ValueId>> exo_part;  // (exo index, value)
            for (std::size_t k = 0; k < f.parents.size(); ++k) {
                if (sig.is_exogenous(f.parents[k]))
                    exo_part.emplace_back(f.parents[k], vals[k]);
                else
                    endo_part.assignments.emplace_back(f.parents[k], vals[k]);
            }
            ValueSet vs;
            for (const auto& u : contexts) {
                bool matches = true;
                for (const auto& [exo, val] : exo_part)
                    if (u[exo] != val) {
                        matches = false;
                        break;
                    }
                if (!matches) continue;
                for (const auto& st : record_for(s, endo_part, u)) vs.insert(st[i]);
            }
            if (vs.empty())
                throw SemanticError("possibility set yields an empty output for " +
                                    sig.endogenous[i].name);
            f.rows[r] = vs;
        }
        m.equations[i] = std::move(f);
    }
    return m;
}

Nscm default_model(const PossibilitySet& s) { return build_model(s, infer_gs(s)); }

nlohmann::ordered_json possibility_set_to_json(const PossibilitySet& s) {
    using Json = nlohmann::ordered_json;
    const Signature& sig = *s.sig;
    // Canonical record order: intervention size, then intervention, then
    // context.
    std::vector<const std::pair<const PossibilityKey, std::vector<Assignment>>*> items;
    for (const auto& kv : s.records) items.push_back(&kv);
    std::sort(items.begin(), items.end(), [](const auto* a, const auto* b) {
        const auto sa = a->first.do_.size(), sb = b->first.do_.size();
        if (sa != sb) return sa < sb;
        return a->first < b->first;
    });
    Json records = Json::array();
    for (const auto* kv : items) {
        Json states = Json::array();
        for (const auto& st : kv->second) states.push_back(state_to_json(sig, st));
        records.push_back({{"context", context_to_json(sig, kv->first.context)},
                           {"do", intervention_to_json(sig, kv->first.do_)},
                           {"states", states}});
    }
    return Json{{"signature", signature_to_json(sig)}, {"records", records}};
}

PossibilitySet possibility_set_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || !j.contains("signature") || !j.contains("records"))
        throw SemanticError("possibility set must have \"signature\" and \"records\"");
    PossibilitySet s;
    s.sig = signature_from_json(j.at("signature"));
    const Signature& sig = *s.sig;
    for (const auto& rj : j.at("records")) {
        if (!rj.is_object() || !rj.contains("context") || !rj.contains("do") ||
            !rj.contains("states"))
            throw SemanticError("record must have \"context\", \"do\", and \"states\"");
        PossibilityKey key;
        key.context = context_from_json(sig, rj.at("context"));
        key.do_ = intervention_from_json(sig, rj.at("do"));
        std::vector<Assignment> states;
        for (const auto& sj : rj.at("states")) states.push_back(state_from_json(sig, sj));
        if (states.empty()) throw SemanticError("record has no states");
        for (const auto& st : states)
            for (const auto& [var, val] : key.do_.assignments)
                if (st[sig.endo_index(var)] != val)
                    throw SemanticError("record state disagrees with its intervention on " +
                                        sig.name_of(var));
        std::sort(states.begin(), states.end());
        states.erase(std::unique(states.begin(), states.end()), states.end());
        if (!s.records.emplace(std::move(key), std::move(states)).second)
            throw SemanticError("duplicate record for the same (context, intervention)");
    }
    // Coverage.
    const auto contexts = all_contexts(sig);
    for_each_intervention(sig, [&](const Intervention& iv) {
        for (const auto& u : contexts)
            if (!s.records.count(PossibilityKey{iv, u}))
                throw SemanticError(
                    "possibility set does not cover every (context, intervention) pair");
    });
    return s;
}

PossibilitySet load_possibility_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SemanticError("cannot open possibility file " + path);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
    return possibility_set_from_json(j);
}

}  // namespace nscm
