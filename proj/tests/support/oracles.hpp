#pragma once

#include <algorithm>
#include <vector>

#include "nscm/formula.hpp"
#include "nscm/model.hpp"

// Independent brute-force reference implementations. These deliberately avoid
// the library's solver, simplification, and dependence code paths; they share
// only the plain data types.
namespace nscm::test::oracle {

inline std::vector<Assignment> all_states(const Signature& sig) {
    std::vector<Assignment> out;
    Assignment cur(sig.endo_count(), 0);
    while (true) {
        out.push_back(cur);
        int pos = sig.endo_count() - 1;
        while (pos >= 0) {
            if (++cur[pos] < sig.range_size(sig.endo_var(pos))) break;
            cur[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

// Hand-rolled membership check.
inline bool is_sol(const Nscm& m, const Assignment& context, const Assignment& state) {
    for (int i = 0; i < m.sig->endo_count(); ++i) {
        const MultiFunction& f = m.equations[i];
        int row = 0;
        for (std::size_t k = 0; k < f.parents.size(); ++k) {
            const VarId p = f.parents[k];
            const ValueId v = m.sig->is_exogenous(p) ? context[p] : state[p - m.sig->exo_count()];
            row = row * f.parent_sizes[k] + v;
        }
        if (!f.rows[row].contains(state[i])) return false;
    }
    return true;
}

// Filter of all states by the membership predicate.
inline std::vector<Assignment> brute_solutions(const Nscm& m, const Assignment& context) {
    std::vector<Assignment> out;
    for (const auto& st : all_states(*m.sig))
        if (is_sol(m, context, st)) out.push_back(st);
    return out;
}

inline Nscm refine_own(const Nscm& m, const World& w) {
    Nscm out = m;
    for (int i = 0; i < m.sig->endo_count(); ++i) {
        MultiFunction& f = out.equations[i];
        int row = 0;
        for (std::size_t k = 0; k < f.parents.size(); ++k) {
            const VarId p = f.parents[k];
            const ValueId v =
                m.sig->is_exogenous(p) ? w.context[p] : w.state[p - m.sig->exo_count()];
            row = row * f.parent_sizes[k] + v;
        }
        f.rows[row] = ValueSet::single(w.state[i]);
    }
    return out;
}

inline Nscm intervene_own(const Nscm& m, VarId var, ValueId val) {
    Nscm out = m;
    const int idx = m.sig->endo_index(var);
    out.graph.parents[idx].clear();
    out.equations[idx].parents.clear();
    out.equations[idx].parent_sizes.clear();
    out.equations[idx].rows.assign(1, ValueSet::single(val));
    return out;
}

inline bool anc_own(const Dag& g, VarId a, VarId b) {
    if (a == b) return false;
    std::vector<VarId> stack{b};
    std::vector<bool> seen(g.var_count(), false);
    while (!stack.empty()) {
        VarId cur = stack.back();
        stack.pop_back();
        if (cur >= g.exo_count)
            for (VarId p : g.parents[cur - g.exo_count]) {
                if (p == a) return true;
                if (!seen[p]) {
                    seen[p] = true;
                    stack.push_back(p);
                }
            }
    }
    return false;
}

inline bool acyclic_own(const Dag& g) {
    std::vector<int> color(g.endo_count(), 0);
    bool cyclic = false;
    auto dfs = [&](auto&& self, int i) -> void {
        color[i] = 1;
        for (VarId p : g.parents[i])
            if (p >= g.exo_count) {
                const int j = p - g.exo_count;
                if (color[j] == 1) cyclic = true;
                else if (color[j] == 0) self(self, j);
            }
        color[i] = 2;
    };
    for (int i = 0; i < g.endo_count() && !cyclic; ++i)
        if (color[i] == 0) dfs(dfs, i);
    return !cyclic;
}

inline bool graph_simp_own(const Dag& g1, const Dag& g2) {
    auto e1 = g1.edges();
    auto e2 = g2.edges();
    if (!std::includes(e1.begin(), e1.end(), e2.begin(), e2.end())) return false;
    for (VarId a = 0; a < g1.var_count(); ++a)
        for (VarId b = 0; b < g1.var_count(); ++b)
            if (anc_own(g2, a, b) && !anc_own(g1, a, b)) return false;
    std::vector<std::pair<VarId, VarId>> removed;
    std::set_difference(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(removed));
    for (const auto& [x, y] : removed)
        if (anc_own(g2, x, y)) return false;
    return true;
}

// Union of f over completions of an assignment to a subset of its parents.
inline ValueSet gen_own(const MultiFunction& f, const std::vector<VarId>& sub_parents,
                        const std::vector<ValueId>& sub_values) {
    ValueSet out;
    for (int r = 0; r < f.row_count(); ++r) {
        const auto vals = f.row_assignment(r);
        bool match = true;
        for (std::size_t k = 0; k < sub_parents.size(); ++k) {
            auto it = std::find(f.parents.begin(), f.parents.end(), sub_parents[k]);
            if (it == f.parents.end() || vals[it - f.parents.begin()] != sub_values[k]) {
                match = false;
                break;
            }
        }
        if (match) out |= f.rows[r];
    }
    return out;
}

inline bool structural_simp_own(const Nscm& m1, const Nscm& m2) {
    if (!graph_simp_own(m1.graph, m2.graph)) return false;
    for (int i = 0; i < m1.sig->endo_count(); ++i) {
        const MultiFunction& f1 = m1.equations[i];
        const MultiFunction& f2 = m2.equations[i];
        for (int r = 0; r < f2.row_count(); ++r) {
            if (!(f2.rows[r] == gen_own(f1, f2.parents, f2.row_assignment(r)))) return false;
        }
    }
    return true;
}

inline bool setting_simp_own(const Nscm& m1, const Nscm& m2, const World& w) {
    if (!is_sol(m1, w.context, w.state) || !is_sol(m2, w.context, w.state)) return false;
    return structural_simp_own(refine_own(m1, w), refine_own(m2, w));
}

inline bool cf_dep_own(const Nscm& m, const World& w, VarId x_var, ValueId x, VarId y_var,
                       ValueId y) {
    const int x_endo = m.sig->endo_index(x_var);
    const int y_endo = m.sig->endo_index(y_var);
    if (w.state[x_endo] != x || w.state[y_endo] != y) return false;
    const Nscm refined = refine_own(m, w);
    for (ValueId x_alt = 0; x_alt < m.sig->range_size(x_var); ++x_alt) {
        const Nscm counterfactual = intervene_own(refined, x_var, x_alt);
        for (const auto& st : brute_solutions(counterfactual, w.context))
            if (st[y_endo] != y) return true;
    }
    return false;
}

// Actual causation by enumerating every model over the signature: every DAG
// and every table assignment, keeping those with w a solution, testing the
// setting-simplification relation by refining both models and comparing, and
// testing counterfactual dependence. Graphs that are not subgraphs of the
// original fail the definition outright and are skipped, as are table rows
// that the refinement comparison pins to a different set.
inline bool actual_cause_bruteforce(const Nscm& m1, const World& w, VarId x_var, ValueId x,
                                    VarId y_var, ValueId y) {
    const Signature& sig = *m1.sig;
    const int x_endo = sig.endo_index(x_var);
    const int y_endo = sig.endo_index(y_var);
    if (w.state[x_endo] != x || w.state[y_endo] != y) return false;

    std::vector<std::pair<VarId, VarId>> candidates;
    for (int i = 0; i < sig.endo_count(); ++i)
        for (VarId p = 0; p < sig.var_count(); ++p)
            if (p != sig.endo_var(i)) candidates.emplace_back(p, sig.endo_var(i));
    const int e = static_cast<int>(candidates.size());

    const Nscm refined1 = refine_own(m1, w);

    for (uint32_t mask = 0; mask < (uint32_t{1} << e); ++mask) {
        Dag g2;
        g2.exo_count = sig.exo_count();
        g2.parents.resize(sig.endo_count());
        for (int b = 0; b < e; ++b)
            if (mask & (uint32_t{1} << b))
                g2.parents[sig.endo_index(candidates[b].second)].push_back(candidates[b].first);
        for (auto& ps : g2.parents) std::sort(ps.begin(), ps.end());
        if (!acyclic_own(g2)) continue;
        if (!graph_simp_own(m1.graph, g2)) continue;

        // Valid equations per variable: w must solve them, and refining must
        // reproduce the generalized refined original row for row.
        std::vector<std::vector<MultiFunction>> choices(sig.endo_count());
        bool feasible = true;
        for (int i = 0; i < sig.endo_count() && feasible; ++i) {
            MultiFunction proto;
            proto.child = sig.endo_var(i);
            proto.parents = g2.parents[i];
            long long product = 1;
            for (VarId p : proto.parents) {
                proto.parent_sizes.push_back(sig.range_size(p));
                product *= sig.range_size(p);
            }
            proto.rows.assign(static_cast<std::size_t>(product), ValueSet{});

            int actual_row = 0;
            {
                std::vector<ValueId> pv;
                for (VarId p : proto.parents)
                    pv.push_back(sig.is_exogenous(p) ? w.context[p]
                                                     : w.state[p - sig.exo_count()]);
                actual_row = proto.row_index(pv);
            }
            std::vector<ValueSet> expected(proto.rows.size());
            for (int r = 0; r < proto.row_count(); ++r)
                expected[r] = gen_own(refined1.equations[i], proto.parents, proto.row_assignment(r));

            const uint64_t full = ValueSet::full(sig.range_size(proto.child)).bits();
            std::vector<uint64_t> row_bits(proto.rows.size(), 1);
            while (true) {
                for (std::size_t r = 0; r < proto.rows.size(); ++r)
                    proto.rows[r] = ValueSet::from_bits(row_bits[r]);
                bool good = proto.rows[actual_row].contains(w.state[i]);
                for (int r = 0; good && r < proto.row_count(); ++r) {
                    const ValueSet refined_row =
                        r == actual_row ? ValueSet::single(w.state[i]) : proto.rows[r];
                    if (!(refined_row == expected[r])) good = false;
                }
                if (good) choices[i].push_back(proto);

                int pos = static_cast<int>(row_bits.size()) - 1;
                while (pos >= 0) {
                    if (++row_bits[pos] <= full) break;
                    row_bits[pos] = 1;
                    --pos;
                }
                if (pos < 0) break;
            }
            if (choices[i].empty()) feasible = false;
        }
        if (!feasible) continue;

        // Every combination of per-variable choices, checked end to end.
        std::vector<std::size_t> idx(sig.endo_count(), 0);
        while (true) {
            Nscm m2;
            m2.sig = m1.sig;
            m2.graph = g2;
            for (int i = 0; i < sig.endo_count(); ++i) m2.equations.push_back(choices[i][idx[i]]);
            if (is_sol(m2, w.context, w.state) && setting_simp_own(m1, m2, w) &&
                cf_dep_own(m2, w, x_var, x, y_var, y))
                return true;
            int pos = sig.endo_count() - 1;
            while (pos >= 0) {
                if (++idx[pos] < choices[pos].size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return false;
}

}  // namespace nscm::test::oracle
