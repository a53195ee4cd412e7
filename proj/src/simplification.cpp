#include "nscm/simplification.hpp"

#include <algorithm>

#include "nscm/enumerate.hpp"
#include "nscm/json_io.hpp"

namespace nscm {

namespace {

void check_same_nodes(const Dag& g1, const Dag& g2) {
    if (g1.exo_count != g2.exo_count || g1.endo_count() != g2.endo_count())
        throw SemanticError("graphs are over different node sets");
}

void check_same_signature(const Nscm& m1, const Nscm& m2) {
    if (!(m1.sig == m2.sig || *m1.sig == *m2.sig))
        throw SemanticError("models are over different signatures");
}

}  // namespace

bool is_graph_simplification(const Dag& g1, const Dag& g2) {
    check_same_nodes(g1, g2);
    const auto e1 = g1.edges();
    const auto e2 = g2.edges();
    if (!std::includes(e1.begin(), e1.end(), e2.begin(), e2.end())) return false;
    for (VarId a = 0; a < g1.var_count(); ++a)
        for (VarId b = 0; b < g1.var_count(); ++b)
            if (g2.is_ancestor(a, b) && !g1.is_ancestor(a, b)) return false;
    std::vector<Edge> removed;
    std::set_difference(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(removed));
    for (const auto& [x, y] : removed)
        if (g2.is_ancestor(x, y)) return false;
    return true;
}

Dag remove_edges(const Dag& g, const std::vector<Edge>& removed) {
    Dag out = g;
    for (const auto& [p, c] : removed) {
        if (!g.has_edge(p, c)) throw SemanticError("edge to remove is not in the graph");
        auto& ps = out.parents[c - g.exo_count];
        ps.erase(std::remove(ps.begin(), ps.end(), p), ps.end());
    }
    return out;
}

std::vector<GraphSimplification> enumerate_graph_simplifications(const Dag& g) {
    const auto edges = g.edges();
    const int e = static_cast<int>(edges.size());
    if (e > 26) throw SemanticError("too many edges to enumerate removal subsets");
    std::vector<GraphSimplification> out;
    for (uint32_t mask = 0; mask < (uint32_t{1} << e); ++mask) {
        std::vector<Edge> removed;
        for (int i = 0; i < e; ++i)
            if (mask & (uint32_t{1} << i)) removed.push_back(edges[i]);
        Dag result = remove_edges(g, removed);
        if (!is_graph_simplification(g, result)) continue;
        out.push_back({g, std::move(removed), std::move(result)});
    }
    std::sort(out.begin(), out.end(), [](const GraphSimplification& a, const GraphSimplification& b) {
        if (a.removed_edges.size() != b.removed_edges.size())
            return a.removed_edges.size() < b.removed_edges.size();
        return a.removed_edges < b.removed_edges;
    });
    return out;
}

ValueSet generalized_apply(const MultiFunction& f,
                           const std::vector<std::pair<VarId, ValueId>>& partial) {
    // Positions of the partial's variables within f's parent list.
    std::vector<std::pair<int, ValueId>> pins;
    for (const auto& [var, val] : partial) {
        auto it = std::find(f.parents.begin(), f.parents.end(), var);
        if (it == f.parents.end())
            throw SemanticError("partial assignment names a non-parent variable");
        const int pos = static_cast<int>(it - f.parents.begin());
        if (val < 0 || val >= f.parent_sizes[pos])
            throw SemanticError("partial assignment value out of range");
        pins.emplace_back(pos, val);
    }
    ValueSet out;
    for (int r = 0; r < f.row_count(); ++r) {
        const auto vals = f.row_assignment(r);
        bool match = true;
        for (const auto& [pos, val] : pins)
            if (vals[pos] != val) {
                match = false;
                break;
            }
        if (match) out |= f.rows[r];
    }
    return out;
}

Nscm structural_simplify(const Nscm& m, const GraphSimplification& gs) {
    if (gs.base_graph != m.graph)
        throw SemanticError("graph simplification was built for a different graph");
    Nscm out;
    out.sig = m.sig;
    out.graph = gs.result_graph;
    out.equations.resize(m.equations.size());
    for (int i = 0; i < m.sig->endo_count(); ++i) {
        const MultiFunction& f = m.equations[i];
        MultiFunction g;
        g.child = f.child;
        g.parents = gs.result_graph.parents[i];
        for (VarId p : g.parents) g.parent_sizes.push_back(m.sig->range_size(p));
        long long product = 1;
        for (int s : g.parent_sizes) product *= s;
        g.rows.resize(static_cast<std::size_t>(product));
        std::vector<std::pair<VarId, ValueId>> partial(g.parents.size());
        for (int r = 0; r < g.row_count(); ++r) {
            const auto vals = g.row_assignment(r);
            for (std::size_t k = 0; k < g.parents.size(); ++k)
                partial[k] = {g.parents[k], vals[k]};
            g.rows[r] = generalized_apply(f, partial);
        }
        out.equations[i] = std::move(g);
    }
    return out;
}

bool is_structural_simplification(const Nscm& m1, const Nscm& m2) {
    check_same_signature(m1, m2);
    if (!is_graph_simplification(m1.graph, m2.graph)) return false;
    std::vector<std::pair<VarId, ValueId>> partial;
    for (int i = 0; i < m1.sig->endo_count(); ++i) {
        const MultiFunction& f1 = m1.equations[i];
        const MultiFunction& f2 = m2.equations[i];
        partial.resize(f2.parents.size());
        for (int r = 0; r < f2.row_count(); ++r) {
            const auto vals = f2.row_assignment(r);
            for (std::size_t k = 0; k < f2.parents.size(); ++k)
                partial[k] = {f2.parents[k], vals[k]};
            if (f2.rows[r] != generalized_apply(f1, partial)) return false;
        }
    }
    return true;
}

bool is_setting_simplification(const Nscm& m1, const Nscm& m2, const World& w) {
    check_same_signature(m1, m2);
    if (!is_solution(m1, w))
        throw SemanticError("the world is not a solution of the first model");
    if (!is_solution(m2, w))
        throw SemanticError("the world is not a solution of the second model");
    return is_structural_simplification(refine(m1, w), refine(m2, w));
}

bool is_interventional_extension(const Nscm& m1, const Nscm& m2) {
    check_same_signature(m1, m2);
    const auto contexts = all_contexts(*m1.sig);
    bool extends = true;
    for_each_intervention(*m1.sig, [&](const Intervention& iv) {
        SolveMods mods;
        mods.pre = &iv;
        for (const auto& u : contexts) {
            std::vector<Assignment> s1, s2;
            for_each_solution(m1, u, mods, [&](const Assignment& st) {
                s1.push_back(st);
                return true;
            });
            for_each_solution(m2, u, mods, [&](const Assignment& st) {
                s2.push_back(st);
                return true;
            });
            std::sort(s1.begin(), s1.end());
            std::sort(s2.begin(), s2.end());
            if (!std::includes(s2.begin(), s2.end(), s1.begin(), s1.end())) {
                extends = false;
                return false;
            }
        }
        return true;
    });
    return extends;
}

nlohmann::ordered_json removed_edges_to_json(const Signature& sig, const std::vector<Edge>& removed) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [p, c] : removed)
        arr.push_back(nlohmann::ordered_json::array({sig.name_of(p), sig.name_of(c)}));
    return nlohmann::ordered_json{{"removed_edges", arr}};
}

}  // namespace nscm
