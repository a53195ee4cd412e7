#include "nscm/model.hpp"

#include <algorithm>
#include <set>

namespace nscm {

bool Dag::has_edge(VarId parent, VarId child) const {
    if (child < exo_count || child >= var_count()) return false;
    const auto& ps = parents[child - exo_count];
    return std::binary_search(ps.begin(), ps.end(), parent);
}

std::vector<std::pair<VarId, VarId>> Dag::edges() const {
    std::vector<std::pair<VarId, VarId>> out;
    for (int i = 0; i < endo_count(); ++i)
        for (VarId p : parents[i]) out.emplace_back(p, exo_count + i);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<int>> Dag::topo_endo_order() const {
    const int n = endo_count();
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> children(n);
    for (int c = 0; c < n; ++c)
        for (VarId p : parents[c])
            if (p >= exo_count) {
                children[p - exo_count].push_back(c);
                ++indeg[c];
            }
    std::vector<int> order;
    order.reserve(n);
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && indeg[i] == 0) {
                pick = i;
                break;
            }
        if (pick < 0) return std::nullopt;  // cycle
        done[pick] = true;
        order.push_back(pick);
        for (int c : children[pick]) --indeg[c];
    }
    return order;
}

std::vector<VarId> Dag::ancestors_of(VarId v) const {
    std::vector<bool> seen(var_count(), false);
    std::vector<VarId> stack;
    if (v >= exo_count)
        for (VarId p : parents[v - exo_count]) stack.push_back(p);
    std::vector<VarId> out;
    while (!stack.empty()) {
        VarId cur = stack.back();
        stack.pop_back();
        if (seen[cur]) continue;
        seen[cur] = true;
        out.push_back(cur);
        if (cur >= exo_count)
            for (VarId p : parents[cur - exo_count]) stack.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Dag::is_ancestor(VarId a, VarId b) const {
    if (a == b) return false;
    auto anc = ancestors_of(b);
    return std::binary_search(anc.begin(), anc.end(), a);
}

namespace detail {

void check_context(const Nscm& m, const Assignment& context) {
    const Signature& sig = *m.sig;
    if (static_cast<int>(context.size()) != sig.exo_count())
        throw SemanticError("context must assign every exogenous variable");
    for (int i = 0; i < sig.exo_count(); ++i)
        if (context[i] < 0 || context[i] >= sig.range_size(i))
            throw SemanticError("context value out of range for " + sig.exogenous[i].name);
}

void check_state(const Nscm& m, const Assignment& state) {
    const Signature& sig = *m.sig;
    if (static_cast<int>(state.size()) != sig.endo_count())
        throw SemanticError("state must assign every endogenous variable");
    for (int i = 0; i < sig.endo_count(); ++i)
        if (state[i] < 0 || state[i] >= sig.range_size(sig.endo_var(i)))
            throw SemanticError("state value out of range for " + sig.endogenous[i].name);
}

void check_intervention(const Nscm& m, const Intervention& i) {
    const Signature& sig = *m.sig;
    VarId prev = -1;
    for (const auto& [var, val] : i.assignments) {
        if (var < 0 || var >= sig.var_count())
            throw SemanticError("intervention names an unknown variable");
        if (sig.is_exogenous(var))
            throw SemanticError("cannot intervene on exogenous variable " + sig.name_of(var));
        if (var <= prev)
            throw SemanticError("intervention variables must be distinct and sorted");
        if (val < 0 || val >= sig.range_size(var))
            throw SemanticError("intervention value out of range for " + sig.name_of(var));
        prev = var;
    }
}

}  // namespace detail

std::vector<Diagnostic> validate_model(const Nscm& m) {
    std::vector<Diagnostic> diags;
    auto error = [&](std::string msg) { diags.push_back({Severity::Error, std::move(msg)}); };
    auto warning = [&](std::string msg) { diags.push_back({Severity::Warning, std::move(msg)}); };

    if (!m.sig) {
        error("model has no signature");
        return diags;
    }
    const Signature& sig = *m.sig;

    std::set<std::string> names;
    for (const auto& decls : {sig.exogenous, sig.endogenous}) {
        for (const auto& d : decls) {
            if (d.name.empty()) error("variable with empty name");
            if (!names.insert(d.name).second) error("duplicate variable name " + d.name);
            if (d.range.empty()) error("variable " + d.name + " has an empty range");
            if (static_cast<int>(d.range.size()) > ValueSet::max_range)
                error("variable " + d.name + " has more than 64 range values");
            std::set<std::string> toks(d.range.begin(), d.range.end());
            if (toks.size() != d.range.size())
                error("variable " + d.name + " has duplicate range values");
        }
    }

    if (m.graph.exo_count != sig.exo_count() || m.graph.endo_count() != sig.endo_count()) {
        error("graph does not cover the signature's variables");
        return diags;
    }
    for (int i = 0; i < sig.endo_count(); ++i) {
        VarId prev = -1;
        for (VarId p : m.graph.parents[i]) {
            if (p < 0 || p >= sig.var_count()) {
                error("parent id out of range for " + sig.endogenous[i].name);
            } else if (p == sig.endo_var(i)) {
                error("self-loop on " + sig.endogenous[i].name);
            }
            if (p <= prev) error("parents of " + sig.endogenous[i].name + " not sorted/distinct");
            prev = p;
        }
    }
    if (has_errors(diags)) return diags;

    if (!m.graph.is_acyclic()) {
        error("graph is cyclic");
        return diags;
    }

    if (static_cast<int>(m.equations.size()) != sig.endo_count()) {
        error("model must have exactly one equation per endogenous variable");
        return diags;
    }
    for (int i = 0; i < sig.endo_count(); ++i) {
        const MultiFunction& f = m.equations[i];
        const std::string& name = sig.endogenous[i].name;
        if (f.child != sig.endo_var(i)) error("equation " + name + " has wrong child id");
        if (f.parents != m.graph.parents[i]) {
            error("equation parents for " + name + " do not match the graph");
            continue;
        }
        if (f.parent_sizes.size() != f.parents.size()) {
            error("equation " + name + " has malformed parent sizes");
            continue;
        }
        long long product = 1;
        bool sizes_ok = true;
        for (std::size_t k = 0; k < f.parents.size(); ++k) {
            if (f.parent_sizes[k] != sig.range_size(f.parents[k])) {
                error("equation " + name + " has wrong range size for parent " +
                      sig.name_of(f.parents[k]));
                sizes_ok = false;
            }
            product *= f.parent_sizes[k];
        }
        if (!sizes_ok) continue;
        if (static_cast<long long>(f.rows.size()) != product) {
            error("equation " + name + " is not total: expected " + std::to_string(product) +
                  " rows, found " + std::to_string(f.rows.size()));
            continue;
        }
        const ValueSet range = ValueSet::full(sig.range_size(f.child));
        for (int r = 0; r < f.row_count(); ++r) {
            if (f.rows[r].empty()) {
                error("equation " + name + " has an empty output set (row " + std::to_string(r) + ")");
            } else if (!f.rows[r].is_subset_of(range)) {
                error("equation " + name + " outputs a value outside its range (row " +
                      std::to_string(r) + ")");
            }
        }
    }
    if (has_errors(diags)) return diags;

    // Irrelevant-edge lint.
    for (int i = 0; i < sig.endo_count(); ++i) {
        const MultiFunction& f = m.equations[i];
        if (!f.is_deterministic()) continue;
        for (std::size_t pi = 0; pi < f.parents.size(); ++pi) {
            bool varies = false;
            for (int r = 0; r < f.row_count() && !varies; ++r) {
                auto vals = f.row_assignment(r);
                for (ValueId alt = 0; alt < f.parent_sizes[pi] && !varies; ++alt) {
                    if (alt == vals[pi]) continue;
                    auto other = vals;
                    other[pi] = alt;
                    if (f.rows[r] != f.rows[f.row_index(other)]) varies = true;
                }
            }
            if (!varies)
                warning("edge " + sig.name_of(f.parents[pi]) + " -> " +
                        sig.name_of(f.child) + " is irrelevant: the equation is deterministic "
                        "and never varies with this parent");
        }
    }
    return diags;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool has_warnings(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Warning; });
}

bool is_solution(const Nscm& m, const World& w) {
    detail::check_context(m, w.context);
    detail::check_state(m, w.state);
    std::vector<ValueId> pv;
    for (int i = 0; i < m.sig->endo_count(); ++i) {
        const MultiFunction& f = m.equations[i];
        pv.resize(f.parents.size());
        for (std::size_t k = 0; k < f.parents.size(); ++k)
            pv[k] = m.world_value(w.context, w.state, f.parents[k]);
        if (!f.rows[f.row_index(pv)].contains(w.state[i])) return false;
    }
    return true;
}

std::vector<Assignment> solutions(const Nscm& m, const Assignment& context) {
    std::vector<Assignment> out;
    for_each_solution(m, context, [&](const Assignment& state) {
        out.push_back(state);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

Nscm intervene(const Nscm& m, const Intervention& i) {
    detail::check_intervention(m, i);
    Nscm out = m;
    for (const auto& [var, val] : i.assignments) {
        const int idx = m.sig->endo_index(var);
        out.graph.parents[idx].clear();
        MultiFunction& f = out.equations[idx];
        f.parents.clear();
        f.parent_sizes.clear();
        f.rows.assign(1, ValueSet::single(val));
    }
    return out;
}

Nscm refine(const Nscm& m, const World& w) {
    if (!is_solution(m, w))
        throw SemanticError("refinement is only defined at a solution of the model");
    Nscm out = m;
    std::vector<ValueId> pv;
    for (int i = 0; i < m.sig->endo_count(); ++i) {
        MultiFunction& f = out.equations[i];
        pv.resize(f.parents.size());
        for (std::size_t k = 0; k < f.parents.size(); ++k)
            pv[k] = m.world_value(w.context, w.state, f.parents[k]);
        f.rows[f.row_index(pv)] = ValueSet::single(w.state[i]);
    }
    return out;
}

std::vector<Assignment> all_contexts(const Signature& sig) {
    std::vector<Assignment> out;
    Assignment cur(sig.exo_count(), 0);
    while (true) {
        out.push_back(cur);
        int pos = sig.exo_count() - 1;
        while (pos >= 0) {
            if (++cur[pos] < sig.range_size(pos)) break;
            cur[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

}  // namespace nscm
