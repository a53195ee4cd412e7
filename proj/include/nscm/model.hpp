#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nscm/errors.hpp"
#include "nscm/values.hpp"

namespace nscm {

// Variables are indexed globally in declaration order, exogenous block first:
// ids [0, exo_count) are exogenous, [exo_count, var_count) endogenous.
using VarId = int;

// Total assignment over the exogenous block (a context) or the endogenous
// block (a state), indexed by position within the block.
using Assignment = std::vector<ValueId>;

struct VariableDecl {
    std::string name;
    std::vector<std::string> range;  // ordered, distinct value tokens

    bool operator==(const VariableDecl&) const = default;
};

struct Signature {
    std::vector<VariableDecl> exogenous;
    std::vector<VariableDecl> endogenous;

    bool operator==(const Signature&) const = default;

    int exo_count() const { return static_cast<int>(exogenous.size()); }
    int endo_count() const { return static_cast<int>(endogenous.size()); }
    int var_count() const { return exo_count() + endo_count(); }

    bool is_exogenous(VarId v) const { return v < exo_count(); }
    int endo_index(VarId v) const { return v - exo_count(); }
    VarId endo_var(int endo_idx) const { return exo_count() + endo_idx; }

    const VariableDecl& decl(VarId v) const {
        return is_exogenous(v) ? exogenous[v] : endogenous[v - exo_count()];
    }
    const std::string& name_of(VarId v) const { return decl(v).name; }
    int range_size(VarId v) const { return static_cast<int>(decl(v).range.size()); }
    const std::string& value_token(VarId v, ValueId val) const { return decl(v).range[val]; }

    // Returns -1 when the name is not declared.
    VarId find_var(const std::string& name) const {
        for (int i = 0; i < exo_count(); ++i)
            if (exogenous[i].name == name) return i;
        for (int i = 0; i < endo_count(); ++i)
            if (endogenous[i].name == name) return exo_count() + i;
        return -1;
    }

    // Returns -1 when the token is not in the variable's range.
    ValueId find_value(VarId v, const std::string& token) const {
        const auto& range = decl(v).range;
        for (int i = 0; i < static_cast<int>(range.size()); ++i)
            if (range[i] == token) return i;
        return -1;
    }
};

using SignaturePtr = std::shared_ptr<const Signature>;

// Edges run from any variable into an endogenous child; stored as the sorted
// parent list of each endogenous variable.
struct Dag {
    int exo_count = 0;
    std::vector<std::vector<VarId>> parents;  // indexed by endogenous index

    bool operator==(const Dag&) const = default;

    int endo_count() const { return static_cast<int>(parents.size()); }
    int var_count() const { return exo_count + endo_count(); }

    bool has_edge(VarId parent, VarId child) const;
    // All edges sorted by (parent, child).
    std::vector<std::pair<VarId, VarId>> edges() const;

    bool is_acyclic() const { return topo_endo_order().has_value(); }
    // Endogenous indices in dependency order (parents first); nullopt if cyclic.
    std::optional<std::vector<int>> topo_endo_order() const;

    // Strict ancestors of v (exogenous or endogenous), sorted ascending.
    std::vector<VarId> ancestors_of(VarId v) const;
    // True iff a is a strict ancestor of b.
    bool is_ancestor(VarId a, VarId b) const;
};

// One multi-valued structural equation. Rows are indexed mixed-radix over the
// parents in order, last parent varying fastest, so row order equals
// lexicographic parent-assignment order.
struct MultiFunction {
    VarId child = -1;
    std::vector<VarId> parents;      // sorted ascending (declaration order)
    std::vector<int> parent_sizes;   // range sizes, aligned with parents
    std::vector<ValueSet> rows;

    bool operator==(const MultiFunction&) const = default;

    int row_count() const { return static_cast<int>(rows.size()); }

    int row_index(const std::vector<ValueId>& parent_values) const {
        int row = 0;
        for (std::size_t i = 0; i < parents.size(); ++i)
            row = row * parent_sizes[i] + parent_values[i];
        return row;
    }

    std::vector<ValueId> row_assignment(int row) const {
        std::vector<ValueId> vals(parents.size());
        for (int i = static_cast<int>(parents.size()) - 1; i >= 0; --i) {
            vals[i] = row % parent_sizes[i];
            row /= parent_sizes[i];
        }
        return vals;
    }

    bool is_deterministic() const {
        for (const auto& r : rows)
            if (r.size() != 1) return false;
        return true;
    }
};

struct World {
    Assignment context;
    Assignment state;

    bool operator==(const World&) const = default;
};

// An intervention Y <- y: distinct endogenous variables with target values,
// kept sorted by variable id.
struct Intervention {
    std::vector<std::pair<VarId, ValueId>> assignments;

    auto operator<=>(const Intervention&) const = default;

    bool empty() const { return assignments.empty(); }
    int size() const { return static_cast<int>(assignments.size()); }

    // Returns the pinned value for v, or -1.
    ValueId value_for(VarId v) const {
        for (const auto& [var, val] : assignments)
            if (var == v) return val;
        return -1;
    }
};

struct Nscm {
    SignaturePtr sig;
    Dag graph;
    std::vector<MultiFunction> equations;  // indexed by endogenous index

    bool operator==(const Nscm& o) const {
        return (sig == o.sig || *sig == *o.sig) && graph == o.graph && equations == o.equations;
    }

    bool is_deterministic() const {
        for (const auto& f : equations)
            if (!f.is_deterministic()) return false;
        return true;
    }

    ValueId world_value(const Assignment& context, const Assignment& state, VarId v) const {
        return sig->is_exogenous(v) ? context[v] : state[v - sig->exo_count()];
    }
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

// Structural checks plus the irrelevant-edge lint: an edge P -> X is flagged
// when f_X is a singleton at every input and never varies with P under any
// co-assignment of X's other parents. Multi-valued equations are exempt,
// since a nondeterministic row makes every incoming edge detectable.
std::vector<Diagnostic> validate_model(const Nscm& m);
bool has_errors(const std::vector<Diagnostic>& diags);
bool has_warnings(const std::vector<Diagnostic>& diags);

// True iff w satisfies every equation set-membership-wise. Throws
// SemanticError if w is not a total in-range assignment.
bool is_solution(const Nscm& m, const World& w);

// All states v with (context, v) a solution, in lexicographic order.
std::vector<Assignment> solutions(const Nscm& m, const Assignment& context);

// M_{Y <- y}: intervened variables become parentless singleton constants and
// lose their incoming edges.
Nscm intervene(const Nscm& m, const Intervention& i);

// M^w: each equation's output at its actual parent input is pinned to the
// actual value. Only defined when w is a solution of m.
Nscm refine(const Nscm& m, const World& w);

// All contexts in lexicographic order (the single empty context when there
// are no exogenous variables).
std::vector<Assignment> all_contexts(const Signature& sig);

namespace detail {

void check_context(const Nscm& m, const Assignment& context);
void check_state(const Nscm& m, const Assignment& state);
void check_intervention(const Nscm& m, const Intervention& i);

}  // namespace detail

// Optional modifiers for solution enumeration: enumerates the solutions of
// ((M_pre)^refine_at)_post without materializing the intermediate models.
// `refine_at`, when set, must be a solution of M_pre; `pre` and `post` must
// pin disjoint variables (post wins if not).
struct SolveMods {
    const Intervention* pre = nullptr;
    const World* refine_at = nullptr;
    const Intervention* post = nullptr;
};

// Calls fn(state) for every solution at `context`, in DFS order over a fixed
// topological order (not lexicographic). fn returns false to stop; the
// function returns false iff some fn call stopped the walk.
template <typename Fn>
bool for_each_solution(const Nscm& m, const Assignment& context, const SolveMods& mods, Fn&& fn) {
    detail::check_context(m, context);
    if (mods.pre) detail::check_intervention(m, *mods.pre);
    if (mods.post) detail::check_intervention(m, *mods.post);

    const Signature& sig = *m.sig;
    const int n = sig.endo_count();
    auto topo = m.graph.topo_endo_order();
    if (!topo) throw SemanticError("model graph is cyclic");

    // Pinned rows from the refinement: row index of each equation at the
    // actual world, or -1 for variables overridden by `pre`.
    std::vector<int> actual_row(n, -1);
    if (mods.refine_at) {
        const World& w = *mods.refine_at;
        detail::check_context(m, w.context);
        detail::check_state(m, w.state);
        for (int i = 0; i < n; ++i) {
            if (mods.pre && mods.pre->value_for(sig.endo_var(i)) >= 0) continue;
            const MultiFunction& f = m.equations[i];
            std::vector<ValueId> pv(f.parents.size());
            for (std::size_t k = 0; k < f.parents.size(); ++k)
                pv[k] = m.world_value(w.context, w.state, f.parents[k]);
            actual_row[i] = f.row_index(pv);
        }
    }

    Assignment state(n, -1);
    std::vector<ValueId> parent_buf;

    // Iterative DFS over topo positions.
    struct Frame { ValueSet remaining; };
    std::vector<Frame> frames(n + 1);
    int depth = 0;
    bool keep_going = true;

    auto value_set_at = [&](int pos) -> ValueSet {
        const int endo_idx = (*topo)[pos];
        const VarId v = sig.endo_var(endo_idx);
        if (mods.post) {
            ValueId pinned = mods.post->value_for(v);
            if (pinned >= 0) return ValueSet::single(pinned);
        }
        if (mods.pre) {
            ValueId pinned = mods.pre->value_for(v);
            if (pinned >= 0) return ValueSet::single(pinned);
        }
        const MultiFunction& f = m.equations[endo_idx];
        parent_buf.resize(f.parents.size());
        for (std::size_t k = 0; k < f.parents.size(); ++k)
            parent_buf[k] = m.world_value(context, state, f.parents[k]);
        const int row = f.row_index(parent_buf);
        if (row == actual_row[endo_idx])
            return ValueSet::single(m.world_value(mods.refine_at->context,
                                                  mods.refine_at->state,
                                                  sig.endo_var(endo_idx)));
        return f.rows[row];
    };

    if (n == 0) return fn(state);

    frames[0].remaining = value_set_at(0);
    while (depth >= 0 && keep_going) {
        ValueSet& rem = frames[depth].remaining;
        if (rem.empty()) {
            --depth;
            continue;
        }
        const ValueId v = *rem.begin();
        rem = ValueSet::from_bits(rem.bits() & (rem.bits() - 1));
        state[(*topo)[depth]] = v;
        if (depth + 1 == n) {
            keep_going = fn(const_cast<const Assignment&>(state));
        } else {
            ++depth;
            frames[depth].remaining = value_set_at(depth);
        }
    }
    return keep_going;
}

template <typename Fn>
bool for_each_solution(const Nscm& m, const Assignment& context, Fn&& fn) {
    return for_each_solution(m, context, SolveMods{}, std::forward<Fn>(fn));
}

}  // namespace nscm
