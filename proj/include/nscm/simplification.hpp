#pragma once

#include <utility>
#include <vector>

#include "json.hpp"
#include "nscm/model.hpp"

namespace nscm {

using Edge = std::pair<VarId, VarId>;

// An edge-removal set that is "worth the price": every removed edge also
// removes its ancestor-descendant pair.
struct GraphSimplification {
    Dag base_graph;
    std::vector<Edge> removed_edges;  // sorted by (parent, child)
    Dag result_graph;
};

// The three conditions: g2 is a subgraph of g1, Anc(g2) is contained in
// Anc(g1), and no removed edge survives as an ancestor pair of g2. Throws on
// node-set mismatch.
bool is_graph_simplification(const Dag& g1, const Dag& g2);

// g minus the given edges; throws if an edge is not present.
Dag remove_edges(const Dag& g, const std::vector<Edge>& removed);

// All valid edge-removal subsets, ordered by (size, lexicographic edge list).
// Includes the empty removal; the full removal is always valid.
std::vector<GraphSimplification> enumerate_graph_simplifications(const Dag& g);

// Union of f over all completions of a partial parent assignment (sorted
// (var, value) pairs over a subset of f's parents).
ValueSet generalized_apply(const MultiFunction& f, const std::vector<std::pair<VarId, ValueId>>& partial);

// The unique structural simplification of m along gs: result equations are
// the generalized originals over the surviving parents.
Nscm structural_simplify(const Nscm& m, const GraphSimplification& gs);

// m2's graph simplifies m1's and every m2 row equals the generalized m1 row.
bool is_structural_simplification(const Nscm& m1, const Nscm& m2);

// The same relation between the two actualized refinements at w; w must be a
// solution of both models.
bool is_setting_simplification(const Nscm& m1, const Nscm& m2, const World& w);

// Solution-set inclusion per (context, intervention): every interventionist
// possibility of m1 is one of m2. Possibility statements are determined by
// solution sets, so this matches the formula-quantified definition.
bool is_interventional_extension(const Nscm& m1, const Nscm& m2);

nlohmann::ordered_json removed_edges_to_json(const Signature& sig, const std::vector<Edge>& removed);

}  // namespace nscm
