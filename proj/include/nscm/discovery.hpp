#pragma once

#include <map>

#include "json.hpp"
#include "nscm/model.hpp"

namespace nscm {

struct PossibilityKey {
    Intervention do_;
    Assignment context;

    auto operator<=>(const PossibilityKey&) const = default;
};

// The discovery input S: for every (context, intervention) pair, the set of
// reachable states. Coverage (every pair present, nonempty) and effectiveness
// (states agree with the intervention) are invariants.
struct PossibilitySet {
    SignaturePtr sig;
    std::map<PossibilityKey, std::vector<Assignment>> records;  // states sorted
};

// The exact possibility set of a ground-truth model: records[(u, i)] is
// solutions(intervene(m, i), u) for every context and intervention.
PossibilitySet generate_possibilities(const Nscm& m);

// The partial graph identified by S: an edge X -> Y is present when, with
// every variable but Y pinned, the set of Y-values the records allow varies
// with X's pinned value (for exogenous X, with X's context coordinate). Such
// variation is witnessed inside S and is impossible without the edge, so the
// result is always a subgraph of the ground truth's graph.
Dag infer_gs(const PossibilitySet& s);

// The unique model over g explaining exactly S: x is in f_X(a, b) iff some
// record for the intervention A <- a under a context matching b shows X = x.
// g must be an acyclic supergraph of infer_gs(s).
Nscm build_model(const PossibilitySet& s, const Dag& g);

// build_model over the inferred graph itself.
Nscm default_model(const PossibilitySet& s);

// {"signature": {...}, "records": [{"context": {...}, "do": {...},
//  "states": [...]}, ...]} with records in canonical order.
nlohmann::ordered_json possibility_set_to_json(const PossibilitySet& s);

// Parses and validates coverage, effectiveness, and value ranges.
PossibilitySet possibility_set_from_json(const nlohmann::ordered_json& j);
PossibilitySet load_possibility_file(const std::string& path);

}  // namespace nscm
