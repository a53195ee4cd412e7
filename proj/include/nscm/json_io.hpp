#pragma once

#include <string>

#include "json.hpp"
#include "nscm/model.hpp"

namespace nscm {

using Json = nlohmann::ordered_json;

// Reads the canonical model schema:
//   {"exogenous":  [{"name": "...", "range": ["...", ...]}, ...],
//    "endogenous": [{"name": "...", "range": [...], "parents": [...],
//                    "table": [{"if": {...}, "then": [...]}, ...],
//                    "otherwise": [...]?}, ...]}
// Each "if" is a complete parent assignment; duplicates are an error; rows
// absent from "table" take the "otherwise" set, which must then be present.
// Throws SemanticError on any schema violation.
Nscm model_from_json(const Json& j);
Nscm load_model_file(const std::string& path);

// Canonical form: full tables (no "otherwise"), rows in lexicographic parent
// order, values in range order.
Json model_to_json(const Nscm& m);

// {"exogenous": [{"name","range"}...], "endogenous": [{"name","range"}...]}
SignaturePtr signature_from_json(const Json& j);
Json signature_to_json(const Signature& sig);

// Flat {"name": "value", ...} objects; must be total over their block.
Assignment context_from_json(const Signature& sig, const Json& j);
Assignment state_from_json(const Signature& sig, const Json& j);
Json context_to_json(const Signature& sig, const Assignment& context);
Json state_to_json(const Signature& sig, const Assignment& state);
Json world_to_json(const Signature& sig, const World& w);

Json intervention_to_json(const Signature& sig, const Intervention& i);
Intervention intervention_from_json(const Signature& sig, const Json& j);

}  // namespace nscm
