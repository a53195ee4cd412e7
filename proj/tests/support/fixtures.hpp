#pragma once

#include <string>

#include "nscm/json_io.hpp"
#include "nscm/model.hpp"

namespace nscm::test {

inline std::string models_dir() { return NSCM_MODELS_DIR; }

inline Nscm late_preemption() { return load_model_file(models_dir() + "/lp.json"); }
inline Nscm two_treatments() { return load_model_file(models_dir() + "/ex2.json"); }
inline Nscm inaccurate_thrower() { return load_model_file(models_dir() + "/accuracy-variant.json"); }
inline Nscm signed_chain() { return load_model_file(models_dir() + "/thm1-counterexample.json"); }

// Deterministic 2-chain: B copies A.
inline Nscm identity_chain() {
    return model_from_json(Json::parse(R"({
      "exogenous": [],
      "endogenous": [
        {"name": "A", "range": ["0", "1"], "parents": [], "otherwise": ["0", "1"]},
        {"name": "B", "range": ["0", "1"], "parents": ["A"],
         "table": [{"if": {"A": "0"}, "then": ["0"]}, {"if": {"A": "1"}, "then": ["1"]}]}
      ]
    })"));
}

// Deterministic 3-chain of identities A -> B -> C.
inline Nscm identity_chain3() {
    return model_from_json(Json::parse(R"({
      "exogenous": [],
      "endogenous": [
        {"name": "A", "range": ["0", "1"], "parents": [], "otherwise": ["0", "1"]},
        {"name": "B", "range": ["0", "1"], "parents": ["A"],
         "table": [{"if": {"A": "0"}, "then": ["0"]}, {"if": {"A": "1"}, "then": ["1"]}]},
        {"name": "C", "range": ["0", "1"], "parents": ["B"],
         "table": [{"if": {"B": "0"}, "then": ["0"]}, {"if": {"B": "1"}, "then": ["1"]}]}
      ]
    })"));
}

// B ignores its declared parent A and is a constant singleton.
inline Nscm irrelevant_edge_model() {
    return model_from_json(Json::parse(R"({
      "exogenous": [],
      "endogenous": [
        {"name": "A", "range": ["0", "1"], "parents": [], "otherwise": ["0", "1"]},
        {"name": "B", "range": ["0", "1"], "parents": ["A"], "otherwise": ["1"]}
      ]
    })"));
}

// One free binary variable.
inline Nscm coin() {
    return model_from_json(Json::parse(R"({
      "exogenous": [],
      "endogenous": [
        {"name": "C", "range": ["0", "1"], "parents": [], "otherwise": ["0", "1"]}
      ]
    })"));
}

inline World lp_actual_world() {
    // ST=1 BT=1 SH=1 BH=0 BS=1
    return World{{}, {1, 1, 1, 0, 1}};
}

inline World accuracy_actual_world() {
    // ST=0 BT=1 SA=1 SH=0 BH=1 BS=1
    return World{{}, {0, 1, 1, 0, 1, 1}};
}

inline VarId var(const Nscm& m, const std::string& name) {
    VarId v = m.sig->find_var(name);
    if (v < 0) throw SemanticError("fixture: unknown variable " + name);
    return v;
}

inline ValueId val(const Nscm& m, const std::string& name, const std::string& token) {
    ValueId v = m.sig->find_value(var(m, name), token);
    if (v < 0) throw SemanticError("fixture: unknown value " + token);
    return v;
}

inline Intervention do_(const Nscm& m,
                        std::initializer_list<std::pair<std::string, std::string>> items) {
    Intervention iv;
    for (const auto& [name, tok] : items) iv.assignments.emplace_back(var(m, name), val(m, name, tok));
    std::sort(iv.assignments.begin(), iv.assignments.end());
    return iv;
}

}  // namespace nscm::test
