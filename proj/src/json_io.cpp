#include "nscm/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

namespace nscm {

namespace {

VariableDecl decl_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("range"))
        throw SemanticError("variable declaration must have \"name\" and \"range\"");
    VariableDecl d;
    d.name = j.at("name").get<std::string>();
    for (const auto& tok : j.at("range")) d.range.push_back(tok.get<std::string>());
    if (d.range.empty()) throw SemanticError("variable " + d.name + " has an empty range");
    if (static_cast<int>(d.range.size()) > ValueSet::max_range)
        throw SemanticError("variable " + d.name + " has more than 64 range values");
    std::set<std::string> toks(d.range.begin(), d.range.end());
    if (toks.size() != d.range.size())
        throw SemanticError("variable " + d.name + " has duplicate range values");
    return d;
}

ValueSet value_set_from_json(const Signature& sig, VarId child, const Json& j,
                             const std::string& what) {
    if (!j.is_array() || j.empty())
        throw SemanticError(what + " for " + sig.name_of(child) + " must be a nonempty list");
    ValueSet out;
    for (const auto& tok : j) {
        ValueId v = sig.find_value(child, tok.get<std::string>());
        if (v < 0)
            throw SemanticError(what + " for " + sig.name_of(child) + " contains value " +
                                tok.get<std::string>() + " outside the range");
        if (out.contains(v))
            throw SemanticError(what + " for " + sig.name_of(child) + " contains duplicate value " +
                                tok.get<std::string>());
        out.insert(v);
    }
    return out;
}

}  // namespace

SignaturePtr signature_from_json(const Json& j) {
    if (!j.is_object()) throw SemanticError("signature must be a JSON object");
    auto sig = std::make_shared<Signature>();
    if (j.contains("exogenous"))
        for (const auto& vj : j.at("exogenous")) sig->exogenous.push_back(decl_from_json(vj));
    if (j.contains("endogenous"))
        for (const auto& vj : j.at("endogenous")) sig->endogenous.push_back(decl_from_json(vj));
    std::set<std::string> names;
    for (const auto& decls : {sig->exogenous, sig->endogenous})
        for (const auto& d : decls)
            if (!names.insert(d.name).second)
                throw SemanticError("duplicate variable name " + d.name);
    return sig;
}

Json signature_to_json(const Signature& sig) {
    Json j = Json::object();
    j["exogenous"] = Json::array();
    for (const auto& d : sig.exogenous)
        j["exogenous"].push_back({{"name", d.name}, {"range", d.range}});
    j["endogenous"] = Json::array();
    for (const auto& d : sig.endogenous)
        j["endogenous"].push_back({{"name", d.name}, {"range", d.range}});
    return j;
}

Nscm model_from_json(const Json& j) {
    if (!j.is_object()) throw SemanticError("model must be a JSON object");

    auto sig = std::make_shared<Signature>();
    if (j.contains("exogenous"))
        for (const auto& vj : j.at("exogenous")) sig->exogenous.push_back(decl_from_json(vj));
    if (!j.contains("endogenous"))
        throw SemanticError("model must declare \"endogenous\" variables");
    for (const auto& vj : j.at("endogenous")) sig->endogenous.push_back(decl_from_json(vj));

    std::set<std::string> names;
    for (const auto& decls : {sig->exogenous, sig->endogenous})
        for (const auto& d : decls)
            if (!names.insert(d.name).second)
                throw SemanticError("duplicate variable name " + d.name);

    Nscm m;
    m.sig = sig;
    m.graph.exo_count = sig->exo_count();
    m.graph.parents.resize(sig->endo_count());
    m.equations.resize(sig->endo_count());

    int idx = 0;
    for (const auto& vj : j.at("endogenous")) {
        const VarId child = sig->endo_var(idx);
        const std::string& name = sig->endogenous[idx].name;

        std::vector<VarId> parents;
        if (vj.contains("parents")) {
            for (const auto& pj : vj.at("parents")) {
                VarId p = sig->find_var(pj.get<std::string>());
                if (p < 0)
                    throw SemanticError("unknown parent " + pj.get<std::string>() + " of " + name);
                if (p == child) throw SemanticError("variable " + name + " cannot be its own parent");
                parents.push_back(p);
            }
        }
        std::sort(parents.begin(), parents.end());
        if (std::adjacent_find(parents.begin(), parents.end()) != parents.end())
            throw SemanticError("duplicate parent of " + name);

        MultiFunction f;
        f.child = child;
        f.parents = parents;
        for (VarId p : parents) f.parent_sizes.push_back(sig->range_size(p));
        long long product = 1;
        for (int s : f.parent_sizes) {
            product *= s;
            if (product > 1'000'000)
                throw SemanticError("equation for " + name + " has too many rows");
        }
        f.rows.assign(static_cast<std::size_t>(product), ValueSet{});

        std::vector<bool> covered(f.rows.size(), false);
        if (vj.contains("table")) {
            for (const auto& row : vj.at("table")) {
                if (!row.is_object() || !row.contains("if") || !row.contains("then"))
                    throw SemanticError("table row for " + name + " must have \"if\" and \"then\"");
                const Json& cond = row.at("if");
                std::vector<ValueId> pv(parents.size(), -1);
                std::size_t seen = 0;
                for (const auto& [key, tokj] : cond.items()) {
                    VarId p = sig->find_var(key);
                    auto it = std::find(parents.begin(), parents.end(), p);
                    if (p < 0 || it == parents.end())
                        throw SemanticError("table row for " + name + " conditions on non-parent " + key);
                    ValueId v = sig->find_value(p, tokj.get<std::string>());
                    if (v < 0)
                        throw SemanticError("table row for " + name + " uses out-of-range value for " + key);
                    pv[it - parents.begin()] = v;
                    ++seen;
                }
                if (seen != parents.size() ||
                    std::count(pv.begin(), pv.end(), -1) != 0)
                    throw SemanticError("table row for " + name + " must assign every parent exactly once");
                const int r = f.row_index(pv);
                if (covered[r])
                    throw SemanticError("duplicate table row for " + name);
                covered[r] = true;
                f.rows[r] = value_set_from_json(*sig, child, row.at("then"), "\"then\" list");
            }
        }
        if (vj.contains("otherwise")) {
            const ValueSet other =
                value_set_from_json(*sig, child, vj.at("otherwise"), "\"otherwise\" list");
            for (std::size_t r = 0; r < f.rows.size(); ++r)
                if (!covered[r]) f.rows[r] = other;
        } else {
            for (std::size_t r = 0; r < f.rows.size(); ++r)
                if (!covered[r])
                    throw SemanticError("table for " + name +
                                        " does not cover every parent assignment and has no \"otherwise\"");
        }

        m.graph.parents[idx] = parents;
        m.equations[idx] = std::move(f);
        ++idx;
    }

    if (!m.graph.is_acyclic()) throw SemanticError("model graph is cyclic");
    return m;
}

Nscm load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SemanticError("cannot open model file " + path);
    Json j = Json::parse(in);  // throws nlohmann parse_error on bad JSON
    return model_from_json(j);
}

Json model_to_json(const Nscm& m) {
    const Signature& sig = *m.sig;
    Json j = Json::object();
    j["exogenous"] = Json::array();
    for (const auto& d : sig.exogenous)
        j["exogenous"].push_back({{"name", d.name}, {"range", d.range}});
    j["endogenous"] = Json::array();
    for (int i = 0; i < sig.endo_count(); ++i) {
        const auto& d = sig.endogenous[i];
        const MultiFunction& f = m.equations[i];
        Json vj = {{"name", d.name}, {"range", d.range}};
        Json parents = Json::array();
        for (VarId p : f.parents) parents.push_back(sig.name_of(p));
        vj["parents"] = parents;
        Json table = Json::array();
        for (int r = 0; r < f.row_count(); ++r) {
            auto pv = f.row_assignment(r);
            Json cond = Json::object();
            for (std::size_t k = 0; k < f.parents.size(); ++k)
                cond[sig.name_of(f.parents[k])] = sig.value_token(f.parents[k], pv[k]);
            Json then = Json::array();
            for (ValueId v : f.rows[r]) then.push_back(sig.value_token(f.child, v));
            table.push_back({{"if", cond}, {"then", then}});
        }
        vj["table"] = table;
        j["endogenous"].push_back(vj);
    }
    return j;
}

namespace {

Assignment assignment_from_json(const Signature& sig, const Json& j, bool exo) {
    if (!j.is_object()) throw SemanticError("assignment must be a JSON object");
    const int n = exo ? sig.exo_count() : sig.endo_count();
    Assignment out(n, -1);
    for (const auto& [key, tokj] : j.items()) {
        VarId v = sig.find_var(key);
        if (v < 0) throw SemanticError("unknown variable " + key);
        if (sig.is_exogenous(v) != exo)
            throw SemanticError("variable " + key + (exo ? " is not exogenous" : " is not endogenous"));
        ValueId val = sig.find_value(v, tokj.get<std::string>());
        if (val < 0)
            throw SemanticError("value " + tokj.get<std::string>() + " is outside the range of " + key);
        out[exo ? v : sig.endo_index(v)] = val;
    }
    for (int i = 0; i < n; ++i)
        if (out[i] < 0)
            throw SemanticError("assignment is missing " +
                                (exo ? sig.exogenous[i].name : sig.endogenous[i].name));
    return out;
}

}  // namespace

Assignment context_from_json(const Signature& sig, const Json& j) {
    return assignment_from_json(sig, j, true);
}

Assignment state_from_json(const Signature& sig, const Json& j) {
    return assignment_from_json(sig, j, false);
}

Json context_to_json(const Signature& sig, const Assignment& context) {
    Json j = Json::object();
    for (int i = 0; i < sig.exo_count(); ++i)
        j[sig.exogenous[i].name] = sig.value_token(i, context[i]);
    return j;
}

Json state_to_json(const Signature& sig, const Assignment& state) {
    Json j = Json::object();
    for (int i = 0; i < sig.endo_count(); ++i)
        j[sig.endogenous[i].name] = sig.value_token(sig.endo_var(i), state[i]);
    return j;
}

Json world_to_json(const Signature& sig, const World& w) {
    Json j = context_to_json(sig, w.context);
    Json s = state_to_json(sig, w.state);
    for (auto& [k, v] : s.items()) j[k] = v;
    return j;
}

Json intervention_to_json(const Signature& sig, const Intervention& i) {
    Json j = Json::object();
    for (const auto& [var, val] : i.assignments) j[sig.name_of(var)] = sig.value_token(var, val);
    return j;
}

Intervention intervention_from_json(const Signature& sig, const Json& j) {
    if (!j.is_object()) throw SemanticError("intervention must be a JSON object");
    Intervention out;
    for (const auto& [key, tokj] : j.items()) {
        VarId v = sig.find_var(key);
        if (v < 0) throw SemanticError("unknown variable " + key);
        if (sig.is_exogenous(v))
            throw SemanticError("cannot intervene on exogenous variable " + key);
        ValueId val = sig.find_value(v, tokj.get<std::string>());
        if (val < 0)
            throw SemanticError("value " + tokj.get<std::string>() + " is outside the range of " + key);
        out.assignments.emplace_back(v, val);
    }
    std::sort(out.assignments.begin(), out.assignments.end());
    for (std::size_t k = 1; k < out.assignments.size(); ++k)
        if (out.assignments[k].first == out.assignments[k - 1].first)
            throw SemanticError("duplicate intervention variable " +
                                sig.name_of(out.assignments[k].first));
    return out;
}

}  // namespace nscm
