#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nscm/actual_cause.hpp"
#include "nscm/dependence.hpp"
#include "nscm/discovery.hpp"
#include "nscm/enumerate.hpp"
#include "nscm/formula.hpp"
#include "nscm/json_io.hpp"
#include "nscm/model.hpp"
#include "nscm/simplification.hpp"

namespace {

using nscm::Json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::pair<std::string, std::string>> split_pairs(const std::string& text,
                                                             const std::string& sep) {
    std::vector<std::pair<std::string, std::string>> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t eq = item.find(sep);
        if (eq == std::string::npos || eq == 0 || eq + sep.size() >= item.size())
            throw UsageError("malformed entry '" + item + "' (expected NAME" + sep + "VALUE)");
        out.emplace_back(item.substr(0, eq), item.substr(eq + sep.size()));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

nscm::Assignment assignment_from_pairs(const nscm::Signature& sig,
                                       const std::vector<std::pair<std::string, std::string>>& pairs,
                                       bool exo) {
    const int n = exo ? sig.exo_count() : sig.endo_count();
    nscm::Assignment out(n, -1);
    for (const auto& [name, tok] : pairs) {
        nscm::VarId v = sig.find_var(name);
        if (v < 0) throw nscm::SemanticError("unknown variable " + name);
        if (sig.is_exogenous(v) != exo)
            throw nscm::SemanticError("variable " + name +
                                      (exo ? " is not exogenous" : " is not endogenous"));
        nscm::ValueId val = sig.find_value(v, tok);
        if (val < 0)
            throw nscm::SemanticError("value " + tok + " is outside the range of " + name);
        out[exo ? v : sig.endo_index(v)] = val;
    }
    for (int i = 0; i < n; ++i)
        if (out[i] < 0)
            throw nscm::SemanticError("assignment is missing " +
                                      (exo ? sig.exogenous[i].name : sig.endogenous[i].name));
    return out;
}

nscm::Intervention intervention_from_pairs(
    const nscm::Signature& sig, const std::vector<std::pair<std::string, std::string>>& pairs) {
    nscm::Intervention out;
    for (const auto& [name, tok] : pairs) {
        nscm::VarId v = sig.find_var(name);
        if (v < 0) throw nscm::SemanticError("unknown variable " + name);
        if (sig.is_exogenous(v))
            throw nscm::SemanticError("cannot intervene on exogenous variable " + name);
        nscm::ValueId val = sig.find_value(v, tok);
        if (val < 0)
            throw nscm::SemanticError("value " + tok + " is outside the range of " + name);
        out.assignments.emplace_back(v, val);
    }
    std::sort(out.assignments.begin(), out.assignments.end());
    for (std::size_t k = 1; k < out.assignments.size(); ++k)
        if (out.assignments[k].first == out.assignments[k - 1].first)
            throw nscm::SemanticError("duplicate variable in intervention");
    return out;
}

std::vector<nscm::Edge> edges_from_list(const nscm::Signature& sig, const std::string& text) {
    std::vector<nscm::Edge> out;
    for (const auto& [from, to] : split_pairs(text, "->")) {
        nscm::VarId p = sig.find_var(from);
        nscm::VarId c = sig.find_var(to);
        if (p < 0) throw nscm::SemanticError("unknown variable " + from);
        if (c < 0) throw nscm::SemanticError("unknown variable " + to);
        out.emplace_back(p, c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

nscm::Nscm load_validated(const std::string& path) {
    nscm::Nscm m = nscm::load_model_file(path);
    auto diags = nscm::validate_model(m);
    if (nscm::has_errors(diags)) {
        std::string msg = "model " + path + " is invalid:";
        for (const auto& d : diags)
            if (d.severity == nscm::Severity::Error) msg += "\n  " + d.message;
        throw nscm::SemanticError(msg);
    }
    return m;
}

std::string assignment_text(const nscm::Signature& sig, const nscm::Assignment& a, bool exo) {
    std::string line;
    const int n = exo ? sig.exo_count() : sig.endo_count();
    for (int i = 0; i < n; ++i) {
        if (!line.empty()) line += ' ';
        const nscm::VarId v = exo ? i : sig.endo_var(i);
        line += sig.name_of(v) + "=" + sig.value_token(v, a[i]);
    }
    return line;
}

std::string world_line(const nscm::Signature& sig, const nscm::Assignment& context,
                       const nscm::Assignment& state) {
    std::string line = assignment_text(sig, context, true);
    std::string st = assignment_text(sig, state, false);
    if (!line.empty() && !st.empty()) line += ' ';
    return line + st;
}

std::string intervention_text(const nscm::Signature& sig, const nscm::Intervention& iv) {
    std::string s;
    for (const auto& [var, val] : iv.assignments) {
        if (!s.empty()) s += ' ';
        s += sig.name_of(var) + "=" + sig.value_token(var, val);
    }
    return s;
}

std::string edge_set_text(const nscm::Signature& sig, const std::vector<nscm::Edge>& edges) {
    if (edges.empty()) return "(none)";
    std::string s;
    for (const auto& [p, c] : edges) {
        if (!s.empty()) s += ' ';
        s += sig.name_of(p) + "->" + sig.name_of(c);
    }
    return s;
}

std::string witness_text(const nscm::Signature& sig, const nscm::DependenceWitness& w) {
    std::string s = "witness: do={" + intervention_text(sig, w.base_intervention) + "} context={" +
                    assignment_text(sig, w.context, true) + "}";
    if (w.state) s += " state={" + assignment_text(sig, *w.state, false) + "}";
    s += " x=" + sig.value_token(w.from_var, w.x) + " x_alt=" + sig.value_token(w.from_var, w.x_alt) +
         " y=" + sig.value_token(w.to_var, w.y);
    if (w.counterfactual_solution)
        s += " counterfactual={" + assignment_text(sig, *w.counterfactual_solution, false) + "}";
    return s;
}

void emit(bool json_mode, const Json& result, const std::string& text) {
    if (json_mode) {
        Json envelope = {{"version", 1}, {"result", result}};
        std::cout << envelope.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

void check_enumeration_size(const nscm::Nscm& m, bool force) {
    if (force) return;
    if (m.sig->endo_count() > 12)
        throw nscm::SemanticError(
            "model has more than 12 endogenous variables; exhaustive enumeration refused "
            "(pass --force to override)");
    if (nscm::intervention_space_size(*m.sig) > 1e7)
        throw nscm::SemanticError(
            "intervention space exceeds 10^7 assignments; exhaustive enumeration refused "
            "(pass --force to override)");
}

struct Options {
    bool json = false;
    bool force = false;
    std::string model_path;
    std::string model_path2;
    std::string formula;
    std::string context;
    bool has_context = false;
    std::string state;
    bool has_state = false;
    std::string do_list;
    std::string from_var, to_var;
    bool direct = false;
    bool witness = false;
    bool witnesses = false;
    bool no_prune = false;
    bool require_distinct = false;
    std::string cause, effect;
    std::string remove_list;
    bool has_remove = false;
    std::string setting_state, setting_context;
    bool has_setting_state = false, has_setting_context = false;
    std::string possibilities;
    std::string graph_choice = "gs";
    std::string save_possibilities;
};

int run_validate(const Options& o) {
    nscm::Nscm m;
    try {
        m = nscm::load_model_file(o.model_path);
    } catch (const nscm::SemanticError& e) {
        emit(o.json,
             Json{{"ok", false}, {"errors", Json::array({e.what()})}, {"warnings", Json::array()}},
             std::string("error: ") + e.what() + "\n");
        return 3;
    }
    auto diags = nscm::validate_model(m);
    Json errors = Json::array(), warnings = Json::array();
    std::string text;
    for (const auto& d : diags) {
        if (d.severity == nscm::Severity::Error) {
            errors.push_back(d.message);
            text += "error: " + d.message + "\n";
        } else {
            warnings.push_back(d.message);
            text += "warning: " + d.message + "\n";
        }
    }
    const bool ok = !nscm::has_errors(diags);
    if (ok) text += "ok\n";
    emit(o.json, Json{{"ok", ok}, {"errors", errors}, {"warnings", warnings}}, text);
    return ok ? 0 : 3;
}

int run_solve(const Options& o) {
    nscm::Nscm m = load_validated(o.model_path);
    const nscm::Signature& sig = *m.sig;
    if (!o.do_list.empty())
        m = nscm::intervene(m, intervention_from_pairs(sig, split_pairs(o.do_list, "=")));
    std::vector<nscm::Assignment> contexts;
    if (o.has_context)
        contexts.push_back(assignment_from_pairs(sig, split_pairs(o.context, "="), true));
    else
        contexts = nscm::all_contexts(sig);
    Json worlds = Json::array();
    std::string text;
    for (const auto& u : contexts) {
        for (const auto& st : nscm::solutions(m, u)) {
            worlds.push_back(nscm::world_to_json(sig, nscm::World{u, st}));
            text += world_line(sig, u, st) + "\n";
        }
    }
    emit(o.json, Json{{"worlds", worlds}}, text);
    return 0;
}

int run_eval(const Options& o) {
    nscm::Nscm m = load_validated(o.model_path);
    const nscm::Signature& sig = *m.sig;
    auto formula = nscm::parse_formula(o.formula, sig);

    std::string semantics;
    bool value = false;
    if (o.has_state) {
        nscm::Assignment state = assignment_from_pairs(sig, split_pairs(o.state, "="), false);
        nscm::Assignment context;
        if (o.has_context)
            context = assignment_from_pairs(sig, split_pairs(o.context, "="), true);
        else if (sig.exo_count() == 0)
            context = {};
        else
            throw UsageError("--state requires --context when the model has exogenous variables");
        semantics = "full";
        value = nscm::eval_full(m, nscm::World{context, state}, *formula);
    } else if (o.has_context) {
        nscm::Assignment context = assignment_from_pairs(sig, split_pairs(o.context, "="), true);
        semantics = "partial";
        value = nscm::eval_partial(m, context, *formula);
    } else {
        if (!o.force && nscm::context_space_size(sig) > 1e7)
            throw nscm::SemanticError(
                "context space exceeds 10^7; model-level evaluation refused (pass --force)");
        semantics = "model";
        value = nscm::eval_model(m, *formula);
    }
    emit(o.json,
         Json{{"value", value},
              {"semantics", semantics},
              {"formula", nscm::formula_to_json(*formula, sig)}},
         std::string(value ? "true" : "false") + "\n");
    return value ? 0 : 1;
}

int run_depends(const Options& o) {
    nscm::Nscm m = load_validated(o.model_path);
    const nscm::Signature& sig = *m.sig;
    check_enumeration_size(m, o.force);
    nscm::VarId from = sig.find_var(o.from_var);
    nscm::VarId to = sig.find_var(o.to_var);
    if (from < 0) throw nscm::SemanticError("unknown variable " + o.from_var);
    if (to < 0) throw nscm::SemanticError("unknown variable " + o.to_var);
    nscm::DependenceOptions opts;
    opts.require_distinct = o.require_distinct;
    nscm::DependenceResult r = o.direct ? nscm::directly_depends(m, from, to, opts)
                                        : nscm::depends_on(m, from, to, opts);
    Json result = {{"holds", r.holds}};
    std::string text = std::string(r.holds ? "true" : "false") + "\n";
    if (r.witness) {
        result["witness"] = nscm::witness_to_json(sig, *r.witness);
        if (o.witness) text += witness_text(sig, *r.witness) + "\n";
    }
    emit(o.json, result, text);
    return r.holds ? 0 : 1;
}

int run_cause(const Options& o) {
    nscm::Nscm m = load_validated(o.model_path);
    const nscm::Signature& sig = *m.sig;
    check_enumeration_size(m, o.force);
    if (!o.force && m.graph.edges().size() > 20)
        throw nscm::SemanticError("too many edges for simplification enumeration (pass --force)");

    nscm::CauseQuery q;
    q.model = m;
    q.world.state = assignment_from_pairs(sig, split_pairs(o.state, "="), false);
    if (o.has_context)
        q.world.context = assignment_from_pairs(sig, split_pairs(o.context, "="), true);
    else if (sig.exo_count() == 0)
        q.world.context = {};
    else
        throw UsageError("--context is required when the model has exogenous variables");

    auto cause_pair = split_pairs(o.cause, "=");
    auto effect_pair = split_pairs(o.effect, "=");
    if (cause_pair.size() != 1 || effect_pair.size() != 1)
        throw UsageError("--cause and --effect take a single NAME=VALUE");
    q.cause_var = sig.find_var(cause_pair[0].first);
    q.effect_var = sig.find_var(effect_pair[0].first);
    if (q.cause_var < 0) throw nscm::SemanticError("unknown variable " + cause_pair[0].first);
    if (q.effect_var < 0) throw nscm::SemanticError("unknown variable " + effect_pair[0].first);
    q.cause_val = sig.find_value(q.cause_var, cause_pair[0].second);
    q.effect_val = sig.find_value(q.effect_var, effect_pair[0].second);

    nscm::CauseOptions opts;
    opts.prune = !o.no_prune;
    opts.require_distinct = o.require_distinct;
    nscm::CauseReport report = nscm::explain(q, opts);

    std::string text = std::string("actual_cause: ") +
                       (report.result.is_cause ? "true" : "false") + "\nplain_dependence: " +
                       (report.plain_dependence ? "true" : "false") + "\n";
    if (o.witnesses) {
        for (const auto& w : report.result.witnesses) {
            text += "witness: removed={" + edge_set_text(sig, w.removed_edges) + "} x_alt=" +
                    sig.value_token(q.cause_var, w.x_alt) + " counterfactual={" +
                    assignment_text(sig, w.counterfactual_solution, false) + "}\n";
        }
    }
    emit(o.json, nscm::cause_report_to_json(sig, report, o.witnesses), text);
    return report.result.is_cause ? 0 : 1;
}

int run_simplify(const Options& o) {
    nscm::Nscm m = load_validated(o.model_path);
    const nscm::Signature& sig = *m.sig;

    std::optional<nscm::World> setting;
    if (o.has_setting_state) {
        nscm::World w;
        w.state = assignment_from_pairs(sig, split_pairs(o.setting_state, "="), false);
        if (o.has_setting_context)
            w.context = assignment_from_pairs(sig, split_pairs(o.setting_context, "="), true);
        else if (sig.exo_count() == 0)
            w.context = {};
        else
            throw UsageError(
                "--setting-context is required when the model has exogenous variables");
        setting = w;
    }

    if (!o.has_remove) {
        if (!o.force && m.graph.edges().size() > 20)
            throw nscm::SemanticError("too many edges to enumerate (pass --force)");
        Json arr = Json::array();
        std::string text;
        if (setting) {
            for (const auto& [removed, model] : nscm::list_setting_simplifications(m, *setting)) {
                arr.push_back(nscm::removed_edges_to_json(sig, removed));
                text += "removed: " + edge_set_text(sig, removed) + "\n";
            }
        } else {
            for (const auto& gs : nscm::enumerate_graph_simplifications(m.graph)) {
                arr.push_back(nscm::removed_edges_to_json(sig, gs.removed_edges));
                text += "removed: " + edge_set_text(sig, gs.removed_edges) + "\n";
            }
        }
        emit(o.json, Json{{"simplifications", arr}}, text);
        return 0;
    }

    const auto removed = edges_from_list(sig, o.remove_list);
    nscm::Dag result = nscm::remove_edges(m.graph, removed);
    const bool graph_ok = nscm::is_graph_simplification(m.graph, result);
    Json result_json = {{"graph_simplification", graph_ok}};
    std::string text = std::string("graph_simplification: ") + (graph_ok ? "true" : "false") + "\n";
    bool verdict = graph_ok;
    if (graph_ok) {
        nscm::GraphSimplification gs{m.graph, removed, result};
        nscm::Nscm simplified = nscm::structural_simplify(m, gs);
        if (setting) {
            const bool setting_ok = nscm::is_setting_simplification(m, simplified, *setting);
            result_json["setting_simplification"] = setting_ok;
            text +=
                std::string("setting_simplification: ") + (setting_ok ? "true" : "false") + "\n";
            verdict = verdict && setting_ok;
        }
        result_json["model"] = nscm::model_to_json(simplified);
    }
    emit(o.json, result_json, text);
    return verdict ? 0 : 1;
}

int run_extension(const Options& o) {
    nscm::Nscm m1 = load_validated(o.model_path);
    nscm::Nscm m2 = load_validated(o.model_path2);
    check_enumeration_size(m1, o.force);
    const bool verdict = nscm::is_interventional_extension(m1, m2);
    emit(o.json, Json{{"extension", verdict}}, std::string(verdict ? "true" : "false") + "\n");
    return verdict ? 0 : 1;
}

int run_discover(const Options& o) {
    if (o.model_path.empty() == o.possibilities.empty())
        throw UsageError("discover takes either a model or --possibilities FILE");
    nscm::PossibilitySet s;
    if (!o.model_path.empty()) {
        nscm::Nscm m = load_validated(o.model_path);
        check_enumeration_size(m, o.force);
        s = nscm::generate_possibilities(m);
    } else {
        s = nscm::load_possibility_file(o.possibilities);
    }
    const nscm::Signature& sig = *s.sig;

    if (!o.save_possibilities.empty()) {
        std::ofstream out(o.save_possibilities);
        if (!out) throw nscm::SemanticError("cannot write " + o.save_possibilities);
        out << nscm::possibility_set_to_json(s).dump(2) << "\n";
    }

    nscm::Dag gs = nscm::infer_gs(s);
    nscm::Dag build_graph = gs;
    if (o.graph_choice == "gs") {
        // keep the inferred graph
    } else if (o.graph_choice == "complete") {
        build_graph.parents.assign(sig.endo_count(), {});
        for (int i = 0; i < sig.endo_count(); ++i) {
            for (int u = 0; u < sig.exo_count(); ++u) build_graph.parents[i].push_back(u);
            for (int jpred = 0; jpred < i; ++jpred)
                build_graph.parents[i].push_back(sig.endo_var(jpred));
        }
    } else {
        std::ifstream in(o.graph_choice);
        if (!in) throw nscm::SemanticError("cannot open graph file " + o.graph_choice);
        Json gj = Json::parse(in);
        build_graph.parents.assign(sig.endo_count(), {});
        for (const auto& ej : gj.at("edges")) {
            nscm::VarId p = sig.find_var(ej.at(0).get<std::string>());
            nscm::VarId c = sig.find_var(ej.at(1).get<std::string>());
            if (p < 0 || c < 0) throw nscm::SemanticError("graph file names an unknown variable");
            if (sig.is_exogenous(c))
                throw nscm::SemanticError("graph edges must point at endogenous variables");
            build_graph.parents[sig.endo_index(c)].push_back(p);
        }
        for (auto& ps : build_graph.parents) {
            std::sort(ps.begin(), ps.end());
            ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        }
    }

    nscm::Nscm model = nscm::build_model(s, build_graph);

    std::size_t total_states = 0;
    for (const auto& [k, v] : s.records) total_states += v.size();

    Json gs_edges = Json::array();
    for (const auto& [p, c] : gs.edges())
        gs_edges.push_back(Json::array({sig.name_of(p), sig.name_of(c)}));

    std::string text = "records: " + std::to_string(s.records.size()) + "\n" +
                       "states: " + std::to_string(total_states) + "\n" +
                       "gs_edges: " + edge_set_text(sig, gs.edges()) + "\n" + "model:\n" +
                       nscm::model_to_json(model).dump(2) + "\n";
    emit(o.json,
         Json{{"records", s.records.size()},
              {"states", total_states},
              {"gs_edges", gs_edges},
              {"model", nscm::model_to_json(model)}},
         text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reasoning engine for finite-domain nondeterministic structural causal models"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json, "emit a JSON envelope on stdout");
        sub->add_flag("--force", o.force, "override enumeration size guards");
    };

    auto* validate = app.add_subcommand("validate", "check a model file and report diagnostics");
    validate->add_option("model", o.model_path, "model JSON file")->required();
    add_common(validate);

    auto* solve = app.add_subcommand("solve", "enumerate solutions");
    solve->add_option("model", o.model_path)->required();
    solve->add_option("--context", o.context, "context as K=V,... (\"\" for the empty context)");
    solve->add_option("--do", o.do_list, "intervention as K=V,...");
    add_common(solve);

    auto* eval = app.add_subcommand("eval", "evaluate a causal formula");
    eval->add_option("model", o.model_path)->required();
    eval->add_option("--formula", o.formula, "causal formula text")->required();
    eval->add_option("--context", o.context);
    eval->add_option("--state", o.state);
    add_common(eval);

    auto* depends = app.add_subcommand("depends", "decide (direct) dependence between variables");
    depends->add_option("model", o.model_path)->required();
    depends->add_option("--from", o.from_var)->required();
    depends->add_option("--to", o.to_var)->required();
    depends->add_flag("--direct", o.direct, "hold all other endogenous variables fixed");
    depends->add_flag("--witness", o.witness, "print the first witness");
    depends->add_flag("--require-distinct", o.require_distinct, "require x' != x");
    add_common(depends);

    auto* cause = app.add_subcommand("cause", "decide actual causation");
    cause->add_option("model", o.model_path)->required();
    cause->add_option("--state", o.state)->required();
    cause->add_option("--context", o.context);
    cause->add_option("--cause", o.cause, "NAME=VALUE")->required();
    cause->add_option("--effect", o.effect, "NAME=VALUE")->required();
    cause->add_flag("--witnesses", o.witnesses, "print all witnesses");
    cause->add_flag("--no-prune", o.no_prune, "do not skip non-ancestor simplifications");
    cause->add_flag("--require-distinct", o.require_distinct);
    add_common(cause);

    auto* simplify = app.add_subcommand("simplify", "list or check structural simplifications");
    simplify->add_option("model", o.model_path)->required();
    simplify->add_option("--remove", o.remove_list, "edges as P->C,...");
    simplify->add_option("--setting-state", o.setting_state);
    simplify->add_option("--setting-context", o.setting_context);
    add_common(simplify);

    auto* extension = app.add_subcommand(
        "extension", "is the second model an interventional extension of the first?");
    extension->add_option("model1", o.model_path)->required();
    extension->add_option("model2", o.model_path2)->required();
    add_common(extension);

    auto* discover = app.add_subcommand("discover", "idealized discovery from possibility sets");
    discover->add_option("model", o.model_path,
                         "ground-truth model to generate possibilities from");
    discover->add_option("--possibilities", o.possibilities, "possibility-set JSON file");
    discover->add_option("--graph", o.graph_choice, "gs | complete | edge-list JSON file");
    discover->add_option("--save-possibilities", o.save_possibilities, "write the set to a file");
    add_common(discover);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    o.has_context =
        solve->count("--context") || eval->count("--context") || cause->count("--context");
    o.has_state = eval->count("--state") > 0;
    o.has_remove = simplify->count("--remove") > 0;
    o.has_setting_state = simplify->count("--setting-state") > 0;
    o.has_setting_context = simplify->count("--setting-context") > 0;

    auto report_error = [&](const char* kind, const std::string& message) {
        if (o.json)
            std::cerr << Json{{"version", 1}, {"error", {{"kind", kind}, {"message", message}}}}.dump(2)
                      << "\n";
        else
            std::cerr << "error: " << message << "\n";
    };

    try {
        if (app.got_subcommand(validate)) return run_validate(o);
        if (app.got_subcommand(solve)) return run_solve(o);
        if (app.got_subcommand(eval)) return run_eval(o);
        if (app.got_subcommand(depends)) return run_depends(o);
        if (app.got_subcommand(cause)) return run_cause(o);
        if (app.got_subcommand(simplify)) return run_simplify(o);
        if (app.got_subcommand(extension)) return run_extension(o);
        if (app.got_subcommand(discover)) return run_discover(o);
    } catch (const UsageError& e) {
        report_error("usage", e.what());
        return 2;
    } catch (const nscm::FormulaParseError& e) {
        report_error("parse", e.what());
        return 2;
    } catch (const nlohmann::json::parse_error& e) {
        report_error("parse", e.what());
        return 2;
    } catch (const nscm::SemanticError& e) {
        report_error("semantic", e.what());
        return 3;
    }
    return 2;
}
