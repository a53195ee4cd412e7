#include "nscm/formula.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace nscm {

BasicFormulaPtr BasicFormula::atom(int endo, ValueId value) {
    auto f = std::make_shared<BasicFormula>();
    f->kind = Kind::Atom;
    f->endo = endo;
    f->value = value;
    return f;
}

BasicFormulaPtr BasicFormula::negation(BasicFormulaPtr inner) {
    auto f = std::make_shared<BasicFormula>();
    f->kind = Kind::Not;
    f->lhs = std::move(inner);
    return f;
}

BasicFormulaPtr BasicFormula::conjunction(BasicFormulaPtr l, BasicFormulaPtr r) {
    auto f = std::make_shared<BasicFormula>();
    f->kind = Kind::And;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

BasicFormulaPtr BasicFormula::disjunction(BasicFormulaPtr l, BasicFormulaPtr r) {
    auto f = std::make_shared<BasicFormula>();
    f->kind = Kind::Or;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

bool equal(const BasicFormula& a, const BasicFormula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case BasicFormula::Kind::Atom:
            return a.endo == b.endo && a.value == b.value;
        case BasicFormula::Kind::Not:
            return equal(*a.lhs, *b.lhs);
        case BasicFormula::Kind::And:
        case BasicFormula::Kind::Or:
            return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
    return false;
}

CausalFormulaPtr CausalFormula::leaf(BasicCausalFormula bf) {
    auto f = std::make_shared<CausalFormula>();
    f->kind = Kind::Basic;
    f->basic = std::move(bf);
    return f;
}

CausalFormulaPtr CausalFormula::negation(CausalFormulaPtr inner) {
    auto f = std::make_shared<CausalFormula>();
    f->kind = Kind::Not;
    f->lhs = std::move(inner);
    return f;
}

CausalFormulaPtr CausalFormula::conjunction(CausalFormulaPtr l, CausalFormulaPtr r) {
    auto f = std::make_shared<CausalFormula>();
    f->kind = Kind::And;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

CausalFormulaPtr CausalFormula::disjunction(CausalFormulaPtr l, CausalFormulaPtr r) {
    auto f = std::make_shared<CausalFormula>();
    f->kind = Kind::Or;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

bool equal(const CausalFormula& a, const CausalFormula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case CausalFormula::Kind::Basic:
            return a.basic.intervention == b.basic.intervention && a.basic.box == b.basic.box &&
                   equal(*a.basic.body, *b.basic.body);
        case CausalFormula::Kind::Not:
            return equal(*a.lhs, *b.lhs);
        case CausalFormula::Kind::And:
        case CausalFormula::Kind::Or:
            return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok {
    Word, Eq, Arrow, LBracket, RBracket, LAngle, RAngle,
    LParen, RParen, Pipe, Amp, Bang, Comma, End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' ||
           c == '-';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t pos = i;
        switch (c) {
            case '=': out.push_back({Tok::Eq, "=", pos}); ++i; continue;
            case '[': out.push_back({Tok::LBracket, "[", pos}); ++i; continue;
            case ']': out.push_back({Tok::RBracket, "]", pos}); ++i; continue;
            case '>': out.push_back({Tok::RAngle, ">", pos}); ++i; continue;
            case '(': out.push_back({Tok::LParen, "(", pos}); ++i; continue;
            case ')': out.push_back({Tok::RParen, ")", pos}); ++i; continue;
            case '|': out.push_back({Tok::Pipe, "|", pos}); ++i; continue;
            case '&': out.push_back({Tok::Amp, "&", pos}); ++i; continue;
            case '!': out.push_back({Tok::Bang, "!", pos}); ++i; continue;
            case ',': out.push_back({Tok::Comma, ",", pos}); ++i; continue;
            case '<':
                if (i + 1 < text.size() && text[i + 1] == '-') {
                    out.push_back({Tok::Arrow, "<-", pos});
                    i += 2;
                } else {
                    out.push_back({Tok::LAngle, "<", pos});
                    ++i;
                }
                continue;
            default: break;
        }
        if (is_word_char(c)) {
            std::size_t j = i;
            while (j < text.size() && is_word_char(text[j])) ++j;
            out.push_back({Tok::Word, std::string(text.substr(i, j - i)), pos});
            i = j;
            continue;
        }
        throw FormulaParseError(std::string("unexpected character '") + c + "'", pos);
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const Signature& sig) : tokens_(tokenize(text)), sig_(sig) {}

    CausalFormulaPtr parse() {
        auto f = parse_causal_or();
        expect(Tok::End, "unexpected trailing input");
        return f;
    }

private:
    const Token& peek(int ahead = 0) const { return tokens_[pos_ + ahead]; }
    const Token& advance() { return tokens_[pos_++]; }

    void expect(Tok kind, const std::string& msg) {
        if (peek().kind != kind) throw FormulaParseError(msg, peek().pos);
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormulaParseError(msg, peek().pos);
    }

    static bool starts_term(Tok kind) {
        return kind == Tok::Word || kind == Tok::Bang || kind == Tok::LParen;
    }

    CausalFormulaPtr parse_causal_or() {
        auto f = parse_causal_and();
        while (peek().kind == Tok::Pipe) {
            ++pos_;
            f = CausalFormula::disjunction(std::move(f), parse_causal_and());
        }
        return f;
    }

    CausalFormulaPtr parse_causal_and() {
        auto f = parse_cterm();
        while (peek().kind == Tok::Amp) {
            ++pos_;
            f = CausalFormula::conjunction(std::move(f), parse_cterm());
        }
        return f;
    }

    CausalFormulaPtr parse_cterm() {
        if (peek().kind == Tok::Bang) {
            ++pos_;
            return CausalFormula::negation(parse_cterm_base());
        }
        return parse_cterm_base();
    }

    CausalFormulaPtr parse_cterm_base() {
        switch (peek().kind) {
            case Tok::LParen: {
                ++pos_;
                auto f = parse_causal_or();
                expect(Tok::RParen, "expected ')'");
                return f;
            }
            case Tok::LBracket:
            case Tok::LAngle:
                return parse_modal();
            case Tok::Word: {
                BasicCausalFormula leaf;
                leaf.box = true;
                leaf.body = parse_atom();
                return CausalFormula::leaf(std::move(leaf));
            }
            default:
                fail("expected a formula");
        }
    }

    CausalFormulaPtr parse_modal() {
        const bool box = peek().kind == Tok::LBracket;
        ++pos_;
        BasicCausalFormula leaf;
        leaf.box = box;
        const Tok closer = box ? Tok::RBracket : Tok::RAngle;
        if (peek().kind != closer) {
            while (true) {
                leaf.intervention.assignments.push_back(parse_intervention_entry());
                if (peek().kind == Tok::Comma) {
                    ++pos_;
                    continue;
                }
                break;
            }
        }
        expect(closer, box ? "expected ']'" : "expected '>'");
        std::sort(leaf.intervention.assignments.begin(), leaf.intervention.assignments.end());
        for (std::size_t i = 1; i < leaf.intervention.assignments.size(); ++i)
            if (leaf.intervention.assignments[i].first == leaf.intervention.assignments[i - 1].first)
                fail("intervention variables must be distinct");
        leaf.body = parse_bexpr_or();
        return CausalFormula::leaf(std::move(leaf));
    }

    std::pair<VarId, ValueId> parse_intervention_entry() {
        if (peek().kind != Tok::Word) fail("expected a variable name");
        const Token& name = advance();
        VarId var = sig_.find_var(name.text);
        if (var < 0) throw FormulaParseError("unknown variable " + name.text, name.pos);
        if (sig_.is_exogenous(var))
            throw FormulaParseError("cannot intervene on exogenous variable " + name.text, name.pos);
        expect(Tok::Arrow, "expected '<-'");
        if (peek().kind != Tok::Word) fail("expected a value");
        const Token& val = advance();
        ValueId v = sig_.find_value(var, val.text);
        if (v < 0)
            throw FormulaParseError("value " + val.text + " is outside the range of " + name.text,
                                    val.pos);
        return {var, v};
    }

    BasicFormulaPtr parse_atom() {
        const Token& name = advance();
        VarId var = sig_.find_var(name.text);
        if (var < 0) throw FormulaParseError("unknown variable " + name.text, name.pos);
        if (sig_.is_exogenous(var))
            throw FormulaParseError("atoms must name endogenous variables, not " + name.text,
                                    name.pos);
        expect(Tok::Eq, "expected '='");
        if (peek().kind != Tok::Word) fail("expected a value");
        const Token& val = advance();
        ValueId v = sig_.find_value(var, val.text);
        if (v < 0)
            throw FormulaParseError("value " + val.text + " is outside the range of " + name.text,
                                    val.pos);
        return BasicFormula::atom(sig_.endo_index(var), v);
    }

    // Operators are consumed only when followed by a token that can start a
    // bterm, so "| [..]..." ends the modal body and binds at the causal level.
    BasicFormulaPtr parse_bexpr_or() {
        auto f = parse_bexpr_and();
        while (peek().kind == Tok::Pipe && starts_term(peek(1).kind)) {
            ++pos_;
            f = BasicFormula::disjunction(std::move(f), parse_bexpr_and());
        }
        return f;
    }

    BasicFormulaPtr parse_bexpr_and() {
        auto f = parse_bterm();
        while (peek().kind == Tok::Amp && starts_term(peek(1).kind)) {
            ++pos_;
            f = BasicFormula::conjunction(std::move(f), parse_bterm());
        }
        return f;
    }

    BasicFormulaPtr parse_bterm() {
        if (peek().kind == Tok::LBracket || peek().kind == Tok::LAngle)
            fail("nested modalities are not allowed");
        if (peek().kind == Tok::Bang) {
            ++pos_;
            return BasicFormula::negation(parse_bterm());
        }
        if (peek().kind == Tok::LParen) {
            ++pos_;
            auto f = parse_bexpr_or();
            expect(Tok::RParen, "expected ')'");
            return f;
        }
        if (peek().kind == Tok::Word) return parse_atom();
        if (peek().kind == Tok::LBracket || peek().kind == Tok::LAngle)
            fail("nested modalities are not allowed");
        fail("expected a basic formula");
    }

    std::vector<Token> tokens_;
    const Signature& sig_;
    std::size_t pos_ = 0;
};

}  // namespace

CausalFormulaPtr parse_formula(std::string_view text, const Signature& sig) {
    return Parser(text, sig).parse();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int basic_prec(const BasicFormula& f) {
    switch (f.kind) {
        case BasicFormula::Kind::Or: return 1;
        case BasicFormula::Kind::And: return 2;
        default: return 3;
    }
}

std::string print_basic(const BasicFormula& f, const Signature& sig) {
    switch (f.kind) {
        case BasicFormula::Kind::Atom:
            return sig.endogenous[f.endo].name + "=" +
                   sig.value_token(sig.endo_var(f.endo), f.value);
        case BasicFormula::Kind::Not: {
            if (f.lhs->kind == BasicFormula::Kind::Atom) return "!" + print_basic(*f.lhs, sig);
            return "!(" + print_basic(*f.lhs, sig) + ")";
        }
        case BasicFormula::Kind::And:
        case BasicFormula::Kind::Or: {
            const char* op = f.kind == BasicFormula::Kind::And ? " & " : " | ";
            const int prec = basic_prec(f);
            auto side = [&](const BasicFormula& child, bool right) {
                std::string s = print_basic(child, sig);
                // Parenthesize when the child binds looser, or equally on the
                // right (the tree is left-associative).
                if (basic_prec(child) < prec || (right && basic_prec(child) == prec))
                    return "(" + s + ")";
                return s;
            };
            return side(*f.lhs, false) + op + side(*f.rhs, true);
        }
    }
    return {};
}

std::string print_leaf(const BasicCausalFormula& leaf, const Signature& sig) {
    if (leaf.box && leaf.intervention.empty() &&
        leaf.body->kind == BasicFormula::Kind::Atom)
        return print_basic(*leaf.body, sig);
    std::string s = leaf.box ? "[" : "<";
    bool first = true;
    for (const auto& [var, val] : leaf.intervention.assignments) {
        if (!first) s += ",";
        first = false;
        s += sig.name_of(var) + "<-" + sig.value_token(var, val);
    }
    s += leaf.box ? "] " : "> ";
    s += print_basic(*leaf.body, sig);
    return s;
}

int causal_prec(const CausalFormula& f) {
    switch (f.kind) {
        case CausalFormula::Kind::Or: return 1;
        case CausalFormula::Kind::And: return 2;
        default: return 3;
    }
}

bool is_bare_atom_leaf(const CausalFormula& f) {
    return f.kind == CausalFormula::Kind::Basic && f.basic.box && f.basic.intervention.empty() &&
           f.basic.body->kind == BasicFormula::Kind::Atom;
}

// Modal leaves are parenthesized whenever they are an operand, since a modal
// body would otherwise swallow the operators that follow it.
std::string print_causal(const CausalFormula& f, const Signature& sig, bool is_root) {
    switch (f.kind) {
        case CausalFormula::Kind::Basic: {
            std::string s = print_leaf(f.basic, sig);
            if (!is_root && !is_bare_atom_leaf(f)) return "(" + s + ")";
            return s;
        }
        case CausalFormula::Kind::Not: {
            if (is_bare_atom_leaf(*f.lhs)) return "!" + print_causal(*f.lhs, sig, false);
            if (f.lhs->kind == CausalFormula::Kind::Basic)
                return "!" + print_causal(*f.lhs, sig, false);  // leaf adds its own parens
            return "!(" + print_causal(*f.lhs, sig, true) + ")";
        }
        case CausalFormula::Kind::And:
        case CausalFormula::Kind::Or: {
            const char* op = f.kind == CausalFormula::Kind::And ? " & " : " | ";
            const int prec = causal_prec(f);
            auto side = [&](const CausalFormula& child, bool right) {
                std::string s = print_causal(child, sig, false);
                if (child.kind != CausalFormula::Kind::Basic &&
                    (causal_prec(child) < prec || (right && causal_prec(child) == prec)))
                    return "(" + s + ")";
                return s;
            };
            return side(*f.lhs, false) + op + side(*f.rhs, true);
        }
    }
    return {};
}

}  // namespace

std::string print_formula(const CausalFormula& f, const Signature& sig) {
    return print_causal(f, sig, true);
}

namespace {

nlohmann::ordered_json basic_to_json(const BasicFormula& f, const Signature& sig) {
    using Json = nlohmann::ordered_json;
    switch (f.kind) {
        case BasicFormula::Kind::Atom:
            return Json{{"op", "atom"},
                        {"var", sig.endogenous[f.endo].name},
                        {"value", sig.value_token(sig.endo_var(f.endo), f.value)}};
        case BasicFormula::Kind::Not:
            return Json{{"op", "not"}, {"arg", basic_to_json(*f.lhs, sig)}};
        case BasicFormula::Kind::And:
            return Json{{"op", "and"},
                        {"args", Json::array({basic_to_json(*f.lhs, sig), basic_to_json(*f.rhs, sig)})}};
        case BasicFormula::Kind::Or:
            return Json{{"op", "or"},
                        {"args", Json::array({basic_to_json(*f.lhs, sig), basic_to_json(*f.rhs, sig)})}};
    }
    return {};
}

}  // namespace

nlohmann::ordered_json formula_to_json(const CausalFormula& f, const Signature& sig) {
    using Json = nlohmann::ordered_json;
    switch (f.kind) {
        case CausalFormula::Kind::Basic: {
            Json doj = Json::object();
            for (const auto& [var, val] : f.basic.intervention.assignments)
                doj[sig.name_of(var)] = sig.value_token(var, val);
            return Json{{"op", f.basic.box ? "box" : "diamond"},
                        {"do", doj},
                        {"body", basic_to_json(*f.basic.body, sig)}};
        }
        case CausalFormula::Kind::Not:
            return Json{{"op", "not"}, {"arg", formula_to_json(*f.lhs, sig)}};
        case CausalFormula::Kind::And:
            return Json{{"op", "and"},
                        {"args", Json::array({formula_to_json(*f.lhs, sig), formula_to_json(*f.rhs, sig)})}};
        case CausalFormula::Kind::Or:
            return Json{{"op", "or"},
                        {"args", Json::array({formula_to_json(*f.lhs, sig), formula_to_json(*f.rhs, sig)})}};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Evaluation

bool eval_basic(const Assignment& state, const BasicFormula& f) {
    switch (f.kind) {
        case BasicFormula::Kind::Atom: return state[f.endo] == f.value;
        case BasicFormula::Kind::Not: return !eval_basic(state, *f.lhs);
        case BasicFormula::Kind::And: return eval_basic(state, *f.lhs) && eval_basic(state, *f.rhs);
        case BasicFormula::Kind::Or: return eval_basic(state, *f.lhs) || eval_basic(state, *f.rhs);
    }
    return false;
}

namespace {

// Truth of a single basic causal formula at a full setting; w must already be
// known to be a solution.
bool eval_leaf_full(const Nscm& m, const World& w, const BasicCausalFormula& leaf) {
    SolveMods mods;
    mods.refine_at = &w;
    mods.post = &leaf.intervention;
    if (leaf.box) {
        return for_each_solution(m, w.context, mods, [&](const Assignment& st) {
            return eval_basic(st, *leaf.body);
        });
    }
    bool found = false;
    for_each_solution(m, w.context, mods, [&](const Assignment& st) {
        if (eval_basic(st, *leaf.body)) {
            found = true;
            return false;
        }
        return true;
    });
    return found;
}

template <typename LeafFn>
bool eval_tree(const CausalFormula& f, const LeafFn& leaf_fn) {
    switch (f.kind) {
        case CausalFormula::Kind::Basic: return leaf_fn(f.basic);
        case CausalFormula::Kind::Not: return !eval_tree(*f.lhs, leaf_fn);
        case CausalFormula::Kind::And:
            return eval_tree(*f.lhs, leaf_fn) && eval_tree(*f.rhs, leaf_fn);
        case CausalFormula::Kind::Or:
            return eval_tree(*f.lhs, leaf_fn) || eval_tree(*f.rhs, leaf_fn);
    }
    return false;
}

// Box leaves quantify universally over the solutions at the context; diamond
// leaves are their duals and quantify existentially.
bool eval_leaf_partial(const Nscm& m, const Assignment& context, const BasicCausalFormula& leaf) {
    if (leaf.box) {
        return for_each_solution(m, context, [&](const Assignment& st) {
            return eval_leaf_full(m, World{context, st}, leaf);
        });
    }
    bool found = false;
    for_each_solution(m, context, [&](const Assignment& st) {
        if (eval_leaf_full(m, World{context, st}, leaf)) {
            found = true;
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace

bool eval_full(const Nscm& m, const World& w, const CausalFormula& f) {
    if (!is_solution(m, w))
        throw SemanticError("full-setting evaluation requires the world to be a solution");
    return eval_tree(f, [&](const BasicCausalFormula& leaf) { return eval_leaf_full(m, w, leaf); });
}

bool eval_partial(const Nscm& m, const Assignment& context, const CausalFormula& f) {
    detail::check_context(m, context);
    return eval_tree(
        f, [&](const BasicCausalFormula& leaf) { return eval_leaf_partial(m, context, leaf); });
}

bool eval_model(const Nscm& m, const CausalFormula& f) {
    const auto contexts = all_contexts(*m.sig);
    return eval_tree(f, [&](const BasicCausalFormula& leaf) {
        if (leaf.box) {
            for (const auto& u : contexts)
                if (!eval_leaf_partial(m, u, leaf)) return false;
            return true;
        }
        for (const auto& u : contexts)
            if (eval_leaf_partial(m, u, leaf)) return true;
        return false;
    });
}

}  // namespace nscm
