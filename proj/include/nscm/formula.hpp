#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"
#include "nscm/model.hpp"

namespace nscm {

// Boolean tree over atoms X = x (endogenous X). Atoms store the endogenous
// index, not the global VarId.
struct BasicFormula;
using BasicFormulaPtr = std::shared_ptr<const BasicFormula>;

struct BasicFormula {
    enum class Kind { Atom, Not, And, Or };

    Kind kind = Kind::Atom;
    int endo = -1;        // Atom
    ValueId value = -1;   // Atom
    BasicFormulaPtr lhs;  // Not / And / Or
    BasicFormulaPtr rhs;  // And / Or

    static BasicFormulaPtr atom(int endo, ValueId value);
    static BasicFormulaPtr negation(BasicFormulaPtr f);
    static BasicFormulaPtr conjunction(BasicFormulaPtr l, BasicFormulaPtr r);
    static BasicFormulaPtr disjunction(BasicFormulaPtr l, BasicFormulaPtr r);
};

bool equal(const BasicFormula& a, const BasicFormula& b);

// [Y <- y]phi (box) or <Y <- y>phi (diamond, stored first-class and defined
// as the dual of box). The k = 0 case with box form is the bare basic
// formula.
struct BasicCausalFormula {
    Intervention intervention;
    bool box = true;
    BasicFormulaPtr body;
};

// Boolean tree over basic causal formulas; modalities never nest.
struct CausalFormula;
using CausalFormulaPtr = std::shared_ptr<const CausalFormula>;

struct CausalFormula {
    enum class Kind { Basic, Not, And, Or };

    Kind kind = Kind::Basic;
    BasicCausalFormula basic;  // Basic
    CausalFormulaPtr lhs;
    CausalFormulaPtr rhs;

    static CausalFormulaPtr leaf(BasicCausalFormula f);
    static CausalFormulaPtr negation(CausalFormulaPtr f);
    static CausalFormulaPtr conjunction(CausalFormulaPtr l, CausalFormulaPtr r);
    static CausalFormulaPtr disjunction(CausalFormulaPtr l, CausalFormulaPtr r);
};

bool equal(const CausalFormula& a, const CausalFormula& b);

// Grammar (whitespace insignificant, "&" binds tighter than "|"):
//   causal := cterm { ("|"|"&") cterm }
//   cterm  := ["!"] ( "(" causal ")" | modal | ident "=" value )
//   modal  := ("[" ints "]" | "<" ints ">") bexpr
//   ints   := [ ident "<-" value { "," ident "<-" value } ]
//   bexpr  := bterm { ("|"|"&") bterm }
//   bterm  := ["!"] ( "(" bexpr ")" | ident "=" value )
// A bare "X=v" at the causal level is the empty-intervention box modality.
// Throws FormulaParseError on syntax errors, unknown names/values, and
// nested modalities.
CausalFormulaPtr parse_formula(std::string_view text, const Signature& sig);

// Canonical text; parse_formula(print_formula(f)) reproduces f.
std::string print_formula(const CausalFormula& f, const Signature& sig);

// Node-tagged AST tree for --json output.
nlohmann::ordered_json formula_to_json(const CausalFormula& f, const Signature& sig);

// Truth of a basic formula in a state.
bool eval_basic(const Assignment& state, const BasicFormula& f);

// Satisfaction at a full setting (w must be a solution of m), at a partial
// setting, and at the model level. [Y<-y]phi holds at (m, w) iff every
// solution of the refined-then-intervened model satisfies phi; at partial and
// model level the box quantifies universally over solutions, and Boolean
// connectives stay outside that quantifier.
bool eval_full(const Nscm& m, const World& w, const CausalFormula& f);
bool eval_partial(const Nscm& m, const Assignment& context, const CausalFormula& f);
bool eval_model(const Nscm& m, const CausalFormula& f);

}  // namespace nscm
