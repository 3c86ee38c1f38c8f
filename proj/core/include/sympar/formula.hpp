#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sympar/term.hpp"

namespace sympar {

// Atom comparison against zero: term < 0, term <= 0, term == 0.
// Every surface comparison is reduced to one of these three (or a negation
// handled by normalize); == is split into <= and >= where linear reasoning
// needs it, inside the solver.
enum class Cmp { Lt, Le, Eq };

// Surface comparison operators accepted by parsers; >, >= and != are sugar.
enum class CmpOp { Lt, Le, Eq, Gt, Ge, Ne };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { True, False, Atom, Not, And, Or };
  Kind kind;
  TermPtr term;  // Atom: term cmp 0
  Cmp cmp = Cmp::Le;
  std::vector<FormulaPtr> kids;  // Not: 1, And/Or: n
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(TermPtr term, Cmp cmp);
FormulaPtr f_cmp(TermPtr lhs, CmpOp op, TermPtr rhs);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> kids);
FormulaPtr f_or(std::vector<FormulaPtr> kids);

// Rewrites into negation-free NNF with canonical atoms and returns a
// deterministic form: structurally equal inputs yield identical outputs,
// so normalized formulas serve as dedup keys.
//
// Negated atoms are rewritten by polarity flip rather than a Not node:
//   not (t < 0)  : -t <= 0
//   not (t <= 0) : -t < 0
//   not (t == 0) : (t < 0) or (-t < 0)
// Linear atoms are scaled to coprime integer coefficients over name-sorted
// variables; equalities additionally fix the sign of the leading
// coefficient.  Ground atoms fold to true/false.  And/Or are flattened,
// deduplicated and sorted; no distribution happens here.
FormulaPtr normalize(const FormulaPtr& f);

int formula_cmp(const FormulaPtr& a, const FormulaPtr& b);
inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return formula_cmp(a, b) == 0;
}
std::size_t formula_hash(const FormulaPtr& f);

void formula_vars(const FormulaPtr& f, std::set<std::string>& out);
bool formula_has_trig(const FormulaPtr& f);

// Substitutes terms for variables inside every atom; vars absent from the
// map are kept.  The result is not normalized, but ground subterms fold.
FormulaPtr formula_subst(const FormulaPtr& f,
                         const std::map<std::string, TermPtr>& map);

// Exact truth of f at a full valuation.  Trig-free atoms are decided by
// rational arithmetic; trig atoms by adaptive-precision interval
// enclosures, escalating until the comparison resolves.  Throws EvalError
// if a comparison cannot be decided at maximum precision (an identically
// zero transcendental combination) or on division by zero.
bool eval_at(const FormulaPtr& f, const Valuation& v);

enum class Tri { False, True, Unknown };

// Three-valued truth under a partial valuation.  An atom mentioning an
// unbound variable is Unknown; False short-circuits conjunctions, so a
// decided-false prefix settles the whole formula.
Tri eval_partial(const FormulaPtr& f, const Valuation& v);

// Fast double-precision screen: Unknown whenever any deciding atom lands
// within margin of its boundary (or evaluates to NaN).  Strictly a
// prefilter for point sampling; True/False here are never authoritative.
Tri eval_approx(const FormulaPtr& f,
                const std::unordered_map<std::string, double>& v,
                double margin);

// Disjunctive normal form of a normalized formula: a list of cubes, each a
// list of atoms.  True yields one empty cube, False yields none.  Returns
// nullopt when the cube count would exceed cap.
std::optional<std::vector<std::vector<FormulaPtr>>> to_dnf(
    const FormulaPtr& normalized, std::size_t cap);

std::string formula_to_string(const FormulaPtr& f);

}  // namespace sympar
