#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>

#include "sympar/rational.hpp"

namespace sympar {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermOp {
  Constant,
  Variable,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Cos,
  Sin,
};

// Immutable arithmetic term over rational constants and named variables.
// Subterms are shared; builders fold ground subexpressions so substituting
// a fully concrete store yields a Constant node.
struct Term {
  TermOp op;
  Rational value;      // Constant
  std::string var;     // Variable
  TermPtr a, b;        // operands; b is null for unary ops

  bool is_const() const { return op == TermOp::Constant; }
  bool is_const(const Rational& v) const {
    return op == TermOp::Constant && value == v;
  }
};

TermPtr t_const(Rational v);
TermPtr t_var(std::string name);
TermPtr t_add(TermPtr a, TermPtr b);
TermPtr t_sub(TermPtr a, TermPtr b);
TermPtr t_mul(TermPtr a, TermPtr b);
TermPtr t_div(TermPtr a, TermPtr b);  // throws EvalError on constant zero divisor
TermPtr t_neg(TermPtr a);
TermPtr t_cos(TermPtr a);  // cos(0) folds to 1
TermPtr t_sin(TermPtr a);  // sin(0) folds to 0

// Sampling variables are named y0, y1, ... and that namespace is reserved:
// the program validator rejects user identifiers matching it.
std::string sample_var_name(int k);
bool is_sample_var_name(const std::string& name);

// Substitutes variables by terms; variables absent from the map are kept.
TermPtr subst_term(const TermPtr& t,
                   const std::map<std::string, TermPtr>& map);

// Collects variable names into out.
void term_vars(const TermPtr& t, std::set<std::string>& out);

bool term_has_trig(const TermPtr& t);

// Total structural order; 0 iff structurally equal.
int term_cmp(const TermPtr& a, const TermPtr& b);
inline bool term_equal(const TermPtr& a, const TermPtr& b) {
  return term_cmp(a, b) == 0;
}

std::size_t term_hash(const TermPtr& t);

// Renders with minimal parentheses; constants via rational_to_string.
std::string term_to_string(const TermPtr& t);

using Valuation = std::unordered_map<std::string, Rational>;

// Exact evaluation for trig-free terms; nullopt when a Cos/Sin node is
// encountered.  Throws EvalError on division by zero.
std::optional<Rational> term_eval_exact(const TermPtr& t, const Valuation& v);

// Approximate evaluation in doubles (std::cos/std::sin for trig).  Only a
// prefilter: callers must confirm anything that matters exactly.  Returns
// NaN on division by (near-)zero.
double term_eval_double(const TermPtr& t,
                        const std::unordered_map<std::string, double>& v);

}  // namespace sympar
