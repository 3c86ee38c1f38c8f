#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sympar/formula.hpp"

namespace sympar {

// Linear view of a term: sum of coeff[var] * var plus a constant.
struct LinearExpr {
  std::map<std::string, Rational> coeff;  // no zero entries
  Rational cst;

  void add_var(const std::string& var, const Rational& c);
  void add(const LinearExpr& o, const Rational& k);  // this += k * o
  LinearExpr scaled(const Rational& k) const;
};

// nullopt when the term has no linear view (trig, variable products,
// variable divisors).
std::optional<LinearExpr> linearize(const TermPtr& t);

TermPtr linear_to_term(const LinearExpr& e);

// One linear constraint: coeff . x + cst  cmp  0.
struct LinearAtom {
  LinearExpr e;
  Cmp cmp;
};

// Conjunction of linear constraints with an explicit sorted variable order.
struct LinearSystem {
  std::vector<LinearAtom> atoms;
  std::vector<std::string> vars;

  static LinearSystem from_atoms(std::vector<LinearAtom> atoms);
};

struct LinFeasibility {
  bool sat = false;
  std::map<std::string, Rational> model;  // filled only when sat
};

// Exact Fourier-Motzkin feasibility over the rationals, sound and complete
// for Lt/Le/Eq conjunctions.  The model follows a deterministic
// per-variable picking rule (see pick_value in linear.cpp), so repeated
// runs return identical witnesses.
LinFeasibility lin_feasible(const LinearSystem& sys);

// Projects out one variable (exists-elimination).  An equality involving
// the variable is used as a substitution; otherwise lower/upper bound
// pairs are combined, with strictness carried when either side is strict.
LinearSystem lin_project(const LinearSystem& sys, const std::string& var);

// True when every atom of the normalized formula linearizes.
bool formula_is_linear(const FormulaPtr& f);

}  // namespace sympar
