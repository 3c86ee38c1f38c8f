#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sympar/formula.hpp"
#include "sympar/smtlib.hpp"

namespace sympar {

// What to do with a part whose emptiness check comes back UNKNOWN:
// keep it (sound for totality, may retain empty parts) or drop it.
enum class UnknownPolicy { KeepPart, DropPart };

struct SolverConfig {
  enum class Backend { Internal, External };
  Backend backend = Backend::Internal;
  std::string external_cmd;  // shell command reading SMT-LIB v2 on stdin
  int timeout_ms = 10000;
  UnknownPolicy unknown_policy = UnknownPolicy::KeepPart;
  std::size_t dnf_cube_cap = 10000;
};

struct SatResult {
  SatStatus status = SatStatus::Unknown;
  std::optional<Valuation> model;  // satisfies the formula when present
  std::string unknown_reason;
};

// Satisfiability of a quantifier-free formula.
//
// Internal backend: normalize, expand to DNF (capped), then per cube:
//   1. syntactic refutation by complementary literals (works for any atoms),
//   2. exact Fourier-Motzkin on the linear atoms (complete when the cube is
//      fully linear),
//   3. an interval-propagation pass that can refute nonlinear cubes.
// Sound and complete for linear formulas; nonlinear cubes that survive the
// refutation passes come back Unknown.  The DNF cap also yields Unknown.
//
// External backend: the formula is shipped as SMT-LIB v2 to the configured
// command; the reply's model is verified by eval_at before being returned
// and is dropped (status preserved) if it fails to check.
SatResult check_sat(const FormulaPtr& f, const SolverConfig& cfg);

// Existentially eliminates the given variables.  Requires every atom
// mentioning an eliminated variable to be linear in it (coefficient a
// rational constant); other parts of the atom may be arbitrary.  Throws
// SolverError on a nonlinear occurrence.  Implemented by Fourier-Motzkin
// over the DNF, so check_sat(f) == check_sat(eliminate(f, vars)).
FormulaPtr eliminate(const FormulaPtr& f, const std::vector<std::string>& vars,
                     const SolverConfig& cfg);

struct BoxDim {
  std::string name;
  Rational lo, hi;
  bool discrete = false;
};
using Box = std::vector<BoxDim>;

// Conjunction of closed box constraints lo <= v <= hi.
FormulaPtr box_formula(const Box& box);

// A concrete state inside the box satisfying f, or nullopt if f is
// unsatisfiable there.  The box constraints are conjoined automatically.
// Decided queries use the solver's deterministic model; Unknown queries
// fall back to a deterministic grid-plus-seeded-sampling search, so a
// returned state always passes eval_at.
std::optional<Valuation> witness(const FormulaPtr& f, const Box& box,
                                 const SolverConfig& cfg);

}  // namespace sympar
