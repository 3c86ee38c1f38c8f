#ifndef SYMPAR_SYMEXEC_HPP
#define SYMPAR_SYMEXEC_HPP

#include <cstdint>
#include <vector>

#include "sympar/dsl.hpp"
#include "sympar/solver.hpp"

namespace sympar {

struct PathConditionSet {
  std::size_t action = 0;       // index into Program::actions
  std::vector<FormulaPtr> pcs;  // normalized, deduplicated, DFS order
  bool complete = true;         // false if any path hit the depth bound
};

struct SymexecOptions {
  int depth_k = 8;                 // branch nodes allowed per path
  std::uint64_t fuel = 100000;     // ground loop-guard evaluations
  bool prune_infeasible = false;   // eager check_sat at every branch
  SolverConfig solver;             // used only when prune_infeasible
};

// Depth-bounded symbolic execution of p's body under one concrete action.
// State variables enter as symbols named after themselves; parameters and
// action components are substituted as rational constants.  A sampling
// statement allocates the next y_k with its [0, 1] support constraints
// (bernoulli additionally branches on y_k < p, which counts against the
// depth).  Guards that fold to a constant under the current store are taken
// without consuming depth.  A path at depth_k that reaches another branch
// records its prefix as a path condition and clears `complete`.
// Exploration is DFS, true branch first; the result order is deterministic.
PathConditionSet sym_execute(const Program& p, std::size_t action,
                             const SymexecOptions& opt = {});

// Existentially eliminates the sampling variables from every path
// condition, drops UNSAT results, then restores mutual exclusivity:
// while some pair (f, g) is satisfiable together, it is replaced by the
// UNSAT-filtered {f and g, f and not g, not f and g}.  The union of the
// output is semantically the union of the input.  Pairs whose overlap
// check returns Unknown are split as well (sound, possibly finer).
std::vector<FormulaPtr> project_and_disjointify(
    const std::vector<FormulaPtr>& pcs, const SolverConfig& cfg);

}  // namespace sympar

#endif  // SYMPAR_SYMEXEC_HPP
