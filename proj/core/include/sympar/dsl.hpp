#ifndef SYMPAR_DSL_HPP
#define SYMPAR_DSL_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympar/formula.hpp"
#include "sympar/rational.hpp"
#include "sympar/term.hpp"

namespace sympar {

// A minimal imperative probabilistic language for environment programs.
// One program describes a single environment step: given the current state,
// the chosen action's component values, and the declared parameters, the
// body computes the next-state components, a reward, and a done flag.

enum class DistKind { Uniform, Bernoulli };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  enum class Kind { Assign, Sample, If, While, Skip };
  Kind kind = Kind::Skip;
  int line = 0;  // 1-based source line, for diagnostics

  // Assign: var = expr.  Sample: var ~ dist(...).
  std::string var;
  TermPtr expr;

  // Sample: uniform(a, b) with a < b, or bernoulli(a) with 0 <= a <= 1.
  DistKind dist = DistKind::Uniform;
  Rational dist_a, dist_b;

  // If / While.
  FormulaPtr guard;
  std::vector<StmtPtr> body;       // then-branch or loop body
  std::vector<StmtPtr> else_body;  // If only
};

struct StateVar {
  std::string name;
  Rational lo, hi;
  bool discrete = false;
};

struct Action {
  std::string name;
  std::vector<Rational> values;  // one per action component
};

struct Program {
  std::string name;
  std::vector<StateVar> states;
  std::vector<std::pair<std::string, Rational>> params;  // declaration order
  std::vector<std::string> action_components;
  std::vector<Action> actions;
  std::vector<StmtPtr> body;
  std::vector<std::string> next_vars;  // one per state var, same order
  std::string reward_var;
  std::string done_var;
  std::optional<Rational> success_threshold;
};

// One concrete state, components aligned with Program::states.
using ConcreteState = std::vector<Rational>;

// Parses a program from DSL text.  Diagnostics carry line/column.
// The returned program has passed validate_program.
Program parse_program(const std::string& source);

// Structural checks beyond syntax: name clashes and reserved names,
// definite assignment of every read variable, action arities, bounds,
// distribution arguments.  Throws ValidationError.
void validate_program(const Program& p);

// Prints a program in the surface syntax; parse_program(print_program(p))
// is structurally identical to p.
std::string print_program(const Program& p);

std::string stmt_to_string(const Stmt& s, int indent = 0);

// Index of the named action, or nullopt.
std::optional<std::size_t> find_action(const Program& p,
                                       const std::string& name);

}  // namespace sympar

#endif  // SYMPAR_DSL_HPP
