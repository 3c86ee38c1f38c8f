#ifndef SYMPAR_INTERP_HPP
#define SYMPAR_INTERP_HPP

#include <cstdint>
#include <vector>

#include "sympar/dsl.hpp"
#include "sympar/prng.hpp"

namespace sympar {

struct StepResult {
  ConcreteState next;  // aligned with Program::states
  Rational reward;
  bool done = false;
};

// The unit-interval draws made during one step, in draw order.  Replaying a
// trace against symbolic path conditions instantiates y_k := draws[k].
struct StepTrace {
  std::vector<Rational> draws;
};

struct InterpOptions {
  std::uint64_t fuel = 100000;  // loop-guard evaluations before EvalError
};

// Executes one environment step.  Deterministic given (p, s, a, rng state).
// The program body is responsible for keeping the next state inside the
// declared box; the interpreter applies no implicit clamping.  Throws
// EvalError on division by zero or fuel exhaustion.
StepResult concrete_step(const Program& p, const ConcreteState& s,
                         std::size_t action, Rng& rng,
                         StepTrace* trace = nullptr,
                         const InterpOptions& opt = {});

// Term evaluation over a full valuation.  Exact for rational arithmetic;
// trig subterms are resolved by adaptive interval refinement and rounded
// deterministically to within 2^-128 absolute error.
Rational interp_eval_term(const TermPtr& t, const Valuation& env);

// The variable environment at body entry: state vars bound to s, params to
// their constants, action components to the chosen action's values.
Valuation entry_env(const Program& p, const ConcreteState& s,
                    std::size_t action);

}  // namespace sympar

#endif  // SYMPAR_INTERP_HPP
