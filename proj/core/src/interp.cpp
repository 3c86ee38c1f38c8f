#include "sympar/interp.hpp"

#include <string>

#include "sympar/error.hpp"
#include "sympar/interval.hpp"

namespace sympar {

namespace {

// Midpoint of a trig enclosure refined until its width drops below 2^-128,
// rounded to a denominator of 2^160 so values stay compact across steps.
Rational trig_eval(const TermPtr& t, const Valuation& env) {
  IntervalBox box;
  for (const auto& [name, value] : env) box.emplace(name, iv_point(value));
  static const Rational kWidth = Rational(1) / pow(Integer(2), 128);
  static const Integer kDenom = pow(Integer(2), 160);
  for (int prec : {200, 400, 800, 1600}) {
    IntervalCache cache;
    RatInterval iv = iv_eval_term(t, box, prec, &cache);
    if (!iv.bounded()) continue;
    if (iv.hi - iv.lo < kWidth) {
      Rational mid = (iv.lo + iv.hi) / 2;
      return Rational(rational_floor(mid * kDenom), kDenom);
    }
  }
  throw EvalError("term evaluation did not converge");
}

struct Interp {
  Valuation env;
  Rng& rng;
  StepTrace* trace;
  std::uint64_t fuel;

  void run(const std::vector<StmtPtr>& body) {
    for (const auto& s : body) exec(*s);
  }

  void exec(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Skip:
        return;
      case Stmt::Kind::Assign:
        env[s.var] = interp_eval_term(s.expr, env);
        return;
      case Stmt::Kind::Sample: {
        Rational u = rng.next_unit_rational();
        if (trace) trace->draws.push_back(u);
        if (s.dist == DistKind::Uniform) {
          env[s.var] = s.dist_a + (s.dist_b - s.dist_a) * u;
        } else {
          env[s.var] = u < s.dist_a ? Rational(1) : Rational(0);
        }
        return;
      }
      case Stmt::Kind::If:
        run(eval_at(s.guard, env) ? s.body : s.else_body);
        return;
      case Stmt::Kind::While:
        for (;;) {
          if (fuel == 0)
            throw EvalError("loop fuel exhausted at line " +
                            std::to_string(s.line));
          --fuel;
          if (!eval_at(s.guard, env)) return;
          run(s.body);
        }
    }
  }
};

}  // namespace

Rational interp_eval_term(const TermPtr& t, const Valuation& env) {
  auto exact = term_eval_exact(t, env);
  if (exact) return *exact;
  return trig_eval(t, env);
}

Valuation entry_env(const Program& p, const ConcreteState& s,
                    std::size_t action) {
  if (s.size() != p.states.size())
    throw InvariantViolation("state dimension mismatch");
  if (action >= p.actions.size())
    throw InvariantViolation("action index out of range");
  Valuation env;
  for (std::size_t i = 0; i < p.states.size(); ++i)
    env[p.states[i].name] = s[i];
  for (const auto& [name, value] : p.params) env[name] = value;
  for (std::size_t i = 0; i < p.action_components.size(); ++i)
    env[p.action_components[i]] = p.actions[action].values[i];
  return env;
}

StepResult concrete_step(const Program& p, const ConcreteState& s,
                         std::size_t action, Rng& rng, StepTrace* trace,
                         const InterpOptions& opt) {
  Interp in{entry_env(p, s, action), rng, trace, opt.fuel};
  in.run(p.body);
  StepResult r;
  r.next.reserve(p.states.size());
  for (const auto& v : p.next_vars) r.next.push_back(in.env.at(v));
  r.reward = in.env.at(p.reward_var);
  r.done = in.env.at(p.done_var) != 0;
  return r;
}

}  // namespace sympar
