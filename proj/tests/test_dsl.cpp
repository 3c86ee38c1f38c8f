// Environment DSL: parsing, validation diagnostics, concrete stepping
// against hand-simulated oracles, and print/parse stability.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "sympar/bench.hpp"
#include "sympar/dsl.hpp"
#include "sympar/error.hpp"
#include "sympar/interp.hpp"
#include "sympar/prng.hpp"

using namespace sympar;

namespace {

const char* kTiny = R"(env tiny
state x in [0, 10]
actions a
  only 0
end
body
  x = x + 1
  r = 0
  d = 1
end
next x
reward r
done d
)";

std::size_t action(const Program& p, const std::string& name) {
  auto idx = find_action(p, name);
  REQUIRE(idx.has_value());
  return *idx;
}

ConcreteState rnd_state(const Program& p, Rng& rng) {
  ConcreteState s;
  for (const StateVar& v : p.states) {
    if (v.discrete) {
      Integer span = rational_floor(v.hi) - rational_floor(v.lo) + 1;
      std::size_t count = span.convert_to<std::size_t>();
      s.push_back(v.lo + Rational(static_cast<long>(rng.next_index(count))));
    } else {
      s.push_back(rng.next_rational_in(v.lo, v.hi));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("assignment parses into the expected AST") {
  Program p = parse_program(kTiny);
  REQUIRE(p.body.size() == 3);
  const Stmt& s0 = *p.body[0];
  CHECK(s0.kind == Stmt::Kind::Assign);
  CHECK(s0.var == "x");
  CHECK(term_equal(s0.expr, t_add(t_var("x"), t_const(Rational(1)))));
  CHECK(p.name == "tiny");
  CHECK(p.next_vars == std::vector<std::string>{"x"});
  CHECK(p.reward_var == "r");
  CHECK(p.done_var == "d");
}

TEST_CASE("branching on an action component parses as a guard") {
  Program p = parse_program(R"(env branchy
state x in [0, 10]
actions d
  one 1
  two 2
end
body
  r = 0
  if d == 1
    r = 1
  end
  stop = 1
end
next x
reward r
done stop
)");
  REQUIRE(p.body.size() >= 2);
  const Stmt& s = *p.body[1];
  CHECK(s.kind == Stmt::Kind::If);
  REQUIRE(s.guard != nullptr);
  std::set<std::string> vs;
  formula_vars(s.guard, vs);
  CHECK(vs == std::set<std::string>{"d"});
  CHECK(s.body.size() == 1);
  CHECK(s.else_body.empty());
}

TEST_CASE("validation diagnostics") {
  // reads of never-assigned names carry the source line
  std::string bad = R"(env bad
state x in [0, 10]
actions a
  only 0
end
body
  r = z
  d = 1
end
next x
reward r
done d
)";
  try {
    parse_program(bad);
    CHECK(false);
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find("unbound variable z") != std::string::npos);
    CHECK(msg.find("line 7") != std::string::npos);
  }

  auto expect_invalid = [](const std::string& src, const char* needle) {
    try {
      parse_program(src);
      FAIL_CHECK("expected rejection mentioning " << needle);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_invalid(R"(env bad
state x in [0, 10]
actions dx dy
  U 0
end
body
  r = 0
  d = 1
end
next x
reward r
done d
)",
                 "components");

  expect_invalid(R"(env bad
state x in [5, 5]
actions a
  only 0
end
body
  r = 0
  d = 1
end
next x
reward r
done d
)",
                 "state variable");

  expect_invalid(R"(env bad
state x in [0, 10]
actions a
  only 0
end
body
  u ~ uniform(1, 0)
  r = 0
  d = 1
end
next x
reward r
done d
)",
                 "uniform");

  expect_invalid(R"(env bad
state x in [0, 10]
actions a
  only 0
end
body
  b ~ bernoulli(3/2)
  r = 0
  d = 1
end
next x
reward r
done d
)",
                 "bernoulli");

  expect_invalid(R"(env bad
state x in [0, 10]
actions a
  only 0
end
body
  y0 = 1
  r = 0
  d = 1
end
next x
reward r
done d
)",
                 "reserved for sampling");
}

TEST_CASE("navigation steps match the hand-simulated oracle") {
  auto [nav, entry] = load_benchmark("navigation");
  Rng rng(1);

  StepResult up = concrete_step(nav, {Rational(1), Rational(1)},
                                action(nav, "U"), rng);
  CHECK(up.next == ConcreteState{Rational(1), Rational(2)});
  CHECK(up.reward == Rational(-1));
  CHECK_FALSE(up.done);

  StepResult trap = concrete_step(nav, {Rational(7), Rational(1)},
                                  action(nav, "R"), rng);
  CHECK(trap.next == ConcreteState{Rational(8), Rational(1)});
  CHECK(trap.reward == Rational(-1000));
  CHECK(trap.done);

  StepResult cheese = concrete_step(nav, {Rational(6), Rational(1)},
                                    action(nav, "R"), rng);
  CHECK(cheese.next == ConcreteState{Rational(7), Rational(1)});
  CHECK(cheese.reward == Rational(0));
  CHECK(cheese.done);

  // walls clamp
  StepResult wall = concrete_step(nav, {Rational(0), Rational(0)},
                                  action(nav, "L"), rng);
  CHECK(wall.next == ConcreteState{Rational(0), Rational(0)});
  CHECK(wall.reward == Rational(-1));
  CHECK_FALSE(wall.done);
}

TEST_CASE("a skip path leaves the state unchanged") {
  Program p = parse_program(R"(env skippy
state x in [0, 1]
actions a
  only 0
end
body
  skip
  r = 0
  d = 0
end
next x
reward r
done d
)");
  Rng rng(3);
  StepResult s = concrete_step(p, {Rational(1, 2)}, 0, rng);
  CHECK(s.next == ConcreteState{Rational(1, 2)});
  CHECK_FALSE(s.done);
}

TEST_CASE("stepping is deterministic under a fixed seed") {
  auto [walk, entry] = load_benchmark("random_walk");
  ConcreteState s0{Rational(5)};
  Rng a(42), b(42), c(43);
  StepTrace ta, tb;
  StepResult ra = concrete_step(walk, s0, 0, a, &ta);
  StepResult rb = concrete_step(walk, s0, 0, b, &tb);
  CHECK(ra.next == rb.next);
  CHECK(ra.reward == rb.reward);
  CHECK(ra.done == rb.done);
  CHECK(ta.draws == tb.draws);
  REQUIRE(ta.draws.size() == 1);
  CHECK(ta.draws[0] >= Rational(0));
  CHECK(ta.draws[0] < Rational(1));

  StepResult rc = concrete_step(walk, s0, 0, c);
  CHECK(ra.next != rc.next);  // the draw moved
}

TEST_CASE("runaway loops burn fuel instead of hanging") {
  Program p = parse_program(R"(env spin
state x in [0, 10]
actions a
  only 0
end
body
  while x < 1
    skip
  end
  r = 0
  d = 1
end
next x
reward r
done d
)");
  Rng rng(1);
  InterpOptions opt;
  opt.fuel = 100;
  CHECK_THROWS_AS(concrete_step(p, {Rational(0)}, 0, rng, nullptr, opt),
                  EvalError);
  // a state that skips the loop is fine
  StepResult s = concrete_step(p, {Rational(2)}, 0, rng, nullptr, opt);
  CHECK(s.done);
}

TEST_CASE("division by zero surfaces as EvalError") {
  Program p = parse_program(R"(env divzero
state x in [0, 10]
actions a
  only 0
end
body
  q = 1 / x
  r = q
  d = 1
end
next x
reward r
done d
)");
  Rng rng(1);
  CHECK_THROWS_AS(concrete_step(p, {Rational(0)}, 0, rng), EvalError);
  StepResult ok = concrete_step(p, {Rational(2)}, 0, rng);
  CHECK(ok.reward == Rational(1, 2));
}

TEST_CASE("print and parse are mutually stable on the corpus") {
  for (const BenchmarkEntry& e : list_benchmarks()) {
    Program p = parse_program(benchmark_source(e.name));
    std::string printed = print_program(p);
    Program q = parse_program(printed);
    CHECK(print_program(q) == printed);
    CHECK(q.name == p.name);
    CHECK(q.actions.size() == p.actions.size());
    CHECK(q.states.size() == p.states.size());
  }
}

TEST_CASE("random triples step every benchmark without errors") {
  for (const BenchmarkEntry& e : list_benchmarks()) {
    auto [p, entry] = load_benchmark(e.name);
    Rng rng(777);
    int n = 10000;
    for (int i = 0; i < n; ++i) {
      ConcreteState s = rnd_state(p, rng);
      std::size_t a = rng.next_index(p.actions.size());
      StepResult r = concrete_step(p, s, a, rng);
      CHECK(r.next.size() == p.states.size());
    }
  }
}
