// Formula, term, normalization and solver behavior, pinned to small
// hand-checkable oracles plus randomized semantic properties.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "sympar/error.hpp"
#include "sympar/formula.hpp"
#include "sympar/formula_text.hpp"
#include "sympar/prng.hpp"
#include "sympar/rational.hpp"
#include "sympar/solver.hpp"

using namespace sympar;

namespace {

FormulaPtr F(const std::string& s) { return parse_formula(s); }

bool implies(const FormulaPtr& a, const FormulaPtr& b,
             const SolverConfig& cfg) {
  return check_sat(f_and({a, f_not(b)}), cfg).status == SatStatus::Unsat;
}

bool sem_equal(const FormulaPtr& a, const FormulaPtr& b,
               const SolverConfig& cfg) {
  return implies(a, b, cfg) && implies(b, a, cfg);
}

// Random linear term c0 + sum ci*vi with small integer coefficients.
TermPtr rnd_lin_term(Rng& rng, const std::vector<std::string>& vars) {
  TermPtr t = t_const(Rational(static_cast<long>(rng.next_index(21)) - 10));
  for (const auto& v : vars) {
    long c = static_cast<long>(rng.next_index(11)) - 5;
    if (c == 0) continue;
    t = t_add(t, t_mul(t_const(Rational(c)), t_var(v)));
  }
  return t;
}

FormulaPtr rnd_atom(Rng& rng, const std::vector<std::string>& vars) {
  static const CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Eq,
                              CmpOp::Gt, CmpOp::Ge, CmpOp::Ne};
  return f_cmp(rnd_lin_term(rng, vars), ops[rng.next_index(6)],
               t_const(Rational(0)));
}

FormulaPtr rnd_formula(Rng& rng, const std::vector<std::string>& vars,
                       int depth) {
  if (depth == 0 || rng.next_index(3) == 0) return rnd_atom(rng, vars);
  switch (rng.next_index(3)) {
    case 0:
      return f_not(rnd_formula(rng, vars, depth - 1));
    case 1:
      return f_and({rnd_formula(rng, vars, depth - 1),
                    rnd_formula(rng, vars, depth - 1)});
    default:
      return f_or({rnd_formula(rng, vars, depth - 1),
                   rnd_formula(rng, vars, depth - 1)});
  }
}

// Half integer points (so equalities sometimes fire), half dyadic ones.
Valuation rnd_valuation(Rng& rng, const std::vector<std::string>& vars) {
  Valuation v;
  for (const auto& name : vars) {
    if (rng.next_index(2) == 0)
      v[name] = Rational(static_cast<long>(rng.next_index(21)) - 10);
    else
      v[name] = rng.next_rational_in(Rational(-10), Rational(10));
  }
  return v;
}

}  // namespace

TEST_CASE("rational parse and print round trip") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(rational_to_string(Rational(7)) == "7");
  CHECK(rational_to_string(Rational(-3, 4)) == "-3/4");
  CHECK(parse_rational(rational_to_string(Rational(22, 7))) ==
        Rational(22, 7));
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(rational_floor(Rational(7, 2)) == Integer(3));
  CHECK(rational_floor(Rational(-7, 2)) == Integer(-4));
  CHECK(rational_ceil(Rational(7, 2)) == Integer(4));
}

TEST_CASE("term builders fold ground subexpressions") {
  CHECK(t_add(t_const(Rational(2)), t_const(Rational(3)))
            ->is_const(Rational(5)));
  CHECK(t_cos(t_const(Rational(0)))->is_const(Rational(1)));
  CHECK(t_sin(t_const(Rational(0)))->is_const(Rational(0)));
  CHECK_THROWS_AS(t_div(t_var("x"), t_const(Rational(0))), EvalError);

  TermPtr t = parse_term_text("2*x + 3");
  std::map<std::string, TermPtr> m{{"x", t_const(Rational(5))}};
  CHECK(subst_term(t, m)->is_const(Rational(13)));
}

TEST_CASE("normalize rewrites negations into polarity flips") {
  // not (x < 5) means x >= 5
  CHECK(formula_equal(normalize(f_not(F("x < 5"))), normalize(F("x >= 5"))));
  // double negation cancels
  CHECK(formula_equal(normalize(f_not(f_not(F("x == 0")))),
                      normalize(F("x == 0"))));
  // coefficients reduce to coprime integers
  CHECK(formula_equal(normalize(F("2*x < 10")), normalize(F("x < 5"))));
  // no Not nodes survive
  FormulaPtr n = normalize(f_not(F("x < 5 and y >= 2")));
  std::vector<FormulaPtr> work{n};
  while (!work.empty()) {
    FormulaPtr f = work.back();
    work.pop_back();
    CHECK(f->kind != Formula::Kind::Not);
    for (const auto& k : f->kids) work.push_back(k);
  }
}

TEST_CASE("normalize is idempotent and semantics preserving") {
  std::vector<std::string> vars{"x", "y", "z"};
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = rnd_formula(rng, vars, 3);
    FormulaPtr n = normalize(f);
    CHECK(formula_equal(normalize(n), n));
    for (int j = 0; j < 5; ++j) {
      Valuation v = rnd_valuation(rng, vars);
      CHECK(eval_at(n, v) == eval_at(f, v));
      CHECK(eval_at(f_not(f), v) == !eval_at(f, v));
    }
  }
}

TEST_CASE("eval_at is boundary exact") {
  FormulaPtr f = F("x < 5 and y >= 2");
  CHECK(eval_at(f, {{"x", Rational(3)}, {"y", Rational(2)}}));
  CHECK_FALSE(eval_at(f, {{"x", Rational(5)}, {"y", Rational(2)}}));
  CHECK_FALSE(eval_at(f, {{"x", Rational(3)}, {"y", Rational(199, 100)}}));
  CHECK_THROWS_AS(eval_at(F("x < 5"), Valuation{}), EvalError);
}

TEST_CASE("eval_partial short-circuits on a decided-false prefix") {
  FormulaPtr f = F("x < 5 and y < 2");
  CHECK(eval_partial(f, {{"x", Rational(6)}}) == Tri::False);
  CHECK(eval_partial(f, {{"x", Rational(3)}}) == Tri::Unknown);
  CHECK(eval_partial(f, {{"x", Rational(3)}, {"y", Rational(1)}}) ==
        Tri::True);
}

TEST_CASE("conjoin identities") {
  SolverConfig cfg;
  FormulaPtr f = F("x < 3");
  CHECK(formula_equal(normalize(f_and({f_true(), f})), normalize(f)));
  CHECK(normalize(f_and({f_false(), f}))->kind == Formula::Kind::False);
  CHECK(check_sat(f_and({F("x < 3"), F("x >= 5")}), cfg).status ==
        SatStatus::Unsat);
}

TEST_CASE("check_sat decides small linear formulas with checked models") {
  SolverConfig cfg;
  CHECK(check_sat(F("x > 10 and x <= 10"), cfg).status == SatStatus::Unsat);

  FormulaPtr f = F("x >= 0 and x < 1");
  SatResult r = check_sat(f, cfg);
  REQUIRE(r.status == SatStatus::Sat);
  REQUIRE(r.model.has_value());
  CHECK(eval_at(f, *r.model));

  // nonlinear conjunctions the refutation passes cannot settle stay unknown
  CHECK(check_sat(F("x * x == 2"), cfg).status == SatStatus::Unknown);
  // but complementary nonlinear literals refute syntactically
  CHECK(check_sat(f_and({F("x * x < 2"), f_not(F("x * x < 2"))}), cfg)
            .status == SatStatus::Unsat);
}

TEST_CASE("to_dnf expands with a cube cap") {
  FormulaPtr f = normalize(F("(x < 1 or x > 3) and (y < 2 or y > 4)"));
  auto dnf = to_dnf(f, 10);
  REQUIRE(dnf.has_value());
  CHECK(dnf->size() == 4);
  CHECK_FALSE(to_dnf(f, 3).has_value());
  auto top = to_dnf(normalize(f_true()), 10);
  REQUIRE(top.has_value());
  REQUIRE(top->size() == 1);
  CHECK(top->front().empty());
  CHECK(to_dnf(normalize(f_false()), 10)->empty());
}

TEST_CASE("eliminate projects one variable as in the classic examples") {
  SolverConfig cfg;
  FormulaPtr e1 = eliminate(F("x < y and y < 5"), {"y"}, cfg);
  std::set<std::string> vs;
  formula_vars(e1, vs);
  CHECK(vs.count("y") == 0);
  CHECK(sem_equal(e1, F("x < 5"), cfg));

  FormulaPtr e2 = eliminate(F("y >= 0 and y <= 1 and x == y"), {"y"}, cfg);
  vs.clear();
  formula_vars(e2, vs);
  CHECK(vs.count("y") == 0);
  CHECK(sem_equal(e2, F("x >= 0 and x <= 1"), cfg));

  // noise support [-1/5, 1/5] widens the projected interval by 2/5
  FormulaPtr walk = F(
      "u >= -1/5 and u <= 1/5 and x + 2 + u >= 0 and x + 2 + u <= 10");
  FormulaPtr e3 = eliminate(walk, {"u"}, cfg);
  CHECK(sem_equal(e3, F("x >= -11/5 and x <= 41/5"), cfg));

  CHECK_THROWS_AS(eliminate(F("x * y < 1"), {"y"}, cfg), SolverError);
}

TEST_CASE("eliminate preserves satisfiability on random linear systems") {
  SolverConfig cfg;
  std::vector<std::string> vars{"x", "y"};
  Rng rng(202);
  for (int i = 0; i < 150; ++i) {
    std::vector<FormulaPtr> atoms;
    std::size_t n = 1 + rng.next_index(6);
    for (std::size_t j = 0; j < n; ++j) atoms.push_back(rnd_atom(rng, vars));
    FormulaPtr f = f_and(std::move(atoms));
    FormulaPtr g = eliminate(f, {"y"}, cfg);
    std::set<std::string> vs;
    formula_vars(g, vs);
    CHECK(vs.count("y") == 0);
    CHECK(check_sat(f, cfg).status == check_sat(g, cfg).status);
  }
}

TEST_CASE("box_formula is closed on the faces") {
  Box box{{"x", Rational(0), Rational(10), false},
          {"y", Rational(0), Rational(5), false}};
  FormulaPtr b = box_formula(box);
  CHECK(eval_at(b, {{"x", Rational(0)}, {"y", Rational(0)}}));
  CHECK(eval_at(b, {{"x", Rational(10)}, {"y", Rational(5)}}));
  CHECK_FALSE(eval_at(b, {{"x", Rational(11)}, {"y", Rational(0)}}));
}

TEST_CASE("witness finds narrow parts and is deterministic") {
  SolverConfig cfg;
  Box box{{"x", Rational(0), Rational(10), false}};
  FormulaPtr narrow = F("x >= 5 and x < 5001/1000");
  auto w = witness(narrow, box, cfg);
  REQUIRE(w.has_value());
  CHECK(w->at("x") >= Rational(5));
  CHECK(w->at("x") < Rational(5001, 1000));
  CHECK(eval_at(narrow, *w));

  auto w2 = witness(narrow, box, cfg);
  REQUIRE(w2.has_value());
  CHECK(w->at("x") == w2->at("x"));

  CHECK_FALSE(witness(F("x < 0"), box, cfg).has_value());
}

TEST_CASE("witness respects the box even when the formula does not") {
  SolverConfig cfg;
  Box box{{"x", Rational(0), Rational(10), false}};
  auto w = witness(F("x > 8 and x < 20"), box, cfg);
  REQUIRE(w.has_value());
  CHECK(w->at("x") > Rational(8));
  CHECK(w->at("x") <= Rational(10));
}

TEST_CASE("formula text parser reports positions and round trips") {
  CHECK_THROWS_AS(parse_formula("x <"), ParseError);
  CHECK_THROWS_AS(parse_formula("x && y"), ParseError);
  try {
    parse_formula("x < 5 and (y >");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":") != std::string::npos);
  }

  std::vector<std::string> vars{"x", "y", "z"};
  Rng rng(303);
  for (int i = 0; i < 100; ++i) {
    FormulaPtr g = normalize(rnd_formula(rng, vars, 3));
    FormulaPtr back = parse_formula(formula_to_string(g));
    CHECK(formula_equal(normalize(back), g));
  }
}

TEST_CASE("prng helpers are deterministic and in range") {
  Rng a(7), b(7);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng r(9);
  for (int i = 0; i < 100; ++i) {
    Rational u = r.next_unit_rational();
    CHECK(u >= Rational(0));
    CHECK(u < Rational(1));
    CHECK(r.next_index(10) < 10);
    Rational d = r.next_rational_in(Rational(-3), Rational(5));
    CHECK(d >= Rational(-3));
    CHECK(d < Rational(5));
  }
}
