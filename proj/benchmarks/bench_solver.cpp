#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "sympar/formula_text.hpp"
#include "sympar/prng.hpp"
#include "sympar/solver.hpp"

namespace {

using namespace sympar;

// Random conjunctions in the shape the partition fold produces: a few
// variables, single-digit coefficients, mixed strict and non-strict atoms.
std::vector<FormulaPtr> random_systems(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const char* vars[4] = {"a", "b", "c", "d"};
  std::vector<FormulaPtr> out;
  out.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t nv = 1 + rng.next_index(4);
    std::size_t na = 1 + rng.next_index(8);
    std::string txt;
    for (std::size_t i = 0; i < na; ++i) {
      if (i) txt += " and ";
      std::string lhs;
      for (std::size_t v = 0; v < nv; ++v) {
        long coef = static_cast<long>(rng.next_index(11)) - 5;
        if (coef == 0) continue;
        if (!lhs.empty()) lhs += " + ";
        lhs += std::to_string(coef) + "*" + vars[v];
      }
      if (lhs.empty()) lhs = "0";
      long rhs = static_cast<long>(rng.next_index(21)) - 10;
      const char* ops[3] = {"<", "<=", "=="};
      txt += "(" + lhs + " " + ops[rng.next_index(3)] + " " +
             std::to_string(rhs) + ")";
    }
    out.push_back(parse_formula(txt));
  }
  return out;
}

void BM_check_sat_linear(benchmark::State& state) {
  auto systems = random_systems(256, 7);
  SolverConfig cfg;
  std::size_t i = 0;
  for (auto _ : state) {
    auto r = check_sat(systems[i % systems.size()], cfg);
    benchmark::DoNotOptimize(r.status);
    ++i;
  }
}
BENCHMARK(BM_check_sat_linear);

void BM_eliminate_sampling_var(benchmark::State& state) {
  // The shape left by one sampled step: bounds on the sampling variable u
  // plus branch atoms mixing u with state.
  auto f = parse_formula(
      "-1/5 <= u and u <= 1/5 and x + 2*u < 9 and x + 2*u >= 1 and "
      "x + 2*u + 1 <= 10");
  SolverConfig cfg;
  for (auto _ : state) {
    auto g = eliminate(f, {"u"}, cfg);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_eliminate_sampling_var);

void BM_normalize_medium(benchmark::State& state) {
  auto f = parse_formula(
      "not ((x < 3 or y >= 2) and (x + y == 5 or not (x <= 0)) and "
      "(2*x - 3*y < 7 or y < 1))");
  for (auto _ : state) {
    auto g = normalize(f);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_normalize_medium);

}  // namespace

BENCHMARK_MAIN();
