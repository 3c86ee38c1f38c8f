#include <benchmark/benchmark.h>

#include "sympar/bench.hpp"
#include "sympar/partition.hpp"
#include "sympar/prng.hpp"

namespace {

using namespace sympar;

Partition build_at_recommended(const std::string& name) {
  auto [p, entry] = load_benchmark(name);
  SymparOptions opt;
  opt.depth_k = entry.recommended_k;
  return build_partition(p, opt);
}

void BM_build_navigation(benchmark::State& state) {
  auto [p, entry] = load_benchmark("navigation");
  SymparOptions opt;
  opt.depth_k = entry.recommended_k;
  for (auto _ : state) {
    Partition pt = build_partition(p, opt);
    benchmark::DoNotOptimize(pt.parts.size());
  }
}
BENCHMARK(BM_build_navigation)->Unit(benchmark::kMillisecond);

void BM_build_braking_car(benchmark::State& state) {
  auto [p, entry] = load_benchmark("braking_car");
  SymparOptions opt;
  opt.depth_k = entry.recommended_k;
  for (auto _ : state) {
    Partition pt = build_partition(p, opt);
    benchmark::DoNotOptimize(pt.parts.size());
  }
}
BENCHMARK(BM_build_braking_car)->Unit(benchmark::kMillisecond);

void BM_locate_navigation(benchmark::State& state) {
  static const Partition pt = build_at_recommended("navigation");
  Rng rng(11);
  std::vector<ConcreteState> points;
  for (int i = 0; i < 1024; ++i) {
    ConcreteState s;
    for (const auto& d : pt.box) s.push_back(rng.next_rational_in(d.lo, d.hi));
    points.push_back(std::move(s));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    int id = locate(pt, points[i % points.size()]);
    benchmark::DoNotOptimize(id);
    ++i;
  }
}
BENCHMARK(BM_locate_navigation);

}  // namespace

BENCHMARK_MAIN();
