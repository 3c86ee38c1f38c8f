#include <benchmark/benchmark.h>

#include "sympar/bench.hpp"
#include "sympar/partition.hpp"
#include "sympar/qlearn.hpp"
#include "sympar/tiling.hpp"

namespace {

using namespace sympar;

Box box_of(const Program& p) {
  Box b;
  for (const auto& s : p.states) b.push_back({s.name, s.lo, s.hi, s.discrete});
  return b;
}

void BM_train_navigation_partition(benchmark::State& state) {
  static const auto loaded = load_benchmark("navigation");
  static const Partition pt = [] {
    SymparOptions opt;
    opt.depth_k = loaded.second.recommended_k;
    return build_partition(loaded.first, opt);
  }();
  PartitionObservation obs(pt);
  TrainConfig cfg;
  cfg.episodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TrainResult r = train(loaded.first, obs, cfg);
    benchmark::DoNotOptimize(r.metrics.mean_accumulated);
  }
}
BENCHMARK(BM_train_navigation_partition)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_train_navigation_tiling(benchmark::State& state) {
  static const auto loaded = load_benchmark("navigation");
  TileObservation obs = make_tiling(box_of(loaded.first), 35);
  TrainConfig cfg;
  cfg.episodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TrainResult r = train(loaded.first, obs, cfg);
    benchmark::DoNotOptimize(r.metrics.mean_accumulated);
  }
}
BENCHMARK(BM_train_navigation_tiling)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_greedy_rollout(benchmark::State& state) {
  static const auto loaded = load_benchmark("navigation");
  static const Partition pt = [] {
    SymparOptions opt;
    opt.depth_k = loaded.second.recommended_k;
    return build_partition(loaded.first, opt);
  }();
  PartitionObservation obs(pt);
  TrainConfig cfg;
  cfg.episodes = 400;
  TrainResult r = train(loaded.first, obs, cfg);
  ConcreteState init{Rational(1), Rational(9)};
  Rng rng(3);
  for (auto _ : state) {
    double acc = greedy_rollout(loaded.first, obs, r.q, init, 200, rng);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_greedy_rollout)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
