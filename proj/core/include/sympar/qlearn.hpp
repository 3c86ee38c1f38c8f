#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sympar/dsl.hpp"
#include "sympar/obs.hpp"
#include "sympar/prng.hpp"

namespace sympar {

struct TrainConfig {
  int episodes = 2000;
  int max_steps = 200;
  double alpha = 0.1;
  double gamma = 0.99;
  // Exploration decays linearly from eps_start to eps_end across the
  // first eps_fraction of the episodes, then stays at eps_end.
  double eps_start = 1.0;
  double eps_end = 0.05;
  double eps_fraction = 0.8;
  std::uint64_t seed = 1;
  std::uint64_t fuel = 100000;
  // WitnessFirst starts episode e from representative(e) while e is a
  // valid observation id, so every abstract state that has a concrete
  // representative is visited at least once before random restarts.
  enum class Seeding { WitnessFirst, Random };
  Seeding seeding = Seeding::WitnessFirst;
  // When set, every episode starts here instead of sampling the box.
  std::optional<ConcreteState> fixed_init;
  // Overrides the program's success threshold when set.
  std::optional<Rational> success_threshold;
};

struct QTable {
  std::size_t n_obs = 0;
  std::size_t n_actions = 0;
  std::vector<double> q;                // row-major [obs][action]
  std::vector<std::uint64_t> visits;    // update counts, same layout

  QTable() = default;
  QTable(std::size_t obs, std::size_t actions)
      : n_obs(obs),
        n_actions(actions),
        q(obs * actions, 0.0),
        visits(obs * actions, 0) {}

  double at(std::size_t o, std::size_t a) const {
    return q[o * n_actions + a];
  }
  double& at(std::size_t o, std::size_t a) { return q[o * n_actions + a]; }
  // Ties break toward the lowest action index.
  std::size_t greedy(std::size_t o) const;
};

enum class Outcome { Success, Failure, Timeout };

struct EpisodeRecord {
  int episode = 0;
  double accumulated = 0.0;
  int steps = 0;
  Outcome outcome = Outcome::Timeout;
};

struct RunMetrics {
  std::vector<EpisodeRecord> episodes;
  double success_pct = 0.0;
  double failure_pct = 0.0;
  double timeout_pct = 0.0;
  // Share of episodes whose accumulated reward reaches the best value
  // observed anywhere in the run (within floating-point slack).
  double opt_pct = 0.0;
  double best_accumulated = 0.0;
  double mean_accumulated = 0.0;
};

struct TrainResult {
  QTable q;
  RunMetrics metrics;
};

// Tabular Q-learning over the abstract states of obs.  An episode ends
// as a Success when the program raises done and the terminal reward is
// at least the success threshold (config override, else the program's
// declaration, else zero), as a Failure when done fires below it, and
// as a Timeout after max_steps.  Fully deterministic for a fixed seed.
TrainResult train(const Program& p, const ObservationMap& obs,
                  const TrainConfig& cfg);

// One greedy episode from init; returns the accumulated reward.  rng
// only feeds the program's own sampling statements.
double greedy_rollout(const Program& p, const ObservationMap& obs,
                      const QTable& q, const ConcreteState& init,
                      int max_steps, Rng& rng, std::uint64_t fuel = 100000);

// Greedy evaluation from each start state: episodes_per_start rollouts
// per start, averaged.  Result aligns with starts.
std::vector<double> evaluate_policy(const Program& p,
                                    const ObservationMap& obs,
                                    const QTable& q,
                                    const std::vector<ConcreteState>& starts,
                                    int episodes_per_start, int max_steps,
                                    std::uint64_t seed);

}  // namespace sympar
