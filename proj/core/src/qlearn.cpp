#include "sympar/qlearn.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sympar/error.hpp"
#include "sympar/interp.hpp"

namespace sympar {

std::size_t QTable::greedy(std::size_t o) const {
  std::size_t best = 0;
  double best_v = at(o, 0);
  for (std::size_t a = 1; a < n_actions; ++a) {
    if (at(o, a) > best_v) {
      best_v = at(o, a);
      best = a;
    }
  }
  return best;
}

namespace {

Rational resolve_threshold(const Program& p, const TrainConfig& cfg) {
  if (cfg.success_threshold) return *cfg.success_threshold;
  if (p.success_threshold) return *p.success_threshold;
  return Rational(0);
}

ConcreteState random_init(const Program& p, Rng& rng) {
  ConcreteState s;
  s.reserve(p.states.size());
  for (const StateVar& v : p.states) {
    if (v.discrete) {
      Integer span = rational_floor(v.hi) - rational_floor(v.lo) + 1;
      std::size_t count = span.convert_to<std::size_t>();
      s.push_back(v.lo + Rational(Integer(rng.next_index(count))));
    } else {
      s.push_back(rng.next_rational_in(v.lo, v.hi));
    }
  }
  return s;
}

ConcreteState initial_state(const Program& p, const ObservationMap& obs,
                            const TrainConfig& cfg, int episode, Rng& rng) {
  if (cfg.fixed_init) return *cfg.fixed_init;
  if (cfg.seeding == TrainConfig::Seeding::WitnessFirst &&
      static_cast<std::size_t>(episode) < obs.size()) {
    if (auto rep = obs.representative(static_cast<std::size_t>(episode)))
      return *rep;
  }
  return random_init(p, rng);
}

void finalize_metrics(RunMetrics& m) {
  if (m.episodes.empty()) return;
  const double n = static_cast<double>(m.episodes.size());
  double best = m.episodes.front().accumulated;
  double sum = 0.0;
  std::size_t succ = 0, fail = 0, tout = 0;
  for (const EpisodeRecord& r : m.episodes) {
    sum += r.accumulated;
    best = std::max(best, r.accumulated);
    switch (r.outcome) {
      case Outcome::Success: ++succ; break;
      case Outcome::Failure: ++fail; break;
      case Outcome::Timeout: ++tout; break;
    }
  }
  const double tol = std::max(1e-9, 1e-9 * std::fabs(best));
  std::size_t opt = 0;
  for (const EpisodeRecord& r : m.episodes)
    if (r.accumulated >= best - tol) ++opt;
  m.success_pct = 100.0 * static_cast<double>(succ) / n;
  m.failure_pct = 100.0 * static_cast<double>(fail) / n;
  m.timeout_pct = 100.0 * static_cast<double>(tout) / n;
  m.opt_pct = 100.0 * static_cast<double>(opt) / n;
  m.best_accumulated = best;
  m.mean_accumulated = sum / n;
}

}  // namespace

TrainResult train(const Program& p, const ObservationMap& obs,
                  const TrainConfig& cfg) {
  if (cfg.episodes < 1)
    throw ValidationError("training needs at least one episode");
  if (cfg.max_steps < 1)
    throw ValidationError("training needs at least one step per episode");
  const std::size_t n_actions = p.actions.size();

  TrainResult res;
  res.q = QTable(obs.size(), n_actions);
  QTable& q = res.q;
  Rng rng(cfg.seed);
  InterpOptions iopt;
  iopt.fuel = cfg.fuel;
  const Rational thr = resolve_threshold(p, cfg);
  const double decay_span = cfg.eps_fraction * cfg.episodes;

  for (int e = 0; e < cfg.episodes; ++e) {
    ConcreteState s = initial_state(p, obs, cfg, e, rng);
    double eps = cfg.eps_end;
    if (decay_span > 0.0 && e < decay_span)
      eps = cfg.eps_start + (cfg.eps_end - cfg.eps_start) * (e / decay_span);

    EpisodeRecord rec;
    rec.episode = e;
    double acc = 0.0;
    for (int t = 0; t < cfg.max_steps; ++t) {
      std::size_t o = obs.locate(s);
      std::size_t a = rng.next_unit_double() < eps ? rng.next_index(n_actions)
                                                   : q.greedy(o);
      StepResult step = concrete_step(p, s, a, rng, nullptr, iopt);
      double r = to_double(step.reward);
      acc += r;
      double target = r;
      if (!step.done) {
        std::size_t o2 = obs.locate(step.next);
        double best = q.at(o2, 0);
        for (std::size_t b = 1; b < n_actions; ++b)
          best = std::max(best, q.at(o2, b));
        target += cfg.gamma * best;
      }
      double& cell = q.at(o, a);
      cell += cfg.alpha * (target - cell);
      ++q.visits[o * n_actions + a];
      rec.steps = t + 1;
      if (step.done) {
        rec.outcome =
            step.reward >= thr ? Outcome::Success : Outcome::Failure;
        break;
      }
      s = std::move(step.next);
    }
    rec.accumulated = acc;
    res.metrics.episodes.push_back(rec);
  }
  finalize_metrics(res.metrics);
  return res;
}

double greedy_rollout(const Program& p, const ObservationMap& obs,
                      const QTable& q, const ConcreteState& init,
                      int max_steps, Rng& rng, std::uint64_t fuel) {
  InterpOptions iopt;
  iopt.fuel = fuel;
  ConcreteState s = init;
  double acc = 0.0;
  for (int t = 0; t < max_steps; ++t) {
    std::size_t o = obs.locate(s);
    StepResult step = concrete_step(p, s, q.greedy(o), rng, nullptr, iopt);
    acc += to_double(step.reward);
    if (step.done) break;
    s = std::move(step.next);
  }
  return acc;
}

std::vector<double> evaluate_policy(const Program& p,
                                    const ObservationMap& obs,
                                    const QTable& q,
                                    const std::vector<ConcreteState>& starts,
                                    int episodes_per_start, int max_steps,
                                    std::uint64_t seed) {
  if (episodes_per_start < 1)
    throw ValidationError("evaluation needs at least one episode per start");
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(starts.size());
  for (const ConcreteState& s0 : starts) {
    double sum = 0.0;
    for (int i = 0; i < episodes_per_start; ++i)
      sum += greedy_rollout(p, obs, q, s0, max_steps, rng);
    out.push_back(sum / episodes_per_start);
  }
  return out;
}

}  // namespace sympar
