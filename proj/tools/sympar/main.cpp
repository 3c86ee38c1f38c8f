// sympar: command-line driver for the partitioning and learning pipeline.
//
//   sympar partition <env> [-k N] [--out dump] [--raster ppm] ...
//   sympar train <env> --obs sympar --partition dump [--out csv] ...
//   sympar train <env> --obs tiling --budget N [--out csv] ...
//   sympar depth-sweep <env> --depths 1,2,3 [--seeds 1,2] [--out csv] ...
//   sympar similarity <env> [--partition dump] [--parts 5] [--states 5] ...
//
// <env> is a DSL file path or the name of a bundled benchmark.  Exit codes:
// 0 success, 1 invariant or runtime failure, 2 usage or input error.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sympar/bench.hpp"
#include "sympar/dsl.hpp"
#include "sympar/error.hpp"
#include "sympar/parallel.hpp"
#include "sympar/partition.hpp"
#include "sympar/partition_io.hpp"
#include "sympar/qlearn.hpp"
#include "sympar/tiling.hpp"

namespace {

using namespace sympar;

// ---------------------------------------------------------------------------
// Shared plumbing.

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Positional <env>: an existing file wins, otherwise a benchmark name.
Program load_env(const std::string& target, long scale) {
  if (std::filesystem::exists(target)) {
    if (scale != 1)
      throw ValidationError("--scale only applies to bundled benchmarks");
    return parse_program(read_file(target));
  }
  for (const auto& e : list_benchmarks())
    if (e.name == target) return load_benchmark(target, scale).first;
  throw ValidationError("no such file or benchmark: " + target);
}

Box box_of(const Program& p) {
  Box b;
  for (const auto& s : p.states) b.push_back({s.name, s.lo, s.hi, s.discrete});
  return b;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path);
  return f;
}

// Plain-text key=value configuration ('#' starts a comment).  Values fill
// in for flags the user did not pass: flags > spec file > defaults.
std::map<std::string, std::string> read_spec_file(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::istringstream is(read_file(path));
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value in spec file", n, 1);
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key in spec file", n, 1);
    if (!kv.emplace(key, val).second)
      throw ParseError("duplicate key '" + key + "' in spec file", n, 1);
  }
  return kv;
}

struct SpecBinding {
  std::string key;
  CLI::Option* opt;                             // skip when given on argv
  std::function<void(const std::string&)> set;  // parse + assign
};

class SpecBindings {
 public:
  void add(const std::string& key, CLI::Option* opt,
           std::function<void(const std::string&)> set) {
    items_.push_back({key, opt, std::move(set)});
  }
  void apply(const std::map<std::string, std::string>& kv) const {
    std::set<std::string> known;
    for (const auto& b : items_) {
      known.insert(b.key);
      auto it = kv.find(b.key);
      if (it == kv.end()) continue;
      if (b.opt->count() > 0) continue;  // command line wins
      try {
        b.set(it->second);
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        throw ValidationError("bad spec value for '" + b.key + "': " +
                              it->second);
      }
    }
    for (const auto& [k, v] : kv)
      if (!known.count(k))
        std::cerr << "warning: spec key '" << k
                  << "' is not used by this command\n";
  }

 private:
  std::vector<SpecBinding> items_;
};

long to_long(const std::string& s) {
  std::size_t used = 0;
  long v = std::stol(s, &used);
  if (used != s.size()) throw ValidationError("trailing junk in '" + s + "'");
  return v;
}

double to_dbl(const std::string& s) {
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw ValidationError("trailing junk in '" + s + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(static_cast<int>(to_long(tok)));
  return out;
}

// ---------------------------------------------------------------------------
// Option bundles shared by more than one subcommand.

struct SolverFlags {
  std::string backend = "internal";
  std::string cmd;  // empty: use SYMPAR_SOLVER when external
  int timeout_ms = 10000;
  std::string unknown = "keep";

  void attach(CLI::App* app, SpecBindings& spec) {
    auto* b = app->add_option("--solver", backend,
                              "Solver backend: internal or external")
                  ->check(CLI::IsMember({"internal", "external"}));
    auto* c = app->add_option(
        "--solver-cmd", cmd,
        "External solver command (default: $SYMPAR_SOLVER), reads SMT-LIB "
        "v2 on stdin");
    auto* t = app->add_option("--timeout-ms", timeout_ms,
                              "External solver timeout per query");
    auto* u = app->add_option("--unknown", unknown,
                              "Parts whose emptiness is UNKNOWN: keep or drop")
                  ->check(CLI::IsMember({"keep", "drop"}));
    spec.add("solver", b, [this](const std::string& v) { backend = v; });
    spec.add("solver-cmd", c, [this](const std::string& v) { cmd = v; });
    spec.add("timeout-ms", t,
             [this](const std::string& v) { timeout_ms = (int)to_long(v); });
    spec.add("unknown", u, [this](const std::string& v) { unknown = v; });
  }

  SolverConfig build() const {
    SolverConfig cfg;
    if (backend == "external") {
      cfg.backend = SolverConfig::Backend::External;
      cfg.external_cmd = cmd;
      if (cfg.external_cmd.empty())
        if (const char* env = std::getenv("SYMPAR_SOLVER"))
          cfg.external_cmd = env;
      if (cfg.external_cmd.empty())
        throw ValidationError(
            "external solver selected but neither --solver-cmd nor "
            "SYMPAR_SOLVER is set");
    }
    cfg.timeout_ms = timeout_ms;
    cfg.unknown_policy =
        unknown == "drop" ? UnknownPolicy::DropPart : UnknownPolicy::KeepPart;
    return cfg;
  }
};

struct TrainFlags {
  TrainConfig cfg;
  std::string seeding = "witness";
  std::string threshold;  // rational text; empty keeps the program's own

  void attach(CLI::App* app, SpecBindings& spec) {
    auto* ep = app->add_option("--episodes", cfg.episodes, "Training episodes");
    auto* ms = app->add_option("--max-steps", cfg.max_steps,
                               "Step cap per episode");
    auto* al = app->add_option("--alpha", cfg.alpha, "Learning rate");
    auto* ga = app->add_option("--gamma", cfg.gamma, "Discount factor");
    auto* e0 = app->add_option("--eps-start", cfg.eps_start,
                               "Initial exploration rate");
    auto* e1 = app->add_option("--eps-end", cfg.eps_end,
                               "Final exploration rate");
    auto* ef = app->add_option(
        "--eps-fraction", cfg.eps_fraction,
        "Fraction of episodes over which exploration decays");
    auto* sd = app->add_option("--seed", cfg.seed, "Training RNG seed");
    auto* fu = app->add_option("--fuel", cfg.fuel,
                               "Loop fuel per environment step");
    auto* se =
        app->add_option("--seeding", seeding,
                        "Episode start selection: witness or random")
            ->check(CLI::IsMember({"witness", "random"}));
    auto* th = app->add_option(
        "--threshold", threshold,
        "Success threshold on terminal reward (exact rational, e.g. -10)");
    spec.add("episodes", ep,
             [this](const std::string& v) { cfg.episodes = (int)to_long(v); });
    spec.add("max-steps", ms,
             [this](const std::string& v) { cfg.max_steps = (int)to_long(v); });
    spec.add("alpha", al, [this](const std::string& v) { cfg.alpha = to_dbl(v); });
    spec.add("gamma", ga, [this](const std::string& v) { cfg.gamma = to_dbl(v); });
    spec.add("eps-start", e0,
             [this](const std::string& v) { cfg.eps_start = to_dbl(v); });
    spec.add("eps-end", e1,
             [this](const std::string& v) { cfg.eps_end = to_dbl(v); });
    spec.add("eps-fraction", ef,
             [this](const std::string& v) { cfg.eps_fraction = to_dbl(v); });
    spec.add("seed", sd, [this](const std::string& v) {
      cfg.seed = (std::uint64_t)std::stoull(v);
    });
    spec.add("fuel", fu, [this](const std::string& v) {
      cfg.fuel = (std::uint64_t)std::stoull(v);
    });
    spec.add("seeding", se, [this](const std::string& v) { seeding = v; });
    spec.add("threshold", th, [this](const std::string& v) { threshold = v; });
  }

  TrainConfig build() const {
    TrainConfig c = cfg;
    c.seeding = seeding == "random" ? TrainConfig::Seeding::Random
                                    : TrainConfig::Seeding::WitnessFirst;
    if (!threshold.empty()) c.success_threshold = parse_rational(threshold);
    return c;
  }
};

// ---------------------------------------------------------------------------
// partition

struct PartitionCmd {
  std::string target;
  long scale = 1;
  int depth = -1;  // -1: benchmark recommendation, else 8
  std::uint64_t fuel = 100000;
  int jobs = 1;
  std::string out;
  std::string raster;
  int width = 0, height = 0;  // 0: pick from dimensionality
  SolverFlags solver;
  std::string spec_path;
  SpecBindings spec;

  CLI::App* attach(CLI::App& app) {
    auto* c = app.add_subcommand(
        "partition", "Partition the state box by symbolic execution");
    c->add_option("env", target, "DSL file or bundled benchmark name")
        ->required();
    auto* sc = c->add_option("--scale", scale,
                             "Scale factor for bundled benchmarks");
    auto* k = c->add_option("--depth,-k", depth, "Symbolic execution depth");
    auto* fu = c->add_option("--fuel", fuel, "Ground loop unroll budget");
    auto* jo = c->add_option("--jobs", jobs, "Worker threads for solver queries");
    auto* ou = c->add_option("--out,-o", out,
                             "Partition dump path (default <name>.partition)");
    auto* ra = c->add_option("--raster", raster,
                             "PPM raster path (default <out>.ppm)");
    auto* wi = c->add_option("--width", width, "Raster width in pixels");
    auto* he = c->add_option("--height", height, "Raster height in pixels");
    solver.attach(c, spec);
    c->add_option("--spec", spec_path, "key=value defaults file");
    spec.add("scale", sc, [this](const std::string& v) { scale = to_long(v); });
    spec.add("depth", k, [this](const std::string& v) { depth = (int)to_long(v); });
    spec.add("fuel", fu, [this](const std::string& v) {
      fuel = (std::uint64_t)std::stoull(v);
    });
    spec.add("jobs", jo, [this](const std::string& v) { jobs = (int)to_long(v); });
    spec.add("out", ou, [this](const std::string& v) { out = v; });
    spec.add("raster", ra, [this](const std::string& v) { raster = v; });
    spec.add("width", wi, [this](const std::string& v) { width = (int)to_long(v); });
    spec.add("height", he,
             [this](const std::string& v) { height = (int)to_long(v); });
    return c;
  }

  int run() {
    Program p = load_env(target, scale);
    int k = depth;
    if (k < 0) {
      k = 8;
      for (const auto& e : list_benchmarks())
        if (e.name == target) k = e.recommended_k;
    }
    SymparOptions opt;
    opt.depth_k = k;
    opt.fuel = fuel;
    opt.jobs = jobs;
    opt.solver = solver.build();

    auto t0 = std::chrono::steady_clock::now();
    Partition pt = build_partition(p, opt);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

    std::string dump = out.empty() ? p.name + ".partition" : out;
    std::string ppm = raster.empty() ? dump + ".ppm" : raster;
    save_partition(dump, pt);
    int w = width > 0 ? width : 256;
    int h = height > 0 ? height : (pt.box.size() >= 2 ? 256 : 32);
    save_partition_ppm(ppm, pt, w, h);

    std::size_t witnessed = 0;
    bool complement = false;
    for (const auto& part : pt.parts) {
      if (part.witness) ++witnessed;
      complement = complement || part.is_complement;
    }
    std::cout << "program " << pt.program_name << "  depth " << pt.depth_k
              << "  complete " << (pt.complete ? "yes" : "no") << "\n";
    std::cout << "parts " << pt.parts.size() << "  witnessed " << witnessed
              << "  complement " << (complement ? "yes" : "no") << "\n";
    std::size_t lo = 0;
    unsigned long long prod = 1;
    bool sat = false;  // prod saturated
    for (std::size_t a = 0; a < pt.action_pcs.size(); ++a) {
      std::size_t n = pt.action_pcs[a].size();
      std::cout << "action " << p.actions[a].name << ": |PC| = " << n << "\n";
      lo = std::max(lo, n);
      if (!sat && n > 0 && prod > (1ull << 62) / n) sat = true;
      if (!sat) prod *= n;
    }
    unsigned long long hi = prod + (complement ? 1 : 0);
    bool ok = pt.parts.size() >= lo && (sat || pt.parts.size() <= hi);
    std::cout << "bounds: max|PC| = " << lo << " <= parts = " << pt.parts.size()
              << " <= prod|PC|" << (complement ? " + 1" : "") << " = ";
    if (sat)
      std::cout << "(overflow)";
    else
      std::cout << hi;
    std::cout << " : " << (ok ? "ok" : "VIOLATED") << "\n";
    std::cout << "wrote " << dump << " and " << ppm << " (" << w << "x" << h
              << ") in " << ms << " ms\n";
    if (!ok) throw InvariantViolation("partition size bounds violated");
    return 0;
  }
};

// ---------------------------------------------------------------------------
// train

struct TrainCmd {
  std::string target;
  long scale = 1;
  std::string obs;  // sympar | tiling
  std::string partition_path;
  long budget = 0;
  std::string out = "metrics.csv";
  TrainFlags tf;
  std::string spec_path;
  SpecBindings spec;

  CLI::App* attach(CLI::App& app) {
    auto* c = app.add_subcommand("train",
                                 "Tabular Q-learning over an abstraction");
    c->add_option("env", target, "DSL file or bundled benchmark name")
        ->required();
    auto* sc = c->add_option("--scale", scale,
                             "Scale factor for bundled benchmarks");
    auto* ob = c->add_option("--obs", obs,
                             "Observation map: sympar (partition dump) or "
                             "tiling (uniform grid)")
                   ->required()
                   ->check(CLI::IsMember({"sympar", "tiling"}));
    auto* pa = c->add_option("--partition", partition_path,
                             "Partition dump from `sympar partition`");
    auto* bu = c->add_option(
        "--budget", budget,
        "Tiling cell budget; the grid side is the smallest n with n^d > "
        "budget (defaults to the dump's part count when --partition is "
        "given)");
    auto* ou = c->add_option("--out,-o", out, "Per-episode metrics CSV path");
    tf.attach(c, spec);
    c->add_option("--spec", spec_path, "key=value defaults file");
    spec.add("scale", sc, [this](const std::string& v) { scale = to_long(v); });
    spec.add("obs", ob, [this](const std::string& v) { obs = v; });
    spec.add("partition", pa,
             [this](const std::string& v) { partition_path = v; });
    spec.add("budget", bu, [this](const std::string& v) { budget = to_long(v); });
    spec.add("out", ou, [this](const std::string& v) { out = v; });
    return c;
  }

  int run() {
    Program p = load_env(target, scale);
    std::optional<Partition> pt;
    std::optional<TileObservation> tiles;
    const ObservationMap* map = nullptr;
    std::optional<PartitionObservation> pobs;

    if (!partition_path.empty()) {
      if (!std::filesystem::exists(partition_path))
        throw ValidationError("partition dump not found: " + partition_path);
      pt = load_partition(partition_path);
      if (pt->program_name != p.name)
        throw ValidationError("partition dump is for program '" +
                              pt->program_name + "', not '" + p.name + "'");
      if (pt->box.size() != p.states.size())
        throw ValidationError("partition dump dimensionality mismatch");
    }

    if (obs == "sympar") {
      if (!pt)
        throw ValidationError("--obs sympar needs --partition <dump>");
      pobs.emplace(*pt);
      map = &*pobs;
      std::cout << "observation: sympar partition, " << pt->parts.size()
                << " parts\n";
    } else {
      std::size_t b = budget > 0 ? (std::size_t)budget
                      : pt       ? pt->parts.size()
                                 : 0;
      if (b == 0)
        throw ValidationError("--obs tiling needs --budget or --partition");
      tiles.emplace(make_tiling(box_of(p), b));
      map = &*tiles;
      std::cout << "observation: tiling, budget " << b << " -> side "
                << tiles->side() << " -> " << tiles->size() << " tiles\n";
    }

    TrainResult r = train(p, *map, tf.build());

    auto f = open_out(out);
    f << "episode,accumulated,steps,outcome\n";
    for (const auto& e : r.metrics.episodes) {
      f << e.episode << "," << fmt_double(e.accumulated) << "," << e.steps
        << ","
        << (e.outcome == Outcome::Success   ? "success"
            : e.outcome == Outcome::Failure ? "failure"
                                            : "timeout")
        << "\n";
    }
    std::cout << "episodes " << r.metrics.episodes.size() << "  success "
              << fmt_double(r.metrics.success_pct) << "%  failure "
              << fmt_double(r.metrics.failure_pct) << "%  timeout "
              << fmt_double(r.metrics.timeout_pct) << "%  opt "
              << fmt_double(r.metrics.opt_pct) << "%\n";
    std::cout << "best accumulated " << fmt_double(r.metrics.best_accumulated)
              << "  mean " << fmt_double(r.metrics.mean_accumulated) << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// depth-sweep

struct SweepCmd {
  std::string target;
  long scale = 1;
  std::string depths_text;
  std::string seeds_text = "1";
  int jobs = 1;
  std::string out = "sweep.csv";
  SolverFlags solver;
  TrainFlags tf;
  std::string spec_path;
  SpecBindings spec;

  CLI::App* attach(CLI::App& app) {
    auto* c = app.add_subcommand(
        "depth-sweep", "Partition and train across execution depths");
    c->add_option("env", target, "DSL file or bundled benchmark name")
        ->required();
    auto* sc = c->add_option("--scale", scale,
                             "Scale factor for bundled benchmarks");
    auto* de = c->add_option("--depths", depths_text,
                             "Comma-separated depth list, e.g. 1,2,4,8");
    auto* se = c->add_option("--seeds", seeds_text,
                             "Comma-separated training seeds (distinct)");
    auto* jo = c->add_option("--jobs", jobs, "Worker threads across runs");
    auto* ou = c->add_option("--out,-o", out, "Sweep CSV path");
    solver.attach(c, spec);
    tf.attach(c, spec);  // --fuel covers unrolling and training both
    c->add_option("--spec", spec_path, "key=value defaults file");
    spec.add("scale", sc, [this](const std::string& v) { scale = to_long(v); });
    spec.add("depths", de, [this](const std::string& v) { depths_text = v; });
    spec.add("seeds", se, [this](const std::string& v) { seeds_text = v; });
    spec.add("jobs", jo, [this](const std::string& v) { jobs = (int)to_long(v); });
    spec.add("out", ou, [this](const std::string& v) { out = v; });
    return c;
  }

  int run() {
    Program p = load_env(target, scale);
    std::vector<int> depths = parse_int_list(depths_text);
    std::vector<int> seeds = parse_int_list(seeds_text);
    if (depths.empty()) throw ValidationError("--depths must be non-empty");
    if (seeds.empty()) throw ValidationError("--seeds must be non-empty");
    std::set<int> uniq(seeds.begin(), seeds.end());
    if (uniq.size() != seeds.size())
      throw ValidationError("--seeds must be distinct");

    SolverConfig scfg = solver.build();
    // Partitions first (parallel over depths), then the training grid.
    std::function<Partition(std::size_t)> build = [&](std::size_t i) {
      SymparOptions opt;
      opt.depth_k = depths[i];
      opt.fuel = tf.cfg.fuel;
      opt.solver = scfg;
      return build_partition(p, opt);
    };
    std::vector<Partition> parts = parallel_map(depths.size(), jobs, build);

    struct Cell {
      double best = 0.0;
    };
    std::function<Cell(std::size_t)> run_one = [&](std::size_t idx) {
      std::size_t di = idx / seeds.size();
      std::size_t si = idx % seeds.size();
      PartitionObservation obs(parts[di]);
      TrainConfig cfg = tf.build();
      cfg.seed = (std::uint64_t)seeds[si];
      TrainResult r = train(p, obs, cfg);
      return Cell{r.metrics.best_accumulated};
    };
    std::vector<Cell> cells =
        parallel_map(depths.size() * seeds.size(), jobs, run_one);

    auto f = open_out(out);
    f << "k,parts,best_accumulated\n";
    for (std::size_t di = 0; di < depths.size(); ++di) {
      double best = cells[di * seeds.size()].best;
      for (std::size_t si = 1; si < seeds.size(); ++si)
        best = std::max(best, cells[di * seeds.size() + si].best);
      f << depths[di] << "," << parts[di].parts.size() << ","
        << fmt_double(best) << "\n";
      std::cout << "k=" << depths[di] << "  parts=" << parts[di].parts.size()
                << "  best=" << fmt_double(best) << "\n";
    }
    std::cout << "wrote " << out << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// similarity

struct SimilarityCmd {
  std::string target;
  long scale = 1;
  std::string partition_path;
  int depth = -1;
  long n_parts = 5;
  long n_states = 5;
  long rollouts = 1;
  std::uint64_t sample_seed = 42;
  std::string out = "similarity.csv";
  SolverFlags solver;
  TrainFlags tf;
  std::string spec_path;
  SpecBindings spec;

  CLI::App* attach(CLI::App& app) {
    auto* c = app.add_subcommand(
        "similarity",
        "Spread of accumulated reward across concrete states per part");
    c->add_option("env", target, "DSL file or bundled benchmark name")
        ->required();
    auto* sc = c->add_option("--scale", scale,
                             "Scale factor for bundled benchmarks");
    auto* pa = c->add_option("--partition", partition_path,
                             "Partition dump (default: build one)");
    auto* k = c->add_option("--depth,-k", depth,
                            "Depth when building the partition here");
    auto* np = c->add_option("--parts", n_parts,
                             "Number of parts to sample (witnessed, by id)");
    auto* ns = c->add_option("--states", n_states,
                             "Concrete start states per part");
    auto* ro = c->add_option("--rollouts", rollouts,
                             "Greedy episodes averaged per start state");
    auto* ss = c->add_option("--sample-seed", sample_seed,
                             "Seed for in-part state sampling");
    auto* ou = c->add_option("--out,-o", out, "Similarity CSV path");
    solver.attach(c, spec);
    tf.attach(c, spec);
    c->add_option("--spec", spec_path, "key=value defaults file");
    spec.add("scale", sc, [this](const std::string& v) { scale = to_long(v); });
    spec.add("partition", pa,
             [this](const std::string& v) { partition_path = v; });
    spec.add("depth", k, [this](const std::string& v) { depth = (int)to_long(v); });
    spec.add("parts", np, [this](const std::string& v) { n_parts = to_long(v); });
    spec.add("states", ns,
             [this](const std::string& v) { n_states = to_long(v); });
    spec.add("rollouts", ro,
             [this](const std::string& v) { rollouts = to_long(v); });
    spec.add("sample-seed", ss, [this](const std::string& v) {
      sample_seed = (std::uint64_t)std::stoull(v);
    });
    spec.add("out", ou, [this](const std::string& v) { out = v; });
    return c;
  }

  int run() {
    Program p = load_env(target, scale);
    Partition pt;
    if (!partition_path.empty()) {
      if (!std::filesystem::exists(partition_path))
        throw ValidationError("partition dump not found: " + partition_path);
      pt = load_partition(partition_path);
      if (pt.program_name != p.name)
        throw ValidationError("partition dump is for program '" +
                              pt.program_name + "', not '" + p.name + "'");
    } else {
      SymparOptions opt;
      opt.depth_k = depth;
      if (opt.depth_k < 0) {
        opt.depth_k = 8;
        for (const auto& e : list_benchmarks())
          if (e.name == target) opt.depth_k = e.recommended_k;
      }
      opt.solver = solver.build();
      pt = build_partition(p, opt);
      std::cout << "built partition: " << pt.parts.size() << " parts at depth "
                << pt.depth_k << "\n";
    }

    if (n_parts <= 0 || n_states <= 0 || rollouts <= 0)
      throw ValidationError("--parts, --states and --rollouts must be >= 1");

    PartitionObservation obs(pt);
    TrainConfig cfg = tf.build();
    TrainResult r = train(p, obs, cfg);

    struct Row {
      int part_id;
      std::size_t n;
      double mean, stddev, norm_pct;
    };
    std::vector<Row> rows;
    for (const auto& part : pt.parts) {
      if ((long)rows.size() >= n_parts) break;
      if (!part.witness || part.is_complement) continue;
      std::vector<ConcreteState> starts = sample_part_states(
          pt, part.id, (std::size_t)n_states, sample_seed);
      if (starts.empty()) continue;
      std::vector<double> acc =
          evaluate_policy(p, obs, r.q, starts, (int)rollouts, cfg.max_steps,
                          cfg.seed);
      double mean = 0;
      for (double a : acc) mean += a;
      mean /= (double)acc.size();
      double var = 0;
      for (double a : acc) var += (a - mean) * (a - mean);
      var /= (double)acc.size();
      double sd = std::sqrt(var);
      double norm = std::abs(mean) > 0 ? 100.0 * sd / std::abs(mean)
                    : sd > 0           ? std::numeric_limits<double>::infinity()
                                       : 0.0;
      rows.push_back({part.id, acc.size(), mean, sd, norm});
    }
    if (rows.empty())
      throw ValidationError(
          "no sampleable parts: nothing witnessed or states not found");

    auto f = open_out(out);
    f << "part_id,n_states,mean,std,normalized_std_pct\n";
    for (const auto& row : rows) {
      f << row.part_id << "," << row.n << "," << fmt_double(row.mean) << ","
        << fmt_double(row.stddev) << "," << fmt_double(row.norm_pct) << "\n";
      std::cout << "part " << row.part_id << ": n=" << row.n
                << " mean=" << fmt_double(row.mean)
                << " std=" << fmt_double(row.stddev) << " ("
                << fmt_double(row.norm_pct) << "% of |mean|)\n";
    }
    std::cout << "wrote " << out << "\n";
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State-space partitioning by symbolic execution, plus tabular "
               "Q-learning over the resulting abstractions"};
  app.require_subcommand(1);

  PartitionCmd partition;
  TrainCmd train_cmd;
  SweepCmd sweep;
  SimilarityCmd similarity;
  CLI::App* c_partition = partition.attach(app);
  CLI::App* c_train = train_cmd.attach(app);
  CLI::App* c_sweep = sweep.attach(app);
  CLI::App* c_similarity = similarity.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors are always 2
  }

  try {
    if (*c_partition) {
      if (!partition.spec_path.empty())
        partition.spec.apply(read_spec_file(partition.spec_path));
      return partition.run();
    }
    if (*c_train) {
      if (!train_cmd.spec_path.empty())
        train_cmd.spec.apply(read_spec_file(train_cmd.spec_path));
      return train_cmd.run();
    }
    if (*c_sweep) {
      if (!sweep.spec_path.empty())
        sweep.spec.apply(read_spec_file(sweep.spec_path));
      return sweep.run();
    }
    if (*c_similarity) {
      if (!similarity.spec_path.empty())
        similarity.spec.apply(read_spec_file(similarity.spec_path));
      return similarity.run();
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
