#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sympar/dsl.hpp"

namespace sympar {

// One entry of the built-in problem corpus.  The same text is shipped
// under benchmarks/envs/ so the CLI can be pointed at the files; the
// registry is the source of truth and the files are generated from it.
struct BenchmarkEntry {
  std::string name;
  std::string file;  // repo-relative path of the shipped encoding
  int recommended_k = 8;
  Rational success_threshold;
  std::string notes;
  // Scalable benchmarks accept a scale factor that multiplies every
  // spatial constant (box bounds, move sizes, region thresholds), a
  // change of variable that provably preserves part counts.
  bool scalable = true;
};

const std::vector<BenchmarkEntry>& list_benchmarks();

// DSL source text for a benchmark at the given scale (default 1).
// Throws ValidationError for unknown names, scale < 1, or a scale
// other than 1 on a fixed-scale benchmark.
std::string benchmark_source(const std::string& name, long scale = 1);

// Parsed and validated program plus its registry entry.
std::pair<Program, BenchmarkEntry> load_benchmark(const std::string& name,
                                                  long scale = 1);

}  // namespace sympar
