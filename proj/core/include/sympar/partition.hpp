#ifndef SYMPAR_PARTITION_HPP
#define SYMPAR_PARTITION_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sympar/dsl.hpp"
#include "sympar/obs.hpp"
#include "sympar/solver.hpp"

namespace sympar {

struct Part {
  int id = 0;
  FormulaPtr formula;  // over state vars, box-free, normalized
  std::optional<ConcreteState> witness;  // in box, satisfies formula
  enum class Emptiness { NonEmpty, Unknown };
  Emptiness emptiness = Emptiness::Unknown;
  bool is_complement = false;
  // One entry per action: the index into that action's path-condition list
  // this part descends from; every entry is -1 for the complement part.
  std::vector<int> provenance;
};

struct Partition {
  std::string program_name;
  int depth_k = 0;
  bool complete = true;  // every action's symbolic execution terminated
  Box box;               // dim names are the program's state var names
  // Per action (declaration order): projected, disjoint, box-satisfiable
  // path conditions.  Part provenance indexes into these lists.
  std::vector<std::vector<FormulaPtr>> action_pcs;
  std::vector<Part> parts;

  std::vector<std::size_t> per_action_pc_count() const;
};

struct SymparOptions {
  int depth_k = 8;
  std::uint64_t fuel = 100000;
  bool prune_infeasible = false;
  SolverConfig solver;
  int jobs = 1;  // worker threads for emptiness checks within a fold level
};

// SymPar proper. The full pipeline: per-action symbolic execution, sampling-variable
// projection, cross-action refinement with UNSAT filtering, complement
// part for totality, witnesses, stable ids in construction order.
Partition build_partition(const Program& p, const SymparOptions& opt = {});

// The observation function O: maps an in-box state to the id of the unique
// part whose formula holds there.  Zero or multiple matches throw
// InvariantViolation (they would disprove totality or disjointness).
int locate(const Partition& pt, const ConcreteState& s);

// All satisfiable conjunctions choosing one formula per family, in
// family-major deterministic order.  `context` (e.g. a box constraint) is
// conjoined for the satisfiability checks but not stored in the results.
// Unknown conjunctions are kept or dropped per cfg.unknown_policy.
std::vector<FormulaPtr> coarsest_common_refinement(
    const std::vector<std::vector<FormulaPtr>>& sets, const SolverConfig& cfg,
    const FormulaPtr& context = nullptr);

// Partition-size bounds relative to the per-action counts:
//   max_a |PC^a|  <=  |parts|  <=  prod_a |PC^a| (+1 if complement present).
struct BoundCheck {
  std::size_t lower = 0;
  std::size_t upper = 0;  // saturating product
  std::size_t actual = 0;
  bool ok = false;
};
BoundCheck check_size_bounds(const Partition& pt);

// Up to n in-box states inside the given part, found by seeded rejection
// sampling (deterministic).  Falls back to the part's witness when
// sampling finds nothing.  May return fewer than n states.
std::vector<ConcreteState> sample_part_states(const Partition& pt,
                                              int part_id, std::size_t n,
                                              std::uint64_t seed);

// Adapter exposing a Partition as an ObservationMap for training.
class PartitionObservation : public ObservationMap {
 public:
  explicit PartitionObservation(const Partition& pt) : pt_(pt) {}
  std::size_t size() const override { return pt_.parts.size(); }
  // Training revisits the same states constantly (discrete grids, clamped
  // boundaries), so results are memoized by exact state value.
  std::size_t locate(const ConcreteState& s) const override {
    std::string key;
    for (const Rational& v : s) {
      key += rational_to_string(v);
      key += ',';
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    auto id = static_cast<std::size_t>(sympar::locate(pt_, s));
    std::lock_guard<std::mutex> lock(mu_);
    if (cache_.size() < kCacheCap) cache_.emplace(std::move(key), id);
    return id;
  }
  std::optional<ConcreteState> representative(std::size_t id) const override {
    return pt_.parts.at(id).witness;
  }

 private:
  static constexpr std::size_t kCacheCap = 1u << 20;
  const Partition& pt_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, std::size_t> cache_;
};

}  // namespace sympar

#endif  // SYMPAR_PARTITION_HPP
