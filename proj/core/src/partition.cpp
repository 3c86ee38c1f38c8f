#include "sympar/partition.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "sympar/error.hpp"
#include "sympar/parallel.hpp"
#include "sympar/prng.hpp"
#include "sympar/symexec.hpp"

namespace sympar {

namespace {

Box program_box(const Program& p) {
  Box box;
  box.reserve(p.states.size());
  for (const auto& sv : p.states)
    box.push_back({sv.name, sv.lo, sv.hi, sv.discrete});
  return box;
}

bool keep_status(SatStatus s, const SolverConfig& cfg) {
  if (s == SatStatus::Unsat) return false;
  if (s == SatStatus::Unknown)
    return cfg.unknown_policy == UnknownPolicy::KeepPart;
  return true;
}

ConcreteState state_from_valuation(const Box& box, const Valuation& v) {
  ConcreteState s;
  s.reserve(box.size());
  for (const auto& d : box) s.push_back(v.at(d.name));
  return s;
}

}  // namespace

std::vector<std::size_t> Partition::per_action_pc_count() const {
  std::vector<std::size_t> out;
  out.reserve(action_pcs.size());
  for (const auto& pcs : action_pcs) out.push_back(pcs.size());
  return out;
}

std::vector<FormulaPtr> coarsest_common_refinement(
    const std::vector<std::vector<FormulaPtr>>& sets, const SolverConfig& cfg,
    const FormulaPtr& context) {
  FormulaPtr ctx = context ? context : f_true();
  std::vector<FormulaPtr> frontier{f_true()};
  for (const auto& family : sets) {
    std::vector<FormulaPtr> cands;
    cands.reserve(frontier.size() * family.size());
    for (const auto& f : frontier)
      for (const auto& g : family) cands.push_back(f_and({f, g}));
    std::vector<SatStatus> status = parallel_map<SatStatus>(
        cands.size(), 1, [&](std::size_t i) {
          return check_sat(f_and({cands[i], ctx}), cfg).status;
        });
    std::vector<FormulaPtr> next;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (keep_status(status[i], cfg)) next.push_back(cands[i]);
    frontier = std::move(next);
  }
  for (auto& f : frontier) f = normalize(f);
  return frontier;
}

Partition build_partition(const Program& p, const SymparOptions& opt) {
  Partition out;
  out.program_name = p.name;
  out.depth_k = opt.depth_k;
  out.box = program_box(p);
  FormulaPtr boxf = box_formula(out.box);

  // Per-action path conditions: execute, project, box-filter.
  SymexecOptions sopt;
  sopt.depth_k = opt.depth_k;
  sopt.fuel = opt.fuel;
  sopt.prune_infeasible = opt.prune_infeasible;
  sopt.solver = opt.solver;

  struct ActionResult {
    std::vector<FormulaPtr> pcs;
    bool complete = true;
  };
  std::vector<ActionResult> per_action = parallel_map<ActionResult>(
      p.actions.size(), opt.jobs, [&](std::size_t a) {
        PathConditionSet raw = sym_execute(p, a, sopt);
        std::vector<FormulaPtr> proj =
            project_and_disjointify(raw.pcs, opt.solver);
        ActionResult r;
        r.complete = raw.complete;
        for (const auto& f : proj) {
          SatStatus st = check_sat(f_and({f, boxf}), opt.solver).status;
          if (keep_status(st, opt.solver)) r.pcs.push_back(f);
        }
        return r;
      });
  for (auto& r : per_action) {
    out.complete = out.complete && r.complete;
    out.action_pcs.push_back(std::move(r.pcs));
  }

  // Cross-action refinement with provenance tracking.
  struct Cand {
    FormulaPtr f;
    std::vector<int> prov;
  };
  std::vector<Cand> frontier{{f_true(), {}}};
  for (std::size_t a = 0; a < out.action_pcs.size(); ++a) {
    const auto& pcs = out.action_pcs[a];
    std::vector<Cand> cands;
    cands.reserve(frontier.size() * pcs.size());
    for (const auto& fr : frontier) {
      for (std::size_t i = 0; i < pcs.size(); ++i) {
        Cand c;
        c.f = f_and({fr.f, pcs[i]});
        c.prov = fr.prov;
        c.prov.push_back(static_cast<int>(i));
        cands.push_back(std::move(c));
      }
    }
    std::vector<SatStatus> status = parallel_map<SatStatus>(
        cands.size(), opt.jobs, [&](std::size_t i) {
          return check_sat(f_and({cands[i].f, boxf}), opt.solver).status;
        });
    std::vector<Cand> next;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (keep_status(status[i], opt.solver)) next.push_back(std::move(cands[i]));
    frontier = std::move(next);
  }

  // Finalize parts: normalize, dedup structurally (identical formulas can
  // only describe the same region), attach witnesses, assign ids.
  for (auto& cand : frontier) {
    FormulaPtr f = normalize(cand.f);
    bool dup = false;
    for (const auto& prev : out.parts)
      if (formula_equal(prev.formula, f)) {
        dup = true;
        break;
      }
    if (dup) continue;
    Part part;
    part.formula = f;
    part.provenance = std::move(cand.prov);
    out.parts.push_back(std::move(part));
  }

  // Complement part for totality.  Each action's recorded path conditions
  // (truncated prefixes included) union to a tautology, projection and
  // overlap repair preserve that union, and the box filter only removes
  // sets empty inside the box, so when no Unknown was dropped the kept
  // intersections already cover the box and the complement is provably
  // empty.  Only the DropPart policy can open gaps, so only then is the
  // complement considered (and still discarded when refutably empty).
  if (opt.solver.unknown_policy == UnknownPolicy::DropPart) {
    std::vector<FormulaPtr> union_kids;
    union_kids.reserve(out.parts.size());
    for (const auto& part : out.parts) union_kids.push_back(part.formula);
    FormulaPtr comp = f_not(f_or(std::move(union_kids)));
    SatStatus st = check_sat(f_and({comp, boxf}), opt.solver).status;
    if (st != SatStatus::Unsat) {
      Part part;
      part.formula = normalize(comp);
      part.is_complement = true;
      part.provenance.assign(p.actions.size(), -1);
      out.parts.push_back(std::move(part));
    }
  }

  // Witnesses (parallel; deterministic per part).
  std::vector<std::optional<Valuation>> wit =
      parallel_map<std::optional<Valuation>>(
          out.parts.size(), opt.jobs, [&](std::size_t i) {
            return witness(out.parts[i].formula, out.box, opt.solver);
          });
  for (std::size_t i = 0; i < out.parts.size(); ++i) {
    out.parts[i].id = static_cast<int>(i);
    if (wit[i]) {
      out.parts[i].witness = state_from_valuation(out.box, *wit[i]);
      out.parts[i].emptiness = Part::Emptiness::NonEmpty;
    } else {
      out.parts[i].emptiness = Part::Emptiness::Unknown;
    }
  }
  return out;
}

int locate(const Partition& pt, const ConcreteState& s) {
  if (s.size() != pt.box.size())
    throw InvariantViolation("state dimension mismatch in locate");
  Valuation v;
  for (std::size_t i = 0; i < pt.box.size(); ++i) v[pt.box[i].name] = s[i];
  // Trig parts are screened in doubles before the exact enclosure eval;
  // the screen only ever skips work, never decides membership: a miss
  // falls back to a fully exact scan below.
  std::unordered_map<std::string, double> dv;
  bool have_dv = false;
  int found = -1;
  bool screened = false;
  for (const auto& part : pt.parts) {
    if (formula_has_trig(part.formula)) {
      if (!have_dv) {
        for (const auto& [name, val] : v) dv[name] = to_double(val);
        have_dv = true;
      }
      if (eval_approx(part.formula, dv, 1e-9) == Tri::False) {
        screened = true;
        continue;
      }
    }
    if (!eval_at(part.formula, v)) continue;
    if (found >= 0)
      throw InvariantViolation("state matches parts " +
                               std::to_string(found) + " and " +
                               std::to_string(part.id) +
                               " (disjointness violated)");
    found = part.id;
  }
  if (found < 0 && screened) {
    for (const auto& part : pt.parts) {
      if (!eval_at(part.formula, v)) continue;
      if (found >= 0)
        throw InvariantViolation("state matches parts " +
                                 std::to_string(found) + " and " +
                                 std::to_string(part.id) +
                                 " (disjointness violated)");
      found = part.id;
    }
  }
  if (found < 0)
    throw InvariantViolation("state matches no part (totality violated)");
  return found;
}

BoundCheck check_size_bounds(const Partition& pt) {
  BoundCheck bc;
  bool has_complement = false;
  for (const auto& part : pt.parts) has_complement |= part.is_complement;
  std::size_t prod = 1;
  for (std::size_t n : pt.per_action_pc_count()) {
    bc.lower = std::max(bc.lower, n);
    if (n != 0 && prod > static_cast<std::size_t>(-1) / n)
      prod = static_cast<std::size_t>(-1);  // saturate
    else
      prod *= n;
  }
  bc.upper = prod + (has_complement ? 1 : 0);
  if (bc.upper < prod) bc.upper = static_cast<std::size_t>(-1);
  bc.actual = pt.parts.size();
  bc.ok = bc.lower <= bc.actual && bc.actual <= bc.upper;
  return bc;
}

std::vector<ConcreteState> sample_part_states(const Partition& pt,
                                              int part_id, std::size_t n,
                                              std::uint64_t seed) {
  const Part* part = nullptr;
  for (const auto& q : pt.parts)
    if (q.id == part_id) part = &q;
  if (!part) throw InvariantViolation("unknown part id");
  std::vector<ConcreteState> out;
  Rng rng(seed);
  const bool screen = formula_has_trig(part->formula);
  const std::size_t kMaxTries = 20000;
  for (std::size_t t = 0; t < kMaxTries && out.size() < n; ++t) {
    ConcreteState s;
    s.reserve(pt.box.size());
    Valuation v;
    for (const auto& d : pt.box) {
      Rational x = rng.next_rational_in(d.lo, d.hi);
      if (d.discrete) x = Rational(rational_floor(x));
      s.push_back(x);
      v[d.name] = x;
    }
    try {
      if (screen) {
        std::unordered_map<std::string, double> dv;
        for (const auto& [name, val] : v) dv[name] = to_double(val);
        if (eval_approx(part->formula, dv, 1e-9) != Tri::True) continue;
      }
      if (eval_at(part->formula, v)) out.push_back(std::move(s));
    } catch (const EvalError&) {
      // Boundary-undecidable sample: skip it.
    }
  }
  if (out.empty() && part->witness) out.push_back(*part->witness);
  return out;
}

}  // namespace sympar
