#include "sympar/solver.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sympar/error.hpp"
#include "sympar/interval.hpp"
#include "sympar/linear.hpp"
#include "sympar/prng.hpp"

namespace sympar {

namespace {

using Cube = std::vector<FormulaPtr>;

// ---------------------------------------------------------------------------
// Syntactic refutation: a cube containing both t<0 and (-t)<=0 (and the
// other complementary shapes below) is unsatisfiable regardless of the
// atoms' theory.  Terms are compared structurally, which the canonical
// normalize() forms make effective.
bool cube_syntactically_unsat(const Cube& cube) {
  for (std::size_t i = 0; i < cube.size(); ++i) {
    TermPtr neg_i = subst_term(t_neg(cube[i]->term), {});
    for (std::size_t j = 0; j < cube.size(); ++j) {
      if (i == j) continue;
      Cmp a = cube[i]->cmp, b = cube[j]->cmp;
      bool same = term_equal(cube[i]->term, cube[j]->term);
      bool neg = term_equal(neg_i, cube[j]->term);
      // t < 0 with t == 0;  t < 0 with -t < 0;  t < 0 with -t <= 0;
      // t == 0 with -t < 0.
      if (same && a == Cmp::Lt && b == Cmp::Eq) return true;
      if (neg && a == Cmp::Lt && (b == Cmp::Lt || b == Cmp::Le)) return true;
      if (neg && a == Cmp::Eq && b == Cmp::Lt) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Interval refutation for cubes with nonlinear atoms.  Bounds are seeded
// from the single-variable linear atoms, tightened by a few propagation
// rounds over all linear atoms, then each nonlinear atom is evaluated over
// the resulting box.  Purely a refutation: Unknown unless some atom's
// enclosure contradicts its comparison.
bool cube_interval_unsat(const Cube& cube) {
  IntervalBox box;
  std::vector<std::pair<LinearExpr, Cmp>> linear;
  std::vector<FormulaPtr> nonlinear;
  std::set<std::string> vars;
  for (const auto& atom : cube) {
    term_vars(atom->term, vars);
    auto lin = linearize(atom->term);
    if (lin) {
      linear.emplace_back(std::move(*lin), atom->cmp);
    } else {
      nonlinear.push_back(atom);
    }
  }
  if (nonlinear.empty()) return false;
  for (const auto& v : vars) box.emplace(v, iv_whole());

  // Propagate: from sum c_i x_i + c <= 0, bound x_j by the extremes of the
  // other terms.
  for (int round = 0; round < 8; ++round) {
    bool changed = false;
    for (const auto& [e, cmp] : linear) {
      if (cmp == Cmp::Eq) continue;  // handled as two bounds below
      for (const auto& [target, tc] : e.coeff) {
        RatInterval rest = iv_point(e.cst);
        bool ok = true;
        for (const auto& [v, c] : e.coeff) {
          if (v == target) continue;
          rest = iv_add(rest, iv_mul(iv_point(c), box[v]));
          if (rest.lo_unb && rest.hi_unb) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        // tc * x + rest <= 0  =>  x <= (-rest)/tc (tc>0), x >= ... (tc<0)
        RatInterval& cur = box[target];
        RatInterval nb = cur;
        if (tc > 0 && !rest.lo_unb) {
          Rational hi = Rational(-rest.lo / tc);
          if (nb.hi_unb || hi < nb.hi) {
            nb.hi = hi;
            nb.hi_unb = false;
            changed = true;
          }
        } else if (tc < 0 && !rest.lo_unb) {
          Rational lo = Rational(-rest.lo / tc);
          if (nb.lo_unb || lo > nb.lo) {
            nb.lo = lo;
            nb.lo_unb = false;
            changed = true;
          }
        }
        if (!nb.lo_unb && !nb.hi_unb && nb.lo > nb.hi) return true;
        cur = nb;
      }
    }
    if (!changed) break;
  }

  for (const auto& atom : nonlinear) {
    IntervalCache cache;
    RatInterval iv = iv_eval_term(atom->term, box, 128, &cache);
    switch (atom->cmp) {
      case Cmp::Lt:
        if (!iv.lo_unb && iv.lo >= 0) return true;
        break;
      case Cmp::Le:
        if (!iv.lo_unb && iv.lo > 0) return true;
        break;
      case Cmp::Eq:
        if ((!iv.lo_unb && iv.lo > 0) || (!iv.hi_unb && iv.hi < 0))
          return true;
        break;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Per-cube decision for the internal backend.
struct CubeResult {
  SatStatus status;
  std::map<std::string, Rational> model;
};

CubeResult internal_cube(const Cube& cube) {
  if (cube_syntactically_unsat(cube)) return {SatStatus::Unsat, {}};
  std::vector<LinearAtom> lin_atoms;
  bool all_linear = true;
  for (const auto& atom : cube) {
    auto lin = linearize(atom->term);
    if (lin) {
      lin_atoms.push_back({std::move(*lin), atom->cmp});
    } else {
      all_linear = false;
    }
  }
  LinFeasibility feas = lin_feasible(LinearSystem::from_atoms(lin_atoms));
  if (!feas.sat) return {SatStatus::Unsat, {}};
  if (all_linear) return {SatStatus::Sat, std::move(feas.model)};
  if (cube_interval_unsat(cube)) return {SatStatus::Unsat, {}};
  return {SatStatus::Unknown, {}};
}

SatResult internal_check_sat(const FormulaPtr& f, const SolverConfig& cfg) {
  FormulaPtr n = normalize(f);
  if (n->kind == Formula::Kind::True) {
    SatResult r;
    r.status = SatStatus::Sat;
    r.model = Valuation{};
    return r;
  }
  if (n->kind == Formula::Kind::False) return {SatStatus::Unsat, {}, {}};
  auto dnf = to_dnf(n, cfg.dnf_cube_cap);
  if (!dnf) return {SatStatus::Unknown, {}, "dnf cube cap exceeded"};

  bool any_unknown = false;
  for (const auto& cube : *dnf) {
    CubeResult cr = internal_cube(cube);
    if (cr.status == SatStatus::Sat) {
      // Extend the cube model with zeros for variables the chosen cube does
      // not mention; other cubes are irrelevant under a disjunction.
      std::set<std::string> vars;
      formula_vars(n, vars);
      Valuation model;
      for (const auto& v : vars) {
        auto it = cr.model.find(v);
        model[v] = it == cr.model.end() ? Rational(0) : it->second;
      }
      SatResult r;
      r.status = SatStatus::Sat;
      r.model = std::move(model);
      return r;
    }
    if (cr.status == SatStatus::Unknown) any_unknown = true;
  }
  if (any_unknown)
    return {SatStatus::Unknown, {}, "nonlinear cube not refuted"};
  return {SatStatus::Unsat, {}, {}};
}

SatResult external_check_sat(const FormulaPtr& f, const SolverConfig& cfg) {
  if (cfg.external_cmd.empty())
    throw SolverError("external backend selected but no command configured");
  FormulaPtr n = normalize(f);
  if (n->kind == Formula::Kind::True) {
    SatResult r;
    r.status = SatStatus::Sat;
    r.model = Valuation{};
    return r;
  }
  if (n->kind == Formula::Kind::False) return {SatStatus::Unsat, {}, {}};
  std::set<std::string> vars;
  formula_vars(n, vars);
  std::vector<std::string> var_list(vars.begin(), vars.end());
  std::string script = formula_to_smtlib(n, var_list);
  SmtOutcome outcome = run_smt_process(cfg.external_cmd, script,
                                       cfg.timeout_ms);
  SatResult r;
  r.status = outcome.status;
  r.unknown_reason = outcome.unknown_reason;
  if (outcome.status == SatStatus::Sat && outcome.model) {
    // Only hand back models that actually check out.
    Valuation model;
    bool complete = true;
    for (const auto& v : var_list) {
      auto it = outcome.model->find(v);
      if (it == outcome.model->end()) {
        complete = false;
        break;
      }
      model[v] = it->second;
    }
    if (complete) {
      try {
        if (eval_at(n, model)) r.model = std::move(model);
      } catch (const EvalError&) {
        // Leave the model out; status stands.
      }
    }
  }
  return r;
}

}  // namespace

SatResult check_sat(const FormulaPtr& f, const SolverConfig& cfg) {
  if (cfg.backend == SolverConfig::Backend::External)
    return external_check_sat(f, cfg);
  return internal_check_sat(f, cfg);
}

// ---------------------------------------------------------------------------
// Quantifier elimination

namespace {

// Splits an atom's term as coeff*var + rest.  nullopt when var does not
// occur; throws when it occurs nonlinearly.
std::optional<std::pair<Rational, TermPtr>> split_linear_occurrence(
    const TermPtr& t, const std::string& var) {
  std::set<std::string> vs;
  term_vars(t, vs);
  if (!vs.count(var)) return std::nullopt;
  switch (t->op) {
    case TermOp::Variable:
      return std::make_pair(Rational(1), t_const(0));
    case TermOp::Add:
    case TermOp::Sub: {
      auto a = split_linear_occurrence(t->a, var);
      auto b = split_linear_occurrence(t->b, var);
      Rational ca = a ? a->first : 0;
      TermPtr ra = a ? a->second : t->a;
      Rational cb = b ? b->first : 0;
      TermPtr rb = b ? b->second : t->b;
      if (t->op == TermOp::Sub) {
        cb = -cb;
        rb = t_neg(rb);
      }
      return std::make_pair(Rational(ca + cb), t_add(ra, rb));
    }
    case TermOp::Neg: {
      auto a = split_linear_occurrence(t->a, var);
      return std::make_pair(Rational(-a->first), t_neg(a->second));
    }
    case TermOp::Mul: {
      // Exactly one side may mention var, and the other must be constant.
      std::set<std::string> la, lb;
      term_vars(t->a, la);
      term_vars(t->b, lb);
      bool in_a = la.count(var) > 0;
      const TermPtr& with = in_a ? t->a : t->b;
      const TermPtr& other = in_a ? t->b : t->a;
      if (!other->is_const())
        throw SolverError("nonlinear occurrence of variable '" + var +
                          "' under multiplication");
      auto inner = split_linear_occurrence(with, var);
      return std::make_pair(Rational(inner->first * other->value),
                            t_mul(other, inner->second));
    }
    case TermOp::Div: {
      std::set<std::string> db;
      term_vars(t->b, db);
      if (db.count(var))
        throw SolverError("nonlinear occurrence of variable '" + var +
                          "' in a divisor");
      if (!t->b->is_const())
        throw SolverError("variable '" + var +
                          "' divided by a non-constant term");
      auto inner = split_linear_occurrence(t->a, var);
      return std::make_pair(Rational(inner->first / t->b->value),
                            t_div(inner->second, t->b));
    }
    default:
      throw SolverError("nonlinear occurrence of variable '" + var +
                        "' (trig or unsupported context)");
  }
}

// Eliminates one variable from a cube of atoms, Fourier-Motzkin style but
// at the term level, so atoms may be nonlinear in the other variables.
Cube eliminate_var_from_cube(const Cube& cube, const std::string& var) {
  // An equality with a nonzero coefficient on var defines it; substitute.
  for (std::size_t i = 0; i < cube.size(); ++i) {
    if (cube[i]->cmp != Cmp::Eq) continue;
    auto occ = split_linear_occurrence(cube[i]->term, var);
    if (!occ || occ->first == 0) continue;
    TermPtr def = t_div(t_neg(occ->second), t_const(occ->first));
    std::map<std::string, TermPtr> sub{{var, def}};
    Cube out;
    for (std::size_t j = 0; j < cube.size(); ++j) {
      if (j == i) continue;
      std::set<std::string> vs;
      term_vars(cube[j]->term, vs);
      if (!vs.count(var)) {
        out.push_back(cube[j]);
      } else {
        out.push_back(f_atom(subst_term(cube[j]->term, sub), cube[j]->cmp));
      }
    }
    return out;
  }
  // Otherwise pair lower and upper bounds.
  std::vector<std::pair<bool, TermPtr>> lowers, uppers;  // (strict, bound)
  Cube out;
  for (const auto& atom : cube) {
    auto occ = split_linear_occurrence(atom->term, var);
    if (!occ) {
      out.push_back(atom);
      continue;
    }
    if (occ->first == 0) {
      // var cancelled syntactically; the atom is really over the rest.
      out.push_back(f_atom(occ->second, atom->cmp));
      continue;
    }
    // c*var + r cmp 0, c>0: var <= -r/c (upper); c<0: lower bound.
    TermPtr bound = t_div(t_neg(occ->second), t_const(occ->first));
    bool strict = atom->cmp == Cmp::Lt;
    if (occ->first > 0) {
      uppers.emplace_back(strict, bound);
    } else {
      lowers.emplace_back(strict, bound);
    }
  }
  for (const auto& [ls, lo] : lowers) {
    for (const auto& [us, up] : uppers) {
      // lo <= var <= up  =>  lo - up <= 0, strict if either side was.
      out.push_back(f_atom(t_sub(lo, up), (ls || us) ? Cmp::Lt : Cmp::Le));
    }
  }
  return out;
}

}  // namespace

FormulaPtr eliminate(const FormulaPtr& f, const std::vector<std::string>& vars,
                     const SolverConfig& cfg) {
  FormulaPtr n = normalize(f);
  if (vars.empty()) return n;
  auto dnf = to_dnf(n, cfg.dnf_cube_cap);
  if (!dnf)
    throw SolverError("formula too large to eliminate (dnf cap exceeded)");
  std::vector<FormulaPtr> cubes_out;
  for (const auto& cube0 : *dnf) {
    Cube cube = cube0;
    for (const auto& v : vars) cube = eliminate_var_from_cube(cube, v);
    std::vector<FormulaPtr> conj(cube.begin(), cube.end());
    cubes_out.push_back(f_and(std::move(conj)));
  }
  return normalize(f_or(std::move(cubes_out)));
}

// ---------------------------------------------------------------------------
// Witness search

FormulaPtr box_formula(const Box& box) {
  std::vector<FormulaPtr> kids;
  for (const auto& d : box) {
    kids.push_back(f_cmp(t_var(d.name), CmpOp::Ge, t_const(d.lo)));
    kids.push_back(f_cmp(t_var(d.name), CmpOp::Le, t_const(d.hi)));
  }
  return f_and(std::move(kids));
}

namespace {

// Deterministic in-box search for a satisfying point: coarse center grids
// first, then seeded random points.  Only used when the solver cannot
// decide; every returned point is verified with eval_at.
std::optional<Valuation> sampled_witness(const FormulaPtr& f, const Box& box) {
  std::size_t d = box.size();
  // Trig formulas pay a full Taylor ladder per exact evaluation, so a
  // double screen rejects hopeless points first; only near-certain hits
  // are confirmed exactly.
  const bool screen = formula_has_trig(f);
  auto try_point = [&](const Valuation& v) -> bool {
    try {
      if (screen) {
        std::unordered_map<std::string, double> dv;
        dv.reserve(v.size());
        for (const auto& [name, val] : v) dv[name] = to_double(val);
        if (eval_approx(f, dv, 1e-9) != Tri::True) return false;
      }
      return eval_at(f, v);
    } catch (const EvalError&) {
      return false;  // e.g. a pole at the sampled point
    }
  };
  // Center grids of increasing resolution, capped in total size.
  for (std::size_t res = 1; res <= 8; res *= 2) {
    double total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= static_cast<double>(res);
    if (total > 4096) break;
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
      Valuation v;
      for (std::size_t i = 0; i < d; ++i) {
        Rational width = (box[i].hi - box[i].lo) / Rational(res);
        Rational val = box[i].lo + width * Rational(2 * idx[i] + 1) / 2;
        if (box[i].discrete) val = Rational(rational_floor(val));
        v[box[i].name] = val;
      }
      if (try_point(v)) return v;
      std::size_t k = 0;
      while (k < d && ++idx[k] == res) idx[k++] = 0;
      if (k == d) break;
    }
  }
  Rng rng(0x5eedbeef);
  for (int i = 0; i < 4096; ++i) {
    Valuation v;
    for (const auto& dim : box) {
      Rational val = rng.next_rational_in(dim.lo, dim.hi);
      if (dim.discrete) val = Rational(rational_floor(val));
      v[dim.name] = val;
    }
    if (try_point(v)) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Valuation> witness(const FormulaPtr& f, const Box& box,
                                 const SolverConfig& cfg) {
  FormulaPtr query = normalize(f_and({f, box_formula(box)}));
  SatResult r = check_sat(query, cfg);
  if (r.status == SatStatus::Unsat) return std::nullopt;
  if (r.status == SatStatus::Sat && r.model) {
    // The model covers the formula's variables; box dims absent from the
    // formula get their lower bound.
    Valuation v = *r.model;
    for (const auto& d : box)
      if (!v.count(d.name)) v[d.name] = d.lo;
    return v;
  }
  return sampled_witness(f, box);
}

}  // namespace sympar
