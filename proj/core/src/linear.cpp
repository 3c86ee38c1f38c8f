#include "sympar/linear.hpp"

#include <algorithm>
#include <set>

#include "sympar/error.hpp"

namespace sympar {

void LinearExpr::add_var(const std::string& var, const Rational& c) {
  if (c == 0) return;
  auto it = coeff.find(var);
  if (it == coeff.end()) {
    coeff.emplace(var, c);
    return;
  }
  it->second += c;
  if (it->second == 0) coeff.erase(it);
}

void LinearExpr::add(const LinearExpr& o, const Rational& k) {
  if (k == 0) return;
  cst += k * o.cst;
  for (const auto& [v, c] : o.coeff) add_var(v, Rational(k * c));
}

LinearExpr LinearExpr::scaled(const Rational& k) const {
  LinearExpr r;
  r.add(*this, k);
  return r;
}

std::optional<LinearExpr> linearize(const TermPtr& t) {
  switch (t->op) {
    case TermOp::Constant: {
      LinearExpr e;
      e.cst = t->value;
      return e;
    }
    case TermOp::Variable: {
      LinearExpr e;
      e.coeff.emplace(t->var, 1);
      return e;
    }
    case TermOp::Add:
    case TermOp::Sub: {
      auto a = linearize(t->a);
      auto b = linearize(t->b);
      if (!a || !b) return std::nullopt;
      a->add(*b, t->op == TermOp::Add ? Rational(1) : Rational(-1));
      return a;
    }
    case TermOp::Mul: {
      auto a = linearize(t->a);
      auto b = linearize(t->b);
      if (!a || !b) return std::nullopt;
      if (a->coeff.empty()) return b->scaled(a->cst);
      if (b->coeff.empty()) return a->scaled(b->cst);
      return std::nullopt;  // variable * variable
    }
    case TermOp::Div: {
      auto a = linearize(t->a);
      auto b = linearize(t->b);
      if (!a || !b) return std::nullopt;
      if (!b->coeff.empty()) return std::nullopt;  // variable divisor
      if (b->cst == 0) throw EvalError("division by zero");
      return a->scaled(Rational(1 / b->cst));
    }
    case TermOp::Neg: {
      auto a = linearize(t->a);
      if (!a) return std::nullopt;
      return a->scaled(Rational(-1));
    }
    case TermOp::Cos:
    case TermOp::Sin:
      return std::nullopt;
  }
  throw InvariantViolation("unreachable term op");
}

TermPtr linear_to_term(const LinearExpr& e) {
  TermPtr acc;
  for (const auto& [v, c] : e.coeff) {
    TermPtr piece;
    if (c == 1) {
      piece = t_var(v);
    } else if (c == -1) {
      piece = t_neg(t_var(v));
    } else {
      piece = t_mul(t_const(c), t_var(v));
    }
    acc = acc ? t_add(acc, piece) : piece;
  }
  if (!acc) return t_const(e.cst);
  if (e.cst != 0) acc = t_add(acc, t_const(e.cst));
  return acc;
}

bool formula_is_linear(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Atom) return linearize(f->term).has_value();
  for (const auto& k : f->kids)
    if (!formula_is_linear(k)) return false;
  return true;
}

LinearSystem LinearSystem::from_atoms(std::vector<LinearAtom> atoms) {
  LinearSystem sys;
  std::set<std::string> names;
  for (const auto& a : atoms)
    for (const auto& [v, _] : a.e.coeff) names.insert(v);
  sys.atoms = std::move(atoms);
  sys.vars.assign(names.begin(), names.end());
  return sys;
}

namespace {

// Ground atom truth; atoms without variables reduce to this.
bool ground_true(const LinearAtom& a) {
  switch (a.cmp) {
    case Cmp::Lt:
      return a.e.cst < 0;
    case Cmp::Le:
      return a.e.cst <= 0;
    case Cmp::Eq:
      return a.e.cst == 0;
  }
  throw InvariantViolation("unreachable cmp");
}

// Scales an atom to coprime integer coefficients for deduplication.
LinearAtom primitive(const LinearAtom& a) {
  Integer den = denominator(a.e.cst);
  for (const auto& [_, c] : a.e.coeff)
    den = boost::multiprecision::lcm(den, denominator(c));
  LinearExpr e = a.e.scaled(Rational(den));
  Integer g = boost::multiprecision::abs(numerator(e.cst));
  for (const auto& [_, c] : e.coeff)
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(numerator(c)));
  if (g > 1) e = e.scaled(Rational(Integer(1), g));
  return {std::move(e), a.cmp};
}

bool atom_less(const LinearAtom& x, const LinearAtom& y) {
  if (x.cmp != y.cmp) return x.cmp < y.cmp;
  if (x.e.cst != y.e.cst) return x.e.cst < y.e.cst;
  auto xi = x.e.coeff.begin();
  auto yi = y.e.coeff.begin();
  for (; xi != x.e.coeff.end() && yi != y.e.coeff.end(); ++xi, ++yi) {
    if (xi->first != yi->first) return xi->first < yi->first;
    if (xi->second != yi->second) return xi->second < yi->second;
  }
  return xi == x.e.coeff.end() && yi != y.e.coeff.end();
}

bool atom_eq(const LinearAtom& x, const LinearAtom& y) {
  return !atom_less(x, y) && !atom_less(y, x);
}

// Drops ground-true atoms, deduplicates, and reports hard falsity.
struct Simplified {
  std::vector<LinearAtom> atoms;
  bool unsat = false;
};

Simplified simplify(std::vector<LinearAtom> atoms) {
  Simplified out;
  for (auto& a : atoms) {
    if (a.e.coeff.empty()) {
      if (!ground_true(a)) {
        out.unsat = true;
        return out;
      }
      continue;
    }
    out.atoms.push_back(primitive(a));
  }
  std::sort(out.atoms.begin(), out.atoms.end(), atom_less);
  out.atoms.erase(std::unique(out.atoms.begin(), out.atoms.end(), atom_eq),
                  out.atoms.end());
  return out;
}

// Eliminates `var`, preferring an equality substitution when available.
// Returns unsat=true if a ground contradiction appears.
Simplified eliminate_var(const std::vector<LinearAtom>& atoms,
                         const std::string& var) {
  // Equality substitution: var = -(rest)/a.
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const LinearAtom& eq = atoms[i];
    auto it = eq.e.coeff.find(var);
    if (eq.cmp != Cmp::Eq || it == eq.e.coeff.end()) continue;
    Rational a = it->second;
    LinearExpr def = eq.e;  // var = -(def - a*var)/a
    def.coeff.erase(var);
    def = def.scaled(Rational(-1 / a));
    std::vector<LinearAtom> next;
    next.reserve(atoms.size() - 1);
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (j == i) continue;
      LinearAtom b = atoms[j];
      auto jt = b.e.coeff.find(var);
      if (jt != b.e.coeff.end()) {
        Rational c = jt->second;
        b.e.coeff.erase(var);
        b.e.add(def, c);
      }
      next.push_back(std::move(b));
    }
    return simplify(std::move(next));
  }
  // Bound pairing.
  std::vector<LinearAtom> lowers, uppers, rest;
  for (const auto& a : atoms) {
    auto it = a.e.coeff.find(var);
    if (it == a.e.coeff.end()) {
      rest.push_back(a);
      continue;
    }
    // Normalize to var cmp bound: coeff +1 gives an upper bound, -1 lower.
    LinearAtom n = a;
    Rational c = it->second;
    n.e = a.e.scaled(Rational(1 / boost::multiprecision::abs(c)));
    if (c > 0) {
      uppers.push_back(std::move(n));
    } else {
      lowers.push_back(std::move(n));
    }
  }
  std::vector<LinearAtom> next = std::move(rest);
  for (const auto& lo : lowers) {
    for (const auto& up : uppers) {
      // lo: -var + L <= 0  (var >= L);  up: var + U <= 0  (var <= -U).
      // Combined: L + U  cmp  0, strict if either side was strict.
      LinearAtom comb;
      comb.e = lo.e;
      comb.e.coeff.erase(var);
      LinearExpr ue = up.e;
      ue.coeff.erase(var);
      comb.e.add(ue, Rational(1));
      comb.cmp = (lo.cmp == Cmp::Lt || up.cmp == Cmp::Lt) ? Cmp::Lt : Cmp::Le;
      next.push_back(std::move(comb));
    }
  }
  return simplify(std::move(next));
}

}  // namespace

LinearSystem lin_project(const LinearSystem& sys, const std::string& var) {
  Simplified s = eliminate_var(sys.atoms, var);
  LinearSystem out;
  if (s.unsat) {
    // Encode falsity as the ground atom 1 <= 0 so callers see an
    // unsatisfiable, variable-free system.
    LinearAtom f;
    f.e.cst = 1;
    f.cmp = Cmp::Le;
    out.atoms.push_back(std::move(f));
    return out;
  }
  out = LinearSystem::from_atoms(std::move(s.atoms));
  return out;
}

namespace {

struct VarBounds {
  bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
  Rational lo, hi;
  bool pinned = false;
  Rational pin;
};

// Deterministic witness rule, per variable in name order:
//   pinned by equality        : the pinned value
//   closed lower bound        : lo (when it also satisfies the upper side)
//   closed upper bound        : hi
//   both strict               : midpoint
//   only strict lower / upper : lo + 1 / hi - 1
//   unbounded                 : 0
Rational pick_value(const VarBounds& b) {
  if (b.pinned) return b.pin;
  if (!b.has_lo && !b.has_hi) return 0;
  if (b.has_lo && !b.has_hi) return b.lo_strict ? Rational(b.lo + 1) : b.lo;
  if (!b.has_lo && b.has_hi) return b.hi_strict ? Rational(b.hi - 1) : b.hi;
  if (!b.lo_strict && (b.lo < b.hi || (b.lo == b.hi && !b.hi_strict)))
    return b.lo;
  if (!b.hi_strict && b.lo < b.hi) return b.hi;
  return Rational((b.lo + b.hi) / 2);
}

}  // namespace

LinFeasibility lin_feasible(const LinearSystem& sys) {
  Simplified base = simplify(sys.atoms);
  if (base.unsat) return {false, {}};

  // Eliminate variables from last to first; levels[i] constrains vars[0..i).
  std::vector<std::string> vars = sys.vars;
  std::vector<std::vector<LinearAtom>> levels(vars.size() + 1);
  levels[vars.size()] = base.atoms;
  for (std::size_t i = vars.size(); i-- > 0;) {
    Simplified s = eliminate_var(levels[i + 1], vars[i]);
    if (s.unsat) return {false, {}};
    levels[i] = std::move(s.atoms);
  }
  if (!levels[0].empty())
    throw InvariantViolation("ground atoms survived full elimination");

  // Back-substitute in variable order; at step i every remaining atom of
  // levels[i+1] mentions only vars[0..i].
  LinFeasibility out;
  out.sat = true;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    VarBounds b;
    for (const auto& a : levels[i + 1]) {
      auto it = a.e.coeff.find(vars[i]);
      if (it == a.e.coeff.end()) continue;
      Rational c = it->second;
      // Evaluate the rest at the already-chosen values.
      Rational rest = a.e.cst;
      for (const auto& [v, cf] : a.e.coeff) {
        if (v == vars[i]) continue;
        auto mv = out.model.find(v);
        if (mv == out.model.end())
          throw InvariantViolation("variable order broken in back-substitution");
        rest += cf * mv->second;
      }
      Rational bound = Rational(-rest / c);
      if (a.cmp == Cmp::Eq) {
        if (b.pinned && b.pin != bound)
          throw InvariantViolation("conflicting pins after elimination");
        b.pinned = true;
        b.pin = bound;
      } else if (c > 0) {
        // c*var + rest cmp 0  ->  var <= bound (or <)
        bool strict = a.cmp == Cmp::Lt;
        if (!b.has_hi || bound < b.hi || (bound == b.hi && strict)) {
          b.has_hi = true;
          b.hi = bound;
          b.hi_strict = strict;
        }
      } else {
        bool strict = a.cmp == Cmp::Lt;
        if (!b.has_lo || bound > b.lo || (bound == b.lo && strict)) {
          b.has_lo = true;
          b.lo = bound;
          b.lo_strict = strict;
        }
      }
    }
    out.model[vars[i]] = pick_value(b);
  }
  return out;
}

}  // namespace sympar
