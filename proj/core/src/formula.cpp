#include "sympar/formula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sympar/error.hpp"
#include "sympar/interval.hpp"
#include "sympar/linear.hpp"

namespace sympar {

namespace {

std::shared_ptr<Formula> make(Formula::Kind kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}

}  // namespace

FormulaPtr f_true() {
  static const FormulaPtr t = make(Formula::Kind::True);
  return t;
}

FormulaPtr f_false() {
  static const FormulaPtr f = make(Formula::Kind::False);
  return f;
}

FormulaPtr f_atom(TermPtr term, Cmp cmp) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Atom;
  f->term = std::move(term);
  f->cmp = cmp;
  return f;
}

FormulaPtr f_cmp(TermPtr lhs, CmpOp op, TermPtr rhs) {
  switch (op) {
    case CmpOp::Lt:
      return f_atom(t_sub(std::move(lhs), std::move(rhs)), Cmp::Lt);
    case CmpOp::Le:
      return f_atom(t_sub(std::move(lhs), std::move(rhs)), Cmp::Le);
    case CmpOp::Eq:
      return f_atom(t_sub(std::move(lhs), std::move(rhs)), Cmp::Eq);
    case CmpOp::Gt:
      return f_atom(t_sub(std::move(rhs), std::move(lhs)), Cmp::Lt);
    case CmpOp::Ge:
      return f_atom(t_sub(std::move(rhs), std::move(lhs)), Cmp::Le);
    case CmpOp::Ne:
      return f_not(f_atom(t_sub(std::move(lhs), std::move(rhs)), Cmp::Eq));
  }
  throw InvariantViolation("unreachable comparison op");
}

FormulaPtr f_not(FormulaPtr f) {
  auto n = make(Formula::Kind::Not);
  n->kids.push_back(std::move(f));
  return n;
}

FormulaPtr f_and(std::vector<FormulaPtr> kids) {
  if (kids.empty()) return f_true();
  if (kids.size() == 1) return kids[0];
  auto n = make(Formula::Kind::And);
  n->kids = std::move(kids);
  return n;
}

FormulaPtr f_or(std::vector<FormulaPtr> kids) {
  if (kids.empty()) return f_false();
  if (kids.size() == 1) return kids[0];
  auto n = make(Formula::Kind::Or);
  n->kids = std::move(kids);
  return n;
}

int formula_cmp(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == Formula::Kind::Atom) {
    if (a->cmp != b->cmp) return a->cmp < b->cmp ? -1 : 1;
    return term_cmp(a->term, b->term);
  }
  if (a->kids.size() != b->kids.size())
    return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    int c = formula_cmp(a->kids[i], b->kids[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::size_t formula_hash(const FormulaPtr& f) {
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  std::size_t h = static_cast<std::size_t>(f->kind) * 0x85ebca6b;
  if (f->kind == Formula::Kind::Atom) {
    h = mix(h, static_cast<std::size_t>(f->cmp));
    h = mix(h, term_hash(f->term));
  }
  for (const auto& k : f->kids) h = mix(h, formula_hash(k));
  return h;
}

void formula_vars(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == Formula::Kind::Atom) term_vars(f->term, out);
  for (const auto& k : f->kids) formula_vars(k, out);
}

bool formula_has_trig(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Atom && term_has_trig(f->term)) return true;
  for (const auto& k : f->kids)
    if (formula_has_trig(k)) return true;
  return false;
}

FormulaPtr formula_subst(const FormulaPtr& f,
                         const std::map<std::string, TermPtr>& map) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom:
      return f_atom(subst_term(f->term, map), f->cmp);
    case Formula::Kind::Not:
      return f_not(formula_subst(f->kids[0], map));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(formula_subst(k, map));
      return f->kind == Formula::Kind::And ? f_and(std::move(kids))
                                           : f_or(std::move(kids));
    }
  }
  throw InvariantViolation("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

// Canonical atom or folded constant.
FormulaPtr canon_atom(const TermPtr& t, Cmp cmp) {
  auto lin = linearize(t);
  if (!lin) {
    // Nonlinear: rebuild through the folding builders for a deterministic
    // shape; a ground rebuild folds to a constant and is decided here.
    TermPtr r = subst_term(t, {});
    if (r->is_const()) {
      const Rational& v = r->value;
      bool truth = cmp == Cmp::Lt ? v < 0 : cmp == Cmp::Le ? v <= 0 : v == 0;
      return truth ? f_true() : f_false();
    }
    return f_atom(r, cmp);
  }
  if (lin->coeff.empty()) {
    const Rational& v = lin->cst;
    bool truth = cmp == Cmp::Lt ? v < 0 : cmp == Cmp::Le ? v <= 0 : v == 0;
    return truth ? f_true() : f_false();
  }
  // Scale to coprime integer coefficients.  The scale factor is positive,
  // preserving inequality direction.
  Integer den_lcm = denominator(lin->cst);
  for (const auto& [_, c] : lin->coeff)
    den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
  LinearExpr scaled = lin->scaled(Rational(den_lcm));
  Integer num_gcd = boost::multiprecision::abs(numerator(scaled.cst));
  for (const auto& [_, c] : scaled.coeff)
    num_gcd = boost::multiprecision::gcd(num_gcd,
                                         boost::multiprecision::abs(numerator(c)));
  if (num_gcd > 1) scaled = scaled.scaled(Rational(Integer(1), num_gcd));
  // Equalities are sign-symmetric: fix the leading coefficient positive.
  if (cmp == Cmp::Eq && scaled.coeff.begin()->second < 0)
    scaled = scaled.scaled(Rational(-1));
  return f_atom(linear_to_term(scaled), cmp);
}

FormulaPtr negate_atom(const TermPtr& t, Cmp cmp) {
  switch (cmp) {
    case Cmp::Lt:  // not (t < 0)  ==  -t <= 0
      return canon_atom(t_neg(t), Cmp::Le);
    case Cmp::Le:  // not (t <= 0)  ==  -t < 0
      return canon_atom(t_neg(t), Cmp::Lt);
    case Cmp::Eq: {  // not (t == 0)  ==  t < 0  or  -t < 0
      std::vector<FormulaPtr> kids;
      kids.push_back(canon_atom(t, Cmp::Lt));
      kids.push_back(canon_atom(t_neg(t), Cmp::Lt));
      return f_or(std::move(kids));
    }
  }
  throw InvariantViolation("unreachable cmp");
}

FormulaPtr n_junction(std::vector<FormulaPtr> kids, bool conj);

FormulaPtr norm(const FormulaPtr& f, bool pos) {
  switch (f->kind) {
    case Formula::Kind::True:
      return pos ? f_true() : f_false();
    case Formula::Kind::False:
      return pos ? f_false() : f_true();
    case Formula::Kind::Atom:
      return pos ? canon_atom(f->term, f->cmp) : negate_atom(f->term, f->cmp);
    case Formula::Kind::Not:
      return norm(f->kids[0], !pos);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool conj = (f->kind == Formula::Kind::And) == pos;
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(norm(k, pos));
      return n_junction(std::move(kids), conj);
    }
  }
  throw InvariantViolation("unreachable formula kind");
}

FormulaPtr n_junction(std::vector<FormulaPtr> kids, bool conj) {
  Formula::Kind self = conj ? Formula::Kind::And : Formula::Kind::Or;
  FormulaPtr unit = conj ? f_true() : f_false();
  FormulaPtr zero = conj ? f_false() : f_true();
  std::vector<FormulaPtr> flat;
  for (auto& k : kids) {
    if (k->kind == self) {
      for (const auto& g : k->kids) flat.push_back(g);
    } else if (formula_equal(k, zero)) {
      return zero;
    } else if (!formula_equal(k, unit)) {
      flat.push_back(std::move(k));
    }
  }
  std::sort(flat.begin(), flat.end(),
            [](const FormulaPtr& a, const FormulaPtr& b) {
              return formula_cmp(a, b) < 0;
            });
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const FormulaPtr& a, const FormulaPtr& b) {
                           return formula_equal(a, b);
                         }),
             flat.end());
  if (flat.empty()) return unit;
  if (flat.size() == 1) return flat[0];
  return conj ? f_and(std::move(flat)) : f_or(std::move(flat));
}

}  // namespace

FormulaPtr normalize(const FormulaPtr& f) { return norm(f, true); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

constexpr int kPrecLadder[] = {64, 128, 256, 512, 1024, 2048};

bool decide_cmp_exact(const Rational& v, Cmp cmp) {
  switch (cmp) {
    case Cmp::Lt:
      return v < 0;
    case Cmp::Le:
      return v <= 0;
    case Cmp::Eq:
      return v == 0;
  }
  throw InvariantViolation("unreachable cmp");
}

// Tri-valued comparison of an interval against zero.
Tri decide_cmp_interval(const RatInterval& iv, Cmp cmp) {
  bool lo_b = !iv.lo_unb, hi_b = !iv.hi_unb;
  switch (cmp) {
    case Cmp::Lt:
      if (hi_b && iv.hi < 0) return Tri::True;
      if (lo_b && iv.lo >= 0) return Tri::False;
      return Tri::Unknown;
    case Cmp::Le:
      if (hi_b && iv.hi <= 0) return Tri::True;
      if (lo_b && iv.lo > 0) return Tri::False;
      return Tri::Unknown;
    case Cmp::Eq:
      if ((lo_b && iv.lo > 0) || (hi_b && iv.hi < 0)) return Tri::False;
      if (lo_b && hi_b && iv.lo == 0 && iv.hi == 0) return Tri::True;
      return Tri::Unknown;
  }
  throw InvariantViolation("unreachable cmp");
}

// Decides a trig-bearing atom at a point by escalating the enclosure
// precision until the sign resolves.
bool eval_trig_atom(const TermPtr& t, Cmp cmp, const Valuation& v) {
  IntervalBox box;
  box.reserve(v.size());
  for (const auto& [name, val] : v) box.emplace(name, iv_point(val));
  for (int prec : kPrecLadder) {
    IntervalCache cache;
    RatInterval iv = iv_eval_term(t, box, prec, &cache);
    Tri d = decide_cmp_interval(iv, cmp);
    if (d != Tri::Unknown) return d == Tri::True;
  }
  throw EvalError("comparison undecidable at maximum precision: " +
                  term_to_string(t));
}

bool eval_atom(const TermPtr& t, Cmp cmp, const Valuation& v) {
  auto exact = term_eval_exact(t, v);
  if (exact) return decide_cmp_exact(*exact, cmp);
  return eval_trig_atom(t, cmp, v);
}

}  // namespace

bool eval_at(const FormulaPtr& f, const Valuation& v) {
  switch (f->kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom:
      return eval_atom(f->term, f->cmp, v);
    case Formula::Kind::Not:
      return !eval_at(f->kids[0], v);
    case Formula::Kind::And: {
      // Cheap trig-free conjuncts first: most parts are excluded by a
      // linear atom, so trig enclosures are rarely touched.
      for (const auto& k : f->kids)
        if (!formula_has_trig(k) && !eval_at(k, v)) return false;
      for (const auto& k : f->kids)
        if (formula_has_trig(k) && !eval_at(k, v)) return false;
      return true;
    }
    case Formula::Kind::Or: {
      for (const auto& k : f->kids)
        if (!formula_has_trig(k) && eval_at(k, v)) return true;
      for (const auto& k : f->kids)
        if (formula_has_trig(k) && eval_at(k, v)) return true;
      return false;
    }
  }
  throw InvariantViolation("unreachable formula kind");
}

Tri eval_approx(const FormulaPtr& f,
                const std::unordered_map<std::string, double>& v,
                double margin) {
  switch (f->kind) {
    case Formula::Kind::True:
      return Tri::True;
    case Formula::Kind::False:
      return Tri::False;
    case Formula::Kind::Atom: {
      double x = term_eval_double(f->term, v);
      if (std::isnan(x) || std::fabs(x) <= margin) return Tri::Unknown;
      switch (f->cmp) {
        case Cmp::Lt:
        case Cmp::Le:
          return x < 0 ? Tri::True : Tri::False;
        case Cmp::Eq:
          return Tri::False;  // |x| > margin rules equality out
      }
      throw InvariantViolation("unreachable cmp");
    }
    case Formula::Kind::Not: {
      Tri k = eval_approx(f->kids[0], v, margin);
      if (k == Tri::Unknown) return Tri::Unknown;
      return k == Tri::True ? Tri::False : Tri::True;
    }
    case Formula::Kind::And: {
      bool unknown = false;
      for (const auto& k : f->kids) {
        Tri d = eval_approx(k, v, margin);
        if (d == Tri::False) return Tri::False;
        if (d == Tri::Unknown) unknown = true;
      }
      return unknown ? Tri::Unknown : Tri::True;
    }
    case Formula::Kind::Or: {
      bool unknown = false;
      for (const auto& k : f->kids) {
        Tri d = eval_approx(k, v, margin);
        if (d == Tri::True) return Tri::True;
        if (d == Tri::Unknown) unknown = true;
      }
      return unknown ? Tri::Unknown : Tri::False;
    }
  }
  throw InvariantViolation("unreachable formula kind");
}

Tri eval_partial(const FormulaPtr& f, const Valuation& v) {
  switch (f->kind) {
    case Formula::Kind::True:
      return Tri::True;
    case Formula::Kind::False:
      return Tri::False;
    case Formula::Kind::Atom: {
      std::set<std::string> vars;
      term_vars(f->term, vars);
      for (const auto& name : vars)
        if (!v.count(name)) return Tri::Unknown;
      return eval_atom(f->term, f->cmp, v) ? Tri::True : Tri::False;
    }
    case Formula::Kind::Not: {
      Tri k = eval_partial(f->kids[0], v);
      if (k == Tri::Unknown) return Tri::Unknown;
      return k == Tri::True ? Tri::False : Tri::True;
    }
    case Formula::Kind::And: {
      bool unknown = false;
      for (const auto& k : f->kids) {
        Tri d = eval_partial(k, v);
        if (d == Tri::False) return Tri::False;
        if (d == Tri::Unknown) unknown = true;
      }
      return unknown ? Tri::Unknown : Tri::True;
    }
    case Formula::Kind::Or: {
      bool unknown = false;
      for (const auto& k : f->kids) {
        Tri d = eval_partial(k, v);
        if (d == Tri::True) return Tri::True;
        if (d == Tri::Unknown) unknown = true;
      }
      return unknown ? Tri::Unknown : Tri::False;
    }
  }
  throw InvariantViolation("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// DNF

namespace {

bool dnf_rec(const FormulaPtr& f,
             std::vector<std::vector<FormulaPtr>>& acc, std::size_t cap);

// Appends the product of acc and the DNF of f; both stay under cap.
bool dnf_and(const std::vector<FormulaPtr>& kids,
             std::vector<std::vector<FormulaPtr>>& acc, std::size_t cap) {
  for (const auto& k : kids) {
    std::vector<std::vector<FormulaPtr>> rhs;
    if (!dnf_rec(k, rhs, cap)) return false;
    std::vector<std::vector<FormulaPtr>> next;
    if (acc.size() * rhs.size() > cap) return false;
    next.reserve(acc.size() * rhs.size());
    for (const auto& cube : acc) {
      for (const auto& r : rhs) {
        std::vector<FormulaPtr> merged = cube;
        merged.insert(merged.end(), r.begin(), r.end());
        next.push_back(std::move(merged));
      }
    }
    acc = std::move(next);
    if (acc.empty()) return true;  // a False conjunct empties the product
  }
  return true;
}

bool dnf_rec(const FormulaPtr& f,
             std::vector<std::vector<FormulaPtr>>& acc, std::size_t cap) {
  switch (f->kind) {
    case Formula::Kind::True:
      acc.push_back({});
      return true;
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Atom:
      acc.push_back({f});
      return true;
    case Formula::Kind::And: {
      std::vector<std::vector<FormulaPtr>> prod{{}};
      if (!dnf_and(f->kids, prod, cap)) return false;
      if (acc.size() + prod.size() > cap) return false;
      for (auto& c : prod) acc.push_back(std::move(c));
      return true;
    }
    case Formula::Kind::Or: {
      for (const auto& k : f->kids)
        if (!dnf_rec(k, acc, cap)) return false;
      return acc.size() <= cap;
    }
    case Formula::Kind::Not:
      throw InvariantViolation("to_dnf requires a normalized formula");
  }
  throw InvariantViolation("unreachable formula kind");
}

}  // namespace

std::optional<std::vector<std::vector<FormulaPtr>>> to_dnf(
    const FormulaPtr& normalized, std::size_t cap) {
  std::vector<std::vector<FormulaPtr>> out;
  if (!dnf_rec(normalized, out, cap)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* cmp_text(Cmp cmp) {
  switch (cmp) {
    case Cmp::Lt:
      return "<";
    case Cmp::Le:
      return "<=";
    case Cmp::Eq:
      return "==";
  }
  return "?";
}

// Atoms print with the constant moved to the right-hand side:
// "2*x + 3*y <= 5" rather than "2*x + 3*y + -5 <= 0".
void print_atom(const TermPtr& t, Cmp cmp, std::ostringstream& os) {
  auto lin = linearize(t);
  if (lin && !lin->coeff.empty()) {
    Rational rhs = -lin->cst;
    LinearExpr lhs = *lin;
    lhs.cst = 0;
    os << term_to_string(linear_to_term(lhs)) << " " << cmp_text(cmp) << " "
       << rational_to_string(rhs);
    return;
  }
  os << term_to_string(t) << " " << cmp_text(cmp) << " 0";
}

void print(const FormulaPtr& f, std::ostringstream& os) {
  switch (f->kind) {
    case Formula::Kind::True:
      os << "true";
      return;
    case Formula::Kind::False:
      os << "false";
      return;
    case Formula::Kind::Atom:
      print_atom(f->term, f->cmp, os);
      return;
    case Formula::Kind::Not:
      os << "not (";
      print(f->kids[0], os);
      os << ")";
      return;
    case Formula::Kind::And: {
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << " and ";
        bool atom = f->kids[i]->kind == Formula::Kind::Atom ||
                    f->kids[i]->kind == Formula::Kind::True ||
                    f->kids[i]->kind == Formula::Kind::False;
        if (!atom) os << "(";
        print(f->kids[i], os);
        if (!atom) os << ")";
      }
      return;
    }
    case Formula::Kind::Or: {
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << " or ";
        bool wrap = f->kids[i]->kind == Formula::Kind::And;
        if (wrap) os << "(";
        print(f->kids[i], os);
        if (wrap) os << ")";
      }
      return;
    }
  }
}

}  // namespace

std::string formula_to_string(const FormulaPtr& f) {
  std::ostringstream os;
  print(f, os);
  return os.str();
}

}  // namespace sympar
