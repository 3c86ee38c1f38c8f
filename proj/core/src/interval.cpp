#include "sympar/interval.hpp"

#include <algorithm>

#include "sympar/error.hpp"

namespace sympar {

RatInterval iv_point(Rational v) { return RatInterval{v, v, false, false}; }

RatInterval iv_make(Rational lo, Rational hi) {
  if (lo > hi) throw InvariantViolation("interval endpoints out of order");
  return RatInterval{std::move(lo), std::move(hi), false, false};
}

RatInterval iv_whole() { return RatInterval{0, 0, true, true}; }

bool iv_contains_zero(const RatInterval& a) {
  if (!a.lo_unb && a.lo > 0) return false;
  if (!a.hi_unb && a.hi < 0) return false;
  return true;
}

RatInterval iv_neg(const RatInterval& a) {
  return RatInterval{a.hi_unb ? Rational(0) : Rational(-a.hi),
                     a.lo_unb ? Rational(0) : Rational(-a.lo), a.hi_unb,
                     a.lo_unb};
}

RatInterval iv_add(const RatInterval& a, const RatInterval& b) {
  RatInterval r;
  r.lo_unb = a.lo_unb || b.lo_unb;
  r.hi_unb = a.hi_unb || b.hi_unb;
  if (!r.lo_unb) r.lo = a.lo + b.lo;
  if (!r.hi_unb) r.hi = a.hi + b.hi;
  return r;
}

RatInterval iv_sub(const RatInterval& a, const RatInterval& b) {
  return iv_add(a, iv_neg(b));
}

namespace {

// Extended bound: value with a -inf/+inf flag.  sign(inf) given by `inf`.
struct Ext {
  Rational v;
  int inf = 0;  // -1, 0, +1
};

// Product with the 0 * inf = 0 convention, which is sound for bounds of
// products of closed sets.
Ext ext_mul(const Ext& a, const Ext& b) {
  if (a.inf == 0 && b.inf == 0) return {a.v * b.v, 0};
  int sa = a.inf != 0 ? a.inf : (a.v > 0 ? 1 : a.v < 0 ? -1 : 0);
  int sb = b.inf != 0 ? b.inf : (b.v > 0 ? 1 : b.v < 0 ? -1 : 0);
  if (sa == 0 || sb == 0) return {Rational(0), 0};
  return {Rational(0), sa * sb};
}

bool ext_less(const Ext& a, const Ext& b) {
  if (a.inf != b.inf) return a.inf < b.inf;
  if (a.inf != 0) return false;
  return a.v < b.v;
}

}  // namespace

RatInterval iv_mul(const RatInterval& a, const RatInterval& b) {
  Ext alo{a.lo, a.lo_unb ? -1 : 0}, ahi{a.hi, a.hi_unb ? 1 : 0};
  Ext blo{b.lo, b.lo_unb ? -1 : 0}, bhi{b.hi, b.hi_unb ? 1 : 0};
  Ext cands[4] = {ext_mul(alo, blo), ext_mul(alo, bhi), ext_mul(ahi, blo),
                  ext_mul(ahi, bhi)};
  Ext mn = cands[0], mx = cands[0];
  for (int i = 1; i < 4; ++i) {
    if (ext_less(cands[i], mn)) mn = cands[i];
    if (ext_less(mx, cands[i])) mx = cands[i];
  }
  RatInterval r;
  r.lo_unb = mn.inf < 0;
  r.hi_unb = mx.inf > 0;
  if (!r.lo_unb) r.lo = mn.v;
  if (!r.hi_unb) r.hi = mx.v;
  if (mn.inf > 0 || mx.inf < 0)
    throw InvariantViolation("interval product bounds inverted");
  return r;
}

RatInterval iv_div(const RatInterval& a, const RatInterval& b) {
  if (iv_contains_zero(b)) return iv_whole();
  // 1/b for b strictly one-signed: endpoints swap; 1/inf is 0.
  RatInterval rec;
  rec.lo = b.hi_unb ? Rational(0) : Rational(Rational(1) / b.hi);
  rec.hi = b.lo_unb ? Rational(0) : Rational(Rational(1) / b.lo);
  rec.lo_unb = false;
  rec.hi_unb = false;
  return iv_mul(a, rec);
}

RatInterval iv_round_out(const RatInterval& a, int prec_bits) {
  RatInterval r = a;
  Integer limit = Integer(1) << prec_bits;
  auto big = [&](const Rational& v) { return denominator(v) > limit; };
  if (!r.lo_unb && big(r.lo)) {
    Integer n = rational_floor(Rational(r.lo * limit));
    r.lo = Rational(n, limit);
  }
  if (!r.hi_unb && big(r.hi)) {
    Integer n = rational_ceil(Rational(r.hi * limit));
    r.hi = Rational(n, limit);
  }
  return r;
}

IvMeet iv_intersect(const RatInterval& a, const RatInterval& b) {
  RatInterval r;
  r.lo_unb = a.lo_unb && b.lo_unb;
  r.hi_unb = a.hi_unb && b.hi_unb;
  if (!r.lo_unb) {
    if (a.lo_unb) r.lo = b.lo;
    else if (b.lo_unb) r.lo = a.lo;
    else r.lo = std::max(a.lo, b.lo);
  }
  if (!r.hi_unb) {
    if (a.hi_unb) r.hi = b.hi;
    else if (b.hi_unb) r.hi = a.hi;
    else r.hi = std::min(a.hi, b.hi);
  }
  if (!r.lo_unb && !r.hi_unb && r.lo > r.hi) return {r, true};
  return {r, false};
}

namespace {

// Taylor sum of cos or sin at rational x with a rigorous remainder bound.
// Requires |x| <= 64; the series terms are decreasing once (2k)(2k+1) > x^2,
// after which the alternating-series remainder applies.
struct TaylorOut {
  Rational sum;
  Rational err;
};

TaylorOut taylor_trig(const Rational& x, int prec_bits, bool is_sin) {
  Rational x2 = x * x;
  Rational term = is_sin ? x : Rational(1);
  Rational sum = term;
  Rational bound = Rational(1, Integer(1) << (prec_bits + 2));
  int base = is_sin ? 1 : 0;
  for (int k = 1; k <= 600; ++k) {
    int a = 2 * k - 1 + base;
    int b = 2 * k + base;
    term = Rational(-term * x2 / (a * b));
    sum += term;
    Rational mag = term < 0 ? Rational(-term) : term;
    // Next term's magnitude bounds the remainder once terms shrink.
    if (mag < bound && x2 < (b + 1) * (b + 2)) return {sum, mag};
  }
  throw EvalError("trig series did not converge");
}

RatInterval trig_enclosure(const RatInterval& a, int prec_bits, bool is_sin) {
  RatInterval unit = iv_make(-1, 1);
  if (a.lo_unb || a.hi_unb) return unit;
  Rational mag = std::max(Rational(-a.lo), Rational(a.hi));
  if (mag > 64) return unit;
  Rational mid = (a.lo + a.hi) / 2;
  Rational rad = (a.hi - a.lo) / 2;
  // Round the argument to keep Taylor arithmetic on small denominators;
  // |cos'| and |sin'| are <= 1, so argument error adds linearly.
  Integer limit = Integer(1) << (prec_bits + 8);
  if (denominator(mid) > limit) {
    Rational rounded(rational_floor(Rational(mid * limit)), limit);
    rad += mid - rounded > 0 ? mid - rounded : rounded - mid;
    mid = rounded;
  }
  TaylorOut t = taylor_trig(mid, prec_bits, is_sin);
  Rational slack = t.err + rad;
  RatInterval r = iv_make(t.sum - slack, t.sum + slack);
  r = iv_round_out(r, prec_bits + 4);
  auto meet = iv_intersect(r, unit);
  if (meet.empty) throw InvariantViolation("trig enclosure outside [-1,1]");
  return meet.iv;
}

}  // namespace

RatInterval iv_cos(const RatInterval& a, int prec_bits) {
  return trig_enclosure(a, prec_bits, false);
}

RatInterval iv_sin(const RatInterval& a, int prec_bits) {
  return trig_enclosure(a, prec_bits, true);
}

RatInterval iv_eval_term(const TermPtr& t, const IntervalBox& box,
                         int prec_bits, IntervalCache* cache) {
  if (cache) {
    auto it = cache->find(t.get());
    if (it != cache->end()) return it->second;
  }
  RatInterval r;
  switch (t->op) {
    case TermOp::Constant:
      r = iv_point(t->value);
      break;
    case TermOp::Variable: {
      auto it = box.find(t->var);
      r = it == box.end() ? iv_whole() : it->second;
      break;
    }
    case TermOp::Add:
      r = iv_add(iv_eval_term(t->a, box, prec_bits, cache),
                 iv_eval_term(t->b, box, prec_bits, cache));
      break;
    case TermOp::Sub:
      r = iv_sub(iv_eval_term(t->a, box, prec_bits, cache),
                 iv_eval_term(t->b, box, prec_bits, cache));
      break;
    case TermOp::Mul:
      r = iv_mul(iv_eval_term(t->a, box, prec_bits, cache),
                 iv_eval_term(t->b, box, prec_bits, cache));
      break;
    case TermOp::Div:
      r = iv_div(iv_eval_term(t->a, box, prec_bits, cache),
                 iv_eval_term(t->b, box, prec_bits, cache));
      break;
    case TermOp::Neg:
      r = iv_neg(iv_eval_term(t->a, box, prec_bits, cache));
      break;
    case TermOp::Cos:
      r = iv_cos(iv_eval_term(t->a, box, prec_bits, cache), prec_bits);
      break;
    case TermOp::Sin:
      r = iv_sin(iv_eval_term(t->a, box, prec_bits, cache), prec_bits);
      break;
  }
  r = iv_round_out(r, prec_bits + 16);
  if (cache) (*cache)[t.get()] = r;
  return r;
}

}  // namespace sympar
