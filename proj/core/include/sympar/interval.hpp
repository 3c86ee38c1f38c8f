#pragma once

#include <string>
#include <unordered_map>

#include "sympar/rational.hpp"
#include "sympar/term.hpp"

namespace sympar {

// Closed rational interval, optionally unbounded on either side.  Used to
// evaluate trig-bearing terms soundly: the true real value always lies
// inside the returned interval, and for trig-free inputs at point boxes the
// result is an exact point.
struct RatInterval {
  Rational lo, hi;
  bool lo_unb = false;
  bool hi_unb = false;

  bool is_point() const { return !lo_unb && !hi_unb && lo == hi; }
  bool bounded() const { return !lo_unb && !hi_unb; }
};

RatInterval iv_point(Rational v);
RatInterval iv_make(Rational lo, Rational hi);
RatInterval iv_whole();

// True iff 0 may lie in the interval.
bool iv_contains_zero(const RatInterval& a);

RatInterval iv_neg(const RatInterval& a);
RatInterval iv_add(const RatInterval& a, const RatInterval& b);
RatInterval iv_sub(const RatInterval& a, const RatInterval& b);
RatInterval iv_mul(const RatInterval& a, const RatInterval& b);
// Returns the whole line when the divisor may contain zero.
RatInterval iv_div(const RatInterval& a, const RatInterval& b);

// Sound enclosures of cos/sin over the interval, accurate to roughly
// 2^-prec_bits for narrow inputs.  Wide or unbounded inputs degrade
// gracefully toward [-1, 1].
RatInterval iv_cos(const RatInterval& a, int prec_bits);
RatInterval iv_sin(const RatInterval& a, int prec_bits);

// Widens endpoints outward to denominators <= 2^prec_bits when they have
// grown past that, keeping arithmetic cheap across long evaluations.
RatInterval iv_round_out(const RatInterval& a, int prec_bits);

// Intersection; sets empty=true when the intervals are disjoint.
struct IvMeet {
  RatInterval iv;
  bool empty = false;
};
IvMeet iv_intersect(const RatInterval& a, const RatInterval& b);

using IntervalBox = std::unordered_map<std::string, RatInterval>;
using IntervalCache = std::unordered_map<const Term*, RatInterval>;

// Evaluates a term over an interval box.  Variables absent from the box are
// unconstrained.  cache, when given, must only be reused with the same box
// and precision.
RatInterval iv_eval_term(const TermPtr& t, const IntervalBox& box,
                         int prec_bits, IntervalCache* cache = nullptr);

}  // namespace sympar
