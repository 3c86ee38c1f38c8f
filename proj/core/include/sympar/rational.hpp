#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>

#include "sympar/error.hpp"

namespace sympar {

// All state-space arithmetic is exact.  Doubles appear only in the
// learning loop (reward accumulation, Q values) and in rasterization.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Integer numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Integer denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

// Prints an exact representation that parse_rational accepts: integers
// as-is, everything else as "p/q".
inline std::string rational_to_string(const Rational& r) {
  Integer n = numerator(r);
  Integer d = denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

// floor(r), rounding toward negative infinity.
inline Integer rational_floor(const Rational& r) {
  Integer n = numerator(r);
  Integer d = denominator(r);
  Integer q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Integer rational_ceil(const Rational& r) { return -rational_floor(-r); }

// Parses "3", "-0.25", "1/3", "-7/2".  Decimal literals are exact:
// "0.1" becomes 1/10, never a binary float.
inline Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  auto digits = [&](Integer& out) {
    std::size_t start = i;
    out = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      out = out * 10 + (text[i] - '0');
      ++i;
    }
    return i > start;
  };
  Integer whole;
  if (!digits(whole)) throw ParseError("malformed number '" + text + "'");
  Rational value(whole);
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t start = i;
    Integer frac;
    if (!digits(frac)) throw ParseError("malformed number '" + text + "'");
    Integer scale = 1;
    for (std::size_t k = start; k < i; ++k) scale *= 10;
    value += Rational(frac, scale);
  } else if (i < text.size() && text[i] == '/') {
    ++i;
    Integer den;
    if (!digits(den) || den == 0)
      throw ParseError("malformed rational '" + text + "'");
    value = Rational(whole, den);
  }
  if (i != text.size()) throw ParseError("malformed number '" + text + "'");
  return neg ? Rational(-value) : value;
}

}  // namespace sympar
