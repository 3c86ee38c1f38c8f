#pragma once

#include <cstdint>
#include <random>

#include "sympar/rational.hpp"

namespace sympar {

// Deterministic random source.  Wraps mt19937_64 but exposes only helpers
// whose output is fully specified here; std::uniform_* distributions are
// avoided because their draw sequences differ across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit_double() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform index in [0, n).  Lemire multiply-shift; n must be > 0.
  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  // Exact dyadic rational in [0, 1), denominator 2^53.
  Rational next_unit_rational() {
    return Rational(Integer(gen_() >> 11), Integer(1) << 53);
  }

  // Exact uniform draw in [lo, hi).
  Rational next_rational_in(const Rational& lo, const Rational& hi) {
    return lo + (hi - lo) * next_unit_rational();
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sympar
