#include "sympar/tiling.hpp"

#include <limits>

#include "sympar/error.hpp"
#include "sympar/rational.hpp"

namespace sympar {

namespace {

// n^d with saturation, so budget comparisons never overflow.
std::size_t pow_sat(std::size_t n, std::size_t d) {
  const std::size_t cap = std::numeric_limits<std::size_t>::max();
  std::size_t out = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (n != 0 && out > cap / n) return cap;
    out *= n;
  }
  return out;
}

}  // namespace

TileObservation::TileObservation(Box box, std::size_t budget)
    : box_(std::move(box)) {
  if (box_.empty())
    throw ValidationError("tiling needs at least one dimension");
  if (budget == 0) throw ValidationError("tiling budget must be positive");
  std::size_t d = box_.size();
  std::size_t n = 1;
  while (pow_sat(n, d) <= budget) ++n;
  side_ = n;
  cells_ = pow_sat(n, d);
}

std::size_t TileObservation::locate(const ConcreteState& s) const {
  if (s.size() != box_.size())
    throw InvariantViolation("state dimension does not match the tiling box");
  std::size_t id = 0;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < box_.size(); ++i) {
    const BoxDim& dim = box_[i];
    Rational w = (dim.hi - dim.lo) / Rational(static_cast<long>(side_));
    Integer raw = rational_floor((s[i] - dim.lo) / w);
    std::size_t idx = 0;
    if (raw >= Integer(static_cast<long>(side_))) {
      idx = side_ - 1;  // upper face and beyond clamp into the last tile
    } else if (raw > 0) {
      idx = raw.convert_to<std::size_t>();
    }
    id += idx * stride;
    stride *= side_;
  }
  return id;
}

std::optional<ConcreteState> TileObservation::representative(
    std::size_t id) const {
  if (id >= cells_) return std::nullopt;
  ConcreteState s(box_.size());
  std::size_t rest = id;
  for (std::size_t i = 0; i < box_.size(); ++i) {
    std::size_t idx = rest % side_;
    rest /= side_;
    const BoxDim& dim = box_[i];
    Rational w = (dim.hi - dim.lo) / Rational(static_cast<long>(side_));
    Rational v = dim.lo + w * (Rational(2 * static_cast<long>(idx) + 1) / 2);
    if (dim.discrete) v = Rational(rational_floor(v));
    s[i] = v;
  }
  return s;
}

TileObservation make_tiling(const Box& box, std::size_t budget) {
  return TileObservation(box, budget);
}

}  // namespace sympar
