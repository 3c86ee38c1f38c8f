#pragma once

#include <cstddef>
#include <cstdint>

#include "sympar/obs.hpp"
#include "sympar/partition.hpp"

namespace sympar {

// Uniform grid observation over a box: every dimension is cut into the
// same number of equal-width tiles.  The side count is the smallest
// integer n with n^d strictly greater than the cell budget, so the grid
// is the coarsest uniform one that spends at least the budget (budget 64
// over 2 dims gives 9x9 = 81 cells, never 8x8 = 64).
//
// Tiles are half-open [a, b) along each dimension except the last tile,
// which is closed so the upper box face belongs to the grid.  locate()
// clamps out-of-box coordinates to the boundary tiles, making it total.
class TileObservation : public ObservationMap {
 public:
  TileObservation(Box box, std::size_t budget);

  std::size_t size() const override { return cells_; }
  std::size_t locate(const ConcreteState& s) const override;
  // Tile center; discrete dimensions floor it onto the integer grid.
  std::optional<ConcreteState> representative(std::size_t id) const override;

  std::size_t side() const { return side_; }
  const Box& box() const { return box_; }

 private:
  Box box_;
  std::size_t side_ = 0;
  std::size_t cells_ = 0;
};

TileObservation make_tiling(const Box& box, std::size_t budget);

}  // namespace sympar
