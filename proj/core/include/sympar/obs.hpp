#ifndef SYMPAR_OBS_HPP
#define SYMPAR_OBS_HPP

#include <cstddef>
#include <optional>

#include "sympar/dsl.hpp"

namespace sympar {

// A total observation function over the state box: every in-box state maps
// to exactly one abstract id in [0, size()).  Implementations must be
// deterministic and safe to share across threads once built.
class ObservationMap {
 public:
  virtual ~ObservationMap() = default;
  virtual std::size_t size() const = 0;
  virtual std::size_t locate(const ConcreteState& s) const = 0;
  // A representative in-box state for the abstract id, when one is known.
  virtual std::optional<ConcreteState> representative(std::size_t id) const = 0;
};

}  // namespace sympar

#endif  // SYMPAR_OBS_HPP
