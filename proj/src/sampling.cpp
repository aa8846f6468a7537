#include "bsmobo/sampling.hpp"

#include <numeric>
#include <stdexcept>

namespace bsmobo {

std::vector<DecisionVector> latin_hypercube(std::size_t count, const BoxBounds& bounds,
                                            RngStream& rng) {
  if (count == 0) throw std::invalid_argument("latin_hypercube: count must be positive");
  const std::size_t n = bounds.dimension();
  std::vector<DecisionVector> points(count, DecisionVector(n));

  std::vector<std::size_t> strata(count);
  for (std::size_t dim = 0; dim < n; ++dim) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    // Fisher-Yates
    for (std::size_t i = count - 1; i > 0; --i) {
      std::swap(strata[i], strata[rng.next_index(i + 1)]);
    }
    const double width = bounds.span(dim) / static_cast<double>(count);
    for (std::size_t s = 0; s < count; ++s) {
      const double u = rng.next_double();
      points[s][dim] = bounds.lower[dim] + (static_cast<double>(strata[s]) + u) * width;
    }
  }
  return points;
}

}  // namespace bsmobo
