#pragma once

#include <cstddef>
#include <vector>

#include "bsmobo/core.hpp"
#include "bsmobo/rng.hpp"

namespace bsmobo {

/// Latin hypercube design: for every dimension, each of the `count`
/// equal-width strata of [lower, upper] receives exactly one sample,
/// uniformly placed within its stratum. Per-dimension stratum permutations
/// are independent.
std::vector<DecisionVector> latin_hypercube(std::size_t count, const BoxBounds& bounds,
                                            RngStream& rng);

}  // namespace bsmobo
