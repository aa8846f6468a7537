#pragma once

#include <cstddef>
#include <vector>

#include "bsmobo/core.hpp"

namespace bsmobo {

/// Hypervolume of the region dominated by `points` and bounded above by the
/// reference point: the Lebesgue measure of the union of boxes [p, ref].
/// Points that do not strictly dominate the reference contribute nothing;
/// dominated or duplicate points change nothing. Exact for m = 2 and m = 3;
/// for m > 3 a deterministic Monte-Carlo estimate is used.
double hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref);

/// hypervolume(base + {candidate}) - hypervolume(base); never negative.
double hv_increment(const std::vector<ObjectiveVector>& base, const ObjectiveVector& candidate,
                    const ObjectiveVector& ref);

/// Inverted generational distance: mean Euclidean distance from each
/// reference point to its nearest front point. Throws std::domain_error for
/// an empty reference or front.
double igd(const std::vector<ObjectiveVector>& front,
           const std::vector<ObjectiveVector>& reference);

}  // namespace bsmobo
