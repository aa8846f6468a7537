#pragma once

#include <cstddef>
#include <vector>

#include "bsmobo/core.hpp"
#include "bsmobo/moead.hpp"
#include "bsmobo/surrogate.hpp"

namespace bsmobo {

/// Lower confidence bound vector: componentwise mean - beta * std.
ObjectiveVector lcb(const Prediction& pred, double beta = 1.0);

/// Batch hypervolume upper confidence bound: the hypervolume of the archive
/// objective values joined with the candidate LCB vectors, minus the
/// hypervolume of the archive values alone. Never negative.
double bhucb(const std::vector<ObjectiveVector>& candidate_gs,
             const std::vector<ObjectiveVector>& archive_fs, const ObjectiveVector& ref);

/// Reference point for the acquisition: componentwise maximum of the archive
/// objective values plus `margin` times the observed span (a unit span is
/// assumed for degenerate objectives). Frozen by the caller for the duration
/// of one outer iteration.
ObjectiveVector acquisition_reference_point(const std::vector<ObjectiveVector>& archive_fs,
                                            double margin);

struct BatchSelection {
  CandidateSet chosen;             // in pick order
  std::vector<double> increments;  // hypervolume gain of each pick
  bool shortfall = false;          // fewer than k viable candidates existed
};

/// Greedily picks up to k candidates, each maximizing the hypervolume gain of
/// its LCB vector over the value set (archive objectives plus already-picked
/// LCBs). Ties break toward the lowest candidate index. Candidates within
/// l-infinity distance 1e-9 (decision space) of an archive point or an
/// already-chosen point are skipped.
BatchSelection greedy_select(const CandidateSet& candidates, const Archive& archive,
                             std::size_t k, const ObjectiveVector& ref);

}  // namespace bsmobo
