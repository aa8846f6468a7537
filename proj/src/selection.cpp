#include "bsmobo/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsmobo/indicators.hpp"

namespace bsmobo {

namespace {

constexpr double kDedupTolerance = 1e-9;

bool within_linf(const DecisionVector& a, const DecisionVector& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace

ObjectiveVector lcb(const Prediction& pred, double beta) {
  ObjectiveVector g(pred.mean.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    g[j] = pred.mean[j] - beta * pred.std_dev[j];
  }
  return g;
}

double bhucb(const std::vector<ObjectiveVector>& candidate_gs,
             const std::vector<ObjectiveVector>& archive_fs, const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> joined = archive_fs;
  joined.insert(joined.end(), candidate_gs.begin(), candidate_gs.end());
  const double gain = hypervolume(joined, ref) - hypervolume(archive_fs, ref);
  return std::max(gain, 0.0);
}

ObjectiveVector acquisition_reference_point(const std::vector<ObjectiveVector>& archive_fs,
                                            double margin) {
  if (archive_fs.empty()) {
    throw std::invalid_argument("acquisition_reference_point: empty archive");
  }
  const std::size_t m = archive_fs.front().size();
  ObjectiveVector lo(m, std::numeric_limits<double>::infinity());
  ObjectiveVector hi(m, -std::numeric_limits<double>::infinity());
  for (const auto& f : archive_fs) {
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = std::min(lo[j], f[j]);
      hi[j] = std::max(hi[j], f[j]);
    }
  }
  ObjectiveVector ref(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double span = hi[j] - lo[j];
    ref[j] = hi[j] + margin * (span > 0.0 ? span : 1.0);
  }
  return ref;
}

BatchSelection greedy_select(const CandidateSet& candidates, const Archive& archive,
                             std::size_t k, const ObjectiveVector& ref) {
  if (k < 1) throw std::invalid_argument("greedy_select: k must be at least 1");
  if (k > candidates.size()) throw std::invalid_argument("greedy_select: k exceeds candidate count");

  // Dominated archive values cannot change any hypervolume, so the value set
  // starts from the nondominated subset only.
  std::vector<ObjectiveVector> value_set;
  {
    const auto fs = archive.objective_values();
    for (std::size_t idx : nondominated_subset(fs)) value_set.push_back(fs[idx]);
  }

  BatchSelection selection;
  std::vector<char> used(candidates.size(), 0);

  for (std::size_t pick = 0; pick < k; ++pick) {
    const double base = hypervolume(value_set, ref);
    std::size_t best = candidates.size();
    double best_gain = -std::numeric_limits<double>::infinity();

    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      bool duplicate = false;
      for (const auto& entry : archive.entries()) {
        if (within_linf(candidates[c].x, entry.x, kDedupTolerance)) {
          duplicate = true;
          break;
        }
      }
      for (std::size_t p = 0; !duplicate && p < selection.chosen.size(); ++p) {
        duplicate = within_linf(candidates[c].x, selection.chosen[p].x, kDedupTolerance);
      }
      if (duplicate) continue;

      std::vector<ObjectiveVector> extended = value_set;
      extended.push_back(candidates[c].g);
      const double gain = hypervolume(extended, ref) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }

    if (best == candidates.size()) {
      selection.shortfall = true;
      break;
    }
    used[best] = 1;
    selection.chosen.push_back(candidates[best]);
    selection.increments.push_back(std::max(best_gain, 0.0));
    value_set.push_back(candidates[best].g);
  }
  return selection;
}

}  // namespace bsmobo
