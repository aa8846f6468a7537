#include "bsmobo/core.hpp"

#include <cmath>
#include <cstdio>

namespace bsmobo {

BoxBounds::BoxBounds(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw std::invalid_argument("BoxBounds: lower/upper must be nonempty and equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw std::invalid_argument("BoxBounds: lower[" + std::to_string(i) +
                                  "] must be strictly below upper[" + std::to_string(i) + "]");
    }
  }
}

bool BoxBounds::contains(const DecisionVector& x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

bool GradientMatrix::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Archive::append(EvaluatedSolution solution) {
  for (const auto& entry : entries_) {
    if (entry.x == solution.x) {
      throw std::invalid_argument("Archive: duplicate decision vector");
    }
  }
  entries_.push_back(std::move(solution));
}

std::vector<ObjectiveVector> Archive::objective_values() const {
  std::vector<ObjectiveVector> values;
  values.reserve(entries_.size());
  for (const auto& entry : entries_) values.push_back(entry.f);
  return values;
}

std::vector<std::size_t> Archive::nondominated_indices() const {
  return nondominated_subset(objective_values());
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dominates: objective vectors of different length");
  }
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

std::vector<std::size_t> nondominated_subset(const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j != i && dominates(points[j], points[i])) dominated = true;
    }
    if (!dominated) result.push_back(i);
  }
  return result;
}

DecisionVector clamp_to_bounds(const DecisionVector& x, const BoxBounds& bounds) {
  if (x.size() != bounds.dimension()) {
    throw std::invalid_argument("clamp_to_bounds: dimension mismatch");
  }
  DecisionVector clamped(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    clamped[i] = std::min(std::max(x[i], bounds.lower[i]), bounds.upper[i]);
  }
  return clamped;
}

}  // namespace bsmobo
