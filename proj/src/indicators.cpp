#include "bsmobo/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsmobo/rng.hpp"

namespace bsmobo {

namespace {

// Keep only points strictly inside the reference box (every coordinate
// better than ref); everything else has zero measure against ref.
std::vector<ObjectiveVector> contributing(const std::vector<ObjectiveVector>& points,
                                          const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> kept;
  kept.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != ref.size()) {
      throw std::invalid_argument("hypervolume: point/reference dimension mismatch");
    }
    bool inside = true;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!(p[j] < ref[j])) {
        inside = false;
        break;
      }
    }
    if (inside) kept.push_back(p);
  }
  return kept;
}

// 2-D sweep over the staircase of minima, ascending in f1.
double hv2(std::vector<ObjectiveVector> pts, double r1, double r2) {
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end());
  double volume = 0.0;
  double prev_f1 = 0.0, prev_f2 = 0.0;
  bool have_prev = false;
  for (const auto& p : pts) {
    if (have_prev && p[1] >= prev_f2) continue;  // dominated by the staircase
    if (have_prev) volume += (p[0] - prev_f1) * (r2 - prev_f2);
    prev_f1 = p[0];
    prev_f2 = p[1];
    have_prev = true;
  }
  volume += (r1 - prev_f1) * (r2 - prev_f2);
  return volume;
}

// 3-D dimension sweep: slabs between consecutive f3 levels, each measured
// with the 2-D staircase of all points at or below the slab.
double hv3(std::vector<ObjectiveVector> pts, const ObjectiveVector& ref) {
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; });
  double volume = 0.0;
  std::vector<ObjectiveVector> slab;
  slab.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    slab.push_back({pts[i][0], pts[i][1]});
    const double top = (i + 1 < pts.size()) ? pts[i + 1][2] : ref[2];
    const double depth = top - pts[i][2];
    if (depth > 0.0) volume += hv2(slab, ref[0], ref[1]) * depth;
  }
  return volume;
}

// Deterministic Monte-Carlo fallback for m > 3 (unused by the built-in
// m <= 3 suite).
double hv_monte_carlo(const std::vector<ObjectiveVector>& pts, const ObjectiveVector& ref) {
  const std::size_t m = ref.size();
  ObjectiveVector lo(m, std::numeric_limits<double>::infinity());
  for (const auto& p : pts) {
    for (std::size_t j = 0; j < m; ++j) lo[j] = std::min(lo[j], p[j]);
  }
  double box = 1.0;
  for (std::size_t j = 0; j < m; ++j) box *= ref[j] - lo[j];
  if (!(box > 0.0)) return 0.0;

  constexpr std::size_t kSamples = 200000;
  RngStream rng(0x5D2F1A6B0C9E4D37ULL ^ (pts.size() * 0x9E3779B97F4A7C15ULL));
  std::size_t hits = 0;
  ObjectiveVector sample(m);
  for (std::size_t s = 0; s < kSamples; ++s) {
    for (std::size_t j = 0; j < m; ++j) {
      sample[j] = lo[j] + (ref[j] - lo[j]) * rng.next_double();
    }
    for (const auto& p : pts) {
      bool dominated = true;
      for (std::size_t j = 0; j < m; ++j) {
        if (sample[j] < p[j]) {
          dominated = false;
          break;
        }
      }
      if (dominated) {
        ++hits;
        break;
      }
    }
  }
  return box * static_cast<double>(hits) / static_cast<double>(kSamples);
}

}  // namespace

double hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
  if (ref.empty()) throw std::invalid_argument("hypervolume: empty reference point");
  auto pts = contributing(points, ref);
  if (pts.empty()) return 0.0;
  switch (ref.size()) {
    case 1: {
      double best = pts[0][0];
      for (const auto& p : pts) best = std::min(best, p[0]);
      return ref[0] - best;
    }
    case 2:
      return hv2(std::move(pts), ref[0], ref[1]);
    case 3:
      return hv3(std::move(pts), ref);
    default:
      return hv_monte_carlo(pts, ref);
  }
}

double hv_increment(const std::vector<ObjectiveVector>& base, const ObjectiveVector& candidate,
                    const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> extended = base;
  extended.push_back(candidate);
  const double gain = hypervolume(extended, ref) - hypervolume(base, ref);
  return std::max(gain, 0.0);
}

double igd(const std::vector<ObjectiveVector>& front,
           const std::vector<ObjectiveVector>& reference) {
  if (reference.empty()) throw std::domain_error("igd: empty reference set");
  if (front.empty()) throw std::domain_error("igd: empty front");
  double total = 0.0;
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : front) {
      if (p.size() != r.size()) throw std::invalid_argument("igd: dimension mismatch");
      double dist2 = 0.0;
      for (std::size_t j = 0; j < r.size(); ++j) {
        const double d = p[j] - r[j];
        dist2 += d * d;
      }
      best = std::min(best, dist2);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

}  // namespace bsmobo
