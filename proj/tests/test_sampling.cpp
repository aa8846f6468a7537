#include <doctest.h>

#include <vector>

#include "bsmobo/sampling.hpp"

using namespace bsmobo;

namespace {

// exactly one sample per stratum, in every dimension
void check_stratified(const std::vector<DecisionVector>& points, const BoxBounds& bounds) {
  const std::size_t count = points.size();
  for (std::size_t d = 0; d < bounds.dimension(); ++d) {
    std::vector<int> cells(count, 0);
    for (const auto& x : points) {
      const double t = (x[d] - bounds.lower[d]) / bounds.span(d);
      auto cell = static_cast<std::size_t>(t * static_cast<double>(count));
      if (cell == count) --cell;
      ++cells[cell];
    }
    for (int c : cells) CHECK(c == 1);
  }
}

}  // namespace

TEST_CASE("latin_hypercube stratifies every dimension") {
  const BoxBounds box({0.0}, {1.0});
  RngStream rng(1);
  const auto pts = latin_hypercube(4, box, rng);
  REQUIRE(pts.size() == 4);
  check_stratified(pts, box);
}

TEST_CASE("latin_hypercube with a single point is uniform in the box") {
  const BoxBounds box({-1.0, 2.0}, {1.0, 4.0});
  RngStream rng(2);
  const auto pts = latin_hypercube(1, box, rng);
  REQUIRE(pts.size() == 1);
  CHECK(box.contains(pts[0]));
}

TEST_CASE("latin_hypercube passes the projection test at a 60-point, 8-dimensional design") {
  const BoxBounds box(std::vector<double>(8, 0.0), std::vector<double>(8, 1.0));
  RngStream rng(3);
  const auto pts = latin_hypercube(60, box, rng);
  REQUIRE(pts.size() == 60);
  check_stratified(pts, box);
  for (const auto& x : pts) CHECK(box.contains(x));
}

TEST_CASE("latin_hypercube handles asymmetric bounds (zdt4 box)") {
  BoxBounds box({0, -5, -5}, {1, 5, 5});
  RngStream rng(4);
  const auto pts = latin_hypercube(16, box, rng);
  check_stratified(pts, box);
}

TEST_CASE("latin_hypercube is deterministic by seed") {
  const BoxBounds box(std::vector<double>(3, 0.0), std::vector<double>(3, 1.0));
  RngStream r1(99), r2(99), r3(100);
  CHECK(latin_hypercube(10, box, r1) == latin_hypercube(10, box, r2));
  CHECK(latin_hypercube(10, box, r1) != latin_hypercube(10, box, r3));
}
