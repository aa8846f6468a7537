#include <doctest.h>

#include <cmath>

#include "bsmobo/indicators.hpp"
#include "test_support.hpp"

using namespace bsmobo;

TEST_CASE("hypervolume: explicit small cases") {
  CHECK(hypervolume({}, {1, 1}) == 0.0);
  CHECK(hypervolume({{0, 0}}, {1, 1}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hypervolume({{0.2, 0.8}, {0.5, 0.5}, {0.8, 0.2}}, {1, 1}) ==
        doctest::Approx(0.37).epsilon(1e-12));

  // dominated and duplicate points change nothing
  const double base = hypervolume({{0.25, 0.25}}, {1, 1});
  CHECK(hypervolume({{0.25, 0.25}, {0.5, 0.5}, {0.25, 0.25}}, {1, 1}) == base);

  // points outside the reference box contribute nothing
  CHECK(hypervolume({{2, 2}}, {1, 1}) == 0.0);
  CHECK(hypervolume({{0.5, 1.5}, {0.25, 0.25}}, {1, 1}) == base);

  CHECK_THROWS_AS(hypervolume({{0.5, 0.5, 0.5}}, {1, 1}), std::invalid_argument);
}

TEST_CASE("hypervolume in 3-D: unit cube slices") {
  CHECK(hypervolume({{0, 0, 0}}, {1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-15));
  // two disjoint-ish boxes: volume of the union worked out by hand
  const double v = hypervolume({{0.5, 0.0, 0.0}, {0.0, 0.5, 0.5}}, {1, 1, 1});
  // [0.5,1]x[0,1]x[0,1] = 0.5, [0,1]x[0.5,1]x[0.5,1] = 0.25, overlap 0.125
  CHECK(v == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("exact hypervolume matches the Monte-Carlo oracle") {
  RngStream rng(31);
  for (std::size_t m : {std::size_t{2}, std::size_t{3}}) {
    for (int instance = 0; instance < 10; ++instance) {
      const std::size_t count = 1 + rng.next_index(10);
      const auto pts = test_support::random_points(count, m, 0.0, 0.7, rng);
      const ObjectiveVector ref(m, 1.0);
      const double exact = hypervolume(pts, ref);
      RngStream mc_rng(1000 + instance);
      const double estimate = test_support::mc_hypervolume(pts, ref, 1000000, mc_rng);
      CHECK(std::abs(exact - estimate) / std::max(estimate, 1e-12) < 1e-2);
    }
  }
}

TEST_CASE("hypervolume is monotone and translation consistent") {
  RngStream rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = test_support::random_points(6, 2, 0.0, 0.9, rng);
    ObjectiveVector ref = {1.0, 1.0};
    const double before = hypervolume(pts, ref);
    auto extra = test_support::random_points(1, 2, 0.0, 0.9, rng)[0];
    pts.push_back(extra);
    CHECK(hypervolume(pts, ref) >= before);

    const double dx = rng.next_double(), dy = rng.next_double();
    auto shifted = pts;
    for (auto& p : shifted) {
      p[0] += dx;
      p[1] += dy;
    }
    const ObjectiveVector shifted_ref = {ref[0] + dx, ref[1] + dy};
    CHECK(hypervolume(shifted, shifted_ref) ==
          doctest::Approx(hypervolume(pts, ref)).epsilon(1e-12));
  }
}

TEST_CASE("hv_increment: explicit cases and submodularity") {
  CHECK(hv_increment({{0.2, 0.2}}, {0.5, 0.5}, {1, 1}) == 0.0);  // dominated candidate
  CHECK(hv_increment({}, {0.5, 0.5}, {1, 1}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(hv_increment({{0.5, 0.5}}, {0.2, 0.8}, {1, 1}) == doctest::Approx(0.06).epsilon(1e-12));

  RngStream rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = test_support::random_points(4, 2, 0.0, 0.9, rng);
    auto b = a;
    const auto more = test_support::random_points(3, 2, 0.0, 0.9, rng);
    b.insert(b.end(), more.begin(), more.end());
    const auto c = test_support::random_points(1, 2, 0.0, 0.9, rng)[0];
    const ObjectiveVector ref = {1.0, 1.0};
    CHECK(hv_increment(a, c, ref) >= hv_increment(b, c, ref) - 1e-12);
  }
}

TEST_CASE("igd: explicit cases and the brute-force oracle") {
  const std::vector<ObjectiveVector> reference = {{0, 1}, {1, 0}};
  CHECK(igd(reference, reference) == 0.0);
  CHECK(igd({{0, 1}}, reference) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(igd({{0, 0}}, {}), std::domain_error);

  RngStream rng(43);
  const auto front = test_support::random_points(20, 2, 0.0, 1.0, rng);
  const auto ref = test_support::random_points(50, 2, 0.0, 1.0, rng);
  double expected = 0.0;
  for (const auto& r : ref) {
    double best = 1e300;
    for (const auto& p : front) {
      const double d = std::hypot(p[0] - r[0], p[1] - r[1]);
      best = std::min(best, d);
    }
    expected += best;
  }
  expected /= static_cast<double>(ref.size());
  CHECK(igd(front, ref) == doctest::Approx(expected).epsilon(1e-12));
}
