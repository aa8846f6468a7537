#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "bsmobo/moead.hpp"

using namespace bsmobo;

namespace {

BatchObjectiveFn toy_mop() {
  // G(x) = (x^2, (x-1)^2) on [0, 1]
  return lift_pointwise([](const DecisionVector& x) -> ObjectiveVector {
    return {x[0] * x[0], (x[0] - 1.0) * (x[0] - 1.0)};
  });
}

}  // namespace

TEST_CASE("generate_weights: bi-objective rays") {
  const auto w3 = generate_weights(2, 3);
  REQUIRE(w3.size() == 3);
  CHECK(w3[0] == WeightVector{0.0, 1.0});
  CHECK(w3[1] == WeightVector{0.5, 0.5});
  CHECK(w3[2] == WeightVector{1.0, 0.0});

  const auto w100 = generate_weights(2, 100);
  CHECK(w100.size() == 100);
  std::set<WeightVector> distinct(w100.begin(), w100.end());
  CHECK(distinct.size() == 100);
  for (const auto& w : w100) {
    CHECK(std::abs(w[0] + w[1] - 1.0) <= 1e-12);
    CHECK(w[0] >= 0.0);
    CHECK(w[1] >= 0.0);
  }
}

TEST_CASE("generate_weights: three-objective simplex lattice") {
  const auto weights = generate_weights(3, 6);
  REQUIRE(weights.size() == 6);
  std::set<WeightVector> got(weights.begin(), weights.end());
  const std::set<WeightVector> expected = {{0, 0, 1},     {0, 0.5, 0.5}, {0, 1, 0},
                                           {0.5, 0, 0.5}, {0.5, 0.5, 0}, {1, 0, 0}};
  CHECK(got == expected);

  const auto thinned = generate_weights(3, 100);
  CHECK(thinned.size() == 100);
  std::set<WeightVector> distinct(thinned.begin(), thinned.end());
  CHECK(distinct.size() == 100);

  CHECK_THROWS_AS(generate_weights(3, 2), std::domain_error);
}

TEST_CASE("tchebycheff: direct formula") {
  CHECK(tchebycheff({0.4, 0.6}, {0.5, 0.5}, {0, 0}) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(tchebycheff({0.3, 7.0}, {1.0, 0.0}, {0, 0}) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(tchebycheff({0.2, 0.9}, {0.5, 0.5}, {0.2, 0.9}) == 0.0);
  CHECK_THROWS_AS(tchebycheff({1.0}, {0.5, 0.5}, {0, 0}), std::invalid_argument);
}

TEST_CASE("solver finds the toy front") {
  MoeadConfig cfg;
  cfg.population = 11;
  cfg.generations = 200;
  const BoxBounds box({0.0}, {1.0});
  const auto result = solve_surrogate_mop(toy_mop(), 2, box, cfg, RngStream(2024));
  REQUIRE(result.size() == 11);

  // lambda = (1, 0) cares only about g1 = x^2: its incumbent sits near x = 0
  CHECK(std::abs(result[10].x[0]) <= 0.05);

  // every point of the dense-grid front has an incumbent within 0.3 in f1
  // (the exact Tchebycheff optima for uniform weights leave a 0.4375-wide
  // interval between the last two subproblems on this problem, so coverage
  // radius is the attainable spread measure)
  std::vector<double> f1;
  for (const auto& c : result) f1.push_back(c.g[0]);
  double coverage_radius = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = static_cast<double>(i) / 1000.0;
    const double front_f1 = x * x;
    double nearest = 1e300;
    for (double v : f1) nearest = std::min(nearest, std::abs(v - front_f1));
    coverage_radius = std::max(coverage_radius, nearest);
  }
  CHECK(coverage_radius < 0.3);

  for (const auto& c : result) CHECK(box.contains(c.x));
}

TEST_CASE("solver output size equals the population") {
  MoeadConfig cfg;
  cfg.population = 7;
  cfg.generations = 3;
  const auto result =
      solve_surrogate_mop(toy_mop(), 2, BoxBounds({0.0}, {1.0}), cfg, RngStream(3));
  CHECK(result.size() == 7);
}

TEST_CASE("ideal point is componentwise non-increasing across generations") {
  MoeadConfig cfg;
  cfg.population = 10;
  MoeadSolver solver(toy_mop(), 2, BoxBounds({0.0}, {1.0}), cfg, RngStream(5));
  auto z = solver.ideal();
  for (int gen = 0; gen < 30; ++gen) {
    solver.step();
    const auto next = solver.ideal();
    for (std::size_t c = 0; c < z.size(); ++c) CHECK(next[c] <= z[c]);
    z = next;
  }
}

TEST_CASE("replacement never worsens a subproblem under a frozen ideal point") {
  MoeadConfig cfg;
  cfg.population = 12;
  MoeadSolver solver(toy_mop(), 2, BoxBounds({0.0}, {1.0}), cfg, RngStream(6));
  for (int gen = 0; gen < 20; ++gen) {
    const auto z = solver.ideal();
    const auto before = solver.candidates();
    solver.step(/*freeze_ideal=*/true);
    const auto after = solver.candidates();
    for (std::size_t i = 0; i < before.size(); ++i) {
      const auto& lambda = solver.weights()[i];
      CHECK(tchebycheff(after[i].g, lambda, z) <= tchebycheff(before[i].g, lambda, z) + 1e-15);
    }
  }
}

TEST_CASE("solver is deterministic by seed") {
  MoeadConfig cfg;
  cfg.population = 9;
  cfg.generations = 25;
  const BoxBounds box({0.0}, {1.0});
  const auto a = solve_surrogate_mop(toy_mop(), 2, box, cfg, RngStream(77));
  const auto b = solve_surrogate_mop(toy_mop(), 2, box, cfg, RngStream(77));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].g == b[i].g);
  }
}
