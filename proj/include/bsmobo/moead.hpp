#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bsmobo/core.hpp"
#include "bsmobo/rng.hpp"

namespace bsmobo {

using WeightVector = std::vector<double>;

/// p weight vectors on the unit simplex, pairwise distinct. m = 2 spaces them
/// uniformly; m >= 3 uses the smallest simplex lattice holding p points,
/// thinned evenly by index. Throws std::domain_error when p < m.
std::vector<WeightVector> generate_weights(std::size_t m, std::size_t p);

/// max_i lambda_i * |g_i - ideal_i|
double tchebycheff(const ObjectiveVector& g, const WeightVector& lambda,
                   const ObjectiveVector& ideal);

/// A decision vector paired with its (cached) surrogate objective values.
struct Candidate {
  DecisionVector x;
  ObjectiveVector g;
};
using CandidateSet = std::vector<Candidate>;

/// Maps a set of decision vectors to their objective vectors, index-aligned.
using BatchObjectiveFn =
    std::function<std::vector<ObjectiveVector>(const std::vector<DecisionVector>&)>;

/// Adapts a single-point objective to the batch interface.
BatchObjectiveFn lift_pointwise(std::function<ObjectiveVector(const DecisionVector&)> fn);

struct MoeadConfig {
  std::size_t population = 100;        // p
  std::size_t generations = 100;
  std::size_t neighborhood = 20;       // T, clipped to the population size
  double neighbor_mating_prob = 0.9;   // otherwise mate across the whole population
  std::size_t max_replacements = 2;    // per offspring
  double crossover_eta = 20.0;         // SBX
  double crossover_rate = 1.0;
  double mutation_eta = 20.0;          // polynomial mutation, rate 1/n
  double ideal_margin = 1e-4;          // ideal point sits this far below the observed minima
};

/// Decomposition-based solver for the surrogate problem: one Tchebycheff
/// subproblem per weight vector, cooperating through weight-space
/// neighborhoods. Each generation produces one offspring per subproblem;
/// offspring are generated first, evaluated in one batch, and merged back in
/// index order, so a run is deterministic for a given seed.
class MoeadSolver {
 public:
  /// `initial_points` (clamped, deduplicated against nothing) overwrite the
  /// head of the random initial population, so a restart can resume from the
  /// best solutions known so far; surplus entries are ignored.
  MoeadSolver(BatchObjectiveFn objective, std::size_t objectives, BoxBounds bounds,
              MoeadConfig config, RngStream rng,
              std::vector<DecisionVector> initial_points = {});

  /// One generation. freeze_ideal suppresses ideal-point updates (used by
  /// invariant tests that need a fixed scalarization).
  void step(bool freeze_ideal = false);

  /// Current incumbents, one per subproblem.
  CandidateSet candidates() const;

  /// Running componentwise minimum of observed values, shifted down by the
  /// configured margin.
  ObjectiveVector ideal() const;

  const std::vector<WeightVector>& weights() const { return weights_; }

 private:
  DecisionVector make_offspring(std::size_t parent_a, std::size_t parent_b);

  BatchObjectiveFn objective_;
  std::size_t m_;
  BoxBounds bounds_;
  MoeadConfig cfg_;
  RngStream rng_;
  std::vector<WeightVector> weights_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<DecisionVector> population_;
  std::vector<ObjectiveVector> values_;
  ObjectiveVector observed_min_;
};

/// Runs MoeadSolver for cfg.generations and returns the p incumbents with
/// their cached objective values.
CandidateSet solve_surrogate_mop(BatchObjectiveFn objective, std::size_t objectives,
                                 const BoxBounds& bounds, const MoeadConfig& config,
                                 RngStream rng, std::vector<DecisionVector> initial_points = {});

}  // namespace bsmobo
