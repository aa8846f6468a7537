#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bsmobo/core.hpp"
#include "bsmobo/moead.hpp"
#include "bsmobo/problems.hpp"
#include "bsmobo/rng.hpp"
#include "bsmobo/surrogate.hpp"

namespace bsmobo {

/// Full parameterization of one optimization run.
struct RunConfig {
  std::size_t dimension = 0;                 // n
  std::size_t objectives = 2;                // m
  std::optional<BoxBounds> bounds;
  std::size_t budget = 0;                    // total true evaluations
  std::size_t init_count = 0;                // initial design size
  std::size_t batch_size = 5;                // points evaluated per iteration
  std::size_t population = 100;              // inner solver population
  std::size_t mc_samples = 20;
  bool use_gradients = false;
  TrainingConfig training;
  std::size_t inner_generations = 100;
  std::uint64_t seed = 0;
  double reference_margin = 0.1;             // acquisition reference, fraction of span
  double lcb_beta = 1.0;
  bool warm_start_surrogate = false;
  std::size_t threads = 1;                   // worker cap for surrogate training

  /// Preset for a built-in problem: copies n, m and bounds; everything else
  /// keeps its default.
  static RunConfig for_problem(const Problem& problem);

  /// Every violated constraint, as one message each; empty when valid.
  std::vector<std::string> violations() const;

  MoeadConfig moead_config() const;
};

/// What one outer iteration did, for metric traces and timing breakdowns.
struct IterationTrace {
  std::size_t iteration = 0;   // 1-based, counting post-initialization batches
  std::size_t archive_size = 0;
  CandidateSet selected;       // chosen points with their LCB vectors
  double igd = std::numeric_limits<double>::quiet_NaN();
  double hypervolume = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> training_losses;
  double train_seconds = 0.0;
  double inner_seconds = 0.0;
  double select_seconds = 0.0;
};

/// Ask/tell driver: ask() suggests the next batch of decision vectors,
/// tell() hands back their true evaluations. The first ask returns the whole
/// Latin-hypercube initial design; each later ask trains the surrogate
/// ensemble, solves the surrogate problem and greedily selects a batch.
/// Strict alternation is enforced.
class Optimizer {
 public:
  /// Throws ConfigError listing every violated constraint.
  explicit Optimizer(RunConfig config);

  /// Next batch to evaluate, empty once the budget is exhausted. Throws
  /// ProtocolError while a batch is outstanding.
  std::vector<DecisionVector> ask();

  /// Accepts the outstanding batch in any order (matching by decision
  /// vector). Returns the iteration trace for post-initialization batches.
  /// Throws ProtocolError on mismatched points and std::invalid_argument
  /// when gradients are missing (or supplied) contrary to use_gradients.
  std::optional<IterationTrace> tell(std::vector<EvaluatedSolution> evaluations);

  bool finished() const { return !outstanding_ && archive_.size() >= cfg_.budget; }
  bool batch_outstanding() const { return outstanding_; }
  const Archive& archive() const { return archive_; }
  const RunConfig& config() const { return cfg_; }

 private:
  RunConfig cfg_;
  RngStream master_;
  Archive archive_;
  std::vector<DecisionVector> pending_;
  bool outstanding_ = false;
  std::size_t iteration_ = 0;
  IterationTrace pending_trace_;
  std::optional<SurrogateEnsemble> previous_ensemble_;
};

struct RunResult {
  Archive archive;
  std::vector<IterationTrace> traces;
};

/// Drives the optimizer against a built-in problem, evaluating batches with
/// evaluate() or evaluate_with_gradient() according to use_gradients, and
/// fills per-iteration IGD (against the problem reference front) and archive
/// hypervolume (against a reference frozen after initialization) into the
/// traces. Exactly cfg.budget true evaluations are spent.
RunResult run(const RunConfig& cfg, const Problem& problem);

/// Reference front size used for IGD reporting (500 bi-objective points,
/// 990 otherwise).
std::size_t reference_front_size(std::size_t objectives);

}  // namespace bsmobo
