#include "bsmobo/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>

#include "bsmobo/indicators.hpp"
#include "bsmobo/sampling.hpp"
#include "bsmobo/selection.hpp"

namespace bsmobo {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

RunConfig RunConfig::for_problem(const Problem& problem) {
  RunConfig cfg;
  cfg.dimension = problem.dimension();
  cfg.objectives = problem.objectives();
  cfg.bounds = problem.bounds();
  return cfg;
}

std::vector<std::string> RunConfig::violations() const {
  std::vector<std::string> errors;
  if (dimension < 1) errors.push_back("dimension must be at least 1");
  if (objectives < 2) errors.push_back("objectives must be at least 2");
  if (!bounds.has_value()) {
    errors.push_back("bounds are required");
  } else if (bounds->dimension() != dimension) {
    errors.push_back("bounds dimension does not match the problem dimension");
  }
  if (init_count < 2) errors.push_back("init_count must be at least 2");
  if (batch_size < 1) errors.push_back("batch_size must be at least 1");
  if (init_count + batch_size > budget) {
    errors.push_back("init_count + batch_size must not exceed the budget");
  }
  if (batch_size > population) errors.push_back("batch_size must not exceed the population");
  if (population < objectives) errors.push_back("population must be at least the objective count");
  if (mc_samples < 2) errors.push_back("mc_samples must be at least 2");
  if (inner_generations < 1) errors.push_back("inner_generations must be at least 1");
  if (training.dropout_rate < 0.0 || training.dropout_rate >= 1.0) {
    errors.push_back("dropout_rate must lie in [0, 1)");
  }
  if (training.epochs < 1) errors.push_back("epochs must be at least 1");
  if (!(training.learning_rate > 0.0)) errors.push_back("learning_rate must be positive");
  if (!(reference_margin > 0.0)) errors.push_back("reference_margin must be positive");
  return errors;
}

MoeadConfig RunConfig::moead_config() const {
  MoeadConfig cfg;
  cfg.population = population;
  cfg.generations = inner_generations;
  return cfg;
}

Optimizer::Optimizer(RunConfig config) : cfg_(std::move(config)), master_(cfg_.seed) {
  const auto errors = cfg_.violations();
  if (!errors.empty()) {
    std::ostringstream message;
    message << "invalid configuration:";
    for (const auto& e : errors) message << "\n  - " << e;
    throw ConfigError(message.str());
  }
  master_ = RngStream(cfg_.seed);
}

std::vector<DecisionVector> Optimizer::ask() {
  if (outstanding_) throw ProtocolError("ask: a batch is already outstanding");
  if (archive_.size() >= cfg_.budget) return {};

  const BoxBounds& bounds = *cfg_.bounds;

  if (archive_.empty()) {
    RngStream init_rng = master_.derive("init");
    pending_ = latin_hypercube(cfg_.init_count, bounds, init_rng);
    outstanding_ = true;
    return pending_;
  }

  const std::size_t t = iteration_ + 1;
  pending_trace_ = IterationTrace{};
  pending_trace_.iteration = t;

  auto clock = std::chrono::steady_clock::now();
  const RngStream train_rng = master_.derive("train-" + std::to_string(t));
  SurrogateEnsemble ensemble = SurrogateEnsemble::fit(
      archive_, bounds, cfg_.objectives, cfg_.training, cfg_.mc_samples, train_rng,
      cfg_.use_gradients, cfg_.threads,
      cfg_.warm_start_surrogate && previous_ensemble_.has_value() ? &*previous_ensemble_
                                                                  : nullptr);
  pending_trace_.training_losses = ensemble.training_losses();
  pending_trace_.train_seconds = seconds_since(clock);

  clock = std::chrono::steady_clock::now();
  auto predict_rng =
      std::make_shared<RngStream>(master_.derive("predict-" + std::to_string(t)));
  const double beta = cfg_.lcb_beta;
  BatchObjectiveFn surrogate_mop = [&ensemble, predict_rng,
                                    beta](const std::vector<DecisionVector>& xs) {
    const auto predictions = ensemble.predict_batch(xs, *predict_rng);
    std::vector<ObjectiveVector> gs;
    gs.reserve(predictions.size());
    for (const auto& p : predictions) gs.push_back(lcb(p, beta));
    return gs;
  };
  // the inner restart resumes from the best solutions known so far
  std::vector<DecisionVector> incumbents;
  for (std::size_t idx : archive_.nondominated_indices()) incumbents.push_back(archive_[idx].x);
  CandidateSet candidates =
      solve_surrogate_mop(surrogate_mop, cfg_.objectives, bounds, cfg_.moead_config(),
                          master_.derive("inner-" + std::to_string(t)), std::move(incumbents));
  pending_trace_.inner_seconds = seconds_since(clock);

  clock = std::chrono::steady_clock::now();
  const std::size_t remaining = cfg_.budget - archive_.size();
  const std::size_t batch = std::min(cfg_.batch_size, remaining);
  const ObjectiveVector ref =
      acquisition_reference_point(archive_.objective_values(), cfg_.reference_margin);
  BatchSelection selection = greedy_select(candidates, archive_, batch, ref);

  pending_ = {};
  for (const auto& pick : selection.chosen) pending_.push_back(pick.x);

  // A shortfall (every remaining candidate already evaluated) is pathological
  // but must not starve the budget: pad with fresh uniform points.
  if (pending_.size() < batch) {
    RngStream fill_rng = master_.derive("fill-" + std::to_string(t));
    while (pending_.size() < batch) {
      DecisionVector x(cfg_.dimension);
      for (std::size_t d = 0; d < cfg_.dimension; ++d) {
        x[d] = bounds.lower[d] + bounds.span(d) * fill_rng.next_double();
      }
      pending_.push_back(std::move(x));
    }
  }

  pending_trace_.selected = std::move(selection.chosen);
  pending_trace_.select_seconds = seconds_since(clock);

  previous_ensemble_ = std::move(ensemble);
  outstanding_ = true;
  return pending_;
}

std::optional<IterationTrace> Optimizer::tell(std::vector<EvaluatedSolution> evaluations) {
  if (!outstanding_) throw ProtocolError("tell: no batch outstanding");
  if (evaluations.size() != pending_.size()) {
    throw ProtocolError("tell: expected " + std::to_string(pending_.size()) + " evaluations, got " +
                        std::to_string(evaluations.size()));
  }

  // match by decision vector so callers may evaluate in any order
  std::vector<std::size_t> position(pending_.size(), evaluations.size());
  std::vector<char> taken(evaluations.size(), 0);
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    for (std::size_t e = 0; e < evaluations.size(); ++e) {
      if (!taken[e] && evaluations[e].x == pending_[i]) {
        position[i] = e;
        taken[e] = 1;
        break;
      }
    }
    if (position[i] == evaluations.size()) {
      throw ProtocolError("tell: evaluation batch does not match the outstanding ask");
    }
  }

  for (const auto& eval : evaluations) {
    if (cfg_.use_gradients && !eval.grad.has_value()) {
      throw std::invalid_argument("tell: gradients required but missing");
    }
    if (!cfg_.use_gradients && eval.grad.has_value()) {
      throw std::invalid_argument("tell: gradients supplied but use_gradients is off");
    }
    if (eval.f.size() != cfg_.objectives) {
      throw std::invalid_argument("tell: objective vector of wrong length");
    }
    if (eval.grad.has_value() && (eval.grad->objectives() != cfg_.objectives ||
                                  eval.grad->variables() != cfg_.dimension)) {
      throw std::invalid_argument("tell: gradient matrix of wrong shape");
    }
  }

  const bool initial = archive_.empty();
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    archive_.append(std::move(evaluations[position[i]]));
  }
  pending_.clear();
  outstanding_ = false;

  if (initial) return std::nullopt;
  ++iteration_;
  pending_trace_.archive_size = archive_.size();
  return std::move(pending_trace_);
}

std::size_t reference_front_size(std::size_t objectives) { return objectives == 2 ? 500 : 990; }

RunResult run(const RunConfig& cfg, const Problem& problem) {
  if (cfg.dimension != problem.dimension() || cfg.objectives != problem.objectives()) {
    throw ConfigError("run: configuration does not match the problem dimensions");
  }

  Optimizer optimizer(cfg);
  const auto reference = problem.reference_front(reference_front_size(cfg.objectives));

  ObjectiveVector hv_ref;  // frozen once the initial design is evaluated
  std::vector<IterationTrace> traces;

  while (true) {
    const auto points = optimizer.ask();
    if (points.empty()) break;

    std::vector<EvaluatedSolution> evaluations;
    evaluations.reserve(points.size());
    for (const auto& x : points) {
      EvaluatedSolution solution;
      solution.x = x;
      if (cfg.use_gradients) {
        auto [f, grad] = problem.evaluate_with_gradient(x);
        solution.f = std::move(f);
        solution.grad = std::move(grad);
      } else {
        solution.f = problem.evaluate(x);
      }
      evaluations.push_back(std::move(solution));
    }

    auto trace = optimizer.tell(std::move(evaluations));
    const auto values = optimizer.archive().objective_values();
    if (hv_ref.empty()) {
      hv_ref = acquisition_reference_point(values, cfg.reference_margin);
    }
    if (trace.has_value()) {
      std::vector<ObjectiveVector> front;
      for (std::size_t idx : nondominated_subset(values)) front.push_back(values[idx]);
      trace->igd = igd(front, reference);
      trace->hypervolume = hypervolume(values, hv_ref);
      traces.push_back(std::move(*trace));
    }
  }

  return RunResult{optimizer.archive(), std::move(traces)};
}

}  // namespace bsmobo
