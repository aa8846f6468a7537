#include <doctest.h>

#include <cmath>

#include "bsmobo/optimizer.hpp"

using namespace bsmobo;

namespace {

// small-but-real configuration so the full pipeline stays fast in unit tests
RunConfig tiny_config(const Problem& problem, std::uint64_t seed = 1) {
  RunConfig cfg = RunConfig::for_problem(problem);
  cfg.budget = 16;
  cfg.init_count = 8;
  cfg.batch_size = 3;
  cfg.population = 8;
  cfg.mc_samples = 5;
  cfg.inner_generations = 5;
  cfg.training.hidden_width = 16;
  cfg.training.epochs = 30;
  cfg.seed = seed;
  return cfg;
}

std::vector<EvaluatedSolution> evaluate_batch(const Problem& problem,
                                              const std::vector<DecisionVector>& points,
                                              bool with_gradients) {
  std::vector<EvaluatedSolution> evals;
  for (const auto& x : points) {
    EvaluatedSolution s;
    s.x = x;
    if (with_gradients) {
      auto [f, g] = problem.evaluate_with_gradient(x);
      s.f = std::move(f);
      s.grad = std::move(g);
    } else {
      s.f = problem.evaluate(x);
    }
    evals.push_back(std::move(s));
  }
  return evals;
}

}  // namespace

TEST_CASE("configuration errors list every violated constraint") {
  const auto problem = Problem::make("zdt1", 3);
  RunConfig cfg = RunConfig::for_problem(problem);
  cfg.budget = 10;
  cfg.init_count = 8;
  cfg.batch_size = 5;   // 8 + 5 > 10
  cfg.population = 3;   // batch > population
  cfg.mc_samples = 1;   // too few
  const auto errors = cfg.violations();
  CHECK(errors.size() == 3);
  CHECK_THROWS_AS(Optimizer{cfg}, ConfigError);

  try {
    Optimizer opt(cfg);
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("budget") != std::string::npos);
    CHECK(what.find("mc_samples") != std::string::npos);
  }
}

TEST_CASE("first ask returns the whole initial design") {
  const auto problem = Problem::make("zdt1", 8);
  RunConfig cfg = RunConfig::for_problem(problem);
  cfg.budget = 160;
  cfg.init_count = 60;
  cfg.batch_size = 5;
  Optimizer opt(cfg);
  const auto initial = opt.ask();
  CHECK(initial.size() == 60);
  for (const auto& x : initial) CHECK(problem.bounds().contains(x));
}

TEST_CASE("ask/tell protocol is strictly alternating") {
  const auto problem = Problem::make("zdt1", 3);
  Optimizer opt(tiny_config(problem));
  const auto initial = opt.ask();
  CHECK_THROWS_AS(opt.ask(), ProtocolError);

  auto evals = evaluate_batch(problem, initial, false);
  CHECK_THROWS_AS(opt.tell({evals[0]}), ProtocolError);  // wrong count

  auto wrong = evals;
  wrong[0].x[0] = 0.5 * (wrong[0].x[0] + 0.25);  // a point never asked
  CHECK_THROWS_AS(opt.tell(wrong), ProtocolError);

  CHECK(opt.tell(evals) == std::nullopt);  // initial design produces no trace
  CHECK_THROWS_AS(opt.tell(evals), ProtocolError);
}

TEST_CASE("tell accepts evaluations in any order") {
  const auto problem = Problem::make("zdt1", 3);
  Optimizer opt(tiny_config(problem));
  auto evals = evaluate_batch(problem, opt.ask(), false);
  std::reverse(evals.begin(), evals.end());
  CHECK_NOTHROW(opt.tell(std::move(evals)));
  // archive preserves ask order regardless of the tell order
  CHECK(opt.archive().size() == 8);
}

TEST_CASE("gradients are required exactly when use_gradients is set") {
  const auto problem = Problem::make("zdt2", 3);
  auto cfg = tiny_config(problem);

  SUBCASE("missing gradients rejected") {
    cfg.use_gradients = true;
    Optimizer opt(cfg);
    auto evals = evaluate_batch(problem, opt.ask(), false);
    CHECK_THROWS_AS(opt.tell(std::move(evals)), std::invalid_argument);
  }
  SUBCASE("unexpected gradients rejected") {
    Optimizer opt(cfg);
    auto evals = evaluate_batch(problem, opt.ask(), true);
    CHECK_THROWS_AS(opt.tell(std::move(evals)), std::invalid_argument);
  }
}

TEST_CASE("bookkeeping: batch sizes, truncation, traces and the finished signal") {
  const auto problem = Problem::make("zdt1", 3);
  Optimizer opt(tiny_config(problem));

  std::size_t true_evaluations = 0;
  auto initial = opt.ask();
  CHECK(initial.size() == 8);
  true_evaluations += initial.size();
  opt.tell(evaluate_batch(problem, initial, false));

  // 16 - 8 = 8 leaves batches of 3, 3, 2 (final truncation)
  std::vector<std::size_t> batch_sizes;
  std::size_t iteration = 0;
  while (true) {
    const auto points = opt.ask();
    if (points.empty()) break;
    batch_sizes.push_back(points.size());
    true_evaluations += points.size();
    const auto trace = opt.tell(evaluate_batch(problem, points, false));
    REQUIRE(trace.has_value());
    ++iteration;
    CHECK(trace->iteration == iteration);
    CHECK(trace->archive_size == opt.archive().size());
    CHECK(trace->selected.size() == batch_sizes.back());
    CHECK(trace->training_losses.size() == 2);
  }

  CHECK(batch_sizes == std::vector<std::size_t>{3, 3, 2});
  CHECK(true_evaluations == 16);  // the surrogate never spends true evaluations
  CHECK(opt.archive().size() == 16);
  CHECK(opt.finished());
  CHECK(opt.ask().empty());
}

TEST_CASE("run drives the loop to exactly the configured budget") {
  const auto problem = Problem::make("zdt1", 3);
  const auto result = run(tiny_config(problem), problem);
  CHECK(result.archive.size() == 16);
  CHECK(result.traces.size() == 3);

  for (const auto& trace : result.traces) {
    CHECK(std::isfinite(trace.igd));
    CHECK(std::isfinite(trace.hypervolume));
    CHECK(trace.igd >= 0.0);
  }

  // archive hypervolume against the frozen reference never decreases
  for (std::size_t i = 1; i < result.traces.size(); ++i) {
    CHECK(result.traces[i].hypervolume >= result.traces[i - 1].hypervolume - 1e-12);
  }

  // the reported front contains no dominated pair
  const auto values = result.archive.objective_values();
  const auto front = nondominated_subset(values);
  for (std::size_t a : front) {
    for (std::size_t b : front) {
      if (a != b) CHECK_FALSE(dominates(values[a], values[b]));
    }
  }
}

TEST_CASE("identical seeds give identical archives") {
  const auto problem = Problem::make("zdt1", 3);
  const auto first = run(tiny_config(problem, 42), problem);
  const auto second = run(tiny_config(problem, 42), problem);
  const auto third = run(tiny_config(problem, 43), problem);
  REQUIRE(first.archive.size() == second.archive.size());
  for (std::size_t i = 0; i < first.archive.size(); ++i) {
    CHECK(first.archive[i].x == second.archive[i].x);
    CHECK(first.archive[i].f == second.archive[i].f);
  }
  bool any_difference = false;
  for (std::size_t i = 0; i < first.archive.size(); ++i) {
    if (first.archive[i].x != third.archive[i].x) any_difference = true;
  }
  CHECK(any_difference);
}

TEST_CASE("gradient mode runs end to end") {
  const auto problem = Problem::make("zdt2", 3);
  auto cfg = tiny_config(problem);
  cfg.use_gradients = true;
  const auto result = run(cfg, problem);
  CHECK(result.archive.size() == 16);
  for (const auto& entry : result.archive.entries()) CHECK(entry.grad.has_value());
}

TEST_CASE("warm-started surrogates keep the protocol intact") {
  const auto problem = Problem::make("zdt1", 3);
  auto cfg = tiny_config(problem);
  cfg.warm_start_surrogate = true;
  const auto result = run(cfg, problem);
  CHECK(result.archive.size() == 16);
}

TEST_CASE("run rejects a mismatched problem") {
  const auto p3 = Problem::make("zdt1", 3);
  const auto p4 = Problem::make("zdt1", 4);
  CHECK_THROWS_AS(run(tiny_config(p3), p4), ConfigError);
}
