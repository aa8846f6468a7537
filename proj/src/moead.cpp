#include "bsmobo/moead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bsmobo {

namespace {

void lattice_rec(std::size_t m, std::size_t budget, std::size_t level,
                 std::vector<std::size_t>& partial, std::size_t total,
                 std::vector<WeightVector>& out) {
  if (level == m - 1) {
    partial[level] = budget;
    WeightVector w(m);
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = static_cast<double>(partial[i]) / static_cast<double>(total);
    }
    out.push_back(std::move(w));
    return;
  }
  for (std::size_t i = 0; i <= budget; ++i) {
    partial[level] = i;
    lattice_rec(m, budget - i, level + 1, partial, total, out);
  }
}

std::size_t lattice_size(std::size_t m, std::size_t h) {
  std::size_t result = 1;
  for (std::size_t i = 1; i < m; ++i) result = result * (h + i) / i;
  return result;
}

}  // namespace

std::vector<WeightVector> generate_weights(std::size_t m, std::size_t p) {
  if (m < 2) throw std::domain_error("generate_weights: need at least 2 objectives");
  if (p < m) throw std::domain_error("generate_weights: population smaller than objective count");

  if (m == 2) {
    std::vector<WeightVector> weights;
    weights.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
      const double w = static_cast<double>(i) / static_cast<double>(p - 1);
      weights.push_back({w, 1.0 - w});
    }
    return weights;
  }

  std::size_t h = 1;
  while (lattice_size(m, h) < p) ++h;
  std::vector<WeightVector> lattice;
  std::vector<std::size_t> partial(m, 0);
  lattice_rec(m, h, 0, partial, h, lattice);

  if (lattice.size() == p) return lattice;
  std::vector<WeightVector> thinned;
  thinned.reserve(p);
  const double stride = static_cast<double>(lattice.size() - 1) / static_cast<double>(p - 1);
  for (std::size_t t = 0; t < p; ++t) {
    const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(t) * stride));
    thinned.push_back(std::move(lattice[idx]));
  }
  return thinned;
}

double tchebycheff(const ObjectiveVector& g, const WeightVector& lambda,
                   const ObjectiveVector& ideal) {
  if (g.size() != lambda.size() || g.size() != ideal.size()) {
    throw std::invalid_argument("tchebycheff: length mismatch");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    value = std::max(value, lambda[i] * std::abs(g[i] - ideal[i]));
  }
  return value;
}

BatchObjectiveFn lift_pointwise(std::function<ObjectiveVector(const DecisionVector&)> fn) {
  return [fn = std::move(fn)](const std::vector<DecisionVector>& xs) {
    std::vector<ObjectiveVector> values;
    values.reserve(xs.size());
    for (const auto& x : xs) values.push_back(fn(x));
    return values;
  };
}

MoeadSolver::MoeadSolver(BatchObjectiveFn objective, std::size_t objectives, BoxBounds bounds,
                         MoeadConfig config, RngStream rng,
                         std::vector<DecisionVector> initial_points)
    : objective_(std::move(objective)),
      m_(objectives),
      bounds_(std::move(bounds)),
      cfg_(config),
      rng_(rng) {
  if (cfg_.population < m_) throw std::domain_error("MoeadSolver: population smaller than m");
  weights_ = generate_weights(m_, cfg_.population);

  const std::size_t p = cfg_.population;
  const std::size_t t_size = std::min(std::max<std::size_t>(cfg_.neighborhood, 2), p);
  neighbors_.resize(p);
  std::vector<std::pair<double, std::size_t>> dist(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < m_; ++c) {
        const double d = weights_[i][c] - weights_[j][c];
        d2 += d * d;
      }
      dist[j] = {d2, j};
    }
    std::sort(dist.begin(), dist.end());
    neighbors_[i].reserve(t_size);
    for (std::size_t j = 0; j < t_size; ++j) neighbors_[i].push_back(dist[j].second);
  }

  const std::size_t n = bounds_.dimension();
  population_.resize(p, DecisionVector(n));
  for (auto& x : population_) {
    for (std::size_t d = 0; d < n; ++d) {
      x[d] = bounds_.lower[d] + bounds_.span(d) * rng_.next_double();
    }
  }
  // the rng draw count above stays fixed, so seeding never shifts later draws
  const std::size_t seeded = std::min(initial_points.size(), p);
  for (std::size_t i = 0; i < seeded; ++i) {
    population_[i] = clamp_to_bounds(initial_points[i], bounds_);
  }
  values_ = objective_(population_);
  observed_min_.assign(m_, std::numeric_limits<double>::infinity());
  for (const auto& g : values_) {
    for (std::size_t c = 0; c < m_; ++c) observed_min_[c] = std::min(observed_min_[c], g[c]);
  }
}

ObjectiveVector MoeadSolver::ideal() const {
  ObjectiveVector z(m_);
  for (std::size_t c = 0; c < m_; ++c) z[c] = observed_min_[c] - cfg_.ideal_margin;
  return z;
}

DecisionVector MoeadSolver::make_offspring(std::size_t parent_a, std::size_t parent_b) {
  const std::size_t n = bounds_.dimension();
  const DecisionVector& pa = population_[parent_a];
  const DecisionVector& pb = population_[parent_b];
  DecisionVector child = pa;

  // simulated binary crossover, bounded
  if (rng_.next_double() < cfg_.crossover_rate) {
    for (std::size_t d = 0; d < n; ++d) {
      if (rng_.next_double() > 0.5) continue;
      double y1 = pa[d], y2 = pb[d];
      if (std::abs(y1 - y2) < 1e-14) continue;
      if (y1 > y2) std::swap(y1, y2);
      const double lo = bounds_.lower[d], hi = bounds_.upper[d];
      const double u = rng_.next_double();
      const double exponent = 1.0 / (cfg_.crossover_eta + 1.0);

      auto spread = [&](double beta) {
        const double alpha = 2.0 - std::pow(beta, -(cfg_.crossover_eta + 1.0));
        if (u <= 1.0 / alpha) return std::pow(u * alpha, exponent);
        return std::pow(1.0 / (2.0 - u * alpha), exponent);
      };
      const double beta_lo = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
      const double beta_hi = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
      double c1 = 0.5 * ((y1 + y2) - spread(beta_lo) * (y2 - y1));
      double c2 = 0.5 * ((y1 + y2) + spread(beta_hi) * (y2 - y1));
      c1 = std::clamp(c1, lo, hi);
      c2 = std::clamp(c2, lo, hi);
      child[d] = (rng_.next_double() < 0.5) ? c1 : c2;
    }
  }

  // polynomial mutation, rate 1/n
  const double rate = 1.0 / static_cast<double>(n);
  const double mut_exp = 1.0 / (cfg_.mutation_eta + 1.0);
  for (std::size_t d = 0; d < n; ++d) {
    if (rng_.next_double() >= rate) continue;
    const double lo = bounds_.lower[d], hi = bounds_.upper[d];
    const double span = hi - lo;
    const double y = child[d];
    const double u = rng_.next_double();
    double delta;
    if (u < 0.5) {
      const double xy = 1.0 - (y - lo) / span;
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, cfg_.mutation_eta + 1.0);
      delta = std::pow(val, mut_exp) - 1.0;
    } else {
      const double xy = 1.0 - (hi - y) / span;
      const double val =
          2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, cfg_.mutation_eta + 1.0);
      delta = 1.0 - std::pow(val, mut_exp);
    }
    child[d] = std::clamp(y + delta * span, lo, hi);
  }
  return child;
}

void MoeadSolver::step(bool freeze_ideal) {
  const std::size_t p = cfg_.population;

  // offspring generation first, evaluation second, replacement third; the
  // batch evaluation may fan out while merges stay index-ordered
  std::vector<DecisionVector> offspring(p);
  std::vector<char> from_neighborhood(p);
  for (std::size_t i = 0; i < p; ++i) {
    const bool local = rng_.next_double() < cfg_.neighbor_mating_prob;
    from_neighborhood[i] = local ? 1 : 0;
    const std::vector<std::size_t>& pool = neighbors_[i];
    std::size_t a, b;
    if (local) {
      a = pool[rng_.next_index(pool.size())];
      do {
        b = pool[rng_.next_index(pool.size())];
      } while (b == a);
    } else {
      a = rng_.next_index(p);
      do {
        b = rng_.next_index(p);
      } while (b == a);
    }
    offspring[i] = make_offspring(a, b);
  }

  const std::vector<ObjectiveVector> offspring_values = objective_(offspring);

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < p; ++i) {
    const ObjectiveVector& g = offspring_values[i];
    if (!freeze_ideal) {
      for (std::size_t c = 0; c < m_; ++c) observed_min_[c] = std::min(observed_min_[c], g[c]);
    }
    const ObjectiveVector z = ideal();

    if (from_neighborhood[i]) {
      order = neighbors_[i];
    } else {
      order.resize(p);
      std::iota(order.begin(), order.end(), std::size_t{0});
    }
    for (std::size_t j = order.size() - 1; j > 0; --j) {
      std::swap(order[j], order[rng_.next_index(j + 1)]);
    }

    std::size_t replaced = 0;
    for (std::size_t j : order) {
      if (replaced >= cfg_.max_replacements) break;
      if (tchebycheff(g, weights_[j], z) < tchebycheff(values_[j], weights_[j], z)) {
        population_[j] = offspring[i];
        values_[j] = g;
        ++replaced;
      }
    }
  }
}

CandidateSet MoeadSolver::candidates() const {
  CandidateSet result;
  result.reserve(population_.size());
  for (std::size_t i = 0; i < population_.size(); ++i) {
    result.push_back({population_[i], values_[i]});
  }
  return result;
}

CandidateSet solve_surrogate_mop(BatchObjectiveFn objective, std::size_t objectives,
                                 const BoxBounds& bounds, const MoeadConfig& config,
                                 RngStream rng, std::vector<DecisionVector> initial_points) {
  if (config.generations < 1) throw std::domain_error("solve_surrogate_mop: generations >= 1");
  MoeadSolver solver(std::move(objective), objectives, bounds, config, rng,
                     std::move(initial_points));
  for (std::size_t gen = 0; gen < config.generations; ++gen) solver.step();
  return solver.candidates();
}

}  // namespace bsmobo
