#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsmobo/core.hpp"

namespace bsmobo {

/// Analytic benchmark problem with exact objective gradients and a sampler
/// for the true Pareto front.
///
/// Supported instances: zdt1, zdt2, zdt3, zdt4, zdt6 (m = 2) and dtlz1,
/// dtlz2 (m = 3 by default). All are minimization problems over a box.
/// Gradients are the analytic derivatives; instances whose derivatives blow
/// up on the boundary (the sqrt/power terms of zdt1/3/4/6 at f1 = 0 or
/// sum(x_2..n) = 0) report differentiable_everywhere() == false and cap the
/// offending ratio at 1e-12 so boundary queries stay finite.
class Problem {
 public:
  /// Build a problem by name (case-insensitive). `objectives` 0 selects the
  /// instance default (2 for ZDT, 3 for DTLZ). Throws std::invalid_argument
  /// for unknown names or inconsistent sizes.
  static Problem make(std::string_view name, std::size_t dimension, std::size_t objectives = 0);

  static const std::vector<std::string>& names();

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return n_; }
  std::size_t objectives() const { return m_; }
  const BoxBounds& bounds() const { return bounds_; }
  bool differentiable_everywhere() const { return differentiable_everywhere_; }

  /// Exact objective values. Throws std::domain_error when x is outside the
  /// bounds or of the wrong length.
  ObjectiveVector evaluate(const DecisionVector& x) const;

  /// Objectives plus the full m-by-n Jacobian.
  std::pair<ObjectiveVector, GradientMatrix> evaluate_with_gradient(const DecisionVector& x) const;

  /// `count` points sampled on the true Pareto front (count >= 2): uniform in
  /// f1 for ZDT, simplex/sphere lattice for DTLZ.
  std::vector<ObjectiveVector> reference_front(std::size_t count) const;

 private:
  enum class Kind { Zdt1, Zdt2, Zdt3, Zdt4, Zdt6, Dtlz1, Dtlz2 };

  Problem(Kind kind, std::string name, std::size_t n, std::size_t m, BoxBounds bounds,
          bool differentiable_everywhere)
      : kind_(kind),
        name_(std::move(name)),
        n_(n),
        m_(m),
        bounds_(std::move(bounds)),
        differentiable_everywhere_(differentiable_everywhere) {}

  void check_input(const DecisionVector& x) const;

  Kind kind_;
  std::string name_;
  std::size_t n_;
  std::size_t m_;
  BoxBounds bounds_;
  bool differentiable_everywhere_;
};

}  // namespace bsmobo
