#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsmobo {

using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

/// Axis-aligned decision space [lower, upper]^n.
struct BoxBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  BoxBounds(std::vector<double> lo, std::vector<double> hi);

  std::size_t dimension() const { return lower.size(); }
  bool contains(const DecisionVector& x) const;
  double span(std::size_t i) const { return upper[i] - lower[i]; }
};

/// Objective gradients; entry (j, i) = d f_j / d x_i.
class GradientMatrix {
 public:
  GradientMatrix(std::size_t objectives, std::size_t variables)
      : objectives_(objectives),
        variables_(variables),
        values_(objectives * variables, 0.0) {}

  double& at(std::size_t j, std::size_t i) { return values_[j * variables_ + i]; }
  double at(std::size_t j, std::size_t i) const { return values_[j * variables_ + i]; }

  std::size_t objectives() const { return objectives_; }
  std::size_t variables() const { return variables_; }
  bool all_finite() const;

 private:
  std::size_t objectives_;
  std::size_t variables_;
  std::vector<double> values_;
};

/// A decision vector with its true objective values (never surrogate
/// predictions) and, when the problem provides them, exact gradients.
struct EvaluatedSolution {
  DecisionVector x;
  ObjectiveVector f;
  std::optional<GradientMatrix> grad;
};

/// Append-only dataset of evaluated solutions, in evaluation order.
class Archive {
 public:
  /// Rejects a decision vector identical to an existing entry.
  void append(EvaluatedSolution solution);

  const std::vector<EvaluatedSolution>& entries() const { return entries_; }
  const EvaluatedSolution& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<ObjectiveVector> objective_values() const;
  std::vector<std::size_t> nondominated_indices() const;

 private:
  std::vector<EvaluatedSolution> entries_;
};

/// Pareto dominance for minimization: a is no worse in every objective and
/// strictly better in at least one. Throws std::invalid_argument on length
/// mismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices of points not dominated by any other point. Duplicates of a
/// nondominated value are all retained. Empty input yields an empty result.
std::vector<std::size_t> nondominated_subset(const std::vector<ObjectiveVector>& points);

/// Componentwise projection of x into the box.
DecisionVector clamp_to_bounds(const DecisionVector& x, const BoxBounds& bounds);

/// Invalid run configuration; the message lists every violated constraint.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Ask/tell called out of order, or a tell that does not match the
/// outstanding batch.
struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Non-finite loss encountered while training a surrogate network.
struct TrainingDivergedError : std::runtime_error {
  TrainingDivergedError(std::size_t epoch_index, const std::string& what)
      : std::runtime_error(what), epoch(epoch_index) {}
  std::size_t epoch;
};

}  // namespace bsmobo
