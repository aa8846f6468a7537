#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "bsmobo/core.hpp"
#include "bsmobo/rng.hpp"

namespace bsmobo {

/// Weights of one surrogate network: two hidden ReLU layers of equal width
/// feeding a scalar output,
///
///   y = w3 . (z2 o relu(W2 (z1 o relu(W1 x + b1)) + b2)) + b3
///
/// where z1, z2 are the Bernoulli keep masks of the two hidden layers. Masks
/// are applied identically during training and Monte-Carlo prediction; there
/// is no inverted-dropout rescaling, so the trained estimator and the
/// sampling estimator describe the same stochastic network.
struct NetworkWeights {
  Eigen::MatrixXd w1;     // hidden x inputs
  Eigen::VectorXd b1;     // hidden
  Eigen::MatrixXd w2;     // hidden x hidden
  Eigen::VectorXd b2;     // hidden
  Eigen::RowVectorXd w3;  // 1 x hidden
  double b3 = 0.0;

  std::size_t inputs() const { return static_cast<std::size_t>(w1.cols()); }
  std::size_t hidden() const { return static_cast<std::size_t>(w1.rows()); }

  static NetworkWeights zeros(std::size_t inputs, std::size_t hidden);
  /// Weights and biases uniform in +-1/sqrt(fan_in), seeded and reproducible.
  static NetworkWeights uniform_fan_in(std::size_t inputs, std::size_t hidden, RngStream& rng);
};

/// Keep masks for the two hidden layers; entries are 0 or 1, each kept with
/// probability 1 - dropout_rate.
struct DropoutMask {
  Eigen::VectorXd z1;
  Eigen::VectorXd z2;

  static DropoutMask ones(std::size_t hidden);
  static DropoutMask sample(std::size_t hidden, double dropout_rate, RngStream& rng);
};

struct TrainingConfig {
  double dropout_rate = 0.05;
  std::size_t epochs = 2000;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double sobolev_weight = 1.0;
  // 0 = auto: N/8 clamped to [16, 256]. Small minibatches matter beyond
  // runtime: the per-step mask plus minibatch noise regularizes the network
  // toward the additive structure of the objectives, and full-batch training
  // measurably mislearns coordinate slopes from small designs.
  std::size_t minibatch_size = 0;
  std::size_t hidden_width = 256;
};

/// Stochastic forward pass for one scaled input.
double forward(const NetworkWeights& w, const DropoutMask& mask, const Eigen::VectorXd& x);

/// Analytic gradient of forward() with respect to the input (ReLU subgradient
/// 0 at exactly 0).
Eigen::VectorXd input_gradient(const NetworkWeights& w, const DropoutMask& mask,
                               const Eigen::VectorXd& x);

/// Training loss for a fixed mask applied to every row of X:
///   sum_i (f(x_i) - y_i)^2 + sobolev_weight * sum_i |grad f(x_i) - G_i|^2.
/// Pass gradients == nullptr for the plain error loss.
double sobolev_loss(const NetworkWeights& w, const DropoutMask& mask, const Eigen::MatrixXd& X,
                    const Eigen::VectorXd& y, const Eigen::MatrixXd* gradients,
                    double sobolev_weight);

/// Analytic gradient of sobolev_loss with respect to every weight and bias,
/// returned in a NetworkWeights-shaped container. This is the exact quantity
/// each Adam step consumes.
NetworkWeights sobolev_loss_gradient(const NetworkWeights& w, const DropoutMask& mask,
                                     const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                     const Eigen::MatrixXd* gradients, double sobolev_weight);

/// Adam on the (optionally Sobolev) loss over pre-scaled data, one fresh mask
/// per step. X holds samples as rows. Throws TrainingDivergedError when a
/// step loss goes non-finite. `final_loss`, when given, receives the summed
/// loss over the last epoch. `init` overrides the seeded random start
/// (warm starting).
NetworkWeights fit_network(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const Eigen::MatrixXd* gradients, const TrainingConfig& cfg,
                           RngStream& rng, double* final_loss = nullptr,
                           const NetworkWeights* init = nullptr);

/// Predictive mean and standard deviation in original objective units.
struct Prediction {
  ObjectiveVector mean;
  std::vector<double> std_dev;
};

/// Monte-Carlo mean and standard deviation with the 1/S variance convention.
std::pair<double, double> mc_summary(const std::vector<double>& samples);

/// Text checkpoint: a "bsmobo-weights <inputs> <hidden>" header line followed
/// by all parameters with 17 significant digits, so a round trip is
/// bit-exact. Intended for test fixtures.
void save_weights(const std::string& path, const NetworkWeights& w);
NetworkWeights load_weights(const std::string& path);

/// One trained dropout network per objective plus the affine maps between
/// problem units and training units (inputs to [0,1]^n, outputs to zero mean
/// and unit variance on the training data).
class SurrogateEnsemble {
 public:
  /// Trains `objectives` networks on the archive. With use_gradients every
  /// entry must carry a gradient (Sobolev branch); without it none may.
  /// Per-network seeds derive from `rng` by objective index, so the networks
  /// can be trained concurrently (`threads` > 1) with identical results.
  static SurrogateEnsemble fit(const Archive& data, const BoxBounds& bounds,
                               std::size_t objectives, const TrainingConfig& cfg,
                               std::size_t mc_samples, const RngStream& rng, bool use_gradients,
                               std::size_t threads = 1,
                               const SurrogateEnsemble* warm_start = nullptr);

  /// S stochastic forward passes per objective with independently drawn
  /// masks. dropout_rate 0 short-circuits to the deterministic forward with
  /// an exactly zero standard deviation.
  Prediction predict(const DecisionVector& x, RngStream& rng) const;

  /// Batch form drawing masks candidate-major; a one-element batch replays
  /// the same draws as predict().
  std::vector<Prediction> predict_batch(const std::vector<DecisionVector>& xs,
                                        RngStream& rng) const;

  std::size_t objectives() const { return models_.size(); }
  std::size_t mc_samples() const { return mc_samples_; }
  double dropout_rate() const { return dropout_rate_; }
  const NetworkWeights& model(std::size_t j) const { return models_[j]; }
  const std::vector<double>& training_losses() const { return losses_; }
  double output_mean(std::size_t j) const { return out_mean_[j]; }
  double output_std(std::size_t j) const { return out_std_[j]; }

 private:
  SurrogateEnsemble() = default;

  Eigen::VectorXd scale_input(const DecisionVector& x) const;

  std::vector<NetworkWeights> models_;
  Eigen::VectorXd in_lower_;
  Eigen::VectorXd in_span_;
  std::vector<double> out_mean_;
  std::vector<double> out_std_;
  std::vector<double> losses_;
  double dropout_rate_ = 0.0;
  std::size_t mc_samples_ = 0;
};

}  // namespace bsmobo
