#include "bsmobo/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numeric>
#include <string>

namespace bsmobo {

namespace {

using Eigen::ArrayXXd;
using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

// rows of M scaled elementwise by the (broadcast) vector v
ArrayXXd row_scaled(const ArrayXXd& m, const VectorXd& v) {
  return m.rowwise() * v.transpose().array();
}

void check_training_config(const TrainingConfig& cfg) {
  if (cfg.dropout_rate < 0.0 || cfg.dropout_rate >= 1.0) {
    throw std::invalid_argument("TrainingConfig: dropout_rate must lie in [0, 1)");
  }
  if (cfg.epochs < 1) throw std::invalid_argument("TrainingConfig: epochs must be >= 1");
  if (!(cfg.learning_rate > 0.0)) {
    throw std::invalid_argument("TrainingConfig: learning_rate must be positive");
  }
  if (cfg.hidden_width < 1) throw std::invalid_argument("TrainingConfig: hidden_width must be >= 1");
}

// Loss (and optionally its weight gradient) of the masked network over the
// batch X. The same mask applies to every row, which keeps the per-step loss
// a single deterministic function -- both the Adam steps and the
// finite-difference checks differentiate exactly this.
double loss_and_weight_gradient(const NetworkWeights& w, const DropoutMask& mask,
                                const MatrixXd& X, const VectorXd& y,
                                const MatrixXd* gradients, double sobolev_weight,
                                NetworkWeights* grad_out) {
  const auto rows = X.rows();

  const MatrixXd u1 = (X * w.w1.transpose()).rowwise() + w.b1.transpose();
  const ArrayXXd s1 = (u1.array() > 0.0).cast<double>();
  const ArrayXXd a1m = row_scaled(u1.cwiseMax(0.0).array(), mask.z1);
  const MatrixXd u2 = (a1m.matrix() * w.w2.transpose()).rowwise() + w.b2.transpose();
  const ArrayXXd s2 = (u2.array() > 0.0).cast<double>();
  const ArrayXXd a2m = row_scaled(u2.cwiseMax(0.0).array(), mask.z2);
  const VectorXd out = (a2m.matrix() * w.w3.transpose()).array() + w.b3;

  const VectorXd err = out - y;
  double loss = err.squaredNorm();

  ArrayXXd q2, r1;          // per-row pieces of the input-gradient expression
  MatrixXd g;               // rows = model input gradients
  MatrixXd dg;              // rows = d loss / d gradient rows
  const bool with_gradients = gradients != nullptr;
  if (with_gradients) {
    const VectorXd w3z = w.w3.transpose().cwiseProduct(mask.z2);
    q2 = row_scaled(s2, w3z);
    r1 = s1 * row_scaled((q2.matrix() * w.w2).array(), mask.z1);
    g = r1.matrix() * w.w1;
    const MatrixXd diff = g - *gradients;
    loss += sobolev_weight * diff.squaredNorm();
    dg = 2.0 * sobolev_weight * diff;
  }

  if (grad_out != nullptr) {
    const VectorXd d3 = 2.0 * err;
    grad_out->w3 = d3.transpose() * a2m.matrix();
    grad_out->b3 = d3.sum();
    const ArrayXXd du2 = row_scaled((d3 * w.w3).array() * s2, mask.z2);
    grad_out->w2 = du2.matrix().transpose() * a1m.matrix();
    grad_out->b2 = du2.colwise().sum().transpose();
    const ArrayXXd du1 = row_scaled((du2.matrix() * w.w2).array() * s1, mask.z1);
    grad_out->w1 = du1.matrix().transpose() * X;
    grad_out->b1 = du1.colwise().sum().transpose();

    if (with_gradients) {
      // Differentiates the analytic input-gradient expression with the ReLU
      // activation patterns held fixed (the second derivative of ReLU is
      // zero almost everywhere). Biases receive no contribution.
      const ArrayXXd c1 = s1 * row_scaled((dg * w.w1.transpose()).array(), mask.z1);
      const ArrayXXd c2 = s2 * row_scaled((c1.matrix() * w.w2.transpose()).array(), mask.z2);
      grad_out->w1 += r1.matrix().transpose() * dg;
      grad_out->w2 += q2.matrix().transpose() * c1.matrix();
      grad_out->w3 += c2.colwise().sum().matrix();
    }
  }

  (void)rows;
  return loss;
}

struct AdamState {
  ArrayXXd m_w1, v_w1, m_w2, v_w2, m_w3, v_w3;
  Eigen::ArrayXd m_b1, v_b1, m_b2, v_b2;
  double m_b3 = 0.0, v_b3 = 0.0;

  explicit AdamState(const NetworkWeights& w) {
    m_w1 = ArrayXXd::Zero(w.w1.rows(), w.w1.cols());
    v_w1 = m_w1;
    m_w2 = ArrayXXd::Zero(w.w2.rows(), w.w2.cols());
    v_w2 = m_w2;
    m_w3 = ArrayXXd::Zero(1, w.w3.cols());
    v_w3 = m_w3;
    m_b1 = Eigen::ArrayXd::Zero(w.b1.size());
    v_b1 = m_b1;
    m_b2 = Eigen::ArrayXd::Zero(w.b2.size());
    v_b2 = m_b2;
  }
};

template <typename Param, typename Grad, typename State>
void adam_step(Param& p, const Grad& g, State& m, State& v, const TrainingConfig& cfg,
               double bias1, double bias2) {
  m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g;
  v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * g * g;
  p -= (cfg.learning_rate * (m / bias1) / ((v / bias2).sqrt() + cfg.adam_eps)).matrix();
}

}  // namespace

NetworkWeights NetworkWeights::zeros(std::size_t inputs, std::size_t hidden) {
  NetworkWeights w;
  w.w1 = MatrixXd::Zero(static_cast<Eigen::Index>(hidden), static_cast<Eigen::Index>(inputs));
  w.b1 = VectorXd::Zero(static_cast<Eigen::Index>(hidden));
  w.w2 = MatrixXd::Zero(static_cast<Eigen::Index>(hidden), static_cast<Eigen::Index>(hidden));
  w.b2 = VectorXd::Zero(static_cast<Eigen::Index>(hidden));
  w.w3 = RowVectorXd::Zero(static_cast<Eigen::Index>(hidden));
  w.b3 = 0.0;
  return w;
}

NetworkWeights NetworkWeights::uniform_fan_in(std::size_t inputs, std::size_t hidden,
                                              RngStream& rng) {
  NetworkWeights w = zeros(inputs, hidden);
  auto fill = [&rng](auto& matrix, double limit) {
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
      for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
        matrix(r, c) = limit * (2.0 * rng.next_double() - 1.0);
      }
    }
  };
  auto fill_vector = [&rng](auto& vec, double limit) {
    for (Eigen::Index i = 0; i < vec.size(); ++i) {
      vec[i] = limit * (2.0 * rng.next_double() - 1.0);
    }
  };
  // Weights and biases uniform in +-1/sqrt(fan_in). Low-dimensional inputs
  // need the larger first-layer scale: fan-out-balanced weights leave the
  // initial function nearly constant in x, which is a flat basin the Sobolev
  // loss cannot escape, and zero biases would park every ReLU breakpoint at
  // the origin.
  const double limit1 = 1.0 / std::sqrt(static_cast<double>(inputs));
  const double limit2 = 1.0 / std::sqrt(static_cast<double>(hidden));
  fill(w.w1, limit1);
  fill_vector(w.b1, limit1);
  fill(w.w2, limit2);
  fill_vector(w.b2, limit2);
  fill(w.w3, limit2);
  w.b3 = limit2 * (2.0 * rng.next_double() - 1.0);
  return w;
}

DropoutMask DropoutMask::ones(std::size_t hidden) {
  DropoutMask mask;
  mask.z1 = VectorXd::Ones(static_cast<Eigen::Index>(hidden));
  mask.z2 = mask.z1;
  return mask;
}

DropoutMask DropoutMask::sample(std::size_t hidden, double dropout_rate, RngStream& rng) {
  DropoutMask mask = ones(hidden);
  const double keep = 1.0 - dropout_rate;
  for (Eigen::Index i = 0; i < mask.z1.size(); ++i) {
    mask.z1[i] = rng.next_bernoulli(keep) ? 1.0 : 0.0;
  }
  for (Eigen::Index i = 0; i < mask.z2.size(); ++i) {
    mask.z2[i] = rng.next_bernoulli(keep) ? 1.0 : 0.0;
  }
  return mask;
}

double forward(const NetworkWeights& w, const DropoutMask& mask, const VectorXd& x) {
  if (x.size() != w.w1.cols()) throw std::invalid_argument("forward: input of wrong length");
  const VectorXd a1 = (w.w1 * x + w.b1).cwiseMax(0.0).cwiseProduct(mask.z1);
  const VectorXd a2 = (w.w2 * a1 + w.b2).cwiseMax(0.0).cwiseProduct(mask.z2);
  return w.w3.dot(a2) + w.b3;
}

VectorXd input_gradient(const NetworkWeights& w, const DropoutMask& mask, const VectorXd& x) {
  if (x.size() != w.w1.cols()) throw std::invalid_argument("input_gradient: input of wrong length");
  const VectorXd u1 = w.w1 * x + w.b1;
  const VectorXd a1 = u1.cwiseMax(0.0).cwiseProduct(mask.z1);
  const VectorXd u2 = w.w2 * a1 + w.b2;

  VectorXd t2 = w.w3.transpose().cwiseProduct(mask.z2);
  for (Eigen::Index i = 0; i < t2.size(); ++i) {
    if (u2[i] <= 0.0) t2[i] = 0.0;
  }
  VectorXd t1 = (w.w2.transpose() * t2).cwiseProduct(mask.z1);
  for (Eigen::Index i = 0; i < t1.size(); ++i) {
    if (u1[i] <= 0.0) t1[i] = 0.0;
  }
  return w.w1.transpose() * t1;
}

double sobolev_loss(const NetworkWeights& w, const DropoutMask& mask, const MatrixXd& X,
                    const VectorXd& y, const MatrixXd* gradients, double sobolev_weight) {
  return loss_and_weight_gradient(w, mask, X, y, gradients, sobolev_weight, nullptr);
}

NetworkWeights sobolev_loss_gradient(const NetworkWeights& w, const DropoutMask& mask,
                                     const MatrixXd& X, const VectorXd& y,
                                     const MatrixXd* gradients, double sobolev_weight) {
  NetworkWeights grad = NetworkWeights::zeros(w.inputs(), w.hidden());
  loss_and_weight_gradient(w, mask, X, y, gradients, sobolev_weight, &grad);
  return grad;
}

NetworkWeights fit_network(const MatrixXd& X, const VectorXd& y, const MatrixXd* gradients,
                           const TrainingConfig& cfg, RngStream& rng, double* final_loss,
                           const NetworkWeights* init) {
  check_training_config(cfg);
  const auto n_samples = static_cast<std::size_t>(X.rows());
  const auto n_inputs = static_cast<std::size_t>(X.cols());
  if (n_samples == 0 || static_cast<std::size_t>(y.size()) != n_samples) {
    throw std::invalid_argument("fit_network: inconsistent sample count");
  }
  if (gradients != nullptr &&
      (gradients->rows() != X.rows() || gradients->cols() != X.cols())) {
    throw std::invalid_argument("fit_network: gradient matrix of wrong shape");
  }

  NetworkWeights w;
  if (init != nullptr && init->inputs() == n_inputs && init->hidden() == cfg.hidden_width) {
    w = *init;
  } else {
    w = NetworkWeights::uniform_fan_in(n_inputs, cfg.hidden_width, rng);
  }

  std::size_t batch = cfg.minibatch_size != 0
                          ? cfg.minibatch_size
                          : std::clamp<std::size_t>(n_samples / 8, 16, 256);
  batch = std::min(batch, n_samples);

  AdamState adam(w);
  NetworkWeights grad = NetworkWeights::zeros(n_inputs, cfg.hidden_width);
  std::vector<std::size_t> perm(n_samples);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  MatrixXd xb, gb;
  VectorXd yb;
  std::size_t step = 0;
  double epoch_loss = 0.0;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    epoch_loss = 0.0;
    if (batch < n_samples) {
      for (std::size_t i = n_samples - 1; i > 0; --i) {
        std::swap(perm[i], perm[rng.next_index(i + 1)]);
      }
    }
    for (std::size_t start = 0; start < n_samples; start += batch) {
      const std::size_t size = std::min(batch, n_samples - start);
      const MatrixXd* bx = &X;
      const VectorXd* by = &y;
      const MatrixXd* bg = gradients;
      if (size < n_samples) {
        xb.resize(static_cast<Eigen::Index>(size), X.cols());
        yb.resize(static_cast<Eigen::Index>(size));
        if (gradients != nullptr) gb.resize(static_cast<Eigen::Index>(size), X.cols());
        for (std::size_t r = 0; r < size; ++r) {
          const auto src = static_cast<Eigen::Index>(perm[start + r]);
          xb.row(static_cast<Eigen::Index>(r)) = X.row(src);
          yb[static_cast<Eigen::Index>(r)] = y[src];
          if (gradients != nullptr) {
            gb.row(static_cast<Eigen::Index>(r)) = gradients->row(src);
          }
        }
        bx = &xb;
        by = &yb;
        bg = gradients != nullptr ? &gb : nullptr;
      }

      const DropoutMask mask = DropoutMask::sample(cfg.hidden_width, cfg.dropout_rate, rng);
      const double loss =
          loss_and_weight_gradient(w, mask, *bx, *by, bg, cfg.sobolev_weight, &grad);
      if (!std::isfinite(loss)) {
        throw TrainingDivergedError(epoch, "fit_network: non-finite loss at epoch " +
                                               std::to_string(epoch));
      }
      epoch_loss += loss;

      ++step;
      const double bias1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(step));
      const double bias2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(step));
      adam_step(w.w1, grad.w1.array(), adam.m_w1, adam.v_w1, cfg, bias1, bias2);
      adam_step(w.b1, grad.b1.array(), adam.m_b1, adam.v_b1, cfg, bias1, bias2);
      adam_step(w.w2, grad.w2.array(), adam.m_w2, adam.v_w2, cfg, bias1, bias2);
      adam_step(w.b2, grad.b2.array(), adam.m_b2, adam.v_b2, cfg, bias1, bias2);
      adam_step(w.w3, grad.w3.array(), adam.m_w3, adam.v_w3, cfg, bias1, bias2);
      {
        double g3 = grad.b3;
        adam.m_b3 = cfg.adam_beta1 * adam.m_b3 + (1.0 - cfg.adam_beta1) * g3;
        adam.v_b3 = cfg.adam_beta2 * adam.v_b3 + (1.0 - cfg.adam_beta2) * g3 * g3;
        w.b3 -= cfg.learning_rate * (adam.m_b3 / bias1) /
                (std::sqrt(adam.v_b3 / bias2) + cfg.adam_eps);
      }
    }
  }
  if (final_loss != nullptr) *final_loss = epoch_loss;
  return w;
}

void save_weights(const std::string& path, const NetworkWeights& w) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_weights: cannot write " + path);
  out << "bsmobo-weights " << w.inputs() << " " << w.hidden() << "\n";
  out.precision(17);
  auto dump = [&out](const auto& matrix) {
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
      for (Eigen::Index c = 0; c < matrix.cols(); ++c) out << matrix(r, c) << "\n";
    }
  };
  dump(w.w1);
  dump(w.b1);
  dump(w.w2);
  dump(w.b2);
  dump(w.w3);
  out << w.b3 << "\n";
}

NetworkWeights load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_weights: cannot open " + path);
  std::string magic;
  std::size_t inputs = 0, hidden = 0;
  in >> magic >> inputs >> hidden;
  if (magic != "bsmobo-weights" || inputs == 0 || hidden == 0) {
    throw std::runtime_error("load_weights: bad header in " + path);
  }
  NetworkWeights w = NetworkWeights::zeros(inputs, hidden);
  auto slurp = [&in, &path](auto& matrix) {
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
      for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
        if (!(in >> matrix(r, c))) throw std::runtime_error("load_weights: truncated " + path);
      }
    }
  };
  slurp(w.w1);
  slurp(w.b1);
  slurp(w.w2);
  slurp(w.b2);
  slurp(w.w3);
  if (!(in >> w.b3)) throw std::runtime_error("load_weights: truncated " + path);
  return w;
}

std::pair<double, double> mc_summary(const std::vector<double>& samples) {
  const double count = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= count;
  double var = 0.0;
  for (double v : samples) var += (v - mean) * (v - mean);
  var /= count;
  return {mean, std::sqrt(var)};
}

SurrogateEnsemble SurrogateEnsemble::fit(const Archive& data, const BoxBounds& bounds,
                                         std::size_t objectives, const TrainingConfig& cfg,
                                         std::size_t mc_samples, const RngStream& rng,
                                         bool use_gradients, std::size_t threads,
                                         const SurrogateEnsemble* warm_start) {
  check_training_config(cfg);
  if (objectives == 0) throw std::invalid_argument("SurrogateEnsemble: objectives must be >= 1");
  if (data.size() < 2) throw std::invalid_argument("SurrogateEnsemble: need at least 2 samples");
  if (mc_samples < 2) throw std::invalid_argument("SurrogateEnsemble: mc_samples must be >= 2");

  const std::size_t n = bounds.dimension();
  const std::size_t count = data.size();

  std::size_t with_grad = 0;
  for (const auto& entry : data.entries()) {
    if (entry.x.size() != n || entry.f.size() != objectives) {
      throw std::invalid_argument("SurrogateEnsemble: archive entry of wrong shape");
    }
    if (entry.grad.has_value()) {
      if (entry.grad->objectives() != objectives || entry.grad->variables() != n) {
        throw std::invalid_argument("SurrogateEnsemble: gradient matrix of wrong shape");
      }
      ++with_grad;
    }
  }
  if (with_grad != 0 && with_grad != count) {
    throw std::invalid_argument("SurrogateEnsemble: mixed gradient availability");
  }
  if (use_gradients && with_grad != count) {
    throw std::invalid_argument("SurrogateEnsemble: gradients required but missing");
  }

  SurrogateEnsemble ens;
  ens.dropout_rate_ = cfg.dropout_rate;
  ens.mc_samples_ = mc_samples;
  ens.in_lower_ = Eigen::Map<const VectorXd>(bounds.lower.data(), static_cast<Eigen::Index>(n));
  ens.in_span_ = Eigen::Map<const VectorXd>(bounds.upper.data(), static_cast<Eigen::Index>(n)) -
                 ens.in_lower_;

  MatrixXd X(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t d = 0; d < n; ++d) {
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
          (data[i].x[d] - ens.in_lower_[static_cast<Eigen::Index>(d)]) /
          ens.in_span_[static_cast<Eigen::Index>(d)];
    }
  }

  ens.out_mean_.resize(objectives);
  ens.out_std_.resize(objectives);
  for (std::size_t j = 0; j < objectives; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < count; ++i) mean += data[i].f[j];
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      var += (data[i].f[j] - mean) * (data[i].f[j] - mean);
    }
    double sd = std::sqrt(var / static_cast<double>(count));
    if (sd < 1e-12) sd = 1.0;  // constant objective
    ens.out_mean_[j] = mean;
    ens.out_std_[j] = sd;
  }

  ens.models_.resize(objectives);
  ens.losses_.assign(objectives, 0.0);

  auto train_one = [&](std::size_t j) {
    VectorXd y(count);
    for (std::size_t i = 0; i < count; ++i) {
      y[static_cast<Eigen::Index>(i)] = (data[i].f[j] - ens.out_mean_[j]) / ens.out_std_[j];
    }
    MatrixXd grads;
    const MatrixXd* grads_ptr = nullptr;
    if (use_gradients) {
      grads.resize(count, n);
      // chain rule through both affine maps: d y'/d x' = (d y/d x) * span / sd
      for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < n; ++d) {
          grads(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
              data[i].grad->at(j, d) * ens.in_span_[static_cast<Eigen::Index>(d)] /
              ens.out_std_[j];
        }
      }
      grads_ptr = &grads;
    }
    RngStream net_rng = rng.derive("net-" + std::to_string(j));
    const NetworkWeights* init = nullptr;
    if (warm_start != nullptr && warm_start->objectives() == objectives &&
        warm_start->model(j).inputs() == n && warm_start->model(j).hidden() == cfg.hidden_width) {
      init = &warm_start->model(j);
    }
    ens.models_[j] = fit_network(X, y, grads_ptr, cfg, net_rng, &ens.losses_[j], init);
  };

  if (threads > 1 && objectives > 1) {
    std::vector<std::future<void>> jobs;
    jobs.reserve(objectives);
    for (std::size_t j = 0; j < objectives; ++j) {
      jobs.push_back(std::async(std::launch::async, train_one, j));
    }
    for (auto& job : jobs) job.get();
  } else {
    for (std::size_t j = 0; j < objectives; ++j) train_one(j);
  }
  return ens;
}

VectorXd SurrogateEnsemble::scale_input(const DecisionVector& x) const {
  if (static_cast<Eigen::Index>(x.size()) != in_lower_.size()) {
    throw std::invalid_argument("SurrogateEnsemble: input of wrong length");
  }
  const Eigen::Map<const VectorXd> raw(x.data(), in_lower_.size());
  return (raw - in_lower_).cwiseQuotient(in_span_);
}

Prediction SurrogateEnsemble::predict(const DecisionVector& x, RngStream& rng) const {
  return predict_batch({x}, rng)[0];
}

std::vector<Prediction> SurrogateEnsemble::predict_batch(const std::vector<DecisionVector>& xs,
                                                         RngStream& rng) const {
  const std::size_t count = xs.size();
  const std::size_t m = models_.size();
  std::vector<Prediction> predictions(count);
  for (auto& p : predictions) {
    p.mean.resize(m);
    p.std_dev.resize(m);
  }
  if (count == 0) return predictions;

  MatrixXd xs_scaled(count, in_lower_.size());
  for (std::size_t c = 0; c < count; ++c) {
    xs_scaled.row(static_cast<Eigen::Index>(c)) = scale_input(xs[c]).transpose();
  }

  const std::size_t s_count = mc_samples_;
  for (std::size_t j = 0; j < m; ++j) {
    const NetworkWeights& w = models_[j];
    const MatrixXd a1 =
        ((xs_scaled * w.w1.transpose()).rowwise() + w.b1.transpose()).cwiseMax(0.0);

    if (dropout_rate_ == 0.0) {
      // all masks identical: deterministic mean, exactly zero deviation
      const MatrixXd a2 = ((a1 * w.w2.transpose()).rowwise() + w.b2.transpose()).cwiseMax(0.0);
      const VectorXd out = (a2 * w.w3.transpose()).array() + w.b3;
      for (std::size_t c = 0; c < count; ++c) {
        predictions[c].mean[j] = out_mean_[j] + out_std_[j] * out[static_cast<Eigen::Index>(c)];
        predictions[c].std_dev[j] = 0.0;
      }
      continue;
    }

    const auto hidden = static_cast<Eigen::Index>(w.hidden());
    const double keep = 1.0 - dropout_rate_;
    MatrixXd masked(count * s_count, hidden);
    MatrixXd z2(count * s_count, hidden);
    for (std::size_t c = 0; c < count; ++c) {
      for (std::size_t s = 0; s < s_count; ++s) {
        const auto row = static_cast<Eigen::Index>(c * s_count + s);
        for (Eigen::Index k = 0; k < hidden; ++k) {
          masked(row, k) =
              rng.next_bernoulli(keep) ? a1(static_cast<Eigen::Index>(c), k) : 0.0;
        }
        for (Eigen::Index k = 0; k < hidden; ++k) {
          z2(row, k) = rng.next_bernoulli(keep) ? 1.0 : 0.0;
        }
      }
    }
    const MatrixXd a2 =
        ((masked * w.w2.transpose()).rowwise() + w.b2.transpose()).cwiseMax(0.0).cwiseProduct(z2);
    const VectorXd out = (a2 * w.w3.transpose()).array() + w.b3;

    std::vector<double> samples(s_count);
    for (std::size_t c = 0; c < count; ++c) {
      for (std::size_t s = 0; s < s_count; ++s) {
        samples[s] = out[static_cast<Eigen::Index>(c * s_count + s)];
      }
      const auto [mean, sd] = mc_summary(samples);
      predictions[c].mean[j] = out_mean_[j] + out_std_[j] * mean;
      predictions[c].std_dev[j] = out_std_[j] * sd;
    }
  }
  return predictions;
}

}  // namespace bsmobo
