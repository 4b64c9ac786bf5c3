// Copyright 2026 The aisrepair Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AISREPAIR_CRBM_HPP
#define AISREPAIR_CRBM_HPP

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace aisrepair::crbm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Everything a CRBM learns. Also used for gradients and momentum buffers,
/// which share the parameter shapes.
struct Parameters {
  Matrix W;  // n_v x n_h, visible-hidden coupling
  Matrix A;  // (n * n_v) x n_v, history -> visible bias
  Matrix D;  // (n * n_v) x n_h, history -> hidden bias
  Vector c;  // n_v, static visible bias
  Vector b;  // n_h, static hidden bias

  Parameters& operator+=(const Parameters& o);
  Parameters& operator*=(double s);
  bool all_finite() const;
  /// Largest absolute entry over all five blocks.
  double max_abs() const;
};

/// Gaussian-Bernoulli RBM whose biases are shifted by linear maps of an
/// n-step history window. Visible units have unit variance.
///
/// History vectors are flattened oldest first: entry k * n_v + i is feature
/// i of the frame k steps after the oldest one.
struct CrbmModel : Parameters {
  std::size_t n_v = 0;
  std::size_t n_h = 0;
  std::size_t n = 0;

  std::size_t history_size() const { return n * n_v; }

  static CrbmModel zeros(std::size_t n_v, std::size_t n_h, std::size_t n);
  /// W, A, D ~ Normal(0, scale^2), biases zero.
  static CrbmModel random(std::size_t n_v, std::size_t n_h, std::size_t n, std::uint64_t seed,
                          double scale = 0.01);
  Parameters zeros_like() const;

  /// Throws ValidationError when block shapes disagree with n_v, n_h, n.
  void check_dimensions() const;
};

struct DynamicBiases {
  Vector visible;  // c + A^T history
  Vector hidden;   // b + D^T history
};

DynamicBiases dynamic_biases(const CrbmModel& model, std::span<const double> history);

/// p(h_j = 1 | v, history) = logistic(b_hat_j + sum_i v_i w_ij).
Vector hidden_probs(const CrbmModel& model, std::span<const double> v, std::span<const double> history);

/// E[v | h, history] = c_hat + W h.
Vector visible_means(const CrbmModel& model, const Vector& h, std::span<const double> history);

/// F(v | history) = sum_i (v_i - c_hat_i)^2 / 2 - sum_j softplus(b_hat_j + sum_i v_i w_ij),
/// the negative log of the hidden-marginalized probability up to a constant.
double free_energy(const CrbmModel& model, std::span<const double> v, std::span<const double> history);

/// Analytic dF/dtheta for every entry of W, A, D, c, b.
Parameters free_energy_gradient(const CrbmModel& model, std::span<const double> v,
                                std::span<const double> history);

/// Hidden activation probabilities; the deterministic encoding of a window.
inline Vector encode(const CrbmModel& model, std::span<const double> v, std::span<const double> history) {
  return hidden_probs(model, v, history);
}

/// One training example. `key` identifies the example across batches and
/// seeds its private Gibbs-sampling stream, so a repeated example always
/// sees the same random draws within a step.
struct TrainingSample {
  std::span<const double> visible;
  std::span<const double> history;
  std::uint64_t key = 0;
};

struct TrainConfig {
  std::size_t epochs = 100;
  std::size_t batch_size = 128;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  double weight_decay = 2e-4;
  std::size_t cd_k = 1;
  std::uint64_t seed = 1;

  /// Throws ValidationError unless learning_rate > 0, cd_k >= 1, batch_size >= 1.
  void validate() const;
};

/// Optimizer state carried between updates.
struct TrainState {
  Parameters velocity;
  std::uint64_t step = 0;

  static TrainState for_model(const CrbmModel& model);
};

/// One CD-k step on a mini-batch. Hidden states are sampled along the Gibbs
/// chain; visible reconstructions use Gaussian means; gradient statistics use
/// probabilities. Every block, biases included, receives
///   delta = lr * (positive - negative) / |batch| + momentum * previous - lr * weight_decay * param.
/// Returns the mean squared error between the data frames and their first
/// reconstruction. Throws DivergenceError, leaving the model untouched, if any
/// updated parameter is non-finite.
double cd_update(CrbmModel& model, TrainState& state, std::span<const TrainingSample> batch,
                 const TrainConfig& config);

struct TrainResult {
  CrbmModel model;
  std::vector<double> loss_curve;  // mean reconstruction MSE per epoch
};

/// An epoch whose reconstruction error exceeds the first epoch's by this
/// factor is treated as divergence.
inline constexpr double kDivergenceRatio = 1e6;

/// Shuffled mini-batch CD training for config.epochs epochs. Deterministic
/// given config.seed and the sample order. Throws DivergenceError on
/// non-finite parameters or a runaway reconstruction error.
TrainResult train(CrbmModel model, std::span<const TrainingSample> dataset, const TrainConfig& config);

/// Mean over windows and features of (v - visible_means(hidden_probs(v)))^2.
/// Throws ValidationError on an empty set.
double simulate_reconstruction(const CrbmModel& model, std::span<const TrainingSample> windows);

}  // namespace aisrepair::crbm

#endif  // AISREPAIR_CRBM_HPP
