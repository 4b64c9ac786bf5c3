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

#include "aisrepair/crbm.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "aisrepair/error.hpp"

namespace aisrepair::crbm {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

Eigen::Map<const Vector> as_vector(std::span<const double> s) {
  return {s.data(), static_cast<Eigen::Index>(s.size())};
}

void check_lengths(const CrbmModel& m, std::span<const double> v, std::span<const double> history) {
  if (v.size() != m.n_v || history.size() != m.history_size()) {
    throw ValidationError(fmt::format("crbm: expected frame {} and history {}, got {} and {}", m.n_v,
                                      m.history_size(), v.size(), history.size()));
  }
}

void check_history(const CrbmModel& m, std::span<const double> history) {
  if (history.size() != m.history_size()) {
    throw ValidationError(
        fmt::format("crbm: expected history of {}, got {}", m.history_size(), history.size()));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based stream: cheap to create per example, so each example's
/// Gibbs draws depend only on (seed, step, key).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t step, std::uint64_t key)
      : state_(splitmix64(splitmix64(seed) ^ splitmix64(step * 0x2545F4914F6CDD1DULL + key))) {}

  double uniform() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

template <typename Fn>
void for_each_block(Parameters& a, const Parameters& b, Fn&& fn) {
  fn(a.W, b.W);
  fn(a.A, b.A);
  fn(a.D, b.D);
  fn(a.c, b.c);
  fn(a.b, b.b);
}

}  // namespace

Parameters& Parameters::operator+=(const Parameters& o) {
  for_each_block(*this, o, [](auto& x, const auto& y) { x += y; });
  return *this;
}

Parameters& Parameters::operator*=(double s) {
  W *= s;
  A *= s;
  D *= s;
  c *= s;
  b *= s;
  return *this;
}

bool Parameters::all_finite() const {
  return W.allFinite() && A.allFinite() && D.allFinite() && c.allFinite() && b.allFinite();
}

double Parameters::max_abs() const {
  double m = 0.0;
  auto upd = [&m](const auto& x) {
    if (x.size() > 0) m = std::max(m, x.cwiseAbs().maxCoeff());
  };
  upd(W);
  upd(A);
  upd(D);
  upd(c);
  upd(b);
  return m;
}

CrbmModel CrbmModel::zeros(std::size_t n_v, std::size_t n_h, std::size_t n) {
  if (n_v == 0 || n_h == 0) throw ValidationError("crbm: n_v and n_h must be positive");
  CrbmModel m;
  m.n_v = n_v;
  m.n_h = n_h;
  m.n = n;
  const auto nv = static_cast<Eigen::Index>(n_v);
  const auto nh = static_cast<Eigen::Index>(n_h);
  const auto nhist = static_cast<Eigen::Index>(n * n_v);
  m.W = Matrix::Zero(nv, nh);
  m.A = Matrix::Zero(nhist, nv);
  m.D = Matrix::Zero(nhist, nh);
  m.c = Vector::Zero(nv);
  m.b = Vector::Zero(nh);
  return m;
}

CrbmModel CrbmModel::random(std::size_t n_v, std::size_t n_h, std::size_t n, std::uint64_t seed,
                            double scale) {
  CrbmModel m = zeros(n_v, n_h, n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  for (Matrix* block : {&m.W, &m.A, &m.D}) {
    for (Eigen::Index r = 0; r < block->rows(); ++r) {
      for (Eigen::Index c = 0; c < block->cols(); ++c) (*block)(r, c) = normal(rng);
    }
  }
  return m;
}

Parameters CrbmModel::zeros_like() const {
  Parameters p;
  p.W = Matrix::Zero(W.rows(), W.cols());
  p.A = Matrix::Zero(A.rows(), A.cols());
  p.D = Matrix::Zero(D.rows(), D.cols());
  p.c = Vector::Zero(c.size());
  p.b = Vector::Zero(b.size());
  return p;
}

void CrbmModel::check_dimensions() const {
  const auto nv = static_cast<Eigen::Index>(n_v);
  const auto nh = static_cast<Eigen::Index>(n_h);
  const auto nhist = static_cast<Eigen::Index>(history_size());
  const bool ok = n_v > 0 && n_h > 0 && W.rows() == nv && W.cols() == nh && A.rows() == nhist &&
                  A.cols() == nv && D.rows() == nhist && D.cols() == nh && c.size() == nv && b.size() == nh;
  if (!ok) {
    throw ValidationError(fmt::format("crbm: inconsistent dimensions for n_v={} n_h={} n={}", n_v, n_h, n));
  }
}

DynamicBiases dynamic_biases(const CrbmModel& model, std::span<const double> history) {
  check_history(model, history);
  const auto h = as_vector(history);
  return {model.c + model.A.transpose() * h, model.b + model.D.transpose() * h};
}

Vector hidden_probs(const CrbmModel& model, std::span<const double> v, std::span<const double> history) {
  check_lengths(model, v, history);
  Vector x = model.b + model.D.transpose() * as_vector(history) + model.W.transpose() * as_vector(v);
  return x.unaryExpr([](double a) { return logistic(a); });
}

Vector visible_means(const CrbmModel& model, const Vector& h, std::span<const double> history) {
  check_history(model, history);
  if (h.size() != static_cast<Eigen::Index>(model.n_h)) {
    throw ValidationError(fmt::format("crbm: expected {} hidden values, got {}", model.n_h, h.size()));
  }
  return model.c + model.A.transpose() * as_vector(history) + model.W * h;
}

double free_energy(const CrbmModel& model, std::span<const double> v, std::span<const double> history) {
  check_lengths(model, v, history);
  const auto hist = as_vector(history);
  const auto vis = as_vector(v);
  const Vector c_hat = model.c + model.A.transpose() * hist;
  const Vector x = model.b + model.D.transpose() * hist + model.W.transpose() * vis;
  double quad = 0.5 * (vis - c_hat).squaredNorm();
  double sp = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) sp += softplus(x[j]);
  return quad - sp;
}

Parameters free_energy_gradient(const CrbmModel& model, std::span<const double> v,
                                std::span<const double> history) {
  check_lengths(model, v, history);
  const auto hist = as_vector(history);
  const auto vis = as_vector(v);
  const Vector c_hat = model.c + model.A.transpose() * hist;
  const Vector p = hidden_probs(model, v, history);
  const Vector resid = vis - c_hat;

  Parameters g;
  g.c = -resid;
  g.A = -hist * resid.transpose();
  g.b = -p;
  g.W = -vis * p.transpose();
  g.D = -hist * p.transpose();
  return g;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ValidationError("crbm: learning_rate must be positive");
  if (cd_k < 1) throw ValidationError("crbm: cd_k must be at least 1");
  if (batch_size < 1) throw ValidationError("crbm: batch_size must be at least 1");
  if (momentum < 0.0 || weight_decay < 0.0) {
    throw ValidationError("crbm: momentum and weight_decay must be non-negative");
  }
}

TrainState TrainState::for_model(const CrbmModel& model) { return {model.zeros_like(), 0}; }

double cd_update(CrbmModel& model, TrainState& state, std::span<const TrainingSample> batch,
                 const TrainConfig& config) {
  if (batch.empty()) throw ValidationError("crbm: empty batch");
  if (config.cd_k < 1) throw ValidationError("crbm: cd_k must be at least 1");
  const auto B = static_cast<Eigen::Index>(batch.size());
  const auto nv = static_cast<Eigen::Index>(model.n_v);
  const auto nh = static_cast<Eigen::Index>(model.n_h);
  const auto nhist = static_cast<Eigen::Index>(model.history_size());

  RowMatrix v0(B, nv);
  RowMatrix hist(B, nhist);
  for (Eigen::Index r = 0; r < B; ++r) {
    const auto& s = batch[static_cast<std::size_t>(r)];
    check_lengths(model, s.visible, s.history);
    v0.row(r) = as_vector(s.visible).transpose();
    if (nhist > 0) hist.row(r) = as_vector(s.history).transpose();
  }

  // Row-wise dynamic biases, shared by every Gibbs step.
  const RowMatrix c_hat = (hist * model.A).rowwise() + model.c.transpose();
  const RowMatrix b_hat = (hist * model.D).rowwise() + model.b.transpose();
  auto infer = [&](const RowMatrix& v) -> RowMatrix {
    RowMatrix x = b_hat + v * model.W;
    return x.unaryExpr([](double a) { return logistic(a); });
  };

  const RowMatrix p0 = infer(v0);
  RowMatrix pk = p0;
  RowMatrix vk;
  RowMatrix v1;
  std::vector<SampleStream> streams;
  streams.reserve(batch.size());
  for (const auto& s : batch) streams.emplace_back(config.seed, state.step, s.key);

  RowMatrix h_sample(B, nh);
  for (std::size_t step = 0; step < config.cd_k; ++step) {
    for (Eigen::Index r = 0; r < B; ++r) {
      auto& stream = streams[static_cast<std::size_t>(r)];
      for (Eigen::Index j = 0; j < nh; ++j) h_sample(r, j) = stream.uniform() < pk(r, j) ? 1.0 : 0.0;
    }
    vk = c_hat + h_sample * model.W.transpose();
    if (step == 0) v1 = vk;
    pk = infer(vk);
  }

  const double inv_b = 1.0 / static_cast<double>(B);
  const RowMatrix dv = v0 - vk;
  const RowMatrix dp = p0 - pk;
  Parameters stats;
  stats.W = (v0.transpose() * p0 - vk.transpose() * pk) * inv_b;
  stats.A = hist.transpose() * dv * inv_b;
  stats.D = hist.transpose() * dp * inv_b;
  stats.c = dv.colwise().sum().transpose() * inv_b;
  stats.b = dp.colwise().sum().transpose() * inv_b;

  const double lr = config.learning_rate;
  const double mom = config.momentum;
  const double wd = config.weight_decay;
  CrbmModel next = model;
  Parameters vel = state.velocity;
  auto step_block = [&](auto& param, auto& velocity, const auto& stat) {
    velocity = mom * velocity + lr * stat - (lr * wd) * param;
    param += velocity;
  };
  step_block(next.W, vel.W, stats.W);
  step_block(next.A, vel.A, stats.A);
  step_block(next.D, vel.D, stats.D);
  step_block(next.c, vel.c, stats.c);
  step_block(next.b, vel.b, stats.b);
  if (!next.all_finite()) {
    throw DivergenceError(fmt::format("crbm: divergence at update {}", state.step));
  }
  model = std::move(next);
  state.velocity = std::move(vel);
  ++state.step;

  return (v0 - v1).squaredNorm() / static_cast<double>(B * nv);
}

TrainResult train(CrbmModel model, std::span<const TrainingSample> dataset, const TrainConfig& config) {
  config.validate();
  model.check_dimensions();
  TrainResult result{std::move(model), {}};
  if (config.epochs == 0) return result;
  if (dataset.empty()) throw ValidationError("crbm: empty training set");

  TrainState state = TrainState::for_model(result.model);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(config.seed);
  std::vector<TrainingSample> batch;
  batch.reserve(std::min(config.batch_size, dataset.size()));

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double weighted = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < stop; ++i) batch.push_back(dataset[order[i]]);
      weighted += cd_update(result.model, state, batch, config) * static_cast<double>(batch.size());
    }
    const double loss = weighted / static_cast<double>(dataset.size());
    // Parameters can stay finite while the reconstruction error runs away.
    if (!std::isfinite(loss) || (!result.loss_curve.empty() && loss > kDivergenceRatio * result.loss_curve.front())) {
      throw DivergenceError(fmt::format("crbm: reconstruction error {:.6g} at epoch {} has diverged", loss, epoch + 1));
    }
    result.loss_curve.push_back(loss);
  }
  return result;
}

double simulate_reconstruction(const CrbmModel& model, std::span<const TrainingSample> windows) {
  if (windows.empty()) throw ValidationError("crbm: no windows to reconstruct");
  double sum = 0.0;
  for (const auto& w : windows) {
    const Vector p = hidden_probs(model, w.visible, w.history);
    const Vector v = visible_means(model, p, w.history);
    sum += (as_vector(w.visible) - v).squaredNorm();
  }
  return sum / static_cast<double>(windows.size() * model.n_v);
}

}  // namespace aisrepair::crbm
