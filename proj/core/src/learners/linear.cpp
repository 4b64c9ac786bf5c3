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

#include "aisrepair/learners/linear.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

#include "aisrepair/error.hpp"

namespace aisrepair::learners {
namespace {

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

void check_x(const FeatureMatrix& X, std::size_t n_targets) {
  if (X.rows() == 0) throw ValidationError("empty training set");
  if (static_cast<std::size_t>(X.rows()) != n_targets) {
    throw ValidationError(fmt::format("{} rows vs {} targets", X.rows(), n_targets));
  }
}

}  // namespace

double LinearModel::predict(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != weights.size()) {
    throw ValidationError(fmt::format("linear model: expected {} features, got {}", weights.size(), x.size()));
  }
  return intercept + Eigen::Map<const Eigen::VectorXd>(x.data(), weights.size()).dot(weights);
}

LinearModel lasso_fit(const FeatureMatrix& X, std::span<const double> y, double lambda, std::size_t max_iter,
                      double tol) {
  check_x(X, y.size());
  if (lambda < 0.0) throw ValidationError("lasso: lambda must be non-negative");
  const auto n = static_cast<double>(X.rows());
  const Eigen::Index d = X.cols();
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), X.rows());

  const Eigen::RowVectorXd x_mean = X.colwise().mean();
  const double y_mean = yv.mean();
  const Eigen::MatrixXd Xc = X.rowwise() - x_mean;  // column-major for column sweeps
  const Eigen::VectorXd col_sq = Xc.colwise().squaredNorm().transpose() / n;

  LinearModel m;
  m.lambda = lambda;
  m.weights = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd resid = yv.array() - y_mean;

  for (std::size_t it = 0; it < max_iter; ++it) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (col_sq[j] <= 0.0) continue;  // constant column stays at zero
      const double old = m.weights[j];
      const double rho = Xc.col(j).dot(resid) / n + col_sq[j] * old;
      const double updated = soft_threshold(rho, lambda) / col_sq[j];
      if (updated != old) {
        resid -= Xc.col(j) * (updated - old);
        m.weights[j] = updated;
        max_change = std::max(max_change, std::fabs(updated - old));
      }
    }
    m.iterations = it + 1;
    if (max_change < tol) {
      m.converged = true;
      break;
    }
  }
  if (!m.converged) {
    spdlog::warn("lasso: no convergence after {} iterations (lambda={})", m.iterations, lambda);
  }
  m.intercept = y_mean - x_mean.dot(m.weights);
  return m;
}

Eigen::VectorXd LogisticModel::probabilities(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != weights.cols()) {
    throw ValidationError(fmt::format("logistic model: expected {} features, got {}", weights.cols(), x.size()));
  }
  Eigen::VectorXd z = weights * Eigen::Map<const Eigen::VectorXd>(x.data(), weights.cols()) + intercepts;
  z.array() -= z.maxCoeff();
  Eigen::VectorXd p = z.array().exp();
  return p / p.sum();
}

int LogisticModel::classify(std::span<const double> x) const {
  if (classes.size() == 1) return classes.front();
  const Eigen::VectorXd z =
      weights * Eigen::Map<const Eigen::VectorXd>(x.data(), weights.cols()) + intercepts;
  Eigen::Index arg = 0;
  for (Eigen::Index k = 1; k < z.size(); ++k) {
    if (z[k] > z[arg]) arg = k;
  }
  return classes[static_cast<std::size_t>(arg)];
}

LogisticModel logistic_fit(const FeatureMatrix& X, std::span<const int> labels, std::size_t epochs,
                           double learning_rate) {
  check_x(X, labels.size());
  LogisticModel m;
  m.classes.assign(labels.begin(), labels.end());
  std::sort(m.classes.begin(), m.classes.end());
  m.classes.erase(std::unique(m.classes.begin(), m.classes.end()), m.classes.end());
  const auto K = static_cast<Eigen::Index>(m.classes.size());
  m.weights = FeatureMatrix::Zero(K, X.cols());
  m.intercepts = Eigen::VectorXd::Zero(K);
  if (K == 1) {
    m.degenerate = true;
    spdlog::warn("logistic: single class {} in training data; model always predicts it", m.classes.front());
    return m;
  }

  const Eigen::Index n = X.rows();
  FeatureMatrix Y = FeatureMatrix::Zero(n, K);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = std::lower_bound(m.classes.begin(), m.classes.end(), labels[static_cast<std::size_t>(i)]) -
                   m.classes.begin();
    Y(i, k) = 1.0;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t e = 0; e < epochs; ++e) {
    FeatureMatrix Z = X * m.weights.transpose();
    Z.rowwise() += m.intercepts.transpose();
    for (Eigen::Index i = 0; i < n; ++i) {
      auto row = Z.row(i);
      row.array() -= row.maxCoeff();
      row = row.array().exp().matrix();
      row /= row.sum();
    }
    const FeatureMatrix G = Z - Y;  // n x K
    m.weights -= learning_rate * inv_n * (G.transpose() * X);
    m.intercepts -= learning_rate * inv_n * G.colwise().sum().transpose();
  }
  return m;
}

}  // namespace aisrepair::learners
