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

#ifndef AISREPAIR_LEARNERS_LINEAR_HPP
#define AISREPAIR_LEARNERS_LINEAR_HPP

#include <span>
#include <vector>

#include "aisrepair/learners/metrics.hpp"

namespace aisrepair::learners {

struct LinearModel {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  double lambda = 0.0;
  std::size_t iterations = 0;
  bool converged = false;

  double predict(std::span<const double> x) const;
};

/// Coordinate descent on 0.5 * ||y - X w - w0||^2 / N + lambda * ||w||_1.
/// The intercept is left unpenalized. Converged once no coefficient moves by
/// more than `tol` in a full sweep; otherwise a warning is logged.
LinearModel lasso_fit(const FeatureMatrix& X, std::span<const double> y, double lambda,
                      std::size_t max_iter = 1000, double tol = 1e-7);

/// Multinomial logistic regression (softmax link).
struct LogisticModel {
  std::vector<int> classes;   // ascending
  FeatureMatrix weights;      // one row per class
  Eigen::VectorXd intercepts;
  bool degenerate = false;    // trained on a single class

  Eigen::VectorXd probabilities(std::span<const double> x) const;
  /// argmax class; ties go to the lowest class.
  int classify(std::span<const double> x) const;
};

/// Full-batch gradient descent on mean cross-entropy from zero weights.
LogisticModel logistic_fit(const FeatureMatrix& X, std::span<const int> labels, std::size_t epochs,
                           double learning_rate);

}  // namespace aisrepair::learners

#endif  // AISREPAIR_LEARNERS_LINEAR_HPP
