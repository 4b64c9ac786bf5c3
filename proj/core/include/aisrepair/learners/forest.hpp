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

#ifndef AISREPAIR_LEARNERS_FOREST_HPP
#define AISREPAIR_LEARNERS_FOREST_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "aisrepair/learners/metrics.hpp"

namespace aisrepair::learners {

enum class Task { kRegression, kClassification };

/// Flat node table entry. A node with feature < 0 is a leaf holding `value`
/// (mean target, or class for classification). Otherwise rows with
/// x[feature] <= threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // root at index 0

  double predict(std::span<const double> x) const;
  std::size_t depth() const;
};

struct TreeEnsembleModel {
  enum class Kind { kForest, kBoosting };

  Kind kind = Kind::kForest;
  Task task = Task::kRegression;
  std::size_t n_features = 0;
  std::vector<DecisionTree> trees;
  // Forest settings.
  bool bootstrap = true;
  std::size_t max_features = 0;  // 0 = all features at every split
  std::uint64_t seed = 0;
  // Boosting: prediction = base + learning_rate * sum(tree outputs).
  double base = 0.0;
  double learning_rate = 1.0;

  double predict(std::span<const double> x) const;
};

struct ForestConfig {
  std::size_t n_trees = 200;
  std::uint64_t seed = 0;
  bool bootstrap = true;
  std::size_t max_features = 0;  // 0 = all
  std::size_t max_depth = 0;     // 0 = grow to purity
  std::size_t jobs = 1;
};

/// Bagged CART trees grown to purity: variance reduction for regression,
/// Gini for classification. Tree t draws its bootstrap from a generator
/// seeded with seed + t over a canonical (sorted) row order, so the fitted
/// ensemble does not depend on the order of the training rows.
TreeEnsembleModel forest_fit(const FeatureMatrix& X, std::span<const double> y, Task task,
                             const ForestConfig& config);

/// Mean of tree outputs (regression) or majority class with ties to the
/// lowest class (classification).
inline double forest_predict(const TreeEnsembleModel& model, std::span<const double> x) {
  return model.predict(x);
}

/// Stage-wise least-squares boosting on residuals, starting from mean(y).
/// max_depth = 0 grows each stage tree to purity. When `train_loss` is given
/// it receives the training MSE before the first and after every stage.
TreeEnsembleModel gradient_boost_fit(const FeatureMatrix& X, std::span<const double> y, std::size_t n_stages,
                                     double learning_rate, std::size_t max_depth,
                                     std::vector<double>* train_loss = nullptr);

/// Single CART tree on the given rows without bagging.
DecisionTree fit_tree(const FeatureMatrix& X, std::span<const double> y, Task task, std::size_t max_depth = 0);

}  // namespace aisrepair::learners

#endif  // AISREPAIR_LEARNERS_FOREST_HPP
