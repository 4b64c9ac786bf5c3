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

#include "aisrepair/learners/forest.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "aisrepair/error.hpp"

namespace aisrepair::learners {
namespace {

using Index = std::uint32_t;

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& X, std::span<const double> y, Task task, std::size_t max_depth,
              std::size_t max_features, std::mt19937_64* rng)
      : X_(X), y_(y), task_(task), max_depth_(max_depth), max_features_(max_features), rng_(rng) {
    if (task_ == Task::kClassification) {
      classes_.assign(y.begin(), y.end());
      std::sort(classes_.begin(), classes_.end());
      classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
      class_of_.resize(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        class_of_[i] = static_cast<Index>(std::lower_bound(classes_.begin(), classes_.end(), y[i]) - classes_.begin());
      }
    }
    features_.resize(static_cast<std::size_t>(X.cols()));
    std::iota(features_.begin(), features_.end(), Index{0});
  }

  DecisionTree build(std::vector<Index> rows) {
    DecisionTree tree;
    nodes_ = &tree.nodes;
    rows_ = std::move(rows);
    grow(0, rows_.size(), 0);
    return tree;
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double score = -std::numeric_limits<double>::infinity();
  };

  int grow(std::size_t begin, std::size_t end, std::size_t depth) {
    const int id = static_cast<int>(nodes_->size());
    nodes_->push_back(TreeNode{});
    bool pure = false;
    double parent_score = 0.0;
    const double value = leaf_value(begin, end, pure, parent_score);
    (*nodes_)[static_cast<std::size_t>(id)].value = value;
    if (pure || end - begin < 2 || (max_depth_ > 0 && depth >= max_depth_)) return id;

    const Split s = best_split(begin, end);
    const double eps = 1e-12 * std::max(1.0, std::fabs(parent_score));
    if (s.feature < 0 || !(s.score > parent_score + eps)) return id;

    const auto f = static_cast<Eigen::Index>(s.feature);
    const auto mid = std::stable_partition(rows_.begin() + static_cast<std::ptrdiff_t>(begin),
                                           rows_.begin() + static_cast<std::ptrdiff_t>(end),
                                           [&](Index r) { return X_(r, f) <= s.threshold; }) -
                     rows_.begin();
    const auto split_at = static_cast<std::size_t>(mid);
    if (split_at == begin || split_at == end) return id;

    const int left = grow(begin, split_at, depth + 1);
    const int right = grow(split_at, end, depth + 1);
    auto& node = (*nodes_)[static_cast<std::size_t>(id)];
    node.feature = s.feature;
    node.threshold = s.threshold;
    node.left = left;
    node.right = right;
    return id;
  }

  // Mean or majority class; `score` is the split criterion of the unsplit node.
  double leaf_value(std::size_t begin, std::size_t end, bool& pure, double& score) {
    const double n = static_cast<double>(end - begin);
    if (task_ == Task::kRegression) {
      double sum = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t k = begin; k < end; ++k) {
        const double v = y_[rows_[k]];
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      pure = lo == hi;
      score = sum * sum / n;
      return sum / n;
    }
    counts_.assign(classes_.size(), 0.0);
    for (std::size_t k = begin; k < end; ++k) counts_[class_of_[rows_[k]]] += 1.0;
    std::size_t arg = 0;
    std::size_t nonzero = 0;
    score = 0.0;
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      if (counts_[c] > counts_[arg]) arg = c;
      if (counts_[c] > 0) ++nonzero;
      score += counts_[c] * counts_[c];
    }
    score /= n;
    pure = nonzero <= 1;
    return classes_[arg];
  }

  Split best_split(std::size_t begin, std::size_t end) {
    Split best;
    const std::size_t n = end - begin;
    std::size_t n_try = features_.size();
    if (max_features_ > 0 && max_features_ < features_.size() && rng_) {
      // Partial Fisher-Yates: the first max_features_ entries are the sample.
      for (std::size_t i = 0; i < max_features_; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, features_.size() - 1);
        std::swap(features_[i], features_[pick(*rng_)]);
      }
      n_try = max_features_;
    }
    scratch_.resize(n);
    for (std::size_t fi = 0; fi < n_try; ++fi) {
      const Index f = features_[fi];
      for (std::size_t k = 0; k < n; ++k) {
        const Index r = rows_[begin + k];
        scratch_[k] = {X_(r, f), r};
      }
      std::sort(scratch_.begin(), scratch_.end());
      if (scratch_.front().first == scratch_.back().first) continue;
      if (task_ == Task::kRegression) {
        scan_regression(f, best);
      } else {
        scan_classification(f, best);
      }
    }
    return best;
  }

  void scan_regression(Index f, Split& best) {
    const std::size_t n = scratch_.size();
    double total = 0.0;
    for (const auto& [x, r] : scratch_) total += y_[r];
    double left = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      left += y_[scratch_[k].second];
      if (scratch_[k].first == scratch_[k + 1].first) continue;
      const double nl = static_cast<double>(k + 1);
      const double nr = static_cast<double>(n - k - 1);
      const double right = total - left;
      const double score = left * left / nl + right * right / nr;
      if (score > best.score) {
        best = {static_cast<int>(f), midpoint(scratch_[k].first, scratch_[k + 1].first), score};
      }
    }
  }

  void scan_classification(Index f, Split& best) {
    const std::size_t n = scratch_.size();
    const std::size_t K = classes_.size();
    right_.assign(K, 0.0);
    left_.assign(K, 0.0);
    for (const auto& [x, r] : scratch_) right_[class_of_[r]] += 1.0;
    double left_sq = 0.0;
    double right_sq = 0.0;
    for (double c : right_) right_sq += c * c;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const Index c = class_of_[scratch_[k].second];
      left_sq += 2.0 * left_[c] + 1.0;
      left_[c] += 1.0;
      right_sq -= 2.0 * right_[c] - 1.0;
      right_[c] -= 1.0;
      if (scratch_[k].first == scratch_[k + 1].first) continue;
      const double nl = static_cast<double>(k + 1);
      const double nr = static_cast<double>(n - k - 1);
      const double score = left_sq / nl + right_sq / nr;
      if (score > best.score) {
        best = {static_cast<int>(f), midpoint(scratch_[k].first, scratch_[k + 1].first), score};
      }
    }
  }

  static double midpoint(double a, double b) {
    const double m = a + (b - a) / 2.0;
    return m < b ? m : a;
  }

  const FeatureMatrix& X_;
  std::span<const double> y_;
  Task task_;
  std::size_t max_depth_;
  std::size_t max_features_;
  std::mt19937_64* rng_;
  std::vector<double> classes_;
  std::vector<Index> class_of_;
  std::vector<Index> features_;
  std::vector<Index> rows_;
  std::vector<TreeNode>* nodes_ = nullptr;
  std::vector<std::pair<double, Index>> scratch_;
  std::vector<double> counts_, left_, right_;
};

void check_training(const FeatureMatrix& X, std::span<const double> y) {
  if (X.rows() < 1) throw ValidationError("tree learner: empty training set");
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    throw ValidationError(fmt::format("tree learner: {} rows vs {} targets", X.rows(), y.size()));
  }
  if (X.rows() > std::numeric_limits<Index>::max()) throw ValidationError("tree learner: too many rows");
  for (double v : y) {
    if (!std::isfinite(v)) throw ValidationError("tree learner: non-finite target");
  }
}

std::vector<Index> canonical_order(const FeatureMatrix& X, std::span<const double> y) {
  std::vector<Index> order(static_cast<std::size_t>(X.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    for (Eigen::Index f = 0; f < X.cols(); ++f) {
      if (X(a, f) != X(b, f)) return X(a, f) < X(b, f);
    }
    return y[a] < y[b];
  });
  return order;
}

double majority(std::span<const double> votes) {
  std::map<double, std::size_t> tally;
  for (double v : votes) ++tally[v];
  double best = tally.begin()->first;
  std::size_t best_n = 0;
  for (const auto& [v, n] : tally) {
    if (n > best_n) {
      best = v;
      best_n = n;
    }
  }
  return best;
}

}  // namespace

double DecisionTree::predict(std::span<const double> x) const {
  if (nodes.empty()) throw ValidationError("decision tree: empty");
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const auto f = static_cast<std::size_t>(nodes[i].feature);
    if (f >= x.size()) throw ValidationError("decision tree: feature index out of range");
    i = static_cast<std::size_t>(x[f] <= nodes[i].threshold ? nodes[i].left : nodes[i].right);
  }
  return nodes[i].value;
}

std::size_t DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (nodes[i].feature >= 0) {
      stack.push_back({static_cast<std::size_t>(nodes[i].left), d + 1});
      stack.push_back({static_cast<std::size_t>(nodes[i].right), d + 1});
    }
  }
  return deepest;
}

double TreeEnsembleModel::predict(std::span<const double> x) const {
  if (x.size() != n_features) {
    throw ValidationError(fmt::format("tree ensemble: expected {} features, got {}", n_features, x.size()));
  }
  if (kind == Kind::kBoosting) {
    double out = base;
    for (const auto& t : trees) out += learning_rate * t.predict(x);
    return out;
  }
  if (trees.empty()) throw ValidationError("tree ensemble: no trees");
  if (task == Task::kClassification) {
    std::vector<double> votes;
    votes.reserve(trees.size());
    for (const auto& t : trees) votes.push_back(t.predict(x));
    return majority(votes);
  }
  double sum = 0.0;
  for (const auto& t : trees) sum += t.predict(x);
  return sum / static_cast<double>(trees.size());
}

DecisionTree fit_tree(const FeatureMatrix& X, std::span<const double> y, Task task, std::size_t max_depth) {
  check_training(X, y);
  TreeBuilder builder(X, y, task, max_depth, 0, nullptr);
  std::vector<Index> rows(static_cast<std::size_t>(X.rows()));
  std::iota(rows.begin(), rows.end(), Index{0});
  return builder.build(std::move(rows));
}

TreeEnsembleModel forest_fit(const FeatureMatrix& X, std::span<const double> y, Task task,
                             const ForestConfig& config) {
  check_training(X, y);
  if (X.rows() < 2) throw ValidationError("random forest: needs at least 2 rows");
  if (config.n_trees < 1) throw ValidationError("random forest: n_trees must be at least 1");

  TreeEnsembleModel model;
  model.kind = TreeEnsembleModel::Kind::kForest;
  model.task = task;
  model.n_features = static_cast<std::size_t>(X.cols());
  model.bootstrap = config.bootstrap;
  model.max_features = config.max_features;
  model.seed = config.seed;
  model.trees.resize(config.n_trees);

  const std::vector<Index> canon = canonical_order(X, y);
  const std::size_t n = canon.size();

  auto grow_one = [&](std::size_t t) {
    std::mt19937_64 rng(config.seed + t);
    std::vector<Index> rows;
    if (config.bootstrap) {
      std::uniform_int_distribution<std::size_t> draw(0, n - 1);
      std::vector<Index> positions(n);
      for (auto& p : positions) p = static_cast<Index>(draw(rng));
      std::sort(positions.begin(), positions.end());
      rows.reserve(n);
      for (Index p : positions) rows.push_back(canon[p]);
    } else {
      rows = canon;
    }
    TreeBuilder builder(X, y, task, config.max_depth, config.max_features, &rng);
    model.trees[t] = builder.build(std::move(rows));
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, config.n_trees));
  if (jobs == 1) {
    for (std::size_t t = 0; t < config.n_trees; ++t) grow_one(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t t = next++; t < config.n_trees; t = next++) {
          try {
            grow_one(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }
  return model;
}

TreeEnsembleModel gradient_boost_fit(const FeatureMatrix& X, std::span<const double> y, std::size_t n_stages,
                                     double learning_rate, std::size_t max_depth, std::vector<double>* train_loss) {
  check_training(X, y);
  if (!(learning_rate > 0.0)) throw ValidationError("gradient boosting: learning_rate must be positive");
  TreeEnsembleModel model;
  model.kind = TreeEnsembleModel::Kind::kBoosting;
  model.task = Task::kRegression;
  model.n_features = static_cast<std::size_t>(X.cols());
  model.bootstrap = false;
  model.learning_rate = learning_rate;

  const std::size_t n = y.size();
  model.base = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  std::vector<double> fitted(n, model.base);
  std::vector<double> resid(n);
  auto loss = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (y[i] - fitted[i]) * (y[i] - fitted[i]);
    return s / static_cast<double>(n);
  };
  if (train_loss) train_loss->assign(1, loss());

  for (std::size_t stage = 0; stage < n_stages; ++stage) {
    for (std::size_t i = 0; i < n; ++i) resid[i] = y[i] - fitted[i];
    DecisionTree tree = fit_tree(X, resid, Task::kRegression, max_depth);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = X.row(static_cast<Eigen::Index>(i));
      fitted[i] += learning_rate * tree.predict(std::span<const double>(row.data(), model.n_features));
    }
    model.trees.push_back(std::move(tree));
    if (train_loss) train_loss->push_back(loss());
  }
  return model;
}

}  // namespace aisrepair::learners
