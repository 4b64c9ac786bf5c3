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

#include "aisrepair/learners/kmeans.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "aisrepair/error.hpp"

namespace aisrepair::learners {
namespace {

double sq_dist(const FeatureMatrix& X, Eigen::Index i, const FeatureMatrix& C, Eigen::Index j) {
  return (X.row(i) - C.row(j)).squaredNorm();
}

struct Assignment {
  std::vector<std::size_t> label;
  std::vector<double> dist;
  double inertia = 0.0;
};

Assignment assign_all(const FeatureMatrix& X, const FeatureMatrix& C) {
  Assignment a;
  a.label.resize(static_cast<std::size_t>(X.rows()));
  a.dist.resize(a.label.size());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (Eigen::Index j = 0; j < C.rows(); ++j) {
      const double d = sq_dist(X, i, C, j);
      if (d < best) {
        best = d;
        arg = static_cast<std::size_t>(j);
      }
    }
    a.label[static_cast<std::size_t>(i)] = arg;
    a.dist[static_cast<std::size_t>(i)] = best;
    a.inertia += best;
  }
  return a;
}

// k-means++: first center uniform, the rest proportional to squared distance.
FeatureMatrix seed_plus_plus(const FeatureMatrix& X, std::size_t k, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(X.rows());
  FeatureMatrix C(static_cast<Eigen::Index>(k), X.cols());
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  C.row(0) = X.row(static_cast<Eigen::Index>(pick(rng)));
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(X, static_cast<Eigen::Index>(i), C, 0);
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      for (std::size_t i = 0; i < n; ++i) {
        target -= d2[i];
        if (target <= 0.0 || i + 1 == n) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);  // all points coincide with a center
    }
    C.row(static_cast<Eigen::Index>(c)) = X.row(static_cast<Eigen::Index>(chosen));
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(X, static_cast<Eigen::Index>(i), C, static_cast<Eigen::Index>(c)));
    }
  }
  return C;
}

}  // namespace

KMeansModel kmeans_fit(const FeatureMatrix& X, std::size_t k, std::uint64_t seed, std::size_t max_iter,
                       double tol) {
  if (k < 1) throw ValidationError("k-means: k must be at least 1");
  if (static_cast<std::size_t>(X.rows()) < k) {
    throw ValidationError(fmt::format("k-means: {} points for k={}", X.rows(), k));
  }
  std::mt19937_64 rng(seed);
  KMeansModel model;
  model.k = k;
  model.centroids = seed_plus_plus(X, k, rng);

  Assignment a = assign_all(X, model.centroids);
  model.inertia_trace.push_back(a.inertia);
  for (std::size_t it = 0; it < max_iter; ++it) {
    FeatureMatrix next = FeatureMatrix::Zero(model.centroids.rows(), X.cols());
    std::vector<std::size_t> count(k, 0);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const auto c = a.label[static_cast<std::size_t>(i)];
      next.row(static_cast<Eigen::Index>(c)) += X.row(i);
      ++count[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] > 0) {
        next.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(count[c]);
      } else {
        // Empty cluster: restart it on the point farthest from its center.
        const auto far = std::max_element(a.dist.begin(), a.dist.end()) - a.dist.begin();
        next.row(static_cast<Eigen::Index>(c)) = X.row(far);
        a.dist[static_cast<std::size_t>(far)] = 0.0;
      }
    }
    double shift = 0.0;
    for (Eigen::Index c = 0; c < next.rows(); ++c) {
      shift = std::max(shift, (next.row(c) - model.centroids.row(c)).norm());
    }
    model.centroids = std::move(next);
    a = assign_all(X, model.centroids);
    model.inertia_trace.push_back(a.inertia);
    model.iterations = it + 1;
    if (shift < tol) break;
  }
  model.inertia = a.inertia;
  return model;
}

std::size_t nearest_centroid(const KMeansModel& model, std::span<const double> x) {
  if (static_cast<Eigen::Index>(x.size()) != model.centroids.cols()) {
    throw ValidationError(fmt::format("k-means: expected {} features, got {}", model.centroids.cols(), x.size()));
  }
  const Eigen::Map<const Eigen::RowVectorXd> row(x.data(), static_cast<Eigen::Index>(x.size()));
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (Eigen::Index j = 0; j < model.centroids.rows(); ++j) {
    const double d = (row - model.centroids.row(j)).squaredNorm();
    if (d < best) {
      best = d;
      arg = static_cast<std::size_t>(j);
    }
  }
  return arg;
}

std::string navstatus_name(int code) {
  switch (code) {
    case 0: return "Under way using engine";
    case 1: return "At anchor";
    case 2: return "Not under command";
    case 3: return "Restricted maneuv.";
    case 4: return "Constrained by draught";
    case 5: return "Moored";
    case 6: return "Aground";
    case 7: return "Engaged in fishing";
    case 8: return "Under way sailing";
    case 15: return "Undefined";
    default: return fmt::format("Status {}", code);
  }
}

double CrossTab::at(int row_label, const std::string& column) const {
  auto r = std::find(rows.begin(), rows.end(), row_label);
  auto c = std::find(columns.begin(), columns.end(), column);
  if (r == rows.end() || c == columns.end()) return 0.0;
  return values[static_cast<std::size_t>(r - rows.begin())][static_cast<std::size_t>(c - columns.begin())];
}

CrossTab crosstab(std::span<const int> labels, std::span<const std::string> categories, int n_labels,
                  std::span<const std::string> extra_columns) {
  if (labels.size() != categories.size()) {
    throw ValidationError(fmt::format("crosstab: {} labels vs {} categories", labels.size(), categories.size()));
  }
  std::set<std::string> names(categories.begin(), categories.end());
  names.insert(extra_columns.begin(), extra_columns.end());

  CrossTab tab;
  tab.columns.assign(names.begin(), names.end());
  for (int l = 1; l <= n_labels; ++l) tab.rows.push_back(l);
  tab.values.assign(static_cast<std::size_t>(std::max(n_labels, 0)), std::vector<double>(tab.columns.size(), 0.0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > n_labels) {
      throw ValidationError(fmt::format("crosstab: label {} outside 1..{}", labels[i], n_labels));
    }
    const auto col = std::lower_bound(tab.columns.begin(), tab.columns.end(), categories[i]) - tab.columns.begin();
    tab.values[static_cast<std::size_t>(labels[i] - 1)][static_cast<std::size_t>(col)] += 1.0;
  }
  for (auto& row : tab.values) {
    double total = 0.0;
    for (double v : row) total += v;
    if (total > 0.0) {
      for (double& v : row) v /= total;
    }
  }
  return tab;
}

CrossTab crosstab_navstatus(std::span<const int> labels, std::span<const int> navstatus, int n_labels) {
  std::vector<std::string> names;
  names.reserve(navstatus.size());
  for (int code : navstatus) names.push_back(navstatus_name(code));
  return crosstab(labels, names, n_labels);
}

}  // namespace aisrepair::learners
