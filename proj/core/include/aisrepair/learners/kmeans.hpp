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

#ifndef AISREPAIR_LEARNERS_KMEANS_HPP
#define AISREPAIR_LEARNERS_KMEANS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aisrepair/learners/metrics.hpp"

namespace aisrepair::learners {

struct KMeansModel {
  std::size_t k = 0;
  FeatureMatrix centroids;  // k rows
  double inertia = 0.0;
  std::size_t iterations = 0;
  /// Inertia after each assignment step; non-increasing.
  std::vector<double> inertia_trace;
};

/// Lloyd iterations from k-means++ seeding. Stops when no centroid moves
/// more than `tol` or after `max_iter` rounds. Throws if rows < k.
KMeansModel kmeans_fit(const FeatureMatrix& X, std::size_t k, std::uint64_t seed,
                       std::size_t max_iter = 300, double tol = 1e-6);

/// Cluster label reserved for burned (history-only) samples.
inline constexpr int kBurnLabel = 1;

/// Index of the nearest centroid; ties go to the lower index.
std::size_t nearest_centroid(const KMeansModel& model, std::span<const double> x);

/// Nearest centroid as a label in 2..k+1.
inline int kmeans_assign(const KMeansModel& model, std::span<const double> x) {
  return static_cast<int>(nearest_centroid(model, x)) + 2;
}

/// Display names for the AIS navigational status codes.
std::string navstatus_name(int code);

/// Row-normalized contingency table of cluster label against category.
struct CrossTab {
  std::vector<int> rows;             // labels 1..k+1
  std::vector<std::string> columns;  // category names, sorted
  std::vector<std::vector<double>> values;

  double at(int row_label, const std::string& column) const;
};

/// Rows are the labels 1..n_labels; each non-empty row sums to one, empty rows
/// are all zero. Columns are the distinct categories, sorted by name, plus any
/// names listed in `extra_columns`.
CrossTab crosstab(std::span<const int> labels, std::span<const std::string> categories, int n_labels,
                  std::span<const std::string> extra_columns = {});

/// crosstab() with navstatus codes mapped through navstatus_name().
CrossTab crosstab_navstatus(std::span<const int> labels, std::span<const int> navstatus, int n_labels);

}  // namespace aisrepair::learners

#endif  // AISREPAIR_LEARNERS_KMEANS_HPP
