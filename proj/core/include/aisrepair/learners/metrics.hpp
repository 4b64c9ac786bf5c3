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

#ifndef AISREPAIR_LEARNERS_METRICS_HPP
#define AISREPAIR_LEARNERS_METRICS_HPP

#include <Eigen/Core>

#include <span>

namespace aisrepair::learners {

/// Samples in rows, features in columns.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Ship type digit from the AIS typeofshipandcargo code (70 -> 7).
/// Throws ValidationError outside 0..99.
int ship_type_of(int type_and_cargo);

/// Mean absolute error. Throws on empty or mismatched input.
double mae(std::span<const double> pred, std::span<const double> truth);

/// Fraction of exact matches. Throws on empty or mismatched input.
double accuracy(std::span<const int> pred, std::span<const int> truth);

}  // namespace aisrepair::learners

#endif  // AISREPAIR_LEARNERS_METRICS_HPP
