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


#ifndef AISREPAIR_LEARNERS_MODEL_IO_HPP
#define AISREPAIR_LEARNERS_MODEL_IO_HPP

#include <filesystem>
#include <string>

#include "aisrepair/learners/forest.hpp"
#include "aisrepair/learners/kmeans.hpp"
#include "aisrepair/learners/linear.hpp"
#include "aisrepair/learners/votes.hpp"

namespace aisrepair::learners {

inline constexpr int kLearnerFormatVersion = 1;

// Versioned JSON documents. Every reader throws ValidationError on a
// malformed document or a "model" field naming a different learner.

std::string to_json(const KMeansModel& model);
std::string to_json(const LinearModel& model);
std::string to_json(const LogisticModel& model);
std::string to_json(const TypeAverageBaseline& model);
/// Trees are stored as flat node tables, one array per node field:
/// `{feature, threshold, left, right, value}`.
std::string to_json(const TreeEnsembleModel& model);

KMeansModel kmeans_from_json(const std::string& text);
LinearModel linear_from_json(const std::string& text);
LogisticModel logistic_from_json(const std::string& text);
TypeAverageBaseline baseline_from_json(const std::string& text);
TreeEnsembleModel ensemble_from_json(const std::string& text);

/// The "model" field of a learner document.
std::string model_kind(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace aisrepair::learners

#endif  // AISREPAIR_LEARNERS_MODEL_IO_HPP
