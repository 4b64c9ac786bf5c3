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

#ifndef AISREPAIR_CRBM_IO_HPP
#define AISREPAIR_CRBM_IO_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aisrepair/crbm.hpp"
#include "aisrepair/window.hpp"

namespace aisrepair::crbm {

inline constexpr int kModelFormatVersion = 1;

struct StoredModel {
  CrbmModel model;
  std::optional<window::NormStats> norm_stats;
};

/// `{version, n_v, n_h, n, W, A, D, b, c, norm_stats}` with row-major nested
/// arrays for the matrices.
std::string to_json(const CrbmModel& model, const std::optional<window::NormStats>& stats);
StoredModel from_json(const std::string& text);

void save_model(const std::filesystem::path& path, const CrbmModel& model,
                const std::optional<window::NormStats>& stats);
StoredModel load_model(const std::filesystem::path& path);

/// Views over windowed instances. The key mixes ship id and t_index, so the
/// same window always draws the same Gibbs samples. The returned spans point
/// into `instances`, which must outlive them.
std::vector<TrainingSample> training_samples(std::span<const window::WindowedInstance> instances);

std::uint64_t window_key(ShipId ship, std::size_t t_index);

}  // namespace aisrepair::crbm

#endif  // AISREPAIR_CRBM_IO_HPP
