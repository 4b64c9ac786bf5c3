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


#ifndef AISREPAIR_PIPELINE_EVALUATION_HPP
#define AISREPAIR_PIPELINE_EVALUATION_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aisrepair/learners/kmeans.hpp"
#include "aisrepair/learners/metrics.hpp"
#include "aisrepair/pipeline/artifacts.hpp"
#include "aisrepair/synth.hpp"

namespace aisrepair::pipeline {

/// Learner inputs for one feature set: frame, hist (history then frame) or
/// act (CRBM activations). Rows follow the artifact order.
struct FeatureTable {
  std::vector<ShipId> ship;
  std::vector<std::size_t> t_index;
  learners::FeatureMatrix X;
  std::vector<std::optional<int>> type;
  std::vector<std::optional<double>> power;

  std::size_t rows() const { return ship.size(); }
};

FeatureTable load_features(const Layout& layout, const std::string& feature_set);

/// Parsed `<target>_<algorithm>_<feature_set>_<vote>` prediction file stem.
struct PredictionName {
  std::string target;
  std::string algorithm;
  std::string feature_set;
  std::string vote;

  std::string learner() const { return Layout::learner_name(target, algorithm, feature_set); }
};
std::optional<PredictionName> parse_prediction_name(const std::string& stem);

/// Voted prediction files under predictions/, sorted by name.
std::vector<std::pair<PredictionName, std::filesystem::path>> list_ship_predictions(const Layout& layout);

struct EvalRow {
  std::string model;
  std::string feature_set;
  std::string vote;
  std::string split;
  std::string metric;
  double value = 0.0;
};

/// MAE for power predictions, accuracy for type predictions, over ships with
/// a known value; plus the ship count.
std::vector<EvalRow> evaluate_predictions(const Layout& layout);

/// `model,feature_set,vote,split,metric,value`
void write_evaluation(const std::filesystem::path& path, const std::vector<EvalRow>& rows);

/// Cluster label against ground-truth mode, joined on ship and timestamp.
/// Samples without a mode are skipped.
learners::CrossTab mode_crosstab(const std::vector<ClusterRow>& clusters,
                                 const std::vector<synth::ModeSample>& modes, int n_labels);

}  // namespace aisrepair::pipeline

#endif  // AISREPAIR_PIPELINE_EVALUATION_HPP
