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


#ifndef AISREPAIR_PIPELINE_STAGES_HPP
#define AISREPAIR_PIPELINE_STAGES_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "aisrepair/config.hpp"
#include "aisrepair/pipeline/artifacts.hpp"

namespace aisrepair::pipeline {

using Written = std::vector<std::filesystem::path>;

// Each stage reads the artifacts of the previous ones from the output
// directory, writes its own, and returns the files it wrote. Stages holding
// the output directory take its lock for their duration.

/// Synthetic fleet to the configured ais/meta/bathy/truth paths.
Written run_synth(const PipelineConfig& config);
/// AIS + bathymetry -> traces/<ship>.csv, reject_report.json.
Written run_ingest(const PipelineConfig& config);
/// Ship split, normalization, windows.csv, crbm_model.json, crbm_loss.csv.
Written run_train_crbm(const PipelineConfig& config);
/// windows.csv + model -> activations.csv.
Written run_encode(const PipelineConfig& config);
/// k-means on activations -> kmeans_model.json, clusters.csv, cross-tabs.
Written run_cluster(const PipelineConfig& config);
/// Fits the configured learner on train ships.
Written run_train_learner(const PipelineConfig& config);
/// Per-step and per-ship predictions of the configured learner on test ships.
Written run_predict(const PipelineConfig& config);
/// Emissions of test ships with real attributes and with every predicted
/// main-engine power found under predictions/.
Written run_estimate(const PipelineConfig& config);
/// Evaluation report, coverage table and cross-tab copies under report/.
/// `scenario_file` replaces emissions/scenario_totals.csv as coverage input.
Written run_compare(const PipelineConfig& config, const std::optional<std::filesystem::path>& scenario_file);

}  // namespace aisrepair::pipeline

#endif  // AISREPAIR_PIPELINE_STAGES_HPP
