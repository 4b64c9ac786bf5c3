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


#ifndef AISREPAIR_PIPELINE_ARTIFACTS_HPP
#define AISREPAIR_PIPELINE_ARTIFACTS_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aisrepair/learners/kmeans.hpp"
#include "aisrepair/regularize.hpp"
#include "aisrepair/types.hpp"
#include "aisrepair/window.hpp"

namespace aisrepair::pipeline {

/// File names of every stage artifact under the output directory.
struct Layout {
  std::filesystem::path root;

  std::filesystem::path traces_dir() const { return root / "traces"; }
  std::filesystem::path trace(ShipId id) const { return traces_dir() / (to_string(id) + ".csv"); }
  std::filesystem::path reject_report() const { return root / "reject_report.json"; }
  std::filesystem::path ingest_summary() const { return root / "ingest_summary.json"; }
  std::filesystem::path split() const { return root / "split.csv"; }
  std::filesystem::path windows() const { return root / "windows.csv"; }
  std::filesystem::path crbm_model() const { return root / "crbm_model.json"; }
  std::filesystem::path crbm_loss() const { return root / "crbm_loss.csv"; }
  std::filesystem::path activations() const { return root / "activations.csv"; }
  std::filesystem::path kmeans_model() const { return root / "kmeans_model.json"; }
  std::filesystem::path clusters() const { return root / "clusters.csv"; }
  std::filesystem::path crosstab_navstatus() const { return root / "crosstab_navstatus.csv"; }
  std::filesystem::path crosstab_modes() const { return root / "crosstab_modes.csv"; }
  std::filesystem::path learners_dir() const { return root / "learners"; }
  std::filesystem::path predictions_dir() const { return root / "predictions"; }
  std::filesystem::path emissions_dir() const { return root / "emissions"; }
  std::filesystem::path emission_records() const { return emissions_dir() / "real.csv"; }
  std::filesystem::path engine_totals() const { return emissions_dir() / "engine_totals.csv"; }
  std::filesystem::path scenario_totals() const { return emissions_dir() / "scenario_totals.csv"; }
  std::filesystem::path report_dir() const { return root / "report"; }
  std::filesystem::path evaluation() const { return report_dir() / "evaluation.csv"; }
  std::filesystem::path coverage() const { return report_dir() / "coverage.csv"; }
  std::filesystem::path lock() const { return root / ".lock"; }

  /// `<target>_<algorithm>_<feature_set>`
  static std::string learner_name(const std::string& target, const std::string& algorithm,
                                  const std::string& feature_set);
  std::filesystem::path learner(const std::string& name) const { return learners_dir() / (name + ".json"); }
  std::filesystem::path step_predictions(const std::string& name) const {
    return predictions_dir() / (name + "_steps.csv");
  }
  std::filesystem::path ship_predictions(const std::string& name, const std::string& vote) const {
    return predictions_dir() / (name + "_" + vote + ".csv");
  }
};

/// Exclusive claim on an output directory for the lifetime of the object.
class OutputLock {
 public:
  explicit OutputLock(const Layout& layout);
  ~OutputLock();
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  std::filesystem::path path_;
};

/// Throws MissingArtifactError naming the file and the stage that makes it.
void require(const std::filesystem::path& path, const std::string& producer);

std::map<ShipId, regularize::ShipTrace> read_traces(const Layout& layout, std::int64_t step_seconds);

struct Split {
  std::set<ShipId> train;
  std::set<ShipId> test;
};
void write_split(const std::filesystem::path& path, const window::ShipSplit& split);
Split read_split(const std::filesystem::path& path);

/// One encoded window.
struct ActivationRow {
  ShipId ship_id{};
  std::size_t t_index = 0;
  std::vector<double> a;
  std::optional<int> label_type;
  std::optional<double> label_power;
  int navstatus = 15;
};

/// `ship_id,t_index,a0..a{n_h-1},label_type,label_power,navstatus`
void write_activations(const std::filesystem::path& path, const std::vector<ActivationRow>& rows);
std::vector<ActivationRow> read_activations(const std::filesystem::path& path);

/// `cluster,<column names...>` with one row per label.
void write_crosstab(const std::filesystem::path& path, const learners::CrossTab& tab);

/// Per-ship voted prediction and the known value, if any.
struct ShipPrediction {
  ShipId ship_id{};
  double predicted = 0.0;
  std::optional<double> truth;
};
/// `ship_id,predicted,truth`
void write_ship_predictions(const std::filesystem::path& path, const std::vector<ShipPrediction>& rows);
std::vector<ShipPrediction> read_ship_predictions(const std::filesystem::path& path);

/// Cluster label for every trace sample, burned samples included.
struct ClusterRow {
  ShipId ship_id{};
  std::size_t t_index = 0;
  Timestamp timestamp{};
  int cluster = learners::kBurnLabel;
  int navstatus = 15;
};
/// `ship_id,t_index,timestamp,cluster,navstatus`
void write_clusters(const std::filesystem::path& path, const std::vector<ClusterRow>& rows);
std::vector<ClusterRow> read_clusters(const std::filesystem::path& path);

}  // namespace aisrepair::pipeline

#endif  // AISREPAIR_PIPELINE_ARTIFACTS_HPP
