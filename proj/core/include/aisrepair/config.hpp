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


#ifndef AISREPAIR_CONFIG_HPP
#define AISREPAIR_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "aisrepair/crbm.hpp"
#include "aisrepair/emissions.hpp"
#include "aisrepair/learners/votes.hpp"
#include "aisrepair/synth.hpp"

namespace aisrepair {

struct PathsConfig {
  std::filesystem::path ais = "data/ais.csv";
  std::filesystem::path meta = "data/meta.csv";
  std::filesystem::path bathy = "data/bathy.asc";
  std::optional<std::filesystem::path> schema;
  std::filesystem::path truth = "data/truth.csv";
  std::filesystem::path truth_modes = "data/truth_modes.csv";
  std::filesystem::path output = "out";
};

struct RegularizeConfig {
  std::int64_t step_seconds = 60;
  double max_gap_hours = 72.0;
};

struct WindowConfig {
  std::size_t n = 20;
  double test_fraction = 0.34;
};

struct CrbmConfig {
  std::size_t n_h = 10;
  double init_scale = 0.01;
  std::size_t train_stride = 1;  // use every k-th training window
  crbm::TrainConfig train;
};

struct LearnerConfig {
  std::string target = "power";       // power | type
  std::string algorithm = "forest";   // forest | boosting | lasso | logistic | type_avg | global_avg
  std::string feature_set = "act";    // frame | hist | act
  learners::VoteMethod vote = learners::VoteMethod::kMedian;
  std::size_t train_stride = 1;
  std::size_t n_trees = 200;
  std::size_t max_features = 0;
  std::size_t max_depth = 0;
  double lasso_lambda = 0.01;
  std::size_t gb_stages = 100;
  double gb_learning_rate = 0.1;
  std::size_t gb_max_depth = 3;
  std::size_t logistic_epochs = 500;
  double logistic_learning_rate = 0.5;
};

struct ClusterConfig {
  std::size_t k = 4;
  std::size_t max_iter = 300;
  double tol = 1e-6;
  std::size_t fit_stride = 1;  // fit on every k-th activation, assign all
};

struct EmissionConfig {
  emissions::PowerParams power;
  emissions::AuxPowerTable aux;
  emissions::EmissionFactors factors = emissions::EmissionFactors::placeholder();
  double cell_degrees = 0.1;
};

/// Whole-pipeline settings read from a sectioned INI file.
///
/// Sections: [run] [paths] [regularize] [window] [crbm] [learner] [cluster]
/// [emissions] [aux] [ef_main] [ef_aux] [synth]. Unknown keys are rejected.
/// Relative paths resolve against the directory holding the config file.
struct PipelineConfig {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  PathsConfig paths;
  RegularizeConfig regularize;
  WindowConfig window;
  CrbmConfig crbm;
  LearnerConfig learner;
  ClusterConfig cluster;
  EmissionConfig emissions;
  synth::SynthFleetSpec synth;

  static PipelineConfig load(const std::filesystem::path& path);
  static PipelineConfig parse(std::istream& in, const std::filesystem::path& base_dir);

  /// Replaces the run seed and every seed derived from it.
  void set_seed(std::uint64_t value);
  /// Throws ValidationError on out-of-range settings.
  void validate() const;
};

}  // namespace aisrepair

#endif  // AISREPAIR_CONFIG_HPP
