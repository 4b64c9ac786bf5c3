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


#include "aisrepair/pipeline/evaluation.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair::pipeline {

FeatureTable load_features(const Layout& layout, const std::string& feature_set) {
  FeatureTable t;
  if (feature_set == "act") {
    const auto rows = read_activations(layout.activations());
    const auto d = rows.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().a.size());
    t.X.resize(static_cast<Eigen::Index>(rows.size()), d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (static_cast<Eigen::Index>(r.a.size()) != d) throw ValidationError("activations: ragged rows");
      t.ship.push_back(r.ship_id);
      t.t_index.push_back(r.t_index);
      t.type.push_back(r.label_type);
      t.power.push_back(r.label_power);
      for (Eigen::Index j = 0; j < d; ++j) t.X(static_cast<Eigen::Index>(i), j) = r.a[static_cast<std::size_t>(j)];
    }
    return t;
  }
  if (feature_set != "frame" && feature_set != "hist") {
    throw ValidationError(fmt::format("unknown feature set '{}'", feature_set));
  }
  require(layout.windows(), "train-crbm");
  auto in = csv::open_input(layout.windows());
  const auto windows = window::read_windows_csv(in);
  const bool hist = feature_set == "hist";
  const auto d = static_cast<Eigen::Index>(
      window::kFrameSize + (hist && !windows.empty() ? windows.front().history.size() : 0));
  t.X.resize(static_cast<Eigen::Index>(windows.size()), d);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& w = windows[i];
    t.ship.push_back(w.ship_id);
    t.t_index.push_back(w.t_index);
    t.type.push_back(w.label_type);
    t.power.push_back(w.label_power);
    Eigen::Index j = 0;
    if (hist) {
      for (double v : w.history) t.X(static_cast<Eigen::Index>(i), j++) = v;
    }
    for (double v : w.frame) t.X(static_cast<Eigen::Index>(i), j++) = v;
  }
  return t;
}

std::optional<PredictionName> parse_prediction_name(const std::string& stem) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= stem.size(); ++i) {
    if (i == stem.size() || stem[i] == '_') {
      parts.push_back(stem.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() < 4) return std::nullopt;
  PredictionName n;
  n.target = parts.front();
  n.vote = parts.back();
  n.feature_set = parts[parts.size() - 2];
  for (std::size_t i = 1; i + 2 < parts.size(); ++i) n.algorithm += (i > 1 ? "_" : "") + parts[i];
  if (n.vote == "steps" || n.algorithm.empty()) return std::nullopt;
  return n;
}

std::vector<std::pair<PredictionName, std::filesystem::path>> list_ship_predictions(const Layout& layout) {
  std::vector<std::pair<PredictionName, std::filesystem::path>> out;
  if (!std::filesystem::exists(layout.predictions_dir())) return out;
  for (const auto& e : std::filesystem::directory_iterator(layout.predictions_dir())) {
    if (!e.is_regular_file() || e.path().extension() != ".csv") continue;
    if (auto n = parse_prediction_name(e.path().stem().string())) out.emplace_back(*n, e.path());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

std::vector<EvalRow> evaluate_predictions(const Layout& layout) {
  std::vector<EvalRow> rows;
  for (const auto& [name, path] : list_ship_predictions(layout)) {
    std::vector<double> pred, truth;
    for (const auto& p : read_ship_predictions(path)) {
      if (!p.truth) continue;
      pred.push_back(p.predicted);
      truth.push_back(*p.truth);
    }
    EvalRow base{name.algorithm, name.feature_set, name.vote, "test", "", 0.0};
    if (!pred.empty()) {
      EvalRow r = base;
      if (name.target == "type") {
        std::vector<int> pi, ti;
        for (double v : pred) pi.push_back(static_cast<int>(std::lround(v)));
        for (double v : truth) ti.push_back(static_cast<int>(std::lround(v)));
        r.metric = "accuracy";
        r.value = learners::accuracy(pi, ti);
      } else {
        r.metric = "mae";
        r.value = learners::mae(pred, truth);
      }
      rows.push_back(r);
    }
    EvalRow count = base;
    count.metric = "n_ships";
    count.value = static_cast<double>(pred.size());
    rows.push_back(count);
  }
  return rows;
}

void write_evaluation(const std::filesystem::path& path, const std::vector<EvalRow>& rows) {
  auto out = csv::open_output(path);
  out << "model,feature_set,vote,split,metric,value\n";
  for (const auto& r : rows) {
    out << csv::escape(r.model) << ',' << csv::escape(r.feature_set) << ',' << csv::escape(r.vote) << ','
        << csv::escape(r.split) << ',' << csv::escape(r.metric) << ',' << csv::fixed6(r.value) << '\n';
  }
}

learners::CrossTab mode_crosstab(const std::vector<ClusterRow>& clusters,
                                 const std::vector<synth::ModeSample>& modes, int n_labels) {
  std::map<std::pair<std::int64_t, std::int64_t>, synth::Mode> by_key;
  for (const auto& m : modes) by_key[{m.imo, epoch_seconds(m.timestamp)}] = m.mode;
  std::vector<int> labels;
  std::vector<std::string> names;
  for (const auto& c : clusters) {
    const auto it = by_key.find({to_int(c.ship_id), epoch_seconds(c.timestamp)});
    if (it == by_key.end()) continue;
    labels.push_back(c.cluster);
    names.emplace_back(synth::mode_name(it->second));
  }
  const std::vector<std::string> all{"moored", "trawl", "transit"};
  return learners::crosstab(labels, names, n_labels, all);
}

}  // namespace aisrepair::pipeline
