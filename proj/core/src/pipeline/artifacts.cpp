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


#include "aisrepair/pipeline/artifacts.hpp"

#include <fmt/format.h>

#include <cstdio>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair::pipeline {
namespace {

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }
std::string opt_double(const std::optional<double>& v) { return v ? csv::fixed6(*v) : std::string(); }

ShipId parse_id(const std::string& cell, const csv::Reader& r, const std::filesystem::path& path) {
  const auto id = csv::parse_int(cell);
  if (!id) throw ValidationError(fmt::format("{} line {}: bad ship_id", path.string(), r.line_number()));
  return ShipId{*id};
}

std::size_t parse_index(const std::string& cell, const csv::Reader& r, const std::filesystem::path& path) {
  const auto t = csv::parse_int(cell);
  if (!t || *t < 0) throw ValidationError(fmt::format("{} line {}: bad t_index", path.string(), r.line_number()));
  return static_cast<std::size_t>(*t);
}

}  // namespace

std::string Layout::learner_name(const std::string& target, const std::string& algorithm,
                                 const std::string& feature_set) {
  return target + "_" + algorithm + "_" + feature_set;
}

OutputLock::OutputLock(const Layout& layout) : path_(layout.lock()) {
  std::filesystem::create_directories(layout.root);
  std::FILE* f = std::fopen(path_.c_str(), "wx");
  if (!f) {
    throw Error(fmt::format("output directory {} is in use (lock file {}); remove the lock if no run is active",
                            layout.root.string(), path_.string()));
  }
  std::fclose(f);
}

OutputLock::~OutputLock() {
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

void require(const std::filesystem::path& path, const std::string& producer) {
  if (!std::filesystem::exists(path)) {
    throw MissingArtifactError(fmt::format("missing {}; run `aisrepair {}` first", path.string(), producer));
  }
}

std::map<ShipId, regularize::ShipTrace> read_traces(const Layout& layout, std::int64_t step_seconds) {
  require(layout.traces_dir(), "ingest");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(layout.traces_dir())) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<ShipId, regularize::ShipTrace> out;
  for (const auto& f : files) {
    auto in = csv::open_input(f);
    for (auto& [id, trace] : regularize::read_traces_csv(in, step_seconds)) out[id] = std::move(trace);
  }
  return out;
}

void write_split(const std::filesystem::path& path, const window::ShipSplit& split) {
  std::vector<std::pair<ShipId, const char*>> rows;
  for (auto id : split.train) rows.emplace_back(id, "train");
  for (auto id : split.test) rows.emplace_back(id, "test");
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto out = csv::open_output(path);
  out << "ship_id,set\n";
  for (const auto& [id, set] : rows) out << to_string(id) << ',' << set << '\n';
}

Split read_split(const std::filesystem::path& path) {
  require(path, "train-crbm");
  auto in = csv::open_input(path);
  csv::Reader r(in);
  const auto c_id = r.require_column("ship_id");
  const auto c_set = r.require_column("set");
  Split s;
  std::vector<std::string> f;
  while (r.next(f)) {
    const ShipId id = parse_id(f.at(c_id), r, path);
    if (f.at(c_set) == "train") {
      s.train.insert(id);
    } else if (f.at(c_set) == "test") {
      s.test.insert(id);
    } else {
      throw ValidationError(fmt::format("{} line {}: set must be train or test", path.string(), r.line_number()));
    }
  }
  return s;
}

void write_activations(const std::filesystem::path& path, const std::vector<ActivationRow>& rows) {
  auto out = csv::open_output(path);
  const std::size_t n_h = rows.empty() ? 0 : rows.front().a.size();
  out << "ship_id,t_index";
  for (std::size_t j = 0; j < n_h; ++j) out << ",a" << j;
  out << ",label_type,label_power,navstatus\n";
  for (const auto& row : rows) {
    out << to_string(row.ship_id) << ',' << row.t_index;
    for (double v : row.a) out << ',' << csv::fixed6(v);
    out << ',' << opt_int(row.label_type) << ',' << opt_double(row.label_power) << ',' << row.navstatus << '\n';
  }
}

std::vector<ActivationRow> read_activations(const std::filesystem::path& path) {
  require(path, "encode");
  auto in = csv::open_input(path);
  csv::Reader r(in);
  const auto c_id = r.require_column("ship_id");
  const auto c_t = r.require_column("t_index");
  const auto c_type = r.require_column("label_type");
  const auto c_power = r.require_column("label_power");
  const auto c_nav = r.require_column("navstatus");
  std::vector<std::size_t> c_a;
  for (std::size_t j = 0;; ++j) {
    const auto c = r.column("a" + std::to_string(j));
    if (!c) break;
    c_a.push_back(*c);
  }
  std::vector<ActivationRow> rows;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != r.header().size()) {
      throw ValidationError(fmt::format("{} line {}: bad field count", path.string(), r.line_number()));
    }
    ActivationRow row;
    row.ship_id = parse_id(f[c_id], r, path);
    row.t_index = parse_index(f[c_t], r, path);
    row.a.reserve(c_a.size());
    for (auto c : c_a) {
      const auto v = csv::parse_double(f[c]);
      if (!v) throw ValidationError(fmt::format("{} line {}: bad activation", path.string(), r.line_number()));
      row.a.push_back(*v);
    }
    if (auto t = csv::parse_int(f[c_type])) row.label_type = static_cast<int>(*t);
    row.label_power = csv::parse_double(f[c_power]);
    const auto nav = csv::parse_int(f[c_nav]);
    if (!nav) throw ValidationError(fmt::format("{} line {}: bad navstatus", path.string(), r.line_number()));
    row.navstatus = static_cast<int>(*nav);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_crosstab(const std::filesystem::path& path, const learners::CrossTab& tab) {
  auto out = csv::open_output(path);
  out << "cluster";
  for (const auto& c : tab.columns) out << ',' << csv::escape(c);
  out << '\n';
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    out << tab.rows[i];
    for (double v : tab.values[i]) out << ',' << csv::fixed6(v);
    out << '\n';
  }
}

void write_ship_predictions(const std::filesystem::path& path, const std::vector<ShipPrediction>& rows) {
  auto out = csv::open_output(path);
  out << "ship_id,predicted,truth\n";
  for (const auto& row : rows) {
    out << to_string(row.ship_id) << ',' << csv::fixed6(row.predicted) << ',' << opt_double(row.truth) << '\n';
  }
}

std::vector<ShipPrediction> read_ship_predictions(const std::filesystem::path& path) {
  require(path, "predict");
  auto in = csv::open_input(path);
  csv::Reader r(in);
  const auto c_id = r.require_column("ship_id");
  const auto c_p = r.require_column("predicted");
  const auto c_t = r.require_column("truth");
  std::vector<ShipPrediction> rows;
  std::vector<std::string> f;
  while (r.next(f)) {
    ShipPrediction row;
    row.ship_id = parse_id(f.at(c_id), r, path);
    const auto p = csv::parse_double(f.at(c_p));
    if (!p) throw ValidationError(fmt::format("{} line {}: bad prediction", path.string(), r.line_number()));
    row.predicted = *p;
    row.truth = csv::parse_double(f.at(c_t));
    rows.push_back(row);
  }
  return rows;
}

void write_clusters(const std::filesystem::path& path, const std::vector<ClusterRow>& rows) {
  auto out = csv::open_output(path);
  out << "ship_id,t_index,timestamp,cluster,navstatus\n";
  for (const auto& row : rows) {
    out << to_string(row.ship_id) << ',' << row.t_index << ',' << format_timestamp(row.timestamp) << ','
        << row.cluster << ',' << row.navstatus << '\n';
  }
}

std::vector<ClusterRow> read_clusters(const std::filesystem::path& path) {
  require(path, "cluster");
  auto in = csv::open_input(path);
  csv::Reader r(in);
  const auto c_id = r.require_column("ship_id");
  const auto c_t = r.require_column("t_index");
  const auto c_ts = r.require_column("timestamp");
  const auto c_c = r.require_column("cluster");
  const auto c_nav = r.require_column("navstatus");
  std::vector<ClusterRow> rows;
  std::vector<std::string> f;
  while (r.next(f)) {
    ClusterRow row;
    row.ship_id = parse_id(f.at(c_id), r, path);
    row.t_index = parse_index(f.at(c_t), r, path);
    const auto ts = parse_timestamp(f.at(c_ts));
    const auto c = csv::parse_int(f.at(c_c));
    const auto nav = csv::parse_int(f.at(c_nav));
    if (!ts || !c || !nav) throw ValidationError(fmt::format("{} line {}: bad row", path.string(), r.line_number()));
    row.timestamp = *ts;
    row.cluster = static_cast<int>(*c);
    row.navstatus = static_cast<int>(*nav);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace aisrepair::pipeline
