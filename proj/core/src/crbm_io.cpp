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

#include "aisrepair/crbm_io.hpp"

#include <fmt/format.h>

#include <iterator>
#include <json.hpp>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair::crbm {
namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows) {
    throw ValidationError(fmt::format("crbm model: '{}' must have {} rows", name, rows));
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw ValidationError(fmt::format("crbm model: '{}' row {} must have {} columns", name, r, cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
    }
  }
  return m;
}

Vector vector_from_json(const json& j, std::size_t size, const char* name) {
  if (!j.is_array() || j.size() != size) {
    throw ValidationError(fmt::format("crbm model: '{}' must have {} entries", name, size));
  }
  Vector v(static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

std::string to_json(const CrbmModel& model, const std::optional<window::NormStats>& stats) {
  model.check_dimensions();
  json j;
  j["version"] = kModelFormatVersion;
  j["n_v"] = model.n_v;
  j["n_h"] = model.n_h;
  j["n"] = model.n;
  j["W"] = matrix_to_json(model.W);
  j["A"] = matrix_to_json(model.A);
  j["D"] = matrix_to_json(model.D);
  j["b"] = vector_to_json(model.b);
  j["c"] = vector_to_json(model.c);
  if (stats) {
    j["norm_stats"] = {{"features", window::kFeatureNames},
                       {"mean", stats->mean},
                       {"std", stats->stddev}};
  } else {
    j["norm_stats"] = nullptr;
  }
  return j.dump(1);
}

StoredModel from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("crbm model: {}", e.what()));
  }
  try {
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ValidationError(fmt::format("crbm model: unsupported version {}", version));
    }
    StoredModel out;
    auto& m = out.model;
    m.n_v = j.at("n_v").get<std::size_t>();
    m.n_h = j.at("n_h").get<std::size_t>();
    m.n = j.at("n").get<std::size_t>();
    m.W = matrix_from_json(j.at("W"), m.n_v, m.n_h, "W");
    m.A = matrix_from_json(j.at("A"), m.history_size(), m.n_v, "A");
    m.D = matrix_from_json(j.at("D"), m.history_size(), m.n_h, "D");
    m.b = vector_from_json(j.at("b"), m.n_h, "b");
    m.c = vector_from_json(j.at("c"), m.n_v, "c");
    m.check_dimensions();
    if (j.contains("norm_stats") && !j["norm_stats"].is_null()) {
      window::NormStats stats;
      stats.mean = j["norm_stats"].at("mean").get<window::Frame>();
      stats.stddev = j["norm_stats"].at("std").get<window::Frame>();
      out.norm_stats = stats;
    }
    return out;
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("crbm model: {}", e.what()));
  }
}

void save_model(const std::filesystem::path& path, const CrbmModel& model,
                const std::optional<window::NormStats>& stats) {
  auto out = csv::open_output(path);
  out << to_json(model, stats) << '\n';
}

StoredModel load_model(const std::filesystem::path& path) {
  auto in = csv::open_input(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json(text);
}

std::uint64_t window_key(ShipId ship, std::size_t t_index) {
  return static_cast<std::uint64_t>(to_int(ship)) * 0x100000001B3ULL ^ static_cast<std::uint64_t>(t_index);
}

std::vector<TrainingSample> training_samples(std::span<const window::WindowedInstance> instances) {
  std::vector<TrainingSample> out;
  out.reserve(instances.size());
  for (const auto& w : instances) {
    out.push_back({std::span<const double>(w.frame), std::span<const double>(w.history),
                   window_key(w.ship_id, w.t_index)});
  }
  return out;
}

}  // namespace aisrepair::crbm
