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

#include "aisrepair/window.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair::window {

Frame raw_frame(const regularize::TraceSample& sample) {
  return {sample.sog, sample.gps_rotation, static_cast<double>(static_cast<int>(sample.bathy_zone))};
}

NormStats fit_norm(std::span<const Frame> frames) {
  if (frames.size() < 2) {
    throw ValidationError(fmt::format("normalization needs at least 2 frames, got {}", frames.size()));
  }
  NormStats stats;
  const auto n = static_cast<double>(frames.size());
  for (std::size_t f = 0; f < kFrameSize; ++f) {
    double sum = 0.0;
    for (const auto& fr : frames) sum += fr[f];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& fr : frames) ss += (fr[f] - mean) * (fr[f] - mean);
    const double sd = std::sqrt(ss / n);
    if (!(sd > 1e-12 * std::max(1.0, std::fabs(mean)))) {
      throw ValidationError(fmt::format("degenerate feature '{}': constant over the training frames",
                                        kFeatureNames[f]));
    }
    stats.mean[f] = mean;
    stats.stddev[f] = sd;
  }
  return stats;
}

Frame apply_norm(const Frame& frame, const NormStats& stats) {
  Frame out;
  for (std::size_t f = 0; f < kFrameSize; ++f) out[f] = (frame[f] - stats.mean[f]) / stats.stddev[f];
  return out;
}

Frame invert_norm(const Frame& frame, const NormStats& stats) {
  Frame out;
  for (std::size_t f = 0; f < kFrameSize; ++f) out[f] = frame[f] * stats.stddev[f] + stats.mean[f];
  return out;
}

WindowSet build_windows(const regularize::ShipTrace& trace, std::size_t n, const NormStats& stats) {
  if (n < 1) throw ValidationError("window length must be at least 1");
  WindowSet out;
  std::vector<Frame> normed(trace.samples.size());
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    normed[i] = apply_norm(raw_frame(trace.samples[i]), stats);
  }
  for (std::size_t seg = 0; seg < trace.segment_count(); ++seg) {
    const auto [begin, end] = trace.segment(seg);
    for (std::size_t i = begin; i < std::min(end, begin + n); ++i) out.burned.push_back(i);
    for (std::size_t t = begin + n; t < end; ++t) {
      WindowedInstance w;
      w.ship_id = trace.ship_id;
      w.t_index = t;
      w.frame = normed[t];
      w.history.reserve(n * kFrameSize);
      for (std::size_t h = t - n; h < t; ++h) {
        w.history.insert(w.history.end(), normed[h].begin(), normed[h].end());
      }
      if (trace.samples[t].ship_type > 0) w.label_type = trace.samples[t].ship_type;  // 0: not available
      w.navstatus = trace.samples[t].navstatus;
      out.instances.push_back(std::move(w));
    }
  }
  return out;
}

ShipSplit split_by_ship(std::vector<ShipId> ids, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError(fmt::format("test fraction must lie in (0, 1), got {}", test_fraction));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2) throw ValidationError("split needs at least 2 ships");

  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(ids.size()) * test_fraction));
  n_test = std::clamp<std::size_t>(n_test, 1, ids.size() - 1);

  ShipSplit split;
  split.test.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_test));
  split.train.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_test), ids.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

void write_windows_csv(std::ostream& out, std::span<const WindowedInstance> instances, std::size_t n) {
  out << "ship_id,t_index,label_type,label_power,navstatus";
  for (std::size_t f = 0; f < kFrameSize * (n + 1); ++f) out << ",f" << f;
  out << '\n';
  for (const auto& w : instances) {
    if (w.history.size() != n * kFrameSize) {
      throw ValidationError(fmt::format("window for ship {} has history length {}, expected {}",
                                        to_string(w.ship_id), w.history.size(), n * kFrameSize));
    }
    out << to_string(w.ship_id) << ',' << w.t_index << ','
        << (w.label_type ? std::to_string(*w.label_type) : std::string()) << ','
        << (w.label_power ? csv::fixed6(*w.label_power) : std::string()) << ',' << w.navstatus;
    for (double v : w.history) out << ',' << csv::fixed6(v);
    for (double v : w.frame) out << ',' << csv::fixed6(v);
    out << '\n';
  }
}

std::vector<WindowedInstance> read_windows_csv(std::istream& in) {
  csv::Reader reader(in);
  const auto c_id = reader.require_column("ship_id");
  const auto c_t = reader.require_column("t_index");
  const auto c_type = reader.require_column("label_type");
  const auto c_power = reader.require_column("label_power");
  const auto c_nav = reader.require_column("navstatus");
  const auto c_f0 = reader.require_column("f0");
  const std::size_t n_values = reader.header().size() - c_f0;
  if (n_values % kFrameSize != 0 || n_values < 2 * kFrameSize) {
    throw ValidationError(fmt::format("windows csv: {} feature columns is not 3(n+1)", n_values));
  }
  std::vector<WindowedInstance> out;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != reader.header().size()) {
      throw ValidationError(fmt::format("windows csv line {}: bad field count", reader.line_number()));
    }
    WindowedInstance w;
    auto id = csv::parse_int(row[c_id]);
    auto t = csv::parse_int(row[c_t]);
    auto nav = csv::parse_int(row[c_nav]);
    if (!id || !t || *t < 0 || !nav) {
      throw ValidationError(fmt::format("windows csv line {}: bad key columns", reader.line_number()));
    }
    w.ship_id = ShipId{*id};
    w.t_index = static_cast<std::size_t>(*t);
    w.navstatus = static_cast<int>(*nav);
    if (auto type = csv::parse_int(row[c_type])) w.label_type = static_cast<int>(*type);
    w.label_power = csv::parse_double(row[c_power]);
    w.history.resize(n_values - kFrameSize);
    for (std::size_t k = 0; k < n_values; ++k) {
      auto v = csv::parse_double(row[c_f0 + k]);
      if (!v) throw ValidationError(fmt::format("windows csv line {}: bad f{}", reader.line_number(), k));
      if (k < w.history.size()) {
        w.history[k] = *v;
      } else {
        w.frame[k - w.history.size()] = *v;
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace aisrepair::window
