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

#ifndef AISREPAIR_WINDOW_HPP
#define AISREPAIR_WINDOW_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "aisrepair/regularize.hpp"
#include "aisrepair/types.hpp"

namespace aisrepair::window {

/// Per-step features: sog, gps_rotation, bathy zone ordinal (coast=0,
/// fishing=1, high_sea=2).
inline constexpr std::size_t kFrameSize = 3;
using Frame = std::array<double, kFrameSize>;

inline constexpr std::array<std::string_view, kFrameSize> kFeatureNames = {"sog", "gps_rotation",
                                                                           "bathy_zone"};

Frame raw_frame(const regularize::TraceSample& sample);

struct NormStats {
  Frame mean{};
  Frame stddev{};
};

/// Per-feature mean and population standard deviation.
/// Throws ValidationError for fewer than two frames or a constant feature.
NormStats fit_norm(std::span<const Frame> frames);

Frame apply_norm(const Frame& frame, const NormStats& stats);
Frame invert_norm(const Frame& frame, const NormStats& stats);

/// One CRBM input: the current frame plus the `n` preceding frames of the
/// same segment, normalized, with history flattened oldest first.
struct WindowedInstance {
  ShipId ship_id{};
  std::size_t t_index = 0;  // index of the current frame in ShipTrace::samples
  Frame frame{};
  std::vector<double> history;  // n * kFrameSize values
  std::optional<int> label_type;
  std::optional<double> label_power;
  int navstatus = 15;

  std::size_t window_length() const { return history.size() / kFrameSize; }
};

struct WindowSet {
  std::vector<WindowedInstance> instances;
  /// Samples consumed as history only, never encoded (cluster label 1).
  std::vector<std::size_t> burned;
};

/// Slides an (n+1)-step window over every segment. A segment of length L
/// yields max(0, L - n) instances; its first min(L, n) samples are burned.
WindowSet build_windows(const regularize::ShipTrace& trace, std::size_t n, const NormStats& stats);

struct ShipSplit {
  std::vector<ShipId> train;
  std::vector<ShipId> test;
};

/// Seeded random partition of ship ids. The test side holds
/// round(|ids| * test_fraction) ships, clamped so neither side is empty.
/// Throws ValidationError for fewer than two distinct ships or a fraction
/// outside (0, 1).
ShipSplit split_by_ship(std::vector<ShipId> ids, double test_fraction, std::uint64_t seed);

/// `ship_id,t_index,label_type,label_power,navstatus,f0..f{3(n+1)-1}`:
/// history rows oldest first, current frame last.
void write_windows_csv(std::ostream& out, std::span<const WindowedInstance> instances, std::size_t n);
std::vector<WindowedInstance> read_windows_csv(std::istream& in);

}  // namespace aisrepair::window

#endif  // AISREPAIR_WINDOW_HPP
