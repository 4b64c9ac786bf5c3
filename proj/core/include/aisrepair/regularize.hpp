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

#ifndef AISREPAIR_REGULARIZE_HPP
#define AISREPAIR_REGULARIZE_HPP

#include <chrono>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "aisrepair/bathy.hpp"
#include "aisrepair/ingest.hpp"
#include "aisrepair/timeutil.hpp"
#include "aisrepair/types.hpp"

namespace aisrepair::regularize {

/// Ordered zones; the enum value is the ordinal fed to the CRBM.
enum class BathyZone : int { kCoast = 0, kFishing = 1, kHighSea = 2 };

std::string_view zone_name(BathyZone zone);
std::optional<BathyZone> zone_from_name(std::string_view name);

struct TraceSample {
  Timestamp timestamp{};
  double lat = 0.0;
  double lon = 0.0;
  double dlat = 0.0;  // degrees per step
  double dlon = 0.0;
  double sog = 0.0;
  double gps_rotation = 0.0;  // (-180, 180]
  BathyZone bathy_zone = BathyZone::kHighSea;
  int navstatus = 15;
  int ship_type = 0;  // first digit of typeofshipandcargo
};

/// Fixed-step series. Samples inside a segment are exactly `step_seconds`
/// apart; a new segment starts wherever the raw data had a gap of at least
/// the maximum interpolation gap.
struct ShipTrace {
  ShipId ship_id{};
  std::int64_t step_seconds = 60;
  std::vector<TraceSample> samples;
  std::vector<std::size_t> segment_starts;

  std::size_t segment_count() const { return segment_starts.size(); }
  /// Half-open sample index range of segment `i`.
  std::pair<std::size_t, std::size_t> segment(std::size_t i) const;
};

/// Epoch-aligned grid: the first point is `start` rounded up to a multiple of
/// `step`, every point is <= `end`. Empty when start > end or no aligned
/// point falls inside the range.
std::vector<Timestamp> make_timegrid(Timestamp start, Timestamp end, std::chrono::seconds step);

/// Linear interpolation of lat, lon and sog onto the epoch grid. Raw pairs at
/// least `max_gap` apart split the output into segments and are never
/// interpolated across. navstatus and ship type are carried forward from the
/// latest raw record at or before each grid point.
ShipTrace interpolate_trace(const ingest::RawTrace& raw, std::chrono::seconds step,
                            std::chrono::seconds max_gap = std::chrono::hours{72});

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

/// Great-circle initial bearing in [0, 360), 0 = north, 90 = east.
/// Throws ValidationError("degenerate pair") when the points coincide.
double bearing(LatLon from, LatLon to);

/// Signed smallest angle from `prev` to `cur`, in (-180, 180].
double relative_rotation(double bearing_prev, double bearing_cur);

struct ZoneLookup {
  BathyZone zone = BathyZone::kHighSea;
  bool flagged = false;  // depth was negative (land)
};

/// depth < 50 m: coast; 50..1000 m inclusive: fishing; > 1000 m: high sea.
ZoneLookup bathy_zone(double depth_m);

/// Displacements below this many degrees count as no movement.
inline constexpr double kStationaryDegrees = 1e-7;

struct FeatureReport {
  std::size_t out_of_grid = 0;
  std::size_t on_land = 0;
};

/// Fills dlat/dlon, gps_rotation and bathy_zone in place of the inputs.
/// First sample of each segment gets zero deltas; the first two get zero
/// rotation. Positions outside the grid become high sea and are counted.
ShipTrace derive_features(ShipTrace trace, const BathyGrid& grid, FeatureReport* report = nullptr);

/// `ship_id,timestamp,lat,lon,dlat,dlon,sog,gps_rotation,bathy_zone,navstatus,ship_type`
void write_traces_csv(std::ostream& out, std::span<const ShipTrace> traces);

/// Reads traces written by write_traces_csv. Segments are recovered from
/// timestamp gaps larger than `step_seconds`.
std::map<ShipId, ShipTrace> read_traces_csv(std::istream& in, std::int64_t step_seconds);

}  // namespace aisrepair::regularize

#endif  // AISREPAIR_REGULARIZE_HPP
