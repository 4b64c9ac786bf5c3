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

#include "aisrepair/regularize.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <numbers>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"
#include "aisrepair/learners/metrics.hpp"

namespace aisrepair::regularize {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

double lerp(double v1, double v2, double t1, double t2, double t) {
  return v1 + (v2 - v1) * (t - t1) / (t2 - t1);
}

}  // namespace

std::string_view zone_name(BathyZone zone) {
  switch (zone) {
    case BathyZone::kCoast:
      return "coast";
    case BathyZone::kFishing:
      return "fishing";
    case BathyZone::kHighSea:
      return "high_sea";
  }
  return "high_sea";
}

std::optional<BathyZone> zone_from_name(std::string_view name) {
  if (name == "coast") return BathyZone::kCoast;
  if (name == "fishing") return BathyZone::kFishing;
  if (name == "high_sea") return BathyZone::kHighSea;
  return std::nullopt;
}

std::pair<std::size_t, std::size_t> ShipTrace::segment(std::size_t i) const {
  const std::size_t begin = segment_starts.at(i);
  const std::size_t end = i + 1 < segment_starts.size() ? segment_starts[i + 1] : samples.size();
  return {begin, end};
}

std::vector<Timestamp> make_timegrid(Timestamp start, Timestamp end, std::chrono::seconds step) {
  std::vector<Timestamp> grid;
  const std::int64_t s = step.count();
  if (s <= 0) throw ValidationError("time grid step must be positive");
  if (start > end) return grid;
  const std::int64_t t0 = epoch_seconds(start);
  const std::int64_t first = -floor_div(-t0, s) * s;  // ceil to a multiple of step
  const std::int64_t last = epoch_seconds(end);
  for (std::int64_t t = first; t <= last; t += s) grid.push_back(from_epoch_seconds(t));
  return grid;
}

ShipTrace interpolate_trace(const ingest::RawTrace& raw, std::chrono::seconds step,
                            std::chrono::seconds max_gap) {
  ShipTrace out;
  out.ship_id = raw.ship_id;
  out.step_seconds = step.count();
  const auto& recs = raw.records;
  if (recs.size() < 2) {
    spdlog::warn("ship {}: {} raw records, nothing to interpolate", to_string(raw.ship_id), recs.size());
    out.segment_starts.push_back(0);
    return out;
  }

  std::size_t seg_begin = 0;
  while (seg_begin < recs.size()) {
    std::size_t seg_end = seg_begin;  // inclusive
    while (seg_end + 1 < recs.size() && recs[seg_end + 1].timestamp - recs[seg_end].timestamp < max_gap) {
      ++seg_end;
    }
    const auto grid = make_timegrid(recs[seg_begin].timestamp, recs[seg_end].timestamp, step);
    if (!grid.empty()) {
      out.segment_starts.push_back(out.samples.size());
      std::size_t j = seg_begin;
      for (const auto t : grid) {
        while (j < seg_end && recs[j + 1].timestamp <= t) ++j;
        const auto& a = recs[j];
        TraceSample s;
        s.timestamp = t;
        s.navstatus = a.navstatus;
        s.ship_type = learners::ship_type_of(a.type_and_cargo);
        if (t == a.timestamp) {
          s.lat = a.lat;
          s.lon = a.lon;
          s.sog = a.sog;
        } else {
          const auto& b = recs[j + 1];
          const auto t1 = static_cast<double>(epoch_seconds(a.timestamp));
          const auto t2 = static_cast<double>(epoch_seconds(b.timestamp));
          const auto tt = static_cast<double>(epoch_seconds(t));
          s.lat = lerp(a.lat, b.lat, t1, t2, tt);
          s.lon = lerp(a.lon, b.lon, t1, t2, tt);
          s.sog = std::max(0.0, lerp(a.sog, b.sog, t1, t2, tt));
        }
        out.samples.push_back(s);
      }
    }
    seg_begin = seg_end + 1;
  }
  if (out.segment_starts.empty()) out.segment_starts.push_back(0);
  return out;
}

double bearing(LatLon from, LatLon to) {
  if (from.lat == to.lat && from.lon == to.lon) throw ValidationError("degenerate pair");
  const double phi1 = from.lat * kDeg;
  const double phi2 = to.lat * kDeg;
  const double dl = (to.lon - from.lon) * kDeg;
  const double y = std::sin(dl) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dl);
  double deg = std::atan2(y, x) / kDeg;
  if (deg < 0.0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

double relative_rotation(double bearing_prev, double bearing_cur) {
  double d = std::fmod(bearing_cur - bearing_prev, 360.0);
  if (d <= -180.0) d += 360.0;
  if (d > 180.0) d -= 360.0;
  return d;
}

ZoneLookup bathy_zone(double depth_m) {
  if (depth_m < 0.0) return {BathyZone::kCoast, true};
  if (depth_m < 50.0) return {BathyZone::kCoast, false};
  if (depth_m <= 1000.0) return {BathyZone::kFishing, false};
  return {BathyZone::kHighSea, false};
}

ShipTrace derive_features(ShipTrace trace, const BathyGrid& grid, FeatureReport* report) {
  FeatureReport local;
  for (std::size_t seg = 0; seg < trace.segment_count(); ++seg) {
    const auto [begin, end] = trace.segment(seg);
    std::optional<double> last_bearing;
    for (std::size_t i = begin; i < end; ++i) {
      auto& s = trace.samples[i];
      s.dlat = 0.0;
      s.dlon = 0.0;
      s.gps_rotation = 0.0;
      if (i > begin) {
        const auto& p = trace.samples[i - 1];
        s.dlat = s.lat - p.lat;
        s.dlon = s.lon - p.lon;
        if (std::hypot(s.dlat, s.dlon) >= kStationaryDegrees) {
          const double b = bearing({p.lat, p.lon}, {s.lat, s.lon});
          if (last_bearing) s.gps_rotation = relative_rotation(*last_bearing, b);
          last_bearing = b;
        }
      }
    }
  }
  for (auto& s : trace.samples) {
    if (auto depth = grid.depth_at(s.lat, s.lon)) {
      const auto z = bathy_zone(*depth);
      s.bathy_zone = z.zone;
      if (z.flagged) ++local.on_land;
    } else {
      s.bathy_zone = BathyZone::kHighSea;
      ++local.out_of_grid;
    }
  }
  if (report) {
    report->out_of_grid += local.out_of_grid;
    report->on_land += local.on_land;
  }
  return trace;
}

void write_traces_csv(std::ostream& out, std::span<const ShipTrace> traces) {
  out << "ship_id,timestamp,lat,lon,dlat,dlon,sog,gps_rotation,bathy_zone,navstatus,ship_type\n";
  for (const auto& t : traces) {
    const auto id = to_string(t.ship_id);
    for (const auto& s : t.samples) {
      out << id << ',' << format_timestamp(s.timestamp) << ',' << csv::fixed6(s.lat) << ','
          << csv::fixed6(s.lon) << ',' << csv::fixed6(s.dlat) << ',' << csv::fixed6(s.dlon) << ','
          << csv::fixed6(s.sog) << ',' << csv::fixed6(s.gps_rotation) << ',' << zone_name(s.bathy_zone)
          << ',' << s.navstatus << ',' << s.ship_type << '\n';
    }
  }
}

std::map<ShipId, ShipTrace> read_traces_csv(std::istream& in, std::int64_t step_seconds) {
  csv::Reader reader(in);
  const auto c_id = reader.require_column("ship_id");
  const auto c_ts = reader.require_column("timestamp");
  const auto c_lat = reader.require_column("lat");
  const auto c_lon = reader.require_column("lon");
  const auto c_dlat = reader.require_column("dlat");
  const auto c_dlon = reader.require_column("dlon");
  const auto c_sog = reader.require_column("sog");
  const auto c_rot = reader.require_column("gps_rotation");
  const auto c_zone = reader.require_column("bathy_zone");
  const auto c_nav = reader.require_column("navstatus");
  const auto c_type = reader.require_column("ship_type");

  std::map<ShipId, ShipTrace> out;
  std::vector<std::string> row;
  auto bad = [&](const char* what) {
    return ValidationError(fmt::format("trace csv line {}: bad {}", reader.line_number(), what));
  };
  while (reader.next(row)) {
    if (row.size() != reader.header().size()) throw bad("field count");
    auto id = csv::parse_int(row[c_id]);
    auto ts = parse_timestamp(row[c_ts]);
    auto zone = zone_from_name(row[c_zone]);
    if (!id) throw bad("ship_id");
    if (!ts) throw bad("timestamp");
    if (!zone) throw bad("bathy_zone");
    auto num = [&](std::size_t c, const char* what) {
      auto v = csv::parse_double(row[c]);
      if (!v) throw bad(what);
      return *v;
    };
    TraceSample s;
    s.timestamp = *ts;
    s.lat = num(c_lat, "lat");
    s.lon = num(c_lon, "lon");
    s.dlat = num(c_dlat, "dlat");
    s.dlon = num(c_dlon, "dlon");
    s.sog = num(c_sog, "sog");
    s.gps_rotation = num(c_rot, "gps_rotation");
    s.bathy_zone = *zone;
    s.navstatus = static_cast<int>(num(c_nav, "navstatus"));
    s.ship_type = static_cast<int>(num(c_type, "ship_type"));

    auto& trace = out[ShipId{*id}];
    trace.ship_id = ShipId{*id};
    trace.step_seconds = step_seconds;
    if (trace.samples.empty()) {
      trace.segment_starts.push_back(0);
    } else {
      const auto gap = epoch_seconds(s.timestamp) - epoch_seconds(trace.samples.back().timestamp);
      if (gap <= 0) throw bad("timestamp order");
      if (gap != step_seconds) trace.segment_starts.push_back(trace.samples.size());
    }
    trace.samples.push_back(s);
  }
  return out;
}

}  // namespace aisrepair::regularize
