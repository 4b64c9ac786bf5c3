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


#include "aisrepair/synth.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"
#include "aisrepair/learners/metrics.hpp"

namespace aisrepair::synth {
namespace {

constexpr double kPortLat = 41.35;
constexpr double kPortLon = 2.15;
constexpr int kTickSeconds = 10;

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

double wrap360(double h) {
  h = std::fmod(h, 360.0);
  return h < 0.0 ? h + 360.0 : h;
}

double round_to(double v, double quantum) { return std::round(v / quantum) * quantum; }

struct Tick {
  double lat = 0.0;
  double lon = 0.0;
  double sog = 0.0;
  double heading = 0.0;
  Mode mode = Mode::kMoored;
  int navstatus = 15;
};

// Kinematic track builder on a fixed tick. Every leg stops early once the
// time budget is spent.
class Track {
 public:
  Track(double lat, double lon, double heading, std::size_t budget_ticks)
      : lat_(lat), lon_(lon), heading_(heading), budget_(budget_ticks) {}

  bool full() const { return ticks.size() >= budget_; }
  double lat() const { return lat_; }
  double lon() const { return lon_; }

  void moor(double seconds, int navstatus) {
    for (std::size_t k = 0; k < count(seconds) && !full(); ++k) {
      ticks.push_back({lat_, lon_, 0.0, heading_, Mode::kMoored, navstatus});
    }
  }

  // turn_rate in degrees per minute.
  void sail(double seconds, double speed, double heading, double turn_rate, Mode mode, int navstatus) {
    heading_ = wrap360(heading);
    for (std::size_t k = 0; k < count(seconds) && !full(); ++k) {
      step(speed, mode, navstatus);
      heading_ = wrap360(heading_ + turn_rate * kTickSeconds / 60.0);
    }
  }

  // Heads for (lat, lon) until within one tick of travel or out of time.
  void sail_to(double lat, double lon, double speed, Mode mode, int navstatus) {
    const double reach = speed * kTickSeconds / 3600.0 / 60.0;
    while (!full()) {
      const double dy = lat - lat_;
      const double dx = (lon - lon_) * std::cos(deg2rad(lat_));
      if (std::hypot(dx, dy) <= reach) break;
      heading_ = wrap360(std::atan2(dx, dy) * 180.0 / std::numbers::pi);
      step(speed, mode, navstatus);
    }
  }

  std::vector<Tick> ticks;

 private:
  static std::size_t count(double seconds) {
    return static_cast<std::size_t>(std::max(0.0, std::round(seconds / kTickSeconds)));
  }

  void step(double speed, Mode mode, int navstatus) {
    ticks.push_back({lat_, lon_, speed, heading_, mode, navstatus});
    const double nm = speed * kTickSeconds / 3600.0;
    lat_ += nm * std::cos(deg2rad(heading_)) / 60.0;
    lon_ += nm * std::sin(deg2rad(heading_)) / (60.0 * std::cos(deg2rad(lat_)));
  }

  double lat_, lon_, heading_;
  std::size_t budget_;
};

struct Profile {
  int type_lo, type_hi;
  double p_lo, p_hi;
  double v_lo, v_hi;
};

Profile profile(Archetype a) {
  switch (a) {
    case Archetype::kCargo: return {70, 79, 2000.0, 20000.0, 12.0, 20.0};
    case Archetype::kFerry: return {60, 69, 4000.0, 30000.0, 15.0, 25.0};
    case Archetype::kTrawler: return {30, 30, 300.0, 1500.0, 9.0, 12.0};
    case Archetype::kMoored: return {50, 59, 800.0, 4000.0, 10.0, 13.0};
  }
  return {};
}

struct ShipPlan {
  ShipTruth truth;
  std::vector<Tick> ticks;
  std::int64_t t0 = 0;  // epoch seconds of the first tick
};

ShipPlan plan_ship(const SynthFleetSpec& spec, std::size_t index, Archetype arch, std::int64_t start) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(index), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> N(0.0, 1.0);
  auto uni = [&](double a, double b) { return a + (b - a) * U(rng); };

  const Profile pr = profile(arch);
  ShipPlan plan;
  auto& t = plan.truth;
  t.imo = 9000001 + static_cast<std::int64_t>(index);
  t.mmsi = 224000001 + static_cast<std::int64_t>(index);
  t.archetype = arch;
  t.type_and_cargo = std::uniform_int_distribution<int>(pr.type_lo, pr.type_hi)(rng);
  t.size = U(rng);
  const double u = t.size;
  t.main_engine_kw = round_to(
      std::max(0.2 * pr.p_lo, pr.p_lo * std::pow(pr.p_hi / pr.p_lo, u) * (1.0 + spec.power_noise * N(rng))), 0.1);
  t.design_speed = round_to(std::max(1.0, pr.v_lo + (pr.v_hi - pr.v_lo) * u + 0.3 * N(rng)), 0.1);

  plan.t0 = start + static_cast<std::int64_t>(uni(0.0, 7200.0));
  const auto budget = static_cast<std::size_t>(spec.hours * 3600.0 / kTickSeconds);
  const double cruise = t.design_speed * (0.55 + 0.35 * u) * uni(0.97, 1.03);
  const bool stale = U(rng) < spec.stale_status;
  const int nav_moored = stale ? (U(rng) < 0.5 ? 0 : 15) : 5;
  const int nav_underway = stale ? nav_moored : 0;

  const double berth_lat = kPortLat + uni(-0.01, 0.01);
  const double berth_lon = kPortLon + uni(-0.01, 0.01);
  Track track(berth_lat, berth_lon, uni(0.0, 360.0), budget);

  switch (arch) {
    case Archetype::kMoored:
      track.moor(spec.hours * 3600.0, stale ? 15 : 5);
      break;
    case Archetype::kCargo: {
      track.moor(uni(0.5, 1.5) * 3600.0, nav_moored);
      track.sail(uni(600.0, 900.0), uni(3.0, 4.5), uni(80.0, 100.0), 0.0, Mode::kTransit, nav_underway);
      double heading = uni(70.0, 110.0);
      while (!track.full()) {
        track.sail(uni(1.0, 2.0) * 3600.0, cruise, heading, 0.0, Mode::kTransit, nav_underway);
        heading = std::clamp(heading + uni(-10.0, 10.0), 60.0, 120.0);
      }
      break;
    }
    case Archetype::kFerry: {
      const double hotel = uni(0.5, 1.0) * 3600.0;
      const double maneuver = 600.0;
      const double out = (spec.hours * 3600.0 - hotel - 2.0 * maneuver - 1800.0) / 2.0;
      const double heading = uni(110.0, 150.0);
      track.moor(hotel, nav_moored);
      track.sail(maneuver, uni(3.0, 4.5), heading, 0.0, Mode::kTransit, nav_underway);
      track.sail(out, cruise, heading, 0.0, Mode::kTransit, nav_underway);
      track.sail_to(berth_lat, berth_lon, cruise, Mode::kTransit, nav_underway);
      track.moor(spec.hours * 3600.0, nav_moored);
      break;
    }
    case Archetype::kTrawler: {
      track.moor(uni(0.3, 1.0) * 3600.0, 7);
      track.sail(600.0, uni(3.0, 4.5), 90.0, 0.0, Mode::kTransit, 7);
      const double ground_lat = kPortLat + uni(-0.15, 0.15);
      const double ground_lon = uni(2.35, 2.55);
      const std::size_t before = track.ticks.size();
      track.sail_to(ground_lat, ground_lon, cruise, Mode::kTransit, 7);
      const double outbound = static_cast<double>(track.ticks.size() - before) * kTickSeconds;
      const double used = static_cast<double>(track.ticks.size()) * kTickSeconds;
      double trawl = spec.hours * 3600.0 - used - outbound - 1800.0;
      double heading = uni(0.0, 360.0);
      while (trawl > 0.0 && !track.full()) {
        const double leg = std::min(trawl, uni(20.0, 40.0) * 60.0);
        const double rate = (U(rng) < 0.5 ? -1.0 : 1.0) * uni(2.0, 6.0);
        track.sail(leg, uni(2.5, 4.0), heading, rate, Mode::kTrawl, 7);
        heading = wrap360(heading + rate * leg / 60.0 + uni(60.0, 150.0));
        trawl -= leg;
      }
      track.sail_to(berth_lat, berth_lon, cruise, Mode::kTransit, 7);
      track.moor(spec.hours * 3600.0, 7);
      break;
    }
  }
  plan.ticks = std::move(track.ticks);
  return plan;
}

}  // namespace

std::string_view archetype_name(Archetype a) {
  switch (a) {
    case Archetype::kCargo: return "cargo";
    case Archetype::kFerry: return "ferry";
    case Archetype::kTrawler: return "trawler";
    case Archetype::kMoored: return "moored";
  }
  return "cargo";
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::kMoored: return "moored";
    case Mode::kTrawl: return "trawl";
    case Mode::kTransit: return "transit";
  }
  return "moored";
}

void SynthFleetSpec::validate() const {
  if (!(hours > 0.0)) throw ValidationError("synth: hours must be positive");
  if (!(sog_noise >= 0.0) || !(power_noise >= 0.0)) throw ValidationError("synth: noise must be non-negative");
  if (!(report_min_s >= kTickSeconds && report_max_s >= report_min_s)) {
    throw ValidationError(fmt::format("synth: report spacing must satisfy {} <= min <= max", kTickSeconds));
  }
  if (!(stale_status >= 0.0 && stale_status <= 1.0) || !(bad_rows >= 0.0 && bad_rows <= 1.0)) {
    throw ValidationError("synth: shares must lie in [0, 1]");
  }
  if (!parse_timestamp(start)) throw ValidationError(fmt::format("synth: bad start time '{}'", start));
}

SynthFleet generate_fleet(const SynthFleetSpec& spec) {
  spec.validate();
  const std::int64_t start = epoch_seconds(*parse_timestamp(spec.start));

  std::vector<Archetype> order;
  order.insert(order.end(), spec.cargo, Archetype::kCargo);
  order.insert(order.end(), spec.ferry, Archetype::kFerry);
  order.insert(order.end(), spec.trawler, Archetype::kTrawler);
  order.insert(order.end(), spec.moored, Archetype::kMoored);
  std::mt19937_64 shuffle_rng(spec.seed);
  std::shuffle(order.begin(), order.end(), shuffle_rng);

  SynthFleet fleet;
  const auto min_gap = static_cast<int>(std::ceil(spec.report_min_s / kTickSeconds));
  const auto max_gap = std::max(min_gap, static_cast<int>(std::floor(spec.report_max_s / kTickSeconds)));
  for (std::size_t i = 0; i < order.size(); ++i) {
    ShipPlan plan = plan_ship(spec, i, order[i], start);
    const auto& t = plan.truth;
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(i), 0xa150u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_int_distribution<int> moving_gap(min_gap, max_gap);
    std::uniform_int_distribution<int> moored_gap(6, 18);

    std::size_t last = 0;
    for (std::size_t k = 0; k < plan.ticks.size();) {
      const Tick& tk = plan.ticks[k];
      ingest::AisRecord r;
      r.mmsi = t.mmsi;
      r.imo = t.imo;
      r.name = fmt::format("SYN{:04d}", i + 1);
      r.timestamp = from_epoch_seconds(plan.t0 + static_cast<std::int64_t>(k) * kTickSeconds);
      r.lat = round_to(tk.lat, 1e-6);
      r.lon = round_to(tk.lon, 1e-6);
      r.sog = tk.sog > 0.0 ? round_to(std::max(0.0, tk.sog + spec.sog_noise * N(rng)), 0.1) : 0.0;
      r.cog = wrap360(round_to(tk.heading, 0.1));
      if (r.cog >= 360.0) r.cog = 0.0;
      r.heading = std::fmod(std::round(tk.heading), 360.0);
      r.navstatus = tk.navstatus;
      r.type_and_cargo = t.type_and_cargo;
      if (U(rng) < spec.bad_rows) r.lat = 95.0;
      fleet.ais.push_back(std::move(r));
      last = k;
      k += static_cast<std::size_t>(tk.sog > 0.0 ? moving_gap(rng) : moored_gap(rng));
    }

    const std::int64_t first_t = plan.t0;
    const std::int64_t last_t = plan.t0 + static_cast<std::int64_t>(last) * kTickSeconds;
    for (std::int64_t g = (first_t + 59) / 60 * 60; g <= last_t; g += 60) {
      const auto k = static_cast<std::size_t>((g - plan.t0) / kTickSeconds);
      fleet.modes.push_back({t.imo, from_epoch_seconds(g), plan.ticks[k].mode});
    }
    fleet.ships.push_back(t);
  }
  std::stable_sort(fleet.ais.begin(), fleet.ais.end(), [](const auto& a, const auto& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : *a.mmsi < *b.mmsi;
  });
  return fleet;
}

BathyGrid synthetic_bathymetry() {
  constexpr std::size_t ncols = 300;
  constexpr std::size_t nrows = 300;
  constexpr double cell = 0.02;
  std::vector<double> depth(ncols * nrows);
  for (std::size_t c = 0; c < ncols; ++c) {
    const double lon = (static_cast<double>(c) + 0.5) * cell;
    double d = 20.0;
    if (lon > 3.0) {
      d = 1000.0 + 1000.0 * (lon - 3.0);
    } else if (lon > 2.3) {
      d = 50.0 + 950.0 * (lon - 2.3) / 0.7;
    } else if (lon > 2.1) {
      d = 20.0 + 150.0 * (lon - 2.1);
    }
    for (std::size_t r = 0; r < nrows; ++r) depth[r * ncols + c] = std::round(d * 10.0) / 10.0;
  }
  return BathyGrid(ncols, nrows, 0.0, 38.0, cell, std::move(depth));
}

void write_fleet(const SynthFleet& fleet, const SynthPaths& paths) {
  {
    auto out = csv::open_output(paths.ais);
    out << "mmsi,imo,name,size_a,size_b,size_c,size_d,length,beam,draught,sog,cog,rot,heading,navstatus,"
           "typeofshipandcargo,lat,lon,timestamp\n";
    for (const auto& r : fleet.ais) {
      out << *r.mmsi << ',' << *r.imo << ',' << csv::escape(r.name) << ",,,,,,,," << csv::fixed6(r.sog) << ','
          << csv::fixed6(r.cog) << ",," << (r.heading ? csv::fixed6(*r.heading) : std::string()) << ','
          << r.navstatus << ',' << r.type_and_cargo << ',' << csv::fixed6(r.lat) << ',' << csv::fixed6(r.lon) << ','
          << format_timestamp(r.timestamp) << '\n';
    }
  }
  {
    auto out = csv::open_output(paths.meta);
    out << "imo,ship_type,main_engine_kw,design_speed\n";
    for (const auto& s : fleet.ships) {
      out << s.imo << ',' << learners::ship_type_of(s.type_and_cargo) << ',' << csv::fixed6(s.main_engine_kw) << ','
          << csv::fixed6(s.design_speed) << '\n';
    }
  }
  {
    auto out = csv::open_output(paths.truth);
    out << "ship_id,mmsi,archetype,typeofshipandcargo,size,main_engine_kw,design_speed\n";
    for (const auto& s : fleet.ships) {
      out << s.imo << ',' << s.mmsi << ',' << archetype_name(s.archetype) << ',' << s.type_and_cargo << ','
          << csv::fixed6(s.size) << ',' << csv::fixed6(s.main_engine_kw) << ',' << csv::fixed6(s.design_speed)
          << '\n';
    }
  }
  {
    auto out = csv::open_output(paths.truth_modes);
    out << "ship_id,timestamp,mode\n";
    for (const auto& m : fleet.modes) {
      out << m.imo << ',' << format_timestamp(m.timestamp) << ',' << mode_name(m.mode) << '\n';
    }
  }
  auto out = csv::open_output(paths.bathy);
  synthetic_bathymetry().write_esri_ascii(out);
}

std::vector<ModeSample> read_truth_modes(std::istream& in) {
  csv::Reader reader(in);
  const auto c_id = reader.require_column("ship_id");
  const auto c_t = reader.require_column("timestamp");
  const auto c_m = reader.require_column("mode");
  std::vector<ModeSample> out;
  std::vector<std::string> f;
  while (reader.next(f)) {
    const auto id = csv::parse_int(f.at(c_id));
    const auto ts = parse_timestamp(f.at(c_t));
    std::optional<Mode> mode;
    for (Mode m : {Mode::kMoored, Mode::kTrawl, Mode::kTransit}) {
      if (mode_name(m) == f.at(c_m)) mode = m;
    }
    if (!id || !ts || !mode) throw ValidationError(fmt::format("truth modes: bad row at line {}", reader.line_number()));
    out.push_back({*id, *ts, *mode});
  }
  return out;
}

}  // namespace aisrepair::synth
