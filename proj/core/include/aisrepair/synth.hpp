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


#ifndef AISREPAIR_SYNTH_HPP
#define AISREPAIR_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aisrepair/bathy.hpp"
#include "aisrepair/ingest.hpp"
#include "aisrepair/timeutil.hpp"

namespace aisrepair::synth {

enum class Archetype { kCargo, kFerry, kTrawler, kMoored };

std::string_view archetype_name(Archetype a);

/// Ground-truth activity for a stretch of track.
enum class Mode { kMoored, kTrawl, kTransit };

std::string_view mode_name(Mode m);

struct SynthFleetSpec {
  std::size_t cargo = 70;
  std::size_t ferry = 40;
  std::size_t trawler = 60;
  std::size_t moored = 30;
  double hours = 12.0;            // track length per ship
  double sog_noise = 0.1;         // knots, standard deviation
  double power_noise = 0.05;      // relative, standard deviation
  double report_min_s = 20.0;     // AIS report spacing while moving
  double report_max_s = 40.0;
  double stale_status = 0.1;      // share of merchant ships never updating navstatus
  double bad_rows = 0.0;          // share of reports corrupted into rejects
  std::string start = "2014-04-14 00:00:00";
  std::uint64_t seed = 1;

  std::size_t total() const { return cargo + ferry + trawler + moored; }
  void validate() const;
};

struct ShipTruth {
  std::int64_t imo = 0;
  std::int64_t mmsi = 0;
  Archetype archetype = Archetype::kCargo;
  int type_and_cargo = 70;
  double size = 0.0;  // latent size in [0, 1]
  double main_engine_kw = 0.0;
  double design_speed = 0.0;
};

struct ModeSample {
  std::int64_t imo = 0;
  Timestamp timestamp{};
  Mode mode = Mode::kMoored;
};

struct SynthFleet {
  std::vector<ingest::AisRecord> ais;  // rows in output order
  std::vector<ShipTruth> ships;
  std::vector<ModeSample> modes;       // ground truth on the 60 s epoch grid
};

/// Deterministic fleet around a port at (41.35 N, 2.15 E). Installed power
/// rises with latent size within each archetype, and so do design speed and
/// the cruise fraction of design speed, which is what ties power to the
/// observable speed profile.
SynthFleet generate_fleet(const SynthFleetSpec& spec);

/// Depth grid covering lat 38..44, lon 0..6: shallow coast west of about
/// 2.3 E, the fishing shelf to 3.0 E, high sea beyond.
BathyGrid synthetic_bathymetry();

struct SynthPaths {
  std::filesystem::path ais;
  std::filesystem::path meta;
  std::filesystem::path bathy;
  std::filesystem::path truth;
  std::filesystem::path truth_modes;
};

/// Writes ais.csv (full AIS column set), meta.csv, bathy.asc, truth.csv and
/// truth_modes.csv.
void write_fleet(const SynthFleet& fleet, const SynthPaths& paths);

/// `ship_id,timestamp,mode` as written by write_fleet.
std::vector<ModeSample> read_truth_modes(std::istream& in);

}  // namespace aisrepair::synth

#endif  // AISREPAIR_SYNTH_HPP
