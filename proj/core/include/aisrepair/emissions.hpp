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


#ifndef AISREPAIR_EMISSIONS_HPP
#define AISREPAIR_EMISSIONS_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aisrepair/ingest.hpp"
#include "aisrepair/regularize.hpp"
#include "aisrepair/timeutil.hpp"
#include "aisrepair/types.hpp"

namespace aisrepair::emissions {

enum class OperationalMode { kHoteling, kManeuvering, kCruising };
enum class Engine { kMain, kAux };
enum class Pollutant { kSOx, kNOx, kCO2, kPM };

inline constexpr std::array<Pollutant, 4> kPollutants = {Pollutant::kSOx, Pollutant::kNOx, Pollutant::kCO2,
                                                         Pollutant::kPM};

std::string_view mode_name(OperationalMode mode);
std::string_view engine_name(Engine engine);
std::string_view pollutant_name(Pollutant pollutant);
std::optional<Pollutant> pollutant_from_name(std::string_view name);

struct PowerParams {
  double v_safety = 0.5;  // knots
  double epsilon_p = 0.8;
  double hotel_threshold = 1.0;   // below: hoteling
  double cruise_threshold = 5.0;  // at or above: cruising

  /// Throws ValidationError unless v_safety >= 0, 0 < epsilon_p <= 1 and
  /// 0 <= hotel_threshold <= cruise_threshold.
  void validate() const;
};

/// A threshold speed belongs to the faster mode.
OperationalMode mode_from_speed(double sog, const PowerParams& params);

/// (sog / (design_speed + v_safety))^3 * epsilon_p * installed_kw, then
/// clamped to [0, installed_kw]. Throws ValidationError for non-positive
/// design speed or installed power.
double transient_main_power(double sog, double design_speed, double installed_kw, const PowerParams& params);

struct AuxPower {
  double cruise_kw = 750.0;
  double maneuver_kw = 1250.0;
  double hotel_kw = 1000.0;

  double for_mode(OperationalMode mode) const;
};

/// Auxiliary-engine load by ship type digit. Types listed in `constant_kw`
/// draw that load in every mode.
struct AuxPowerTable {
  std::optional<AuxPower> default_row = AuxPower{};
  std::map<int, AuxPower> by_type;
  std::map<int, double> constant_kw;

  void validate() const;
};

/// Throws ValidationError for a type with no row when there is no default.
double aux_power(int ship_type, OperationalMode mode, const AuxPowerTable& table);

/// Grams of pollutant per kWh of engine work.
struct EmissionFactors {
  std::map<std::pair<Engine, Pollutant>, double> g_per_kwh;

  /// Throws ValidationError for a missing pair.
  double get(Engine engine, Pollutant pollutant) const;
  void set(Engine engine, Pollutant pollutant, double value);
  /// Every pair present and non-negative.
  void validate() const;
  /// Placeholder factors, not measured values. Override them in the config.
  static EmissionFactors placeholder();
};

/// power_kw * ef * dt_hours.
double step_emission(double power_kw, double ef_g_per_kwh, double dt_hours);

/// Gram amounts are carried as integer micrograms so that sums do not depend
/// on summation order.
using Micrograms = std::int64_t;
Micrograms to_micrograms(double grams);
/// Exact decimal rendering of a microgram count in grams ("12.000345").
std::string format_grams(Micrograms ug);

struct EmissionRecord {
  ShipId ship_id{};
  Timestamp timestamp{};
  double lat = 0.0;
  double lon = 0.0;
  Engine engine = Engine::kMain;
  Pollutant pollutant = Pollutant::kCO2;
  Micrograms micrograms = 0;

  double grams() const { return static_cast<double>(micrograms) / 1e6; }
};

/// Per sample: main-engine power from the transient formula and auxiliary
/// power from the speed mode and `meta.ship_type`, each multiplied by every
/// pollutant factor over one grid step. Throws ValidationError when `meta`
/// is null or lacks positive power and design speed.
std::vector<EmissionRecord> estimate_trace(const regularize::ShipTrace& trace, const ingest::ShipMeta* meta,
                                           const EmissionFactors& factors, const AuxPowerTable& aux,
                                           const PowerParams& params);

enum class GroupBy { kPollutant, kShip, kGridCell };

struct AggregateOptions {
  GroupBy group_by = GroupBy::kPollutant;
  double cell_degrees = 0.1;
  std::optional<Engine> engine;  // restrict to one engine
};

/// Tonnes per group. Pollutant keys are pollutant names, ship keys the id,
/// grid keys "lat0,lon0" of the cell's south-west corner.
std::map<std::string, double> aggregate(std::span<const EmissionRecord> records, const AggregateOptions& options);

/// Same reduction in exact micrograms.
std::map<std::string, Micrograms> aggregate_micrograms(std::span<const EmissionRecord> records,
                                                       const AggregateOptions& options);

using Totals = std::map<std::string, double>;  // pollutant -> tonnes

struct CoverageRow {
  std::string scenario;
  std::string pollutant;
  double tonnes = 0.0;
  std::optional<double> coverage_pct;  // undefined when the real total is 0
  double gap_tonnes = 0.0;              // real - scenario
};

/// Coverage of each scenario relative to the real totals, real first.
/// Every scenario must report the same pollutants as the real totals.
std::vector<CoverageRow> compare_scenarios(const Totals& real,
                                           std::span<const std::pair<std::string, Totals>> scenarios,
                                           const std::string& real_name = "real");

/// Reads `scenario,pollutant,tonnes`, keeping scenarios in first-seen order.
std::vector<std::pair<std::string, Totals>> read_scenario_totals(std::istream& in);
void write_scenario_totals(std::ostream& out, std::span<const std::pair<std::string, Totals>> scenarios);
/// `scenario,pollutant,tonnes,coverage_pct`; undefined coverage is written as NA.
void write_scenario_report(std::ostream& out, std::span<const CoverageRow> rows);
/// `ship_id,timestamp,lat,lon,engine,pollutant,grams`
void write_emissions_csv(std::ostream& out, std::span<const EmissionRecord> records);

/// design_speed = a * installed_kw^b, fitted by least squares in log space.
struct SpeedPowerLaw {
  double a = 1.0;
  double b = 0.0;

  double design_speed(double installed_kw) const;
};

/// Needs at least one ship; with fewer than two distinct powers the fit
/// degenerates to the mean speed (b = 0).
SpeedPowerLaw fit_speed_power_law(std::span<const ingest::ShipMeta> ships);

}  // namespace aisrepair::emissions

#endif  // AISREPAIR_EMISSIONS_HPP
