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


#include "aisrepair/emissions.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair::emissions {

std::string_view mode_name(OperationalMode mode) {
  switch (mode) {
    case OperationalMode::kHoteling: return "hoteling";
    case OperationalMode::kManeuvering: return "maneuvering";
    case OperationalMode::kCruising: return "cruising";
  }
  return "hoteling";
}

std::string_view engine_name(Engine engine) { return engine == Engine::kMain ? "main" : "aux"; }

std::string_view pollutant_name(Pollutant pollutant) {
  switch (pollutant) {
    case Pollutant::kSOx: return "SOx";
    case Pollutant::kNOx: return "NOx";
    case Pollutant::kCO2: return "CO2";
    case Pollutant::kPM: return "PM";
  }
  return "CO2";
}

std::optional<Pollutant> pollutant_from_name(std::string_view name) {
  for (Pollutant p : kPollutants) {
    if (pollutant_name(p) == name) return p;
  }
  return std::nullopt;
}

void PowerParams::validate() const {
  if (!(v_safety >= 0.0)) throw ValidationError("v_safety must be non-negative");
  if (!(epsilon_p > 0.0 && epsilon_p <= 1.0)) throw ValidationError("epsilon_p must lie in (0, 1]");
  if (!(hotel_threshold >= 0.0 && hotel_threshold <= cruise_threshold)) {
    throw ValidationError("mode thresholds must satisfy 0 <= hotel <= cruise");
  }
}

OperationalMode mode_from_speed(double sog, const PowerParams& params) {
  if (sog < params.hotel_threshold) return OperationalMode::kHoteling;
  if (sog < params.cruise_threshold) return OperationalMode::kManeuvering;
  return OperationalMode::kCruising;
}

double transient_main_power(double sog, double design_speed, double installed_kw, const PowerParams& params) {
  if (!(design_speed > 0.0)) throw ValidationError(fmt::format("design speed {} is not positive", design_speed));
  if (!(installed_kw > 0.0)) throw ValidationError(fmt::format("installed power {} is not positive", installed_kw));
  const double ratio = sog / (design_speed + params.v_safety);
  const double p = ratio * ratio * ratio * params.epsilon_p * installed_kw;
  return std::clamp(p, 0.0, installed_kw);
}

double AuxPower::for_mode(OperationalMode mode) const {
  switch (mode) {
    case OperationalMode::kHoteling: return hotel_kw;
    case OperationalMode::kManeuvering: return maneuver_kw;
    case OperationalMode::kCruising: return cruise_kw;
  }
  return hotel_kw;
}

void AuxPowerTable::validate() const {
  auto check = [](const AuxPower& row) {
    if (!(row.cruise_kw >= 0.0 && row.maneuver_kw >= 0.0 && row.hotel_kw >= 0.0)) {
      throw ValidationError("auxiliary power must be non-negative");
    }
  };
  if (default_row) check(*default_row);
  for (const auto& [type, row] : by_type) check(row);
  for (const auto& [type, kw] : constant_kw) {
    if (!(kw >= 0.0)) throw ValidationError("auxiliary power must be non-negative");
  }
}

double aux_power(int ship_type, OperationalMode mode, const AuxPowerTable& table) {
  if (auto it = table.constant_kw.find(ship_type); it != table.constant_kw.end()) return it->second;
  if (auto it = table.by_type.find(ship_type); it != table.by_type.end()) return it->second.for_mode(mode);
  if (table.default_row) return table.default_row->for_mode(mode);
  throw ValidationError(fmt::format("no auxiliary power row for ship type {}", ship_type));
}

double EmissionFactors::get(Engine engine, Pollutant pollutant) const {
  const auto it = g_per_kwh.find({engine, pollutant});
  if (it == g_per_kwh.end()) {
    throw ValidationError(
        fmt::format("no emission factor for {} engine {}", engine_name(engine), pollutant_name(pollutant)));
  }
  return it->second;
}

void EmissionFactors::set(Engine engine, Pollutant pollutant, double value) { g_per_kwh[{engine, pollutant}] = value; }

void EmissionFactors::validate() const {
  for (Engine e : {Engine::kMain, Engine::kAux}) {
    for (Pollutant p : kPollutants) {
      if (!(get(e, p) >= 0.0)) {
        throw ValidationError(fmt::format("emission factor {} {} is negative", engine_name(e), pollutant_name(p)));
      }
    }
  }
}

EmissionFactors EmissionFactors::placeholder() {
  EmissionFactors f;
  f.set(Engine::kMain, Pollutant::kSOx, 0.42);
  f.set(Engine::kMain, Pollutant::kNOx, 14.7);
  f.set(Engine::kMain, Pollutant::kCO2, 660.0);
  f.set(Engine::kMain, Pollutant::kPM, 0.18);
  f.set(Engine::kAux, Pollutant::kSOx, 0.45);
  f.set(Engine::kAux, Pollutant::kNOx, 13.0);
  f.set(Engine::kAux, Pollutant::kCO2, 690.0);
  f.set(Engine::kAux, Pollutant::kPM, 0.2);
  return f;
}

double step_emission(double power_kw, double ef_g_per_kwh, double dt_hours) {
  return power_kw * ef_g_per_kwh * dt_hours;
}

Micrograms to_micrograms(double grams) {
  if (!std::isfinite(grams)) throw ValidationError("non-finite emission amount");
  return std::llround(grams * 1e6);
}

std::string format_grams(Micrograms ug) {
  const bool negative = ug < 0;
  const auto mag = negative ? -static_cast<unsigned long long>(ug) : static_cast<unsigned long long>(ug);
  return fmt::format("{}{}.{:06d}", negative ? "-" : "", mag / 1000000ULL, mag % 1000000ULL);
}

std::vector<EmissionRecord> estimate_trace(const regularize::ShipTrace& trace, const ingest::ShipMeta* meta,
                                           const EmissionFactors& factors, const AuxPowerTable& aux,
                                           const PowerParams& params) {
  if (meta == nullptr) {
    throw ValidationError(fmt::format("ship {} has no engine data; impute power and design speed first",
                                      to_string(trace.ship_id)));
  }
  if (!(meta->main_engine_kw > 0.0) || !(meta->design_speed > 0.0)) {
    throw ValidationError(fmt::format("ship {} needs positive main_engine_kw and design_speed; impute them first",
                                      to_string(trace.ship_id)));
  }
  const double dt = static_cast<double>(trace.step_seconds) / 3600.0;
  std::vector<EmissionRecord> out;
  out.reserve(trace.samples.size() * 2 * kPollutants.size());
  for (const auto& s : trace.samples) {
    const double main_kw = transient_main_power(s.sog, meta->design_speed, meta->main_engine_kw, params);
    const double aux_kw = aux_power(meta->ship_type, mode_from_speed(s.sog, params), aux);
    for (Engine e : {Engine::kMain, Engine::kAux}) {
      const double kw = e == Engine::kMain ? main_kw : aux_kw;
      for (Pollutant p : kPollutants) {
        out.push_back({trace.ship_id, s.timestamp, s.lat, s.lon, e, p,
                       to_micrograms(step_emission(kw, factors.get(e, p), dt))});
      }
    }
  }
  return out;
}

std::map<std::string, Micrograms> aggregate_micrograms(std::span<const EmissionRecord> records,
                                                       const AggregateOptions& options) {
  if (options.group_by == GroupBy::kGridCell && !(options.cell_degrees > 0.0)) {
    throw ValidationError("grid cell size must be positive");
  }
  std::map<std::string, Micrograms> out;
  for (const auto& r : records) {
    if (options.engine && r.engine != *options.engine) continue;
    std::string key;
    switch (options.group_by) {
      case GroupBy::kPollutant: key = pollutant_name(r.pollutant); break;
      case GroupBy::kShip: key = to_string(r.ship_id); break;
      case GroupBy::kGridCell: {
        const double c = options.cell_degrees;
        key = csv::fixed6(std::floor(r.lat / c) * c) + "," + csv::fixed6(std::floor(r.lon / c) * c);
        break;
      }
    }
    out[key] += r.micrograms;
  }
  return out;
}

std::map<std::string, double> aggregate(std::span<const EmissionRecord> records, const AggregateOptions& options) {
  std::map<std::string, double> out;
  for (const auto& [key, ug] : aggregate_micrograms(records, options)) out.emplace(key, static_cast<double>(ug) / 1e12);
  return out;
}

std::vector<CoverageRow> compare_scenarios(const Totals& real,
                                           std::span<const std::pair<std::string, Totals>> scenarios,
                                           const std::string& real_name) {
  std::vector<CoverageRow> rows;
  auto add = [&](const std::string& name, const Totals& totals) {
    if (totals.size() != real.size()) {
      throw ValidationError(fmt::format("scenario '{}' reports {} pollutants, real reports {}", name,
                                        totals.size(), real.size()));
    }
    for (const auto& [pollutant, real_t] : real) {
      const auto it = totals.find(pollutant);
      if (it == totals.end()) {
        throw ValidationError(fmt::format("scenario '{}' has no total for {}", name, pollutant));
      }
      CoverageRow row{name, pollutant, it->second, std::nullopt, real_t - it->second};
      if (real_t != 0.0) row.coverage_pct = 100.0 * it->second / real_t;
      rows.push_back(std::move(row));
    }
  };
  add(real_name, real);
  for (const auto& [name, totals] : scenarios) add(name, totals);
  return rows;
}

std::vector<std::pair<std::string, Totals>> read_scenario_totals(std::istream& in) {
  csv::Reader reader(in);
  const auto c_s = reader.require_column("scenario");
  const auto c_p = reader.require_column("pollutant");
  const auto c_t = reader.require_column("tonnes");
  std::vector<std::pair<std::string, Totals>> out;
  std::vector<std::string> f;
  while (reader.next(f)) {
    const auto tonnes = csv::parse_double(f.at(c_t));
    if (!tonnes || f.at(c_s).empty() || f.at(c_p).empty()) {
      throw ValidationError(fmt::format("scenario totals: bad row at line {}", reader.line_number()));
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.first == f[c_s]; });
    if (it == out.end()) {
      out.emplace_back(f[c_s], Totals{});
      it = std::prev(out.end());
    }
    if (!it->second.emplace(f[c_p], *tonnes).second) {
      throw ValidationError(fmt::format("scenario totals: repeated {} for '{}'", f[c_p], f[c_s]));
    }
  }
  return out;
}

void write_scenario_totals(std::ostream& out, std::span<const std::pair<std::string, Totals>> scenarios) {
  out << "scenario,pollutant,tonnes\n";
  for (const auto& [name, totals] : scenarios) {
    for (const auto& [pollutant, t] : totals) out << csv::escape(name) << ',' << pollutant << ',' << csv::fixed6(t) << '\n';
  }
}

void write_scenario_report(std::ostream& out, std::span<const CoverageRow> rows) {
  out << "scenario,pollutant,tonnes,coverage_pct\n";
  for (const auto& r : rows) {
    out << csv::escape(r.scenario) << ',' << r.pollutant << ',' << csv::fixed6(r.tonnes) << ','
        << (r.coverage_pct ? csv::fixed6(*r.coverage_pct) : std::string("NA")) << '\n';
  }
}

void write_emissions_csv(std::ostream& out, std::span<const EmissionRecord> records) {
  out << "ship_id,timestamp,lat,lon,engine,pollutant,grams\n";
  for (const auto& r : records) {
    out << to_int(r.ship_id) << ',' << format_timestamp(r.timestamp) << ',' << csv::fixed6(r.lat) << ','
        << csv::fixed6(r.lon) << ',' << engine_name(r.engine) << ',' << pollutant_name(r.pollutant) << ','
        << format_grams(r.micrograms) << '\n';
  }
}

double SpeedPowerLaw::design_speed(double installed_kw) const {
  if (!(installed_kw > 0.0)) throw ValidationError("installed power must be positive");
  return a * std::pow(installed_kw, b);
}

SpeedPowerLaw fit_speed_power_law(std::span<const ingest::ShipMeta> ships) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : ships) {
    if (s.main_engine_kw > 0.0 && s.design_speed > 0.0) {
      pts.emplace_back(std::log(s.main_engine_kw), std::log(s.design_speed));
    }
  }
  if (pts.empty()) throw ValidationError("speed/power fit: no ships with positive power and speed");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  SpeedPowerLaw law;
  if (sxx <= 1e-12 * static_cast<double>(pts.size())) {
    double mean = 0.0;
    for (const auto& [x, y] : pts) mean += std::exp(y);
    law.a = mean / static_cast<double>(pts.size());
    law.b = 0.0;
    return law;
  }
  law.b = sxy / sxx;
  law.a = std::exp(my - law.b * mx);
  return law;
}

}  // namespace aisrepair::emissions
