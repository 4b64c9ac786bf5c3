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

#include "aisrepair/ingest.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <json.hpp>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair::ingest {
namespace {

constexpr std::array<const char*, 19> kFields = {
    "mmsi", "imo",    "name",   "timestamp", "lat",    "lon",    "sog",    "cog",    "rot",  "heading",
    "navstatus", "typeofshipandcargo", "size_a", "size_b", "size_c", "size_d", "length", "beam", "draught"};

// AIS "not available" sentinels. Heading uses 511, rejected by the range check.
constexpr double kSogUnavailable = 102.3;
constexpr int kRotUnavailable = -128;

struct ColumnIndex {
  std::map<std::string, std::size_t> at;

  std::optional<std::string_view> cell(const std::vector<std::string>& row, const char* field) const {
    auto it = at.find(field);
    if (it == at.end() || it->second >= row.size()) return std::nullopt;
    return std::string_view(row[it->second]);
  }
};

std::optional<double> opt_double(const ColumnIndex& idx, const std::vector<std::string>& row,
                                 const char* field) {
  auto c = idx.cell(row, field);
  return c ? csv::parse_double(*c) : std::nullopt;
}

std::optional<std::int64_t> opt_int(const ColumnIndex& idx, const std::vector<std::string>& row,
                                    const char* field) {
  auto c = idx.cell(row, field);
  return c ? csv::parse_int(*c) : std::nullopt;
}

bool cell_present(const ColumnIndex& idx, const std::vector<std::string>& row, const char* field) {
  auto c = idx.cell(row, field);
  return c && !csv::is_missing(*c);
}

}  // namespace

AisSchema AisSchema::defaults() {
  AisSchema s;
  for (const char* f : kFields) s.columns[f] = f;
  return s;
}

AisSchema AisSchema::from_file(const std::filesystem::path& path) {
  auto in = csv::open_input(path);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError(fmt::format("schema '{}': {}", path.string(), e.what()));
  }
  AisSchema s = defaults();
  if (auto cols = tree.get_child_optional("columns")) {
    for (const auto& [key, value] : *cols) {
      if (!s.columns.contains(key)) {
        throw ValidationError(fmt::format("schema '{}': unknown field '{}'", path.string(), key));
      }
      s.columns[key] = value.get_value<std::string>();
    }
  }
  return s;
}

const std::string& AisSchema::header_for(const std::string& field) const {
  auto it = columns.find(field);
  if (it == columns.end()) throw ValidationError(fmt::format("schema: unknown field '{}'", field));
  return it->second;
}

void RejectReport::merge(const RejectReport& other) {
  accepted += other.accepted;
  rejected += other.rejected;
  navstatus_clamped += other.navstatus_clamped;
  for (const auto& [k, v] : other.reasons) reasons[k] += v;
}

std::string RejectReport::to_json() const {
  nlohmann::ordered_json j;
  j["accepted"] = accepted;
  j["rejected"] = rejected;
  nlohmann::ordered_json r = nlohmann::ordered_json::object();
  for (const auto& [k, v] : reasons) r[k] = v;
  j["reasons"] = r;
  return j.dump(2);
}

ParsedAis parse_ais_csv(std::istream& source, const AisSchema& schema) {
  csv::Reader reader(source);
  ColumnIndex idx;
  for (const char* f : kFields) {
    if (auto c = reader.column(schema.header_for(f))) idx.at[f] = *c;
  }
  for (const char* required : {"timestamp", "lat", "lon", "sog"}) {
    if (!idx.at.contains(required)) {
      throw ValidationError(fmt::format("ais csv: no column for required field '{}' (header '{}')",
                                        required, schema.header_for(required)));
    }
  }
  if (!idx.at.contains("mmsi") && !idx.at.contains("imo")) {
    throw ValidationError("ais csv: neither an mmsi nor an imo column is present");
  }

  ParsedAis out;
  auto& report = out.report;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != reader.header().size()) {
      report.reject("malformed row");
      continue;
    }
    AisRecord rec;
    rec.mmsi = opt_int(idx, row, "mmsi");
    rec.imo = opt_int(idx, row, "imo");
    if (rec.imo && *rec.imo <= 0) rec.imo.reset();
    if (rec.mmsi && *rec.mmsi <= 0) rec.mmsi.reset();
    if (!rec.imo && !rec.mmsi) {
      report.reject("missing identity");
      continue;
    }
    auto ts = idx.cell(row, "timestamp");
    auto parsed_ts = ts ? parse_timestamp(*ts) : std::nullopt;
    if (!parsed_ts) {
      report.reject("bad timestamp");
      continue;
    }
    rec.timestamp = *parsed_ts;

    auto lat = opt_double(idx, row, "lat");
    if (!lat || *lat < -90.0 || *lat > 90.0) {
      report.reject("lat out of range");
      continue;
    }
    auto lon = opt_double(idx, row, "lon");
    if (!lon || *lon < -180.0 || *lon > 180.0) {
      report.reject("lon out of range");
      continue;
    }
    rec.lat = *lat;
    rec.lon = *lon;

    auto sog = opt_double(idx, row, "sog");
    if (!sog || *sog < 0.0 || *sog >= kSogUnavailable) {
      report.reject("sog out of range");
      continue;
    }
    rec.sog = *sog;

    if (cell_present(idx, row, "cog")) {
      auto cog = opt_double(idx, row, "cog");
      if (!cog || *cog < 0.0 || *cog >= 360.0) {
        report.reject("cog out of range");
        continue;
      }
      rec.cog = *cog;
    }

    if (cell_present(idx, row, "typeofshipandcargo")) {
      auto type = opt_int(idx, row, "typeofshipandcargo");
      if (!type || *type < 0 || *type > 99) {
        report.reject("type out of range");
        continue;
      }
      rec.type_and_cargo = static_cast<int>(*type);
    }

    if (auto nav = opt_int(idx, row, "navstatus")) {
      if (*nav < 0 || *nav > 15) {
        rec.navstatus = 15;
        ++report.navstatus_clamped;
      } else {
        rec.navstatus = static_cast<int>(*nav);
      }
    }

    if (auto rot = opt_int(idx, row, "rot"); rot && *rot != kRotUnavailable) rec.rot = static_cast<int>(*rot);
    if (auto hd = opt_double(idx, row, "heading"); hd && *hd >= 0.0 && *hd < 360.0) rec.heading = *hd;
    if (auto name = idx.cell(row, "name"); name && !csv::is_missing(*name)) rec.name = std::string(*name);
    rec.size_a = opt_double(idx, row, "size_a");
    rec.size_b = opt_double(idx, row, "size_b");
    rec.size_c = opt_double(idx, row, "size_c");
    rec.size_d = opt_double(idx, row, "size_d");
    rec.length = opt_double(idx, row, "length");
    rec.beam = opt_double(idx, row, "beam");
    rec.draught = opt_double(idx, row, "draught");

    out.records.push_back(std::move(rec));
    ++report.accepted;
  }
  if (report.navstatus_clamped > 0) {
    spdlog::warn("ais csv: {} records had navstatus outside 0..15 and were set to 15",
                 report.navstatus_clamped);
  }
  return out;
}

ShipId resolve_id(const AisRecord& record) {
  if (record.imo) return ShipId{*record.imo};
  if (record.mmsi) return ShipId{*record.mmsi};
  throw ValidationError("record has neither IMO nor MMSI");
}

std::map<ShipId, RawTrace> assemble_traces(std::span<const AisRecord> records) {
  std::map<ShipId, std::vector<AisRecord>> grouped;
  for (const auto& r : records) grouped[resolve_id(r)].push_back(r);

  std::map<ShipId, RawTrace> out;
  for (auto& [id, recs] : grouped) {
    std::stable_sort(recs.begin(), recs.end(),
                     [](const AisRecord& a, const AisRecord& b) { return a.timestamp < b.timestamp; });
    RawTrace trace{id, {}};
    trace.records.reserve(recs.size());
    for (auto& r : recs) {
      if (!trace.records.empty() && trace.records.back().timestamp == r.timestamp) {
        trace.records.back() = std::move(r);  // last occurrence wins
      } else {
        trace.records.push_back(std::move(r));
      }
    }
    out.emplace(id, std::move(trace));
  }
  return out;
}

std::vector<AisRecord> flatten(const std::map<ShipId, RawTrace>& traces) {
  std::vector<AisRecord> out;
  for (const auto& [id, t] : traces) out.insert(out.end(), t.records.begin(), t.records.end());
  return out;
}

MetaTable parse_meta_csv(std::istream& source) {
  csv::Reader reader(source);
  const auto c_imo = reader.require_column("imo");
  const auto c_type = reader.require_column("ship_type");
  const auto c_kw = reader.require_column("main_engine_kw");
  const auto c_speed = reader.require_column("design_speed");

  MetaTable table;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != reader.header().size()) {
      ++table.rejected;
      continue;
    }
    auto imo = csv::parse_int(row[c_imo]);
    auto type = csv::parse_int(row[c_type]);
    auto kw = csv::parse_double(row[c_kw]);
    auto speed = csv::parse_double(row[c_speed]);
    if (!imo || *imo <= 0 || !type || !kw || *kw <= 0.0 || !speed || *speed <= 0.0) {
      ++table.rejected;
      continue;
    }
    if (table.ships.contains(*imo)) {
      ++table.duplicates;
      spdlog::warn("meta csv: duplicate imo {} at line {}; keeping the first row", *imo,
                   reader.line_number());
      continue;
    }
    table.ships.emplace(*imo, ShipMeta{*imo, static_cast<int>(*type), *kw, *speed});
  }
  return table;
}

}  // namespace aisrepair::ingest
