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

#ifndef AISREPAIR_INGEST_HPP
#define AISREPAIR_INGEST_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aisrepair/timeutil.hpp"
#include "aisrepair/types.hpp"

namespace aisrepair::ingest {

/// One decoded AIS position report.
struct AisRecord {
  std::optional<std::int64_t> mmsi;
  std::optional<std::int64_t> imo;
  std::string name;
  Timestamp timestamp{};
  double lat = 0.0;
  double lon = 0.0;
  double sog = 0.0;
  double cog = 0.0;
  std::optional<int> rot;
  std::optional<double> heading;
  int navstatus = 15;
  int type_and_cargo = 0;
  std::optional<double> size_a, size_b, size_c, size_d;
  std::optional<double> length, beam, draught;
};

/// Engine characteristics from an IHS-style ship register.
struct ShipMeta {
  std::int64_t imo = 0;
  int ship_type = 0;
  double main_engine_kw = 0.0;
  double design_speed = 0.0;
};

/// Per-ship series sorted by timestamp with duplicate instants collapsed.
struct RawTrace {
  ShipId ship_id{};
  std::vector<AisRecord> records;
};

/// Maps AisRecord field names to the header names used by a particular export.
/// Fields: mmsi imo name timestamp lat lon sog cog rot heading navstatus
/// typeofshipandcargo size_a size_b size_c size_d length beam draught.
struct AisSchema {
  std::map<std::string, std::string> columns;

  /// Identity mapping: every field is read from a column of the same name.
  static AisSchema defaults();
  /// Reads `field = header` pairs from the [columns] section of an INI file.
  /// Unlisted fields keep their default header.
  static AisSchema from_file(const std::filesystem::path& path);

  const std::string& header_for(const std::string& field) const;
};

struct RejectReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::map<std::string, std::size_t> reasons;
  /// Records kept but with navstatus outside 0..15 rewritten to 15.
  std::size_t navstatus_clamped = 0;

  void reject(const std::string& reason) {
    ++rejected;
    ++reasons[reason];
  }
  void merge(const RejectReport& other);
  /// `{"accepted":N,"rejected":M,"reasons":{code:count}}`
  std::string to_json() const;
};

struct ParsedAis {
  std::vector<AisRecord> records;
  RejectReport report;
};

/// Parses an AIS CSV export. Malformed rows are counted in the report and
/// skipped; an unreadable stream or missing header throws.
ParsedAis parse_ais_csv(std::istream& source, const AisSchema& schema = AisSchema::defaults());

/// IMO when present, otherwise MMSI. Throws ValidationError when neither exists.
ShipId resolve_id(const AisRecord& record);

/// Groups records by resolved id, sorts each series ascending, and keeps the
/// last occurrence among records sharing a timestamp.
std::map<ShipId, RawTrace> assemble_traces(std::span<const AisRecord> records);

/// Concatenates traces in id order.
std::vector<AisRecord> flatten(const std::map<ShipId, RawTrace>& traces);

struct MetaTable {
  std::map<std::int64_t, ShipMeta> ships;
  std::size_t rejected = 0;
  std::size_t duplicates = 0;
};

/// Parses `imo,ship_type,main_engine_kw,design_speed`. Rows with non-positive
/// power or speed are rejected; repeated IMOs keep the first row.
MetaTable parse_meta_csv(std::istream& source);

}  // namespace aisrepair::ingest

#endif  // AISREPAIR_INGEST_HPP
