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

#ifndef AISREPAIR_TIMEUTIL_HPP
#define AISREPAIR_TIMEUTIL_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace aisrepair {

/// UTC instant at one-second resolution.
using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DD HH:MM:SS" (UTC). Also accepts a 'T' separator.
/// Returns nullopt for anything that is not a valid calendar instant.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Formats as "YYYY-MM-DD HH:MM:SS".
std::string format_timestamp(Timestamp t);

inline std::int64_t epoch_seconds(Timestamp t) { return t.time_since_epoch().count(); }
inline Timestamp from_epoch_seconds(std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; }

}  // namespace aisrepair

#endif  // AISREPAIR_TIMEUTIL_HPP
