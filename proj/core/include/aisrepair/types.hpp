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

#ifndef AISREPAIR_TYPES_HPP
#define AISREPAIR_TYPES_HPP

#include <cstdint>
#include <string>

namespace aisrepair {

/// Resolved ship identifier: the IMO number when known, otherwise the MMSI.
enum class ShipId : std::int64_t {};

inline constexpr std::int64_t to_int(ShipId id) { return static_cast<std::int64_t>(id); }
inline std::string to_string(ShipId id) { return std::to_string(to_int(id)); }

}  // namespace aisrepair

#endif  // AISREPAIR_TYPES_HPP
