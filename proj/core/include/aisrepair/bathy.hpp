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

#ifndef AISREPAIR_BATHY_HPP
#define AISREPAIR_BATHY_HPP

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

namespace aisrepair {

/// Depth raster on a regular lat/lon grid, meters positive below sea level.
///
/// Backed by the ESRI ASCII grid layout: rows are stored north to south and
/// `xll`/`yll` name the lower-left corner of the lower-left cell. NODATA cells
/// are treated as land and read back as a depth of -1 m.
class BathyGrid {
 public:
  BathyGrid() = default;
  BathyGrid(std::size_t ncols, std::size_t nrows, double xll, double yll, double cellsize,
            std::vector<double> depths_north_first);

  static BathyGrid read_esri_ascii(std::istream& in);
  static BathyGrid load(const std::filesystem::path& path);
  void write_esri_ascii(std::ostream& out) const;

  /// Nearest-cell depth, or nullopt outside the bounding box.
  std::optional<double> depth_at(double lat, double lon) const;

  bool contains(double lat, double lon) const;
  std::size_t ncols() const { return ncols_; }
  std::size_t nrows() const { return nrows_; }
  double cellsize() const { return cellsize_; }

  static constexpr double kLandDepth = -1.0;

 private:
  std::size_t ncols_ = 0;
  std::size_t nrows_ = 0;
  double xll_ = 0.0;
  double yll_ = 0.0;
  double cellsize_ = 1.0;
  std::vector<double> depth_;  // row-major, north row first
};

}  // namespace aisrepair

#endif  // AISREPAIR_BATHY_HPP
