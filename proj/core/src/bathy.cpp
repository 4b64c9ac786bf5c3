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

#include "aisrepair/bathy.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <string>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair {

BathyGrid::BathyGrid(std::size_t ncols, std::size_t nrows, double xll, double yll, double cellsize,
                     std::vector<double> depths_north_first)
    : ncols_(ncols), nrows_(nrows), xll_(xll), yll_(yll), cellsize_(cellsize),
      depth_(std::move(depths_north_first)) {
  if (ncols_ == 0 || nrows_ == 0 || !(cellsize_ > 0.0)) {
    throw ValidationError("bathymetry grid: empty grid or non-positive cell size");
  }
  if (depth_.size() != ncols_ * nrows_) {
    throw ValidationError(fmt::format("bathymetry grid: expected {} cells, got {}", ncols_ * nrows_,
                                      depth_.size()));
  }
  for (auto& d : depth_) {
    if (!std::isfinite(d)) d = kLandDepth;
  }
}

BathyGrid BathyGrid::read_esri_ascii(std::istream& in) {
  if (!in) throw ValidationError("bathymetry grid: unreadable stream");
  std::map<std::string, double> header;
  std::string key;
  // Header keys are case-insensitive; the first numeric token starts the data.
  while (in >> std::ws && std::isalpha(in.peek())) {
    in >> key;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    double value = 0.0;
    if (!(in >> value)) throw ValidationError(fmt::format("bathymetry grid: bad header value for '{}'", key));
    header[key] = value;
  }
  auto need = [&](const char* k) {
    auto it = header.find(k);
    if (it == header.end()) throw ValidationError(fmt::format("bathymetry grid: missing header '{}'", k));
    return it->second;
  };
  const double ncols = need("ncols");
  const double nrows = need("nrows");
  const double cellsize = need("cellsize");
  double xll = 0.0, yll = 0.0;
  if (header.contains("xllcorner")) {
    xll = header["xllcorner"];
  } else {
    xll = need("xllcenter") - cellsize / 2.0;
  }
  if (header.contains("yllcorner")) {
    yll = header["yllcorner"];
  } else {
    yll = need("yllcenter") - cellsize / 2.0;
  }
  const auto nodata = header.contains("nodata_value") ? std::optional<double>(header["nodata_value"])
                                                      : std::nullopt;
  if (ncols < 1 || nrows < 1) throw ValidationError("bathymetry grid: empty grid");

  const auto nc = static_cast<std::size_t>(ncols);
  const auto nr = static_cast<std::size_t>(nrows);
  std::vector<double> depth;
  depth.reserve(nc * nr);
  double v = 0.0;
  while (depth.size() < nc * nr && in >> v) {
    depth.push_back(nodata && v == *nodata ? kLandDepth : v);
  }
  if (depth.size() != nc * nr) {
    throw ValidationError(fmt::format("bathymetry grid: expected {} cells, read {}", nc * nr, depth.size()));
  }
  return BathyGrid(nc, nr, xll, yll, cellsize, std::move(depth));
}

BathyGrid BathyGrid::load(const std::filesystem::path& path) {
  auto in = csv::open_input(path);
  try {
    return read_esri_ascii(in);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void BathyGrid::write_esri_ascii(std::ostream& out) const {
  out << "ncols " << ncols_ << "\n"
      << "nrows " << nrows_ << "\n"
      << "xllcorner " << csv::fixed6(xll_) << "\n"
      << "yllcorner " << csv::fixed6(yll_) << "\n"
      << "cellsize " << csv::fixed6(cellsize_) << "\n"
      << "NODATA_value -9999\n";
  for (std::size_t r = 0; r < nrows_; ++r) {
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (c) out << ' ';
      const double d = depth_[r * ncols_ + c];
      out << (d == kLandDepth ? std::string("-9999") : fmt::format("{:.1f}", d));
    }
    out << '\n';
  }
}

bool BathyGrid::contains(double lat, double lon) const {
  return lon >= xll_ && lon < xll_ + cellsize_ * static_cast<double>(ncols_) && lat >= yll_ &&
         lat < yll_ + cellsize_ * static_cast<double>(nrows_);
}

std::optional<double> BathyGrid::depth_at(double lat, double lon) const {
  if (!contains(lat, lon)) return std::nullopt;
  auto col = static_cast<std::size_t>(std::floor((lon - xll_) / cellsize_));
  auto row_from_south = static_cast<std::size_t>(std::floor((lat - yll_) / cellsize_));
  col = std::min(col, ncols_ - 1);
  row_from_south = std::min(row_from_south, nrows_ - 1);
  const std::size_t row = nrows_ - 1 - row_from_south;
  return depth_[row * ncols_ + col];
}

}  // namespace aisrepair
