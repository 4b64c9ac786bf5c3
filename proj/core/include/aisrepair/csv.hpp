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

#ifndef AISREPAIR_CSV_HPP
#define AISREPAIR_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aisrepair::csv {

/// Splits one CSV line. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_line(std::string_view line);

/// Streaming reader over a CSV source whose first line is the header.
class Reader {
 public:
  /// Throws ValidationError if the stream is unreadable or has no header.
  explicit Reader(std::istream& in);

  const std::vector<std::string>& header() const { return header_; }
  std::optional<std::size_t> column(std::string_view name) const;
  /// Throws ValidationError naming the missing column.
  std::size_t require_column(std::string_view name) const;

  /// Reads the next non-empty data row. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  /// 1-based line number of the row most recently returned by next().
  std::size_t line_number() const { return line_; }

 private:
  std::istream& in_;
  std::vector<std::string> header_;
  std::size_t line_ = 0;
};

/// True for empty cells and the usual not-available markers (NA, NaN, null).
bool is_missing(std::string_view cell);

std::optional<double> parse_double(std::string_view cell);
std::optional<std::int64_t> parse_int(std::string_view cell);

/// Fixed 6-decimal rendering used by every floating-point CSV column.
std::string fixed6(double value);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Opens for reading; a missing or unreadable file raises MissingArtifactError.
std::ifstream open_input(const std::filesystem::path& path);
/// Opens for writing, creating parent directories. Failure raises Error.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace aisrepair::csv

#endif  // AISREPAIR_CSV_HPP
