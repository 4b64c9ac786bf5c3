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


#include "aisrepair/learners/votes.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"
#include "aisrepair/learners/metrics.hpp"

namespace aisrepair::learners {

int ship_type_of(int type_and_cargo) {
  if (type_and_cargo < 0 || type_and_cargo > 99) {
    throw ValidationError(fmt::format("typeofshipandcargo {} outside 0..99", type_and_cargo));
  }
  return type_and_cargo / 10;
}

double mae(std::span<const double> pred, std::span<const double> truth) {
  if (pred.empty()) throw ValidationError("mae: empty input");
  if (pred.size() != truth.size()) {
    throw ValidationError(fmt::format("mae: {} predictions vs {} targets", pred.size(), truth.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += std::fabs(pred[i] - truth[i]);
  return sum / static_cast<double>(pred.size());
}

double accuracy(std::span<const int> pred, std::span<const int> truth) {
  if (pred.empty()) throw ValidationError("accuracy: empty input");
  if (pred.size() != truth.size()) {
    throw ValidationError(fmt::format("accuracy: {} predictions vs {} targets", pred.size(), truth.size()));
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

std::string_view vote_name(VoteMethod method) {
  switch (method) {
    case VoteMethod::kMajority: return "majority";
    case VoteMethod::kMean: return "mean";
    case VoteMethod::kMedian: return "median";
  }
  return "mean";
}

std::optional<VoteMethod> vote_from_name(std::string_view name) {
  if (name == "majority") return VoteMethod::kMajority;
  if (name == "mean") return VoteMethod::kMean;
  if (name == "median") return VoteMethod::kMedian;
  return std::nullopt;
}

double vote(std::vector<double> values, VoteMethod method) {
  if (values.empty()) throw ValidationError("vote: no predictions");
  switch (method) {
    case VoteMethod::kMean: {
      double sum = 0.0;
      for (double v : values) sum += v;
      return sum / static_cast<double>(values.size());
    }
    case VoteMethod::kMedian: {
      const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
      std::nth_element(values.begin(), mid, values.end());
      return *mid;
    }
    case VoteMethod::kMajority: {
      std::sort(values.begin(), values.end());
      double best = values.front();
      std::size_t best_run = 0;
      for (std::size_t i = 0; i < values.size();) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        if (j - i > best_run) {
          best_run = j - i;
          best = values[i];
        }
        i = j;
      }
      return best;
    }
  }
  throw ValidationError("vote: unknown method");
}

std::map<ShipId, double> aggregate_votes(std::span<const StepPrediction> per_step, VoteMethod method) {
  std::map<ShipId, std::vector<double>> grouped;
  std::set<std::pair<ShipId, std::size_t>> seen;
  for (const auto& p : per_step) {
    if (!seen.emplace(p.ship_id, p.t_index).second) {
      throw ValidationError(fmt::format("duplicate prediction for ship {} step {}", to_string(p.ship_id), p.t_index));
    }
    grouped[p.ship_id].push_back(p.value);
  }
  std::map<ShipId, double> out;
  for (auto& [id, values] : grouped) out.emplace(id, vote(std::move(values), method));
  return out;
}

void write_predictions_csv(std::ostream& out, std::span<const StepPrediction> rows) {
  out << "ship_id,t_index,value\n";
  for (const auto& r : rows) {
    out << to_int(r.ship_id) << ',' << r.t_index << ',' << csv::fixed6(r.value) << '\n';
  }
}

std::vector<StepPrediction> read_predictions_csv(std::istream& in) {
  csv::Reader reader(in);
  const auto c_id = reader.require_column("ship_id");
  const auto c_t = reader.require_column("t_index");
  const auto c_v = reader.require_column("value");
  std::vector<StepPrediction> rows;
  std::vector<std::string> f;
  while (reader.next(f)) {
    const auto id = csv::parse_int(f.at(c_id));
    const auto t = csv::parse_int(f.at(c_t));
    const auto v = csv::parse_double(f.at(c_v));
    if (!id || !t || *t < 0 || !v) {
      throw ValidationError(fmt::format("predictions: bad row at line {}", reader.line_number()));
    }
    rows.push_back({ShipId{*id}, static_cast<std::size_t>(*t), *v});
  }
  return rows;
}

double TypeAverageBaseline::predict(int ship_type) const {
  const auto it = by_type.find(ship_type);
  return it == by_type.end() ? global : it->second;
}

double baseline_global_avg(std::span<const std::pair<int, double>> train) {
  if (train.empty()) throw ValidationError("baseline: empty training set");
  double sum = 0.0;
  for (const auto& [type, kw] : train) sum += kw;
  return sum / static_cast<double>(train.size());
}

TypeAverageBaseline baseline_type_avg(std::span<const std::pair<int, double>> train) {
  TypeAverageBaseline b;
  b.global = baseline_global_avg(train);
  std::map<int, std::pair<double, std::size_t>> acc;
  for (const auto& [type, kw] : train) {
    auto& [sum, n] = acc[type];
    sum += kw;
    ++n;
  }
  for (const auto& [type, s] : acc) b.by_type.emplace(type, s.first / static_cast<double>(s.second));
  return b;
}

}  // namespace aisrepair::learners
