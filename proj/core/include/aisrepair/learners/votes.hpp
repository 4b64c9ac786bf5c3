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


#ifndef AISREPAIR_LEARNERS_VOTES_HPP
#define AISREPAIR_LEARNERS_VOTES_HPP

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "aisrepair/types.hpp"

namespace aisrepair::learners {

enum class VoteMethod { kMajority, kMean, kMedian };

std::string_view vote_name(VoteMethod method);
std::optional<VoteMethod> vote_from_name(std::string_view name);

/// Prediction for one windowed instance.
struct StepPrediction {
  ShipId ship_id{};
  std::size_t t_index = 0;
  double value = 0.0;
};

/// Reduces one ship's predictions. Majority ties go to the lowest value; the
/// median of an even count is the lower middle element. Throws on empty input.
double vote(std::vector<double> values, VoteMethod method);

/// Per-ship vote over a prediction table. Each (ship, t_index) pair may
/// appear only once.
std::map<ShipId, double> aggregate_votes(std::span<const StepPrediction> per_step, VoteMethod method);

/// `ship_id,t_index,value`
void write_predictions_csv(std::ostream& out, std::span<const StepPrediction> rows);
std::vector<StepPrediction> read_predictions_csv(std::istream& in);

/// Mean installed power per ship type; unseen types get the global mean.
struct TypeAverageBaseline {
  std::map<int, double> by_type;
  double global = 0.0;

  double predict(int ship_type) const;
};

/// Training pairs are (ship type, installed kW). Throws on empty input.
TypeAverageBaseline baseline_type_avg(std::span<const std::pair<int, double>> train);
double baseline_global_avg(std::span<const std::pair<int, double>> train);

}  // namespace aisrepair::learners

#endif  // AISREPAIR_LEARNERS_VOTES_HPP
