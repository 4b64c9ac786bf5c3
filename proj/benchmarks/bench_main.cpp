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


#include <benchmark/benchmark.h>

#include <array>
#include <random>
#include <vector>

#include "aisrepair/crbm.hpp"
#include "aisrepair/ingest.hpp"
#include "aisrepair/learners/forest.hpp"
#include "aisrepair/regularize.hpp"

namespace {

using namespace aisrepair;

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::vector<double> v(n);
  for (auto& x : v) x = N(rng);
  return v;
}

void BM_CrbmEncode(benchmark::State& state) {
  const auto n_h = static_cast<std::size_t>(state.range(0));
  const auto model = crbm::CrbmModel::random(6, n_h, 20, 1, 0.1);
  const auto v = noise(6, 2);
  const auto h = noise(model.history_size(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(crbm::encode(model, v, h));
}
BENCHMARK(BM_CrbmEncode)->Arg(10)->Arg(70);

void BM_CrbmCdUpdate(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  auto model = crbm::CrbmModel::random(6, 10, 20, 1, 0.01);
  const auto frames = noise(batch * 6, 4);
  const auto hists = noise(batch * model.history_size(), 5);
  std::vector<crbm::TrainingSample> samples;
  for (std::size_t i = 0; i < batch; ++i) {
    samples.push_back({std::span(frames).subspan(i * 6, 6),
                       std::span(hists).subspan(i * model.history_size(), model.history_size()), i});
  }
  auto train_state = crbm::TrainState::for_model(model);
  crbm::TrainConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(crbm::cd_update(model, train_state, samples, cfg));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * batch));
}
BENCHMARK(BM_CrbmCdUpdate)->Arg(64)->Arg(256);

void BM_InterpolateTrace(benchmark::State& state) {
  ingest::RawTrace raw;
  raw.ship_id = ShipId{1};
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::int64_t t = 0;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    ingest::AisRecord r;
    r.timestamp = from_epoch_seconds(t);
    r.lat = 41 + U(rng);
    r.lon = 2 + U(rng);
    r.sog = 10 * U(rng);
    raw.records.push_back(r);
    t += 10 + static_cast<std::int64_t>(50 * U(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(regularize::interpolate_trace(raw, std::chrono::seconds{60}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_InterpolateTrace)->Arg(1000)->Arg(100000);

void BM_ForestFit(benchmark::State& state) {
  const auto rows = static_cast<Eigen::Index>(state.range(0));
  learners::FeatureMatrix X(rows, 10);
  const auto v = noise(static_cast<std::size_t>(rows) * 10, 7);
  std::vector<double> y(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < 10; ++j) X(i, j) = v[static_cast<std::size_t>(i * 10 + j)];
    y[static_cast<std::size_t>(i)] = 3 * X(i, 0) - X(i, 1) * X(i, 2);
  }
  learners::ForestConfig cfg;
  cfg.n_trees = 20;
  cfg.seed = 8;
  for (auto _ : state) benchmark::DoNotOptimize(learners::forest_fit(X, y, learners::Task::kRegression, cfg));
}
BENCHMARK(BM_ForestFit)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
