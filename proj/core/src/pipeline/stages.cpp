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


#include "aisrepair/pipeline/stages.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <json.hpp>
#include <map>

#include "aisrepair/crbm_io.hpp"
#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"
#include "aisrepair/learners/model_io.hpp"
#include "aisrepair/pipeline/evaluation.hpp"

namespace aisrepair::pipeline {
namespace {

// Offsets keep the random streams of different stages apart.
constexpr std::uint64_t kInitSeedOffset = 1;
constexpr std::uint64_t kForestSeedOffset = 3;
constexpr std::uint64_t kKMeansSeedOffset = 4;

Layout layout_of(const PipelineConfig& c) { return Layout{c.paths.output}; }

std::map<std::int64_t, ingest::ShipMeta> load_meta(const PipelineConfig& c, bool required) {
  if (!std::filesystem::exists(c.paths.meta)) {
    if (required) throw MissingArtifactError(fmt::format("missing ship meta file {}", c.paths.meta.string()));
    spdlog::warn("no ship meta file at {}; power labels left empty", c.paths.meta.string());
    return {};
  }
  auto in = csv::open_input(c.paths.meta);
  auto table = ingest::parse_meta_csv(in);
  return std::move(table.ships);
}

// Every `stride`-th row of each ship, in artifact order.
std::vector<std::size_t> stride_rows(const FeatureTable& t, const std::set<ShipId>& ships, std::size_t stride,
                                     const std::function<bool(std::size_t)>& usable) {
  std::map<ShipId, std::size_t> seen;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (!ships.contains(t.ship[i]) || !usable(i)) continue;
    if (seen[t.ship[i]]++ % stride == 0) out.push_back(i);
  }
  return out;
}

learners::FeatureMatrix take_rows(const learners::FeatureMatrix& X, const std::vector<std::size_t>& rows) {
  learners::FeatureMatrix out(static_cast<Eigen::Index>(rows.size()), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(rows[i]));
  return out;
}

std::span<const double> row_span(const learners::FeatureMatrix& X, std::size_t i) {
  return {X.data() + static_cast<Eigen::Index>(i) * X.cols(), static_cast<std::size_t>(X.cols())};
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  auto out = csv::open_output(path);
  out << j.dump(1) << '\n';
}

}  // namespace

Written run_synth(const PipelineConfig& config) {
  const auto fleet = synth::generate_fleet(config.synth);
  const auto& p = config.paths;
  synth::write_fleet(fleet, {p.ais, p.meta, p.bathy, p.truth, p.truth_modes});
  spdlog::info("synth: {} ships, {} AIS rows", fleet.ships.size(), fleet.ais.size());
  return {p.ais, p.meta, p.bathy, p.truth, p.truth_modes};
}

Written run_ingest(const PipelineConfig& config) {
  const Layout L = layout_of(config);
  OutputLock lock(L);
  const BathyGrid grid = BathyGrid::load(config.paths.bathy);
  const auto schema = config.paths.schema ? ingest::AisSchema::from_file(*config.paths.schema)
                                          : ingest::AisSchema::defaults();
  auto in = csv::open_input(config.paths.ais);
  auto parsed = ingest::parse_ais_csv(in, schema);
  const auto raw = ingest::assemble_traces(parsed.records);

  std::filesystem::remove_all(L.traces_dir());
  std::filesystem::create_directories(L.traces_dir());
  const std::chrono::seconds step{config.regularize.step_seconds};
  const std::chrono::seconds max_gap{std::llround(config.regularize.max_gap_hours * 3600.0)};
  regularize::FeatureReport features;
  std::size_t written = 0, samples = 0, short_traces = 0;
  Written out;
  for (const auto& [id, trace] : raw) {
    auto t = regularize::derive_features(regularize::interpolate_trace(trace, step, max_gap), grid, &features);
    if (t.samples.empty()) {
      ++short_traces;
      continue;
    }
    auto f = csv::open_output(L.trace(id));
    regularize::write_traces_csv(f, std::span<const regularize::ShipTrace>(&t, 1));
    samples += t.samples.size();
    ++written;
  }
  {
    auto f = csv::open_output(L.reject_report());
    f << parsed.report.to_json() << '\n';
  }
  nlohmann::ordered_json summary;
  summary["ships"] = raw.size();
  summary["traces_written"] = written;
  summary["traces_too_short"] = short_traces;
  summary["samples"] = samples;
  summary["navstatus_clamped"] = parsed.report.navstatus_clamped;
  summary["out_of_grid"] = features.out_of_grid;
  summary["on_land"] = features.on_land;
  write_json(L.ingest_summary(), summary);
  spdlog::info("ingest: {} accepted, {} rejected rows; {} traces, {} samples", parsed.report.accepted,
               parsed.report.rejected, written, samples);
  out.push_back(L.traces_dir());
  out.push_back(L.reject_report());
  out.push_back(L.ingest_summary());
  return out;
}

Written run_train_crbm(const PipelineConfig& config) {
  const Layout L = layout_of(config);
  OutputLock lock(L);
  const auto traces = read_traces(L, config.regularize.step_seconds);
  const auto meta = load_meta(config, false);

  std::vector<ShipId> ids;
  for (const auto& [id, t] : traces) ids.push_back(id);
  const auto split = window::split_by_ship(ids, config.window.test_fraction, config.seed);
  write_split(L.split(), split);
  const std::set<ShipId> train_ids(split.train.begin(), split.train.end());

  std::vector<window::Frame> frames;
  for (const auto& [id, t] : traces) {
    if (!train_ids.contains(id)) continue;
    for (const auto& s : t.samples) frames.push_back(window::raw_frame(s));
  }
  const auto stats = window::fit_norm(frames);

  std::vector<window::WindowedInstance> all;
  for (const auto& [id, t] : traces) {
    auto set = window::build_windows(t, config.window.n, stats);
    const auto m = meta.find(to_int(id));
    for (auto& w : set.instances) {
      if (m != meta.end()) w.label_power = m->second.main_engine_kw;
      all.push_back(std::move(w));
    }
  }
  {
    auto f = csv::open_output(L.windows());
    window::write_windows_csv(f, all, config.window.n);
  }

  std::vector<window::WindowedInstance> train_windows;
  std::map<ShipId, std::size_t> seen;
  for (const auto& w : all) {
    if (train_ids.contains(w.ship_id) && seen[w.ship_id]++ % config.crbm.train_stride == 0) train_windows.push_back(w);
  }
  if (train_windows.empty() && config.crbm.train.epochs > 0) {
    throw ValidationError("train-crbm: no training windows; traces are shorter than the window");
  }
  auto model = crbm::CrbmModel::random(window::kFrameSize, config.crbm.n_h, config.window.n,
                                       config.seed + kInitSeedOffset, config.crbm.init_scale);
  const auto samples = crbm::training_samples(train_windows);
  spdlog::info("train-crbm: {} windows ({} for training), n_h={}, n={}", all.size(), train_windows.size(),
               config.crbm.n_h, config.window.n);
  auto result = crbm::train(std::move(model), samples, config.crbm.train);
  crbm::save_model(L.crbm_model(), result.model, stats);
  {
    auto f = csv::open_output(L.crbm_loss());
    f << "epoch,recon_mse\n";
    for (std::size_t e = 0; e < result.loss_curve.size(); ++e) {
      f << e + 1 << ',' << csv::fixed6(result.loss_curve[e]) << '\n';
    }
  }
  return {L.split(), L.windows(), L.crbm_model(), L.crbm_loss()};
}

Written run_encode(const PipelineConfig& config) {
  const Layout L = layout_of(config);
  OutputLock lock(L);
  require(L.crbm_model(), "train-crbm");
  require(L.windows(), "train-crbm");
  const auto stored = crbm::load_model(L.crbm_model());
  auto in = csv::open_input(L.windows());
  const auto windows = window::read_windows_csv(in);
  std::vector<ActivationRow> rows;
  rows.reserve(windows.size());
  for (const auto& w : windows) {
    if (w.history.size() != stored.model.history_size()) {
      throw ValidationError(fmt::format("encode: window history {} does not match model history {}",
                                        w.history.size(), stored.model.history_size()));
    }
    const auto h = crbm::encode(stored.model, w.frame, w.history);
    rows.push_back({w.ship_id, w.t_index, std::vector<double>(h.data(), h.data() + h.size()), w.label_type,
                    w.label_power, w.navstatus});
  }
  write_activations(L.activations(), rows);
  spdlog::info("encode: {} activation vectors of size {}", rows.size(), stored.model.n_h);
  return {L.activations()};
}

Written run_cluster(const PipelineConfig& config) {
  const Layout L = layout_of(config);
  OutputLock lock(L);
  const auto acts = read_activations(L.activations());
  const auto traces = read_traces(L, config.regularize.step_seconds);
  if (acts.empty()) throw ValidationError("cluster: no activations");
  const auto d = static_cast<Eigen::Index>(acts.front().a.size());

  std::vector<std::size_t> fit_rows;
  for (std::size_t i = 0; i < acts.size(); i += config.cluster.fit_stride) fit_rows.push_back(i);
  learners::FeatureMatrix X(static_cast<Eigen::Index>(fit_rows.size()), d);
  for (std::size_t r = 0; r < fit_rows.size(); ++r) {
    for (Eigen::Index j = 0; j < d; ++j) X(static_cast<Eigen::Index>(r), j) = acts[fit_rows[r]].a[static_cast<std::size_t>(j)];
  }
  const auto model = learners::kmeans_fit(X, config.cluster.k, config.seed + kKMeansSeedOffset,
                                          config.cluster.max_iter, config.cluster.tol);
  learners::write_text(L.kmeans_model(), learners::to_json(model));

  std::map<std::pair<ShipId, std::size_t>, int> label_of;
  for (const auto& a : acts) label_of[{a.ship_id, a.t_index}] = learners::kmeans_assign(model, a.a);
  std::vector<ClusterRow> rows;
  for (const auto& [id, t] : traces) {
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      const auto it = label_of.find({id, i});
      rows.push_back({id, i, t.samples[i].timestamp, it == label_of.end() ? learners::kBurnLabel : it->second,
                      t.samples[i].navstatus});
    }
  }
  write_clusters(L.clusters(), rows);

  const int n_labels = static_cast<int>(config.cluster.k) + 1;
  std::vector<int> labels, nav;
  for (const auto& r : rows) {
    labels.push_back(r.cluster);
    nav.push_back(r.navstatus);
  }
  write_crosstab(L.crosstab_navstatus(), learners::crosstab_navstatus(labels, nav, n_labels));
  Written out{L.kmeans_model(), L.clusters(), L.crosstab_navstatus()};
  if (std::filesystem::exists(config.paths.truth_modes)) {
    auto in = csv::open_input(config.paths.truth_modes);
    write_crosstab(L.crosstab_modes(), mode_crosstab(rows, synth::read_truth_modes(in), n_labels));
    out.push_back(L.crosstab_modes());
  }
  spdlog::info("cluster: k={} over {} activations, inertia {:.3f}", model.k, fit_rows.size(), model.inertia);
  return out;
}

Written run_train_learner(const PipelineConfig& config) {
  const Layout L = layout_of(config);
  OutputLock lock(L);
  const auto& lc = config.learner;
  const auto split = read_split(L.split());
  const auto table = load_features(L, lc.feature_set);
  const bool power = lc.target == "power";
  const auto name = Layout::learner_name(lc.target, lc.algorithm, lc.feature_set);

  if (lc.algorithm == "type_avg" || lc.algorithm == "global_avg") {
    if (!power) throw ValidationError("type_avg and global_avg only predict power");
    std::vector<std::pair<int, double>> pairs;
    std::set<ShipId> done;
    for (std::size_t i = 0; i < table.rows(); ++i) {
      if (!split.train.contains(table.ship[i]) || !table.power[i] || !table.type[i]) continue;
      if (done.insert(table.ship[i]).second) pairs.emplace_back(*table.type[i], *table.power[i]);
    }
    auto baseline = learners::baseline_type_avg(pairs);
    if (lc.algorithm == "global_avg") baseline.by_type.clear();
    learners::write_text(L.learner(name), learners::to_json(baseline));
    spdlog::info("train-learner {}: {} training ships", name, pairs.size());
    return {L.learner(name)};
  }

  const auto rows = stride_rows(table, split.train, lc.train_stride, [&](std::size_t i) {
    return power ? table.power[i].has_value() : table.type[i].has_value();
  });
  if (rows.size() < 2) throw ValidationError(fmt::format("train-learner {}: fewer than 2 labelled rows", name));
  const auto X = take_rows(table.X, rows);
  std::vector<double> y;
  for (auto i : rows) y.push_back(power ? *table.power[i] : static_cast<double>(*table.type[i]));

  std::string text;
  if (lc.algorithm == "forest") {
    learners::ForestConfig fc{lc.n_trees, config.seed + kForestSeedOffset, true, lc.max_features, lc.max_depth,
                              config.jobs};
    text = learners::to_json(
        learners::forest_fit(X, y, power ? learners::Task::kRegression : learners::Task::kClassification, fc));
  } else if (lc.algorithm == "boosting" && power) {
    text = learners::to_json(learners::gradient_boost_fit(X, y, lc.gb_stages, lc.gb_learning_rate, lc.gb_max_depth));
  } else if (lc.algorithm == "lasso" && power) {
    text = learners::to_json(learners::lasso_fit(X, y, lc.lasso_lambda));
  } else if (lc.algorithm == "logistic" && !power) {
    std::vector<int> labels;
    for (double v : y) labels.push_back(static_cast<int>(v));
    text = learners::to_json(learners::logistic_fit(X, labels, lc.logistic_epochs, lc.logistic_learning_rate));
  } else {
    throw ValidationError(fmt::format("algorithm '{}' cannot predict {}", lc.algorithm, lc.target));
  }
  learners::write_text(L.learner(name), text);
  spdlog::info("train-learner {}: {} rows x {} features", name, X.rows(), X.cols());
  return {L.learner(name)};
}

Written run_predict(const PipelineConfig& config) {
  const Layout L = layout_of(config);
  OutputLock lock(L);
  const auto& lc = config.learner;
  const auto name = Layout::learner_name(lc.target, lc.algorithm, lc.feature_set);
  require(L.learner(name), "train-learner");
  const auto split = read_split(L.split());
  const auto table = load_features(L, lc.feature_set);
  const bool power = lc.target == "power";
  const std::string text = learners::read_text(L.learner(name));
  const std::string kind = learners::model_kind(text);

  std::function<double(std::size_t)> predict;
  std::optional<learners::TreeEnsembleModel> ensemble;
  std::optional<learners::LinearModel> linear;
  std::optional<learners::LogisticModel> logistic;
  std::optional<learners::TypeAverageBaseline> baseline;
  if (kind == "forest" || kind == "boosting") {
    ensemble = learners::ensemble_from_json(text);
    predict = [&](std::size_t i) { return ensemble->predict(row_span(table.X, i)); };
  } else if (kind == "lasso") {
    linear = learners::linear_from_json(text);
    predict = [&](std::size_t i) { return linear->predict(row_span(table.X, i)); };
  } else if (kind == "logistic") {
    logistic = learners::logistic_from_json(text);
    predict = [&](std::size_t i) { return static_cast<double>(logistic->classify(row_span(table.X, i))); };
  } else if (kind == "type_avg") {
    baseline = learners::baseline_from_json(text);
    predict = [&](std::size_t i) { return table.type[i] ? baseline->predict(*table.type[i]) : baseline->global; };
  } else {
    throw ValidationError(fmt::format("predict: unsupported model kind '{}'", kind));
  }

  std::vector<learners::StepPrediction> steps;
  std::map<ShipId, std::optional<double>> truth;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    if (!split.test.contains(table.ship[i])) continue;
    steps.push_back({table.ship[i], table.t_index[i], predict(i)});
    auto& t = truth[table.ship[i]];
    if (!t) t = power ? table.power[i] : (table.type[i] ? std::optional<double>(*table.type[i]) : std::nullopt);
  }
  const auto voted = learners::aggregate_votes(steps, lc.vote);
  std::vector<ShipPrediction> ships;
  for (const auto& [id, v] : voted) ships.push_back({id, v, truth[id]});

  const std::string vote(learners::vote_name(lc.vote));
  {
    auto f = csv::open_output(L.step_predictions(name));
    learners::write_predictions_csv(f, steps);
  }
  write_ship_predictions(L.ship_predictions(name, vote), ships);
  spdlog::info("predict {}: {} steps over {} test ships", name, steps.size(), ships.size());
  return {L.step_predictions(name), L.ship_predictions(name, vote)};
}

Written run_estimate(const PipelineConfig& config) {
  const Layout L = layout_of(config);
  OutputLock lock(L);
  const auto traces = read_traces(L, config.regularize.step_seconds);
  const auto meta = load_meta(config, true);
  const auto split = read_split(L.split());
  const auto& ec = config.emissions;

  std::vector<std::pair<std::string, std::map<ShipId, double>>> scenarios;
  for (const auto& [name, path] : list_ship_predictions(L)) {
    if (name.target != "power") continue;
    std::map<ShipId, double> kw;
    for (const auto& p : read_ship_predictions(path)) kw[p.ship_id] = p.predicted;
    scenarios.emplace_back(path.stem().string().substr(name.target.size() + 1), std::move(kw));
  }
  if (scenarios.empty()) spdlog::warn("estimate: no power predictions found; only real emissions computed");

  std::vector<ShipId> ships;
  for (const auto id : split.test) {
    if (!traces.contains(id) || !meta.contains(to_int(id))) continue;
    bool covered = true;
    for (const auto& s : scenarios) covered = covered && s.second.contains(id);
    if (covered) ships.push_back(id);
  }
  if (ships.size() < split.test.size()) {
    spdlog::warn("estimate: {} of {} test ships lack a trace, meta record or prediction and are skipped",
                 split.test.size() - ships.size(), split.test.size());
  }

  const emissions::AggregateOptions main_only{emissions::GroupBy::kPollutant, ec.cell_degrees,
                                              emissions::Engine::kMain};
  std::vector<std::pair<std::string, emissions::Totals>> totals;
  std::vector<emissions::EmissionRecord> real;
  for (const auto id : ships) {
    const auto& t = traces.at(id);
    auto recs = emissions::estimate_trace(t, &meta.at(to_int(id)), ec.factors, ec.aux, ec.power);
    real.insert(real.end(), recs.begin(), recs.end());
  }
  totals.emplace_back("real", emissions::aggregate(real, main_only));
  for (const auto& [name, kw] : scenarios) {
    std::vector<emissions::EmissionRecord> recs;
    for (const auto id : ships) {
      ingest::ShipMeta m = meta.at(to_int(id));
      m.main_engine_kw = kw.at(id);
      if (!(m.main_engine_kw > 0.0)) {
        spdlog::warn("estimate {}: ship {} predicted {} kW; clamped to 1 kW", name, to_string(id), m.main_engine_kw);
        m.main_engine_kw = 1.0;
      }
      auto r = emissions::estimate_trace(traces.at(id), &m, ec.factors, ec.aux, ec.power);
      recs.insert(recs.end(), r.begin(), r.end());
    }
    totals.emplace_back(name, emissions::aggregate(recs, main_only));
  }

  {
    auto f = csv::open_output(L.emission_records());
    emissions::write_emissions_csv(f, real);
  }
  {
    auto f = csv::open_output(L.engine_totals());
    f << "engine,pollutant,tonnes\n";
    for (auto e : {emissions::Engine::kMain, emissions::Engine::kAux}) {
      const auto t = emissions::aggregate(real, {emissions::GroupBy::kPollutant, ec.cell_degrees, e});
      for (const auto& [p, v] : t) f << emissions::engine_name(e) << ',' << p << ',' << csv::fixed6(v) << '\n';
    }
  }
  {
    auto f = csv::open_output(L.scenario_totals());
    emissions::write_scenario_totals(f, totals);
  }
  spdlog::info("estimate: {} test ships, {} scenarios", ships.size(), scenarios.size());
  return {L.emission_records(), L.engine_totals(), L.scenario_totals()};
}

Written run_compare(const PipelineConfig& config, const std::optional<std::filesystem::path>& scenario_file) {
  const Layout L = layout_of(config);
  OutputLock lock(L);
  Written out;
  auto rows = evaluate_predictions(L);

  const auto totals_path = scenario_file ? *scenario_file : L.scenario_totals();
  if (scenario_file || std::filesystem::exists(totals_path)) {
    auto in = csv::open_input(totals_path);
    const auto scenarios = emissions::read_scenario_totals(in);
    const auto real = std::find_if(scenarios.begin(), scenarios.end(), [](const auto& s) { return s.first == "real"; });
    if (real == scenarios.end()) throw ValidationError(fmt::format("{}: no 'real' scenario", totals_path.string()));
    std::vector<std::pair<std::string, emissions::Totals>> others;
    for (const auto& s : scenarios) {
      if (s.first != "real") others.push_back(s);
    }
    const auto coverage = emissions::compare_scenarios(real->second, others);
    {
      auto f = csv::open_output(L.coverage());
      emissions::write_scenario_report(f, coverage);
    }
    for (const auto& c : coverage) {
      if (c.scenario != "real") rows.push_back({c.scenario, "", "", "test", "gap_tonnes_" + c.pollutant, c.gap_tonnes});
    }
    out.push_back(L.coverage());
  }
  if (std::filesystem::exists(L.crosstab_navstatus())) {
    std::filesystem::create_directories(L.report_dir());
    std::filesystem::copy_file(L.crosstab_navstatus(), L.report_dir() / "crosstab_navstatus.csv",
                               std::filesystem::copy_options::overwrite_existing);
    out.push_back(L.report_dir() / "crosstab_navstatus.csv");
  }
  if (std::filesystem::exists(L.crosstab_modes())) {
    std::filesystem::create_directories(L.report_dir());
    std::filesystem::copy_file(L.crosstab_modes(), L.report_dir() / "crosstab_modes.csv",
                               std::filesystem::copy_options::overwrite_existing);
    out.push_back(L.report_dir() / "crosstab_modes.csv");
  }
  if (out.empty() && rows.empty()) {
    throw MissingArtifactError("compare: nothing to report; run `aisrepair predict`, `estimate` or `cluster` first");
  }
  write_evaluation(L.evaluation(), rows);
  out.insert(out.begin(), L.evaluation());
  return out;
}

}  // namespace aisrepair::pipeline
