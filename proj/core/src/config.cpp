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


#include "aisrepair/config.hpp"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <set>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair {
namespace {

using boost::property_tree::ptree;

// Reads typed values and remembers which keys were consumed, so anything left
// over can be reported as unknown.
class Ini {
 public:
  explicit Ini(const ptree& tree) : tree_(tree) {}

  const ptree* section(const std::string& name) const {
    for (const auto& [key, child] : tree_) {
      if (key == name) return &child;
    }
    return nullptr;
  }

  std::optional<std::string> raw(const std::string& sec, const std::string& key) {
    const ptree* s = section(sec);
    if (!s) return std::nullopt;
    for (const auto& [k, v] : *s) {
      if (k == key) {
        used_.insert(sec + "/" + key);
        return v.get_value<std::string>();
      }
    }
    return std::nullopt;
  }

  void mark(const std::string& sec, const std::string& key) { used_.insert(sec + "/" + key); }

  template <typename T>
  void get(const std::string& sec, const std::string& key, T& out) {
    const auto text = raw(sec, key);
    if (!text) return;
    out = convert<T>(*text, sec, key);
  }

  template <typename T>
  static T convert(const std::string& text, const std::string& sec, const std::string& key) {
    auto fail = [&] { return ValidationError(fmt::format("config [{}] {}: cannot parse '{}'", sec, key, text)); };
    if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (text == "true" || text == "1" || text == "yes") return true;
      if (text == "false" || text == "0" || text == "no") return false;
      throw fail();
    } else if constexpr (std::is_floating_point_v<T>) {
      const auto v = csv::parse_double(text);
      if (!v) throw fail();
      return static_cast<T>(*v);
    } else {
      T v{};
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size()) throw fail();
      return v;
    }
  }

  void check_unused() const {
    for (const auto& [sec, child] : tree_) {
      if (child.empty() && !child.data().empty()) {
        throw ValidationError(fmt::format("config: key '{}' outside any section", sec));
      }
      for (const auto& [key, v] : child) {
        if (!used_.contains(sec + "/" + key)) {
          throw ValidationError(fmt::format("config: unknown key [{}] {}", sec, key));
        }
      }
    }
  }

 private:
  const ptree& tree_;
  std::set<std::string> used_;
};

void resolve(std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.is_relative()) p = base / p;
}

void read_factors(Ini& ini, const std::string& sec, emissions::Engine engine, emissions::EmissionFactors& f) {
  for (auto p : emissions::kPollutants) {
    double v = f.get(engine, p);
    ini.get(sec, std::string(emissions::pollutant_name(p)), v);
    f.set(engine, p, v);
  }
}

void read_aux(Ini& ini, const ptree* section, emissions::AuxPowerTable& table) {
  auto& row = *table.default_row;
  ini.get("aux", "cruise_kw", row.cruise_kw);
  ini.get("aux", "maneuver_kw", row.maneuver_kw);
  ini.get("aux", "hotel_kw", row.hotel_kw);
  if (!section) return;
  for (const auto& [key, value] : *section) {
    const auto text = value.get_value<std::string>();
    auto type_of = [&](std::size_t prefix) {
      return Ini::convert<int>(key.substr(prefix), "aux", key);
    };
    if (key.starts_with("constant_")) {
      table.constant_kw[type_of(9)] = Ini::convert<double>(text, "aux", key);
      ini.mark("aux", key);
    } else if (key.starts_with("type_")) {
      // type_N = cruise,maneuver,hotel
      const auto parts = csv::split_line(text);
      if (parts.size() != 3) throw ValidationError(fmt::format("config [aux] {}: expected cruise,maneuver,hotel", key));
      table.by_type[type_of(5)] = {Ini::convert<double>(parts[0], "aux", key), Ini::convert<double>(parts[1], "aux", key),
                                   Ini::convert<double>(parts[2], "aux", key)};
      ini.mark("aux", key);
    }
  }
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  auto in = csv::open_input(path);
  return parse(in, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

PipelineConfig PipelineConfig::parse(std::istream& in, const std::filesystem::path& base_dir) {
  ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError(fmt::format("config: {}", e.what()));
  }
  Ini ini(tree);
  PipelineConfig c;

  std::uint64_t seed = c.seed;
  ini.get("run", "seed", seed);
  c.set_seed(seed);
  ini.get("run", "jobs", c.jobs);

  auto path_key = [&](const char* key, std::filesystem::path& p) {
    if (auto v = ini.raw("paths", key)) p = *v;
    resolve(p, base_dir);
  };
  path_key("ais", c.paths.ais);
  path_key("meta", c.paths.meta);
  path_key("bathy", c.paths.bathy);
  path_key("truth", c.paths.truth);
  path_key("truth_modes", c.paths.truth_modes);
  path_key("output", c.paths.output);
  if (auto v = ini.raw("paths", "schema"); v && !v->empty()) {
    std::filesystem::path p = *v;
    resolve(p, base_dir);
    c.paths.schema = p;
  }

  ini.get("regularize", "step_seconds", c.regularize.step_seconds);
  ini.get("regularize", "max_gap_hours", c.regularize.max_gap_hours);
  ini.get("window", "n", c.window.n);
  ini.get("window", "test_fraction", c.window.test_fraction);

  ini.get("crbm", "n_h", c.crbm.n_h);
  ini.get("crbm", "init_scale", c.crbm.init_scale);
  ini.get("crbm", "train_stride", c.crbm.train_stride);
  ini.get("crbm", "epochs", c.crbm.train.epochs);
  ini.get("crbm", "batch_size", c.crbm.train.batch_size);
  ini.get("crbm", "learning_rate", c.crbm.train.learning_rate);
  ini.get("crbm", "momentum", c.crbm.train.momentum);
  ini.get("crbm", "weight_decay", c.crbm.train.weight_decay);
  ini.get("crbm", "cd_k", c.crbm.train.cd_k);

  auto& l = c.learner;
  ini.get("learner", "target", l.target);
  ini.get("learner", "algorithm", l.algorithm);
  ini.get("learner", "feature_set", l.feature_set);
  if (auto v = ini.raw("learner", "vote")) {
    const auto m = learners::vote_from_name(*v);
    if (!m) throw ValidationError(fmt::format("config [learner] vote: unknown method '{}'", *v));
    l.vote = *m;
  }
  ini.get("learner", "train_stride", l.train_stride);
  ini.get("learner", "n_trees", l.n_trees);
  ini.get("learner", "max_features", l.max_features);
  ini.get("learner", "max_depth", l.max_depth);
  ini.get("learner", "lasso_lambda", l.lasso_lambda);
  ini.get("learner", "gb_stages", l.gb_stages);
  ini.get("learner", "gb_learning_rate", l.gb_learning_rate);
  ini.get("learner", "gb_max_depth", l.gb_max_depth);
  ini.get("learner", "logistic_epochs", l.logistic_epochs);
  ini.get("learner", "logistic_learning_rate", l.logistic_learning_rate);

  ini.get("cluster", "k", c.cluster.k);
  ini.get("cluster", "max_iter", c.cluster.max_iter);
  ini.get("cluster", "tol", c.cluster.tol);
  ini.get("cluster", "fit_stride", c.cluster.fit_stride);

  auto& e = c.emissions;
  ini.get("emissions", "v_safety", e.power.v_safety);
  ini.get("emissions", "epsilon_p", e.power.epsilon_p);
  ini.get("emissions", "hotel_threshold", e.power.hotel_threshold);
  ini.get("emissions", "cruise_threshold", e.power.cruise_threshold);
  ini.get("emissions", "cell_degrees", e.cell_degrees);
  read_aux(ini, ini.section("aux"), e.aux);
  read_factors(ini, "ef_main", emissions::Engine::kMain, e.factors);
  read_factors(ini, "ef_aux", emissions::Engine::kAux, e.factors);

  auto& s = c.synth;
  ini.get("synth", "cargo", s.cargo);
  ini.get("synth", "ferry", s.ferry);
  ini.get("synth", "trawler", s.trawler);
  ini.get("synth", "moored", s.moored);
  ini.get("synth", "hours", s.hours);
  ini.get("synth", "sog_noise", s.sog_noise);
  ini.get("synth", "power_noise", s.power_noise);
  ini.get("synth", "report_min_s", s.report_min_s);
  ini.get("synth", "report_max_s", s.report_max_s);
  ini.get("synth", "stale_status", s.stale_status);
  ini.get("synth", "bad_rows", s.bad_rows);
  ini.get("synth", "start", s.start);

  ini.check_unused();
  c.validate();
  return c;
}

void PipelineConfig::set_seed(std::uint64_t value) {
  seed = value;
  crbm.train.seed = value;
  synth.seed = value;
}

void PipelineConfig::validate() const {
  if (jobs < 1) throw ValidationError("config [run] jobs must be at least 1");
  if (regularize.step_seconds <= 0) throw ValidationError("config [regularize] step_seconds must be positive");
  if (!(regularize.max_gap_hours > 0.0)) throw ValidationError("config [regularize] max_gap_hours must be positive");
  if (window.n < 1) throw ValidationError("config [window] n must be at least 1");
  if (!(window.test_fraction > 0.0 && window.test_fraction < 1.0)) {
    throw ValidationError("config [window] test_fraction must lie in (0, 1)");
  }
  if (crbm.n_h < 1) throw ValidationError("config [crbm] n_h must be at least 1");
  if (crbm.train_stride < 1) throw ValidationError("config [crbm] train_stride must be at least 1");
  crbm.train.validate();
  static const std::set<std::string> targets{"power", "type"};
  static const std::set<std::string> algorithms{"forest", "boosting", "lasso", "logistic", "type_avg", "global_avg"};
  static const std::set<std::string> feature_sets{"frame", "hist", "act"};
  if (!targets.contains(learner.target)) throw ValidationError("config [learner] target must be power or type");
  if (!algorithms.contains(learner.algorithm)) {
    throw ValidationError(fmt::format("config [learner] unknown algorithm '{}'", learner.algorithm));
  }
  if (!feature_sets.contains(learner.feature_set)) {
    throw ValidationError(fmt::format("config [learner] unknown feature_set '{}'", learner.feature_set));
  }
  if (learner.train_stride < 1) throw ValidationError("config [learner] train_stride must be at least 1");
  if (learner.n_trees < 1) throw ValidationError("config [learner] n_trees must be at least 1");
  if (cluster.k < 1) throw ValidationError("config [cluster] k must be at least 1");
  if (cluster.fit_stride < 1) throw ValidationError("config [cluster] fit_stride must be at least 1");
  emissions.power.validate();
  emissions.aux.validate();
  emissions.factors.validate();
  if (!(emissions.cell_degrees > 0.0)) throw ValidationError("config [emissions] cell_degrees must be positive");
  synth.validate();
}

}  // namespace aisrepair
