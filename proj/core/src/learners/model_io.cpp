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


#include "aisrepair/learners/model_io.hpp"

#include <fmt/format.h>

#include <iterator>
#include <json.hpp>

#include "aisrepair/csv.hpp"
#include "aisrepair/error.hpp"

namespace aisrepair::learners {
namespace {

using json = nlohmann::ordered_json;

json header(const char* kind) {
  json j;
  j["version"] = kLearnerFormatVersion;
  j["model"] = kind;
  return j;
}

json parse_any(const std::string& text, const char* kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("{} model: {}", kind, e.what()));
  }
  if (!j.is_object() || !j.contains("version") || j["version"] != kLearnerFormatVersion) {
    throw ValidationError(fmt::format("{} model: missing or unsupported version", kind));
  }
  if (!j.contains("model") || !j["model"].is_string()) {
    throw ValidationError(fmt::format("{} model: missing model field", kind));
  }
  return j;
}

json parse(const std::string& text, const char* kind) {
  json j = parse_any(text, kind);
  if (j["model"] != kind) {
    throw ValidationError(fmt::format("expected a {} model document", kind));
  }
  return j;
}

json rows_to_json(const FeatureMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

FeatureMatrix rows_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  FeatureMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols) throw ValidationError("ragged matrix in model file");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json vec_to_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Eigen::VectorXd vec_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

template <typename F>
auto guarded(const char* kind, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("{} model: {}", kind, e.what()));
  }
}

}  // namespace

std::string to_json(const KMeansModel& model) {
  json j = header("kmeans");
  j["k"] = model.k;
  j["inertia"] = model.inertia;
  j["iterations"] = model.iterations;
  j["centroids"] = rows_to_json(model.centroids);
  return j.dump(1);
}

KMeansModel kmeans_from_json(const std::string& text) {
  const json j = parse(text, "kmeans");
  return guarded("kmeans", [&] {
    KMeansModel m;
    m.k = j.at("k").get<std::size_t>();
    m.inertia = j.at("inertia").get<double>();
    m.iterations = j.at("iterations").get<std::size_t>();
    m.centroids = rows_from_json(j.at("centroids"));
    if (static_cast<std::size_t>(m.centroids.rows()) != m.k || m.k == 0) {
      throw ValidationError("kmeans model: centroid count does not match k");
    }
    return m;
  });
}

std::string to_json(const LinearModel& model) {
  json j = header("lasso");
  j["lambda"] = model.lambda;
  j["iterations"] = model.iterations;
  j["converged"] = model.converged;
  j["intercept"] = model.intercept;
  j["weights"] = vec_to_json(model.weights);
  return j.dump(1);
}

LinearModel linear_from_json(const std::string& text) {
  const json j = parse(text, "lasso");
  return guarded("lasso", [&] {
    LinearModel m;
    m.lambda = j.at("lambda").get<double>();
    m.iterations = j.at("iterations").get<std::size_t>();
    m.converged = j.at("converged").get<bool>();
    m.intercept = j.at("intercept").get<double>();
    m.weights = vec_from_json(j.at("weights"));
    return m;
  });
}

std::string to_json(const LogisticModel& model) {
  json j = header("logistic");
  j["classes"] = model.classes;
  j["degenerate"] = model.degenerate;
  j["intercepts"] = vec_to_json(model.intercepts);
  j["weights"] = rows_to_json(model.weights);
  return j.dump(1);
}

LogisticModel logistic_from_json(const std::string& text) {
  const json j = parse(text, "logistic");
  return guarded("logistic", [&] {
    LogisticModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.degenerate = j.at("degenerate").get<bool>();
    m.intercepts = vec_from_json(j.at("intercepts"));
    m.weights = rows_from_json(j.at("weights"));
    if (m.classes.empty() || static_cast<std::size_t>(m.weights.rows()) != m.classes.size() ||
        m.intercepts.size() != m.weights.rows()) {
      throw ValidationError("logistic model: inconsistent class count");
    }
    return m;
  });
}

std::string to_json(const TypeAverageBaseline& model) {
  json j = header("type_avg");
  j["global"] = model.global;
  json types = json::object();
  for (const auto& [type, kw] : model.by_type) types[std::to_string(type)] = kw;
  j["by_type"] = std::move(types);
  return j.dump(1);
}

TypeAverageBaseline baseline_from_json(const std::string& text) {
  const json j = parse(text, "type_avg");
  return guarded("type_avg", [&] {
    TypeAverageBaseline m;
    m.global = j.at("global").get<double>();
    for (const auto& [key, value] : j.at("by_type").items()) m.by_type[std::stoi(key)] = value.get<double>();
    return m;
  });
}

std::string to_json(const TreeEnsembleModel& model) {
  const bool boosting = model.kind == TreeEnsembleModel::Kind::kBoosting;
  json j = header(boosting ? "boosting" : "forest");
  j["task"] = model.task == Task::kRegression ? "regression" : "classification";
  j["n_features"] = model.n_features;
  j["bootstrap"] = model.bootstrap;
  j["max_features"] = model.max_features;
  j["seed"] = model.seed;
  j["base"] = model.base;
  j["learning_rate"] = model.learning_rate;
  json trees = json::array();
  for (const auto& t : model.trees) {
    json feature = json::array(), threshold = json::array(), left = json::array(), right = json::array(),
         value = json::array();
    for (const auto& node : t.nodes) {
      feature.push_back(node.feature);
      threshold.push_back(node.threshold);
      left.push_back(node.left);
      right.push_back(node.right);
      value.push_back(node.value);
    }
    json tree;
    tree["feature"] = std::move(feature);
    tree["threshold"] = std::move(threshold);
    tree["left"] = std::move(left);
    tree["right"] = std::move(right);
    tree["value"] = std::move(value);
    trees.push_back(std::move(tree));
  }
  j["trees"] = std::move(trees);
  return j.dump();
}

TreeEnsembleModel ensemble_from_json(const std::string& text) {
  const json j = parse_any(text, "tree");
  const std::string kind = j["model"].get<std::string>();
  if (kind != "forest" && kind != "boosting") throw ValidationError("expected a forest or boosting model document");
  return guarded(kind.c_str(), [&] {
    TreeEnsembleModel m;
    m.kind = kind == "boosting" ? TreeEnsembleModel::Kind::kBoosting : TreeEnsembleModel::Kind::kForest;
    const auto task = j.at("task").get<std::string>();
    if (task != "regression" && task != "classification") throw ValidationError("tree model: unknown task " + task);
    m.task = task == "regression" ? Task::kRegression : Task::kClassification;
    m.n_features = j.at("n_features").get<std::size_t>();
    m.bootstrap = j.at("bootstrap").get<bool>();
    m.max_features = j.at("max_features").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.base = j.at("base").get<double>();
    m.learning_rate = j.at("learning_rate").get<double>();
    for (const auto& t : j.at("trees")) {
      const auto feature = t.at("feature").get<std::vector<int>>();
      const auto threshold = t.at("threshold").get<std::vector<double>>();
      const auto left = t.at("left").get<std::vector<int>>();
      const auto right = t.at("right").get<std::vector<int>>();
      const auto value = t.at("value").get<std::vector<double>>();
      const std::size_t n = feature.size();
      if (n == 0 || threshold.size() != n || left.size() != n || right.size() != n || value.size() != n) {
        throw ValidationError("tree model: node arrays differ in length");
      }
      DecisionTree tree;
      tree.nodes.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto& node = tree.nodes[i];
        node = {feature[i], threshold[i], left[i], right[i], value[i]};
        if (node.feature >= 0) {
          const auto ok = [&](int c) { return c > static_cast<int>(i) && c < static_cast<int>(n); };
          if (static_cast<std::size_t>(node.feature) >= m.n_features || !ok(node.left) || !ok(node.right)) {
            throw ValidationError(fmt::format("tree model: bad split node {}", i));
          }
        }
      }
      m.trees.push_back(std::move(tree));
    }
    return m;
  });
}

std::string model_kind(const std::string& text) {
  return parse_any(text, "learner")["model"].get<std::string>();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = csv::open_output(path);
  out << text << '\n';
}

std::string read_text(const std::filesystem::path& path) {
  auto in = csv::open_input(path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace aisrepair::learners
