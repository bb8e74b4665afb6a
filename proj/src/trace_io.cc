// Copyright 2026 The RIM Authors.
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

#include "rim/trace_io.h"

#include <fstream>
#include <set>
#include <string>

#include "rim/error.h"

namespace rim {

using nlohmann::json;

SelectionRequest ParseSelectionRequest(const json& doc) {
  if (!doc.is_object()) throw ValidationError("selector config must be an object");
  static const std::set<std::string> kKeys = {
      "budget",   "batch_size",         "theta",
      "steps",    "mode",               "reliable_selection",
      "reliable_training", "strategy",  "seed",
      "lp_iterations", "mre_max_candidates", "lazy",
      "alpha"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.contains(key)) {
      throw ValidationError("unknown selector config key '" + key + "'");
    }
  }
  SelectionRequest req;
  SelectorConfig& c = req.config;
  try {
    c.budget = doc.at("budget").get<int>();
    c.batch_size = doc.value("batch_size", c.batch_size);
    c.theta = doc.value("theta", c.theta);
    c.steps = doc.value("steps", c.steps);
    if (doc.contains("mode")) {
      c.mode = ParseSimilarityMode(doc.at("mode").get<std::string>());
    }
    c.reliable_selection = doc.value("reliable_selection", c.reliable_selection);
    c.reliable_training = doc.value("reliable_training", c.reliable_training);
    if (doc.contains("strategy")) {
      c.strategy = ParseStrategy(doc.at("strategy").get<std::string>());
    }
    c.seed = doc.value("seed", c.seed);
    c.lp_iterations = doc.value("lp_iterations", c.lp_iterations);
    c.mre_max_candidates = doc.value("mre_max_candidates", c.mre_max_candidates);
    c.lazy = doc.value("lazy", c.lazy);
    req.alpha = doc.value("alpha", req.alpha);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("selector config: ") + e.what());
  }
  return req;
}

json SelectorConfigToJson(const SelectorConfig& c) {
  return {{"budget", c.budget},
          {"batch_size", c.batch_size},
          {"theta", c.theta},
          {"steps", c.steps},
          {"mode", SimilarityModeName(c.mode)},
          {"reliable_selection", c.reliable_selection},
          {"reliable_training", c.reliable_training},
          {"strategy", StrategyName(c.strategy)},
          {"seed", c.seed},
          {"lp_iterations", c.lp_iterations},
          {"mre_max_candidates", c.mre_max_candidates},
          {"lazy", c.lazy}};
}

json TraceToJson(const SelectorConfig& config,
                 const ActiveLearningResult& result) {
  json labeled = json::array();
  for (const auto& e : result.labeled.entries()) {
    labeled.push_back({{"node", e.node},
                       {"label", e.label},
                       {"quality", e.quality},
                       {"batch", e.batch}});
  }
  json batches = json::array();
  for (const auto& b : result.trace.batches) {
    batches.push_back({{"batch", b.batch},
                       {"picks", b.picks},
                       {"labels", b.labels},
                       {"gains", b.gains},
                       {"objective", b.objective},
                       {"qualities", b.qualities},
                       {"activated_after_update", b.activated_after_update}});
  }
  std::vector<int> final_activated;
  for (bool a : result.trace.final_activated) final_activated.push_back(a);
  return {{"config", SelectorConfigToJson(config)},
          {"alpha", result.labeled.alpha()},
          {"num_nodes", result.trace.first_activator.size()},
          {"labeled", std::move(labeled)},
          {"batches", std::move(batches)},
          {"first_activator", result.trace.first_activator},
          {"final_activated", final_activated},
          {"final_objective", result.trace.final_objective}};
}

LabeledSet LabeledSetFromJson(const json& trace) {
  try {
    LabeledSet out(trace.at("alpha").get<double>());
    for (const auto& e : trace.at("labeled")) {
      out.Add(e.at("node").get<NodeId>(), e.at("label").get<int>(),
              e.at("quality").get<double>(), e.at("batch").get<int>());
    }
    return out;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed trace: ") + e.what());
  }
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const json& doc) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace rim
