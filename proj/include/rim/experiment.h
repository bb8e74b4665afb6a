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

#ifndef RIM_EXPERIMENT_H_
#define RIM_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rim/labeled_set.h"
#include "rim/models.h"
#include "rim/sbm.h"
#include "rim/selection.h"

namespace rim {

enum class ModelKind { kLp, kSgc };

// A named selector setting. "rim", "no_rt", "no_rs" and "no_rts" are the
// influence-maximizing selector with reliable training and/or reliable
// selection switched off. "random", "degree", "lp_me" and "lp_mre" are
// baselines; a "_no_rt" suffix trains them without reliability weights.
struct MethodSpec {
  std::string name;
  Strategy strategy = Strategy::kRim;
  bool reliable_selection = true;
  bool reliable_training = true;
};

MethodSpec ParseMethod(const std::string& name);

struct ExperimentConfig {
  std::optional<std::string> dataset_path;  // unset: synthetic SBM
  SbmParams sbm;
  ModelKind model = ModelKind::kLp;
  std::vector<MethodSpec> methods;
  // Oracle accuracies; the default sweeps error rates 0 to 0.5.
  std::vector<double> alphas = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5};
  // Empty: 20 labels per class.
  std::vector<int> budgets;
  int batch_size = 0;
  int steps = 2;
  double theta = 0.05;
  int repetitions = 10;
  std::uint64_t seed = 0;
  // Empty: label mode for lp, feature mode for sgc.
  std::optional<SimilarityMode> mode;
  int lp_iterations = kDefaultLpIterations;
  SgcHyperparameters sgc;
  int mre_max_candidates = 500;
  bool record_timing = false;
  bool write_traces = true;

  SimilarityMode EffectiveMode() const;
  // Throws ValidationError on empty sweeps or repetitions < 1.
  void Validate() const;
};

// Strict parser: unknown keys raise ValidationError.
ExperimentConfig ParseExperimentConfig(const nlohmann::json& doc);

struct ActivationCounts {
  int correct = 0;
  int incorrect = 0;
  int inactive = 0;
};

// A node counts as correctly (incorrectly) activated when it is activated
// under the final labeled set and the labeled node that first activated it
// received a correct (wrong) oracle label; every other node is inactive.
ActivationCounts ActivationBreakdown(const SelectionTrace& trace,
                                     const LabeledSet& labeled,
                                     std::span<const int> ground_truth);

struct RunResult {
  std::string method;
  double alpha = 1.0;
  int budget = 0;
  int rep = 0;
  double accuracy = 0.0;
  ActivationCounts activation;
  double seconds = 0.0;
  std::optional<std::string> error;
  nlohmann::json trace;  // null unless traces are kept
};

struct CellSummary {
  std::string method;
  double alpha = 1.0;
  int budget = 0;
  int runs = 0;
  int failed = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double mean_correct = 0.0;
  double mean_incorrect = 0.0;
  double mean_inactive = 0.0;
};

// Seed for grid cell `cell`: splitmix64(splitmix64(master) ⊕ cell).
std::uint64_t CellSeed(std::uint64_t master, std::uint64_t cell);

// Runs every (method, alpha, budget, repetition) of the grid. Results are
// ordered by method, alpha, budget, then repetition regardless of `threads`.
// A failing run is kept with `error` set.
std::vector<RunResult> RunExperiment(const ExperimentConfig& config,
                                     int threads = 1);

std::vector<CellSummary> Summarize(const ExperimentConfig& config,
                                   std::span<const RunResult> results);

// results.csv, summary.json and traces/ under `dir`.
void WriteExperimentOutputs(const ExperimentConfig& config,
                            std::span<const RunResult> results,
                            const std::filesystem::path& dir);

std::string ResultsCsv(std::span<const RunResult> results, bool with_timing);

}  // namespace rim

#endif  // RIM_EXPERIMENT_H_
