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

// Command-line front end: experiment, select, train, influence, sbm.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "rim/dataset_io.h"
#include "rim/error.h"
#include "rim/experiment.h"
#include "rim/influence.h"
#include "rim/models.h"
#include "rim/oracle.h"
#include "rim/sbm.h"
#include "rim/selection.h"
#include "rim/trace_io.h"

namespace {

using nlohmann::json;

int RunExperimentCommand(const std::string& config_path,
                         const std::string& out_dir,
                         std::optional<std::uint64_t> seed, int threads) {
  rim::ExperimentConfig config =
      rim::ParseExperimentConfig(rim::ReadJsonFile(config_path));
  if (seed) config.seed = *seed;
  const auto results = rim::RunExperiment(config, threads);
  rim::WriteExperimentOutputs(config, results, out_dir);
  for (const auto& cell : rim::Summarize(config, results)) {
    std::cout << fmt::format("{:<12} alpha={:<4} budget={:<5} acc={:.4f} "
                             "(sd {:.4f}, {} runs, {} failed)\n",
                             cell.method, cell.alpha, cell.budget,
                             cell.mean_accuracy, cell.std_accuracy, cell.runs,
                             cell.failed);
  }
  return 0;
}

int RunSelectCommand(const std::string& dataset, const std::string& config_path,
                     const std::string& out, std::optional<std::uint64_t> seed) {
  const rim::Graph graph = rim::LoadDatasetDir(dataset);
  rim::SelectionRequest req =
      rim::ParseSelectionRequest(rim::ReadJsonFile(config_path));
  if (seed) req.config.seed = *seed;
  rim::NoisyOracle oracle(graph.labels(), graph.num_classes(), req.alpha,
                          rim::CellSeed(req.config.seed, 0));
  const auto result = rim::RunActiveLearning(graph, req.config, oracle);
  rim::WriteJsonFile(out, rim::TraceToJson(req.config, result));
  std::cout << fmt::format("selected {} nodes, final objective {}\n",
                           result.labeled.size(),
                           result.trace.final_objective);
  return 0;
}

int RunTrainCommand(const std::string& model, const std::string& trace_path,
                    const std::string& dataset, const std::string& out,
                    std::optional<int> steps, std::optional<bool> reliability,
                    int lp_iterations, const rim::SgcHyperparameters& hyper) {
  const rim::Graph graph = rim::LoadDatasetDir(dataset);
  const json trace = rim::ReadJsonFile(trace_path);
  const rim::LabeledSet labeled = rim::LabeledSetFromJson(trace);
  const json& cfg = trace.contains("config") ? trace.at("config") : json::object();
  const int k = steps.value_or(cfg.value("steps", 2));
  const bool use_rel =
      reliability.value_or(cfg.value("reliable_training", true));

  rim::PropagationOperator op(graph, k);
  rim::SoftLabels predicted;
  if (model == "lp") {
    predicted = rim::LpFitPredict(op, labeled, graph.num_classes(),
                                  lp_iterations, use_rel);
  } else {
    const rim::Matrix smoothed = rim::SmoothFeatures(op);
    predicted = rim::SgcFit(smoothed, labeled, graph.num_classes(), hyper,
                            use_rel)
                    .Predict(smoothed);
  }
  json metrics = {{"model", model},
                  {"steps", k},
                  {"reliable_training", use_rel},
                  {"labeled", labeled.size()},
                  {"unreached", predicted.NumUnreached()}};
  for (auto [name, split] : {std::pair{"val", rim::Split::kVal},
                             std::pair{"test", rim::Split::kTest}}) {
    if (!graph.split(split).empty()) {
      metrics[std::string(name) + "_accuracy"] =
          rim::Evaluate(predicted.predictions, graph, split);
    }
  }
  rim::WriteJsonFile(out, metrics);
  std::cout << metrics.dump() << '\n';
  return 0;
}

int RunInfluenceCommand(const std::string& dataset,
                        const std::vector<rim::NodeId>& sources, int steps,
                        const std::string& out) {
  const rim::Graph graph = rim::LoadDatasetDir(dataset);
  rim::PropagationOperator op(graph, steps);
  std::ofstream file;
  if (!out.empty()) file.open(out);
  std::ostream& os = out.empty() ? std::cout : file;
  os << "source,node,score\n";
  for (rim::NodeId s : sources) {
    const auto column = rim::ComputeInfluenceColumn(op, s);
    for (rim::NodeId j = 0; j < graph.num_nodes(); ++j) {
      if (column.scores[j] > 0.0) {
        os << fmt::format("{},{},{}\n", s, j, column.scores[j]);
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reliable influence maximization for graph active learning"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  int threads = 1;
  app.add_option("--seed", seed, "Override the master seed");
  app.add_option("--threads", threads, "Worker threads for experiment grids")
      ->check(CLI::PositiveNumber);

  auto* experiment = app.add_subcommand("experiment", "Run an experiment grid");
  std::string exp_config, exp_out;
  experiment->add_option("--config", exp_config)->required();
  experiment->add_option("--out", exp_out)->required();

  auto* select = app.add_subcommand("select", "Run the active-learning loop");
  std::string sel_dataset, sel_config, sel_out;
  select->add_option("--dataset", sel_dataset)->required();
  select->add_option("--config", sel_config)->required();
  select->add_option("--out", sel_out)->required();

  auto* train = app.add_subcommand("train", "Train and evaluate a classifier");
  std::string train_model = "lp", train_labeled, train_dataset, train_out;
  std::optional<int> train_steps;
  std::optional<bool> train_reliability;
  int lp_iterations = rim::kDefaultLpIterations;
  rim::SgcHyperparameters hyper;
  train->add_option("--model", train_model)
      ->check(CLI::IsMember({"lp", "sgc"}));
  train->add_option("--labeled", train_labeled, "trace.json from select")
      ->required();
  train->add_option("--dataset", train_dataset)->required();
  train->add_option("--out", train_out)->required();
  train->add_option("--steps", train_steps);
  train->add_option("--reliability", train_reliability,
                    "Weight labels by quality (default: from trace)");
  train->add_option("--lp-iterations", lp_iterations);
  train->add_option("--lr", hyper.learning_rate);
  train->add_option("--epochs", hyper.epochs);
  train->add_option("--weight-decay", hyper.weight_decay);

  auto* influence =
      app.add_subcommand("influence", "Dump k-step influence columns as CSV");
  std::string inf_dataset, inf_out;
  std::vector<rim::NodeId> inf_sources;
  int inf_steps = 2;
  influence->add_option("--dataset", inf_dataset)->required();
  influence->add_option("--source", inf_sources)->required();
  influence->add_option("--steps", inf_steps);
  influence->add_option("--out", inf_out);

  auto* sbm = app.add_subcommand("sbm", "Write a synthetic SBM dataset");
  rim::SbmParams params;
  std::string sbm_out;
  sbm->add_option("--out", sbm_out)->required();
  sbm->add_option("--blocks", params.blocks);
  sbm->add_option("--block-size", params.block_size);
  sbm->add_option("--p-intra", params.p_intra);
  sbm->add_option("--p-inter", params.p_inter);
  sbm->add_option("--feature-dim", params.feature_dim);
  sbm->add_option("--feature-noise", params.feature_noise);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*experiment) {
      return RunExperimentCommand(exp_config, exp_out, seed, threads);
    }
    if (*select) return RunSelectCommand(sel_dataset, sel_config, sel_out, seed);
    if (*train) {
      return RunTrainCommand(train_model, train_labeled, train_dataset,
                             train_out, train_steps, train_reliability,
                             lp_iterations, hyper);
    }
    if (*influence) {
      return RunInfluenceCommand(inf_dataset, inf_sources, inf_steps, inf_out);
    }
    if (*sbm) {
      rim::WriteDatasetDir(rim::GenerateSbm(params, seed.value_or(0)), sbm_out);
      return 0;
    }
  } catch (const rim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
