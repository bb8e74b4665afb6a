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

#include "rim/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "rim/dataset_io.h"
#include "rim/error.h"
#include "rim/oracle.h"
#include "rim/trace_io.h"

namespace rim {

using nlohmann::json;

MethodSpec ParseMethod(const std::string& name) {
  MethodSpec m;
  m.name = name;
  if (name == "rim") return m;
  if (name == "no_rt") {
    m.reliable_training = false;
    return m;
  }
  if (name == "no_rs") {
    m.reliable_selection = false;
    return m;
  }
  if (name == "no_rts") {
    m.reliable_selection = false;
    m.reliable_training = false;
    return m;
  }
  std::string base = name;
  constexpr std::string_view kNoRt = "_no_rt";
  if (base.size() > kNoRt.size() && base.ends_with(kNoRt)) {
    base.resize(base.size() - kNoRt.size());
    m.reliable_training = false;
  }
  m.strategy = ParseStrategy(base);
  if (m.strategy == Strategy::kRim) {
    throw ValidationError("use no_rt instead of rim_no_rt");
  }
  return m;
}

SimilarityMode ExperimentConfig::EffectiveMode() const {
  if (mode) return *mode;
  return model == ModelKind::kLp ? SimilarityMode::kLabel
                                 : SimilarityMode::kFeature;
}

void ExperimentConfig::Validate() const {
  if (methods.empty()) throw ValidationError("methods list is empty");
  if (alphas.empty()) throw ValidationError("alphas list is empty");
  if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw ValidationError("alpha " + std::to_string(a) +
                            " outside (0, 1]");
    }
  }
  for (int b : budgets) {
    if (b < 1) throw ValidationError("budgets must be positive");
  }
  if (!dataset_path) sbm.Validate();
  if (steps < 0) throw ValidationError("steps must be non-negative");
  if (!(theta >= 0.0)) throw ValidationError("theta must be non-negative");
}

namespace {

void CheckKeys(const json& obj, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError("unknown key '" + key + "' in " + where);
    }
  }
}

SbmParams ParseSbm(const json& doc) {
  CheckKeys(doc,
            {"blocks", "block_size", "p_intra", "p_inter", "feature_dim",
             "feature_noise", "train_fraction", "val_fraction"},
            "dataset.sbm");
  SbmParams p;
  p.blocks = doc.value("blocks", p.blocks);
  p.block_size = doc.value("block_size", p.block_size);
  p.p_intra = doc.value("p_intra", p.p_intra);
  p.p_inter = doc.value("p_inter", p.p_inter);
  p.feature_dim = doc.value("feature_dim", p.feature_dim);
  p.feature_noise = doc.value("feature_noise", p.feature_noise);
  p.train_fraction = doc.value("train_fraction", p.train_fraction);
  p.val_fraction = doc.value("val_fraction", p.val_fraction);
  return p;
}

}  // namespace

ExperimentConfig ParseExperimentConfig(const json& doc) {
  CheckKeys(doc,
            {"dataset", "model", "methods", "alphas", "budgets", "batch_size",
             "steps", "theta", "repetitions", "seed", "mode", "lp_iterations",
             "sgc", "mre_max_candidates", "record_timing", "write_traces"},
            "experiment config");
  ExperimentConfig c;
  try {
    if (doc.contains("dataset")) {
      const json& ds = doc.at("dataset");
      CheckKeys(ds, {"path", "sbm"}, "dataset");
      if (ds.contains("path") && ds.contains("sbm")) {
        throw ValidationError("dataset takes either path or sbm, not both");
      }
      if (ds.contains("path")) c.dataset_path = ds.at("path").get<std::string>();
      if (ds.contains("sbm")) c.sbm = ParseSbm(ds.at("sbm"));
    }
    const std::string model = doc.value("model", std::string("lp"));
    if (model == "lp") {
      c.model = ModelKind::kLp;
    } else if (model == "sgc") {
      c.model = ModelKind::kSgc;
    } else {
      throw ValidationError("model must be lp or sgc, got '" + model + "'");
    }
    for (const auto& m : doc.value("methods", std::vector<std::string>{"rim", "random"})) {
      c.methods.push_back(ParseMethod(m));
    }
    if (doc.contains("alphas")) c.alphas = doc.at("alphas").get<std::vector<double>>();
    if (doc.contains("budgets")) c.budgets = doc.at("budgets").get<std::vector<int>>();
    c.batch_size = doc.value("batch_size", c.batch_size);
    c.steps = doc.value("steps", c.steps);
    c.theta = doc.value("theta", c.theta);
    c.repetitions = doc.value("repetitions", c.repetitions);
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("mode")) {
      const auto mode = doc.at("mode").get<std::string>();
      if (mode != "auto") c.mode = ParseSimilarityMode(mode);
    }
    c.lp_iterations = doc.value("lp_iterations", c.lp_iterations);
    if (doc.contains("sgc")) {
      const json& s = doc.at("sgc");
      CheckKeys(s, {"learning_rate", "epochs", "weight_decay"}, "sgc");
      c.sgc.learning_rate = s.value("learning_rate", c.sgc.learning_rate);
      c.sgc.epochs = s.value("epochs", c.sgc.epochs);
      c.sgc.weight_decay = s.value("weight_decay", c.sgc.weight_decay);
    }
    c.mre_max_candidates = doc.value("mre_max_candidates", c.mre_max_candidates);
    c.record_timing = doc.value("record_timing", c.record_timing);
    c.write_traces = doc.value("write_traces", c.write_traces);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("experiment config: ") + e.what());
  }
  c.Validate();
  return c;
}

ActivationCounts ActivationBreakdown(const SelectionTrace& trace,
                                     const LabeledSet& labeled,
                                     std::span<const int> ground_truth) {
  ActivationCounts counts;
  const std::size_t n = trace.first_activator.size();
  for (std::size_t j = 0; j < n; ++j) {
    const NodeId source = trace.first_activator[j];
    const bool active = j < trace.final_activated.size()
                            ? trace.final_activated[j]
                            : source != kNoNode;
    if (!active || source == kNoNode) {
      ++counts.inactive;
      continue;
    }
    const auto idx = labeled.IndexOf(source);
    if (!idx) throw IndexError("first activator is not a labeled node");
    if (labeled[*idx].label == ground_truth[source]) {
      ++counts.correct;
    } else {
      ++counts.incorrect;
    }
  }
  return counts;
}

namespace {

std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CellSeed(std::uint64_t master, std::uint64_t cell) {
  // The master is scrambled first: a plain master ⊕ cell maps small masters
  // onto permutations of one another's cell seeds.
  return SplitMix64(SplitMix64(master) ^ cell);
}

namespace {

struct RunTask {
  std::size_t method;
  std::size_t alpha;
  std::size_t budget;
  int rep;
};

constexpr std::uint64_t kGraphStream = 0x6772617068ULL;  // "graph"

RunResult RunOne(const ExperimentConfig& config, const Graph& graph,
                 const RunTask& task, int budget) {
  const MethodSpec& method = config.methods[task.method];
  RunResult r;
  r.method = method.name;
  r.alpha = config.alphas[task.alpha];
  r.budget = budget;
  r.rep = task.rep;

  const auto start = std::chrono::steady_clock::now();
  try {
    // Methods share the cell seed so their runs are paired.
    const std::uint64_t cell =
        (task.alpha * std::max<std::size_t>(config.budgets.size(), 1) +
         task.budget) *
            static_cast<std::uint64_t>(config.repetitions) +
        static_cast<std::uint64_t>(task.rep);
    const std::uint64_t seed = CellSeed(config.seed, cell);

    SelectorConfig sc;
    sc.budget = budget;
    sc.batch_size = config.batch_size;
    sc.theta = config.theta;
    sc.steps = config.steps;
    sc.mode = config.EffectiveMode();
    sc.reliable_selection = method.reliable_selection;
    sc.reliable_training = method.reliable_training;
    sc.strategy = method.strategy;
    sc.seed = CellSeed(seed, 1);
    sc.lp_iterations = config.lp_iterations;
    sc.mre_max_candidates = config.mre_max_candidates;

    NoisyOracle oracle(graph.labels(), graph.num_classes(), r.alpha,
                       CellSeed(seed, 0));
    ActiveLearningResult al = RunActiveLearning(graph, sc, oracle);

    PropagationOperator op(graph, config.steps);
    std::vector<int> predictions;
    if (config.model == ModelKind::kLp) {
      predictions = LpFitPredict(op, al.labeled, graph.num_classes(),
                                 config.lp_iterations,
                                 method.reliable_training)
                        .predictions;
    } else {
      const Matrix smoothed = SmoothFeatures(op);
      const SoftmaxModel model =
          SgcFit(smoothed, al.labeled, graph.num_classes(), config.sgc,
                 method.reliable_training);
      predictions = model.Predict(smoothed).predictions;
    }
    r.accuracy = Evaluate(predictions, graph, Split::kTest);
    r.activation = ActivationBreakdown(al.trace, al.labeled, graph.labels());
    if (config.write_traces) r.trace = TraceToJson(sc, al);
  } catch (const std::exception& e) {
    r.error = e.what();
    r.accuracy = std::nan("");
  }
  r.seconds = std::chrono::duration<double>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

}  // namespace

std::vector<RunResult> RunExperiment(const ExperimentConfig& config,
                                     int threads) {
  config.Validate();
  std::vector<std::shared_ptr<const Graph>> graphs;
  if (config.dataset_path) {
    graphs.assign(config.repetitions,
                  std::make_shared<const Graph>(
                      LoadDatasetDir(*config.dataset_path)));
  } else {
    for (int rep = 0; rep < config.repetitions; ++rep) {
      graphs.push_back(std::make_shared<const Graph>(GenerateSbm(
          config.sbm,
          CellSeed(config.seed ^ kGraphStream, static_cast<std::uint64_t>(rep)))));
    }
  }

  std::vector<RunTask> tasks;
  const std::size_t num_budgets = std::max<std::size_t>(config.budgets.size(), 1);
  for (std::size_t m = 0; m < config.methods.size(); ++m) {
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      for (std::size_t b = 0; b < num_budgets; ++b) {
        for (int rep = 0; rep < config.repetitions; ++rep) {
          tasks.push_back({m, a, b, rep});
        }
      }
    }
  }

  std::vector<RunResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Graph& g = *graphs[tasks[t].rep];
      const int budget = config.budgets.empty()
                             ? 20 * g.num_classes()
                             : config.budgets[tasks[t].budget];
      results[t] = RunOne(config, g, tasks[t], budget);
    }
  };
  const int workers = std::max(1, threads);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return results;
}

std::vector<CellSummary> Summarize(const ExperimentConfig& config,
                                   std::span<const RunResult> results) {
  std::vector<CellSummary> cells;
  const auto reps = static_cast<std::size_t>(config.repetitions);
  for (std::size_t start = 0; start < results.size(); start += reps) {
    CellSummary cell;
    const RunResult& head = results[start];
    cell.method = head.method;
    cell.alpha = head.alpha;
    cell.budget = head.budget;
    std::vector<double> acc;
    for (std::size_t t = start; t < start + reps && t < results.size(); ++t) {
      const RunResult& r = results[t];
      if (r.error) {
        ++cell.failed;
        continue;
      }
      acc.push_back(r.accuracy);
      cell.mean_correct += r.activation.correct;
      cell.mean_incorrect += r.activation.incorrect;
      cell.mean_inactive += r.activation.inactive;
    }
    cell.runs = static_cast<int>(acc.size());
    if (!acc.empty()) {
      const double k = static_cast<double>(acc.size());
      double sum = 0.0;
      for (double a : acc) sum += a;
      cell.mean_accuracy = sum / k;
      double ss = 0.0;
      for (double a : acc) ss += (a - cell.mean_accuracy) * (a - cell.mean_accuracy);
      cell.std_accuracy = acc.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
      cell.mean_correct /= k;
      cell.mean_incorrect /= k;
      cell.mean_inactive /= k;
    } else {
      cell.mean_accuracy = std::nan("");
      cell.std_accuracy = std::nan("");
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string ResultsCsv(std::span<const RunResult> results, bool with_timing) {
  std::string out =
      "method,alpha,budget,rep,accuracy,correct_act,incorrect_act,inactive,"
      "seconds\n";
  for (const RunResult& r : results) {
    if (r.error) {
      out += fmt::format("{},{},{},{},error,,,,\n", r.method, r.alpha,
                         r.budget, r.rep);
      continue;
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.method, r.alpha,
                       r.budget, r.rep, r.accuracy, r.activation.correct,
                       r.activation.incorrect, r.activation.inactive,
                       with_timing ? fmt::format("{:.3f}", r.seconds) : "");
  }
  return out;
}

void WriteExperimentOutputs(const ExperimentConfig& config,
                            std::span<const RunResult> results,
                            const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "results.csv") << ResultsCsv(results, config.record_timing);

  json cells = json::array();
  for (const CellSummary& c : Summarize(config, results)) {
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    cells.push_back({{"method", c.method},
                     {"alpha", c.alpha},
                     {"budget", c.budget},
                     {"runs", c.runs},
                     {"failed", c.failed},
                     {"mean_accuracy", num(c.mean_accuracy)},
                     {"std_accuracy", num(c.std_accuracy)},
                     {"mean_correct_act", c.mean_correct},
                     {"mean_incorrect_act", c.mean_incorrect},
                     {"mean_inactive", c.mean_inactive}});
  }
  json errors = json::array();
  for (const RunResult& r : results) {
    if (r.error) {
      errors.push_back({{"method", r.method},
                        {"alpha", r.alpha},
                        {"budget", r.budget},
                        {"rep", r.rep},
                        {"error", *r.error}});
    }
  }
  WriteJsonFile(dir / "summary.json", {{"cells", cells}, {"errors", errors}});

  if (config.write_traces) {
    for (const RunResult& r : results) {
      if (r.trace.is_null()) continue;
      WriteJsonFile(dir / "traces" /
                        fmt::format("{}_alpha{}_budget{}_rep{}.json", r.method,
                                    r.alpha, r.budget, r.rep),
                    r.trace);
    }
  }
}

}  // namespace rim
