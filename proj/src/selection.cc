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

#include "rim/selection.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <tuple>

#include "rim/error.h"
#include "rim/models.h"

namespace rim {

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kRim:
      return "rim";
    case Strategy::kRandom:
      return "random";
    case Strategy::kDegree:
      return "degree";
    case Strategy::kLpMe:
      return "lp_me";
    case Strategy::kLpMre:
      return "lp_mre";
  }
  return "unknown";
}

Strategy ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kRim, Strategy::kRandom, Strategy::kDegree,
                     Strategy::kLpMe, Strategy::kLpMre}) {
    if (StrategyName(s) == name) return s;
  }
  throw ValidationError("unknown strategy '" + std::string(name) + "'");
}

std::string_view SimilarityModeName(SimilarityMode mode) {
  return mode == SimilarityMode::kFeature ? "feature" : "label";
}

SimilarityMode ParseSimilarityMode(std::string_view name) {
  if (name == "feature") return SimilarityMode::kFeature;
  if (name == "label") return SimilarityMode::kLabel;
  throw ValidationError("unknown similarity mode '" + std::string(name) + "'");
}

void SelectorConfig::Validate(std::size_t train_size, int num_classes) const {
  const int b = EffectiveBatchSize(num_classes);
  if (b <= 0) throw ValidationError("batch size must be positive");
  if (budget < b) {
    throw ValidationError("budget " + std::to_string(budget) +
                          " smaller than batch size " + std::to_string(b));
  }
  if (static_cast<std::size_t>(budget) > train_size) {
    throw ValidationError("budget " + std::to_string(budget) +
                          " exceeds training set size " +
                          std::to_string(train_size));
  }
  if (!(theta >= 0.0)) throw ValidationError("theta must be non-negative");
  if (steps < 0) throw ValidationError("steps must be non-negative");
  if (lp_iterations < 1) throw ValidationError("lp_iterations must be >= 1");
}

int Objective(InfluenceIndex& index, const LabeledSet& labeled, double theta) {
  return BuildActivation(index, labeled, theta).NumActivated();
}

int Objective(const PropagationOperator& op, const LabeledSet& labeled,
              double theta) {
  InfluenceIndex index(op);
  return Objective(index, labeled, theta);
}

namespace {

// Ordering key for greedy picks: gain, then mass, then lower id.
struct Candidate {
  int gain;
  double mass;
  NodeId node;
  int round;  // pick round in which `gain` was computed
};

bool Better(const Candidate& a, const Candidate& b) {
  return std::tie(a.gain, a.mass, b.node) > std::tie(b.gain, b.mass, a.node);
}

struct Worse {
  bool operator()(const Candidate& a, const Candidate& b) const {
    return Better(b, a);
  }
};

void CommitPick(InfluenceIndex& index, ActivationState& state, NodeId pick,
                int gain, double quality, GreedyResult& out) {
  out.picks.push_back(pick);
  out.gains.push_back(gain);
  out.crossed.push_back(state.Raise(index.Column(pick), quality));
  out.objective.push_back(state.NumActivated());
}

}  // namespace

GreedyResult GreedySelect(InfluenceIndex& index, ActivationState& state,
                          std::span<const NodeId> candidates, int count,
                          double quality, bool lazy) {
  GreedyResult out;
  count = std::min<int>(count, static_cast<int>(candidates.size()));
  if (count <= 0) return out;

  if (!lazy) {
    std::vector<NodeId> pool(candidates.begin(), candidates.end());
    for (int round = 0; round < count; ++round) {
      std::size_t best_at = 0;
      Candidate best{-1, 0.0, kNoNode, round};
      for (std::size_t t = 0; t < pool.size(); ++t) {
        const SparseColumn& col = index.Column(pool[t]);
        Candidate c{MarginalGain(state, col, quality), col.mass, pool[t],
                    round};
        if (best.node == kNoNode || Better(c, best)) {
          best = c;
          best_at = t;
        }
      }
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best_at));
      CommitPick(index, state, best.node, best.gain, quality, out);
    }
    return out;
  }

  std::priority_queue<Candidate, std::vector<Candidate>, Worse> heap;
  for (NodeId v : candidates) {
    const SparseColumn& col = index.Column(v);
    heap.push({MarginalGain(state, col, quality), col.mass, v, 0});
  }
  for (int round = 0; round < count;) {
    Candidate top = heap.top();
    heap.pop();
    if (top.round == round) {
      CommitPick(index, state, top.node, top.gain, quality, out);
      ++round;
      continue;
    }
    // Gains only shrink as the state grows, so a refreshed gain that still
    // leads the heap is the true maximum.
    top.gain = MarginalGain(state, index.Column(top.node), quality);
    top.round = round;
    heap.push(top);
  }
  return out;
}

namespace {

std::vector<double> SelectionQualities(const LabeledSet& labeled,
                                       bool reliable_selection) {
  std::vector<double> q;
  q.reserve(labeled.size());
  for (const auto& e : labeled.entries()) {
    q.push_back(reliable_selection ? e.quality : 1.0);
  }
  return q;
}

ActivationState SelectionState(InfluenceIndex& index, const LabeledSet& labeled,
                               const SelectorConfig& config) {
  const auto nodes = labeled.Nodes();
  const auto qualities =
      SelectionQualities(labeled, config.reliable_selection);
  return BuildActivation(index, nodes, qualities, config.theta);
}

}  // namespace

GreedyResult SelectBatch(InfluenceIndex& index, const LabeledSet& labeled,
                         const SelectorConfig& config,
                         std::span<const NodeId> candidates, int count) {
  ActivationState state = SelectionState(index, labeled, config);
  const double quality = config.reliable_selection ? labeled.alpha() : 1.0;
  return GreedySelect(index, state, candidates, count, quality, config.lazy);
}

double RowEntropy(const Matrix& soft_labels, NodeId row) {
  const auto r = soft_labels.row(row);
  const double total = r.sum();
  if (!(total > 0.0)) return std::log(static_cast<double>(r.size()));
  double h = 0.0;
  for (Eigen::Index c = 0; c < r.size(); ++c) {
    const double p = r[c] / total;
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

namespace {

double TotalEntropy(const Matrix& soft_labels) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < soft_labels.rows(); ++i) {
    h += RowEntropy(soft_labels, static_cast<NodeId>(i));
  }
  return h;
}

// Top `count` nodes by score, ties to the lower id.
std::vector<NodeId> TopByScore(std::vector<std::pair<double, NodeId>> scored,
                               int count) {
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<NodeId> out;
  for (int t = 0; t < count && t < static_cast<int>(scored.size()); ++t) {
    out.push_back(scored[t].second);
  }
  return out;
}

std::vector<NodeId> RandomPicks(std::span<const NodeId> candidates, int count,
                                std::mt19937_64& rng) {
  std::vector<NodeId> pool(candidates.begin(), candidates.end());
  std::vector<NodeId> out;
  for (int t = 0; t < count && !pool.empty(); ++t) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const std::size_t at = pick(rng);
    out.push_back(pool[at]);
    pool[at] = pool.back();
    pool.pop_back();
  }
  return out;
}

}  // namespace

std::vector<NodeId> BaselineSelect(Strategy strategy, const Graph& graph,
                                   const LabeledSet& labeled,
                                   std::span<const NodeId> candidates,
                                   int count, std::mt19937_64& rng,
                                   const BaselineOptions& options) {
  switch (strategy) {
    case Strategy::kRandom:
      return RandomPicks(candidates, count, rng);
    case Strategy::kDegree: {
      std::vector<std::pair<double, NodeId>> scored;
      for (NodeId v : candidates) scored.emplace_back(graph.Degree(v), v);
      return TopByScore(std::move(scored), count);
    }
    case Strategy::kLpMe: {
      if (options.soft_labels == nullptr) {
        throw ValidationError("lp_me needs label-propagation soft labels");
      }
      std::vector<std::pair<double, NodeId>> scored;
      for (NodeId v : candidates) {
        scored.emplace_back(RowEntropy(*options.soft_labels, v), v);
      }
      return TopByScore(std::move(scored), count);
    }
    case Strategy::kLpMre: {
      if (options.soft_labels == nullptr || options.lp_operator == nullptr) {
        throw ValidationError(
            "lp_mre needs label-propagation soft labels and an operator");
      }
      const Matrix& current = *options.soft_labels;
      std::vector<NodeId> pool(candidates.begin(), candidates.end());
      if (options.mre_max_candidates > 0 &&
          static_cast<int>(pool.size()) > options.mre_max_candidates) {
        pool = RandomPicks(pool, options.mre_max_candidates, rng);
      }
      const double base = TotalEntropy(current);
      const auto argmax = ArgmaxRows(current);
      const int batch = labeled.LastBatch() + 1;
      std::vector<std::pair<double, NodeId>> scored;
      for (NodeId v : pool) {
        LabeledSet trial = labeled;
        trial.Add(v, argmax[v], labeled.alpha(), batch);
        const SoftLabels rerun =
            LpFitPredict(*options.lp_operator, trial, options.num_classes,
                         options.lp_iterations, options.use_reliability);
        scored.emplace_back(base - TotalEntropy(rerun.values), v);
      }
      return TopByScore(std::move(scored), count);
    }
    case Strategy::kRim:
      break;
  }
  throw ValidationError("rim is not a baseline strategy");
}

namespace {

LabeledSet EntriesBefore(const LabeledSet& labeled, int batch) {
  LabeledSet out(labeled.alpha());
  for (const auto& e : labeled.entries()) {
    if (e.batch < batch) out.Add(e.node, e.label, e.quality, e.batch);
  }
  return out;
}

void RecordFirstActivators(const ActivationState& state,
                           std::vector<NodeId>& first_activator) {
  for (NodeId j = 0; j < state.size(); ++j) {
    if (state.IsActivated(j) && first_activator[j] == kNoNode) {
      first_activator[j] = state.best_source(j);
    }
  }
}

}  // namespace

ActiveLearningResult RunActiveLearning(const Graph& graph,
                                       const SelectorConfig& config,
                                       NoisyOracle& oracle) {
  const int c = graph.num_classes();
  config.Validate(graph.splits().train.size(), c);
  const NodeId n = graph.num_nodes();
  const int b = config.EffectiveBatchSize(c);

  PropagationOperator op(graph, config.steps);
  InfluenceIndex index(op);
  std::optional<SimilaritySource> feature_similarity;
  if (config.mode == SimilarityMode::kFeature) {
    feature_similarity.emplace(SimilarityMode::kFeature, SmoothFeatures(op));
  }
  std::mt19937_64 rng(config.seed);

  ActiveLearningResult result{LabeledSet(oracle.alpha()), {}};
  LabeledSet& labeled = result.labeled;
  SelectionTrace& trace = result.trace;
  trace.first_activator.assign(n, kNoNode);

  std::vector<NodeId> candidates = graph.splits().train;
  std::sort(candidates.begin(), candidates.end());

  const double candidate_quality =
      config.reliable_selection ? oracle.alpha() : 1.0;
  const int num_batches = (config.budget + b - 1) / b;
  for (int batch = 0; batch < num_batches; ++batch) {
    const int count =
        std::min<int>(b, config.budget - static_cast<int>(labeled.size()));
    ActivationState state = SelectionState(index, labeled, config);
    RecordFirstActivators(state, trace.first_activator);

    GreedyResult picked;
    if (config.strategy == Strategy::kRim) {
      picked = GreedySelect(index, state, candidates, count, candidate_quality,
                            config.lazy);
    } else {
      std::optional<SoftLabels> lp_state;
      BaselineOptions options;
      options.num_classes = c;
      options.lp_operator = &op;
      options.lp_iterations = config.lp_iterations;
      options.use_reliability = config.reliable_training;
      options.mre_max_candidates = config.mre_max_candidates;
      std::vector<NodeId> picks;
      const bool needs_lp = config.strategy == Strategy::kLpMe ||
                            config.strategy == Strategy::kLpMre;
      if (needs_lp && labeled.empty()) {
        // Nothing to propagate yet: the first batch is drawn at random.
        picks = RandomPicks(candidates, count, rng);
      } else {
        if (needs_lp) {
          lp_state = LpFitPredict(op, labeled, c, config.lp_iterations,
                                  config.reliable_training);
          options.soft_labels = &lp_state->values;
        }
        picks = BaselineSelect(config.strategy, graph, labeled, candidates,
                               count, rng, options);
      }
      for (NodeId v : picks) {
        const int gain =
            MarginalGain(state, index.Column(v), candidate_quality);
        CommitPick(index, state, v, gain, candidate_quality, picked);
      }
    }
    for (std::size_t t = 0; t < picked.picks.size(); ++t) {
      for (NodeId j : picked.crossed[t]) {
        if (trace.first_activator[j] == kNoNode) {
          trace.first_activator[j] = picked.picks[t];
        }
      }
    }

    BatchRecord record;
    record.batch = batch;
    record.picks = picked.picks;
    record.gains = picked.gains;
    record.objective = picked.objective;
    for (NodeId v : picked.picks) {
      const int label = oracle.Query(v);
      record.labels.push_back(label);
      labeled.Add(v, label, oracle.alpha(), batch);
    }
    std::erase_if(candidates, [&](NodeId v) { return labeled.Contains(v); });

    // The first batch has no earlier references and keeps quality alpha.
    if (batch > 0 && c >= 2) {
      if (config.mode == SimilarityMode::kFeature) {
        UpdateQuality(labeled, picked.picks, *feature_similarity, c);
      } else {
        const LabeledSet earlier = EntriesBefore(labeled, batch);
        const SoftLabels y =
            LpFitPredict(op, earlier, c, config.lp_iterations, true);
        UpdateQuality(labeled, picked.picks,
                      SimilaritySource(SimilarityMode::kLabel, y.values), c);
      }
    }
    for (NodeId v : picked.picks) {
      record.qualities.push_back(labeled[*labeled.IndexOf(v)].quality);
    }
    record.activated_after_update =
        SelectionState(index, labeled, config).NumActivated();
    trace.batches.push_back(std::move(record));
  }

  ActivationState final_state = SelectionState(index, labeled, config);
  RecordFirstActivators(final_state, trace.first_activator);
  trace.final_activated.resize(n);
  for (NodeId j = 0; j < n; ++j) {
    trace.final_activated[j] = final_state.IsActivated(j);
  }
  trace.final_objective = final_state.NumActivated();
  return result;
}

}  // namespace rim
