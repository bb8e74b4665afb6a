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

#ifndef RIM_SELECTION_H_
#define RIM_SELECTION_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "rim/graph.h"
#include "rim/influence.h"
#include "rim/labeled_set.h"
#include "rim/oracle.h"
#include "rim/reliability.h"

namespace rim {

enum class Strategy { kRim, kRandom, kDegree, kLpMe, kLpMre };

std::string_view StrategyName(Strategy strategy);
// Throws ValidationError on an unknown name.
Strategy ParseStrategy(std::string_view name);

std::string_view SimilarityModeName(SimilarityMode mode);
SimilarityMode ParseSimilarityMode(std::string_view name);

struct SelectorConfig {
  int budget = 0;
  int batch_size = 0;  // 0 selects one node per class and batch
  double theta = 0.05;
  int steps = 2;
  SimilarityMode mode = SimilarityMode::kFeature;
  bool reliable_selection = true;
  bool reliable_training = true;
  Strategy strategy = Strategy::kRim;
  std::uint64_t seed = 0;
  int lp_iterations = 10;
  int mre_max_candidates = 500;
  bool lazy = true;

  int EffectiveBatchSize(int num_classes) const {
    return batch_size > 0 ? batch_size : num_classes;
  }
  // Throws ValidationError unless 0 < b ≤ B ≤ train_size and θ ≥ 0.
  void Validate(std::size_t train_size, int num_classes) const;
};

struct BatchRecord {
  int batch = 0;
  std::vector<NodeId> picks;        // in pick order
  std::vector<int> labels;          // oracle answers
  std::vector<int> gains;           // marginal gain of each pick
  std::vector<int> objective;       // F after each pick
  std::vector<double> qualities;    // after the batch's quality update
  int activated_after_update = 0;   // F once updated qualities are applied
};

struct SelectionTrace {
  std::vector<BatchRecord> batches;
  // First labeled node to push each node above theta (kNoNode if never).
  std::vector<NodeId> first_activator;
  // Activation under the final labeled set and qualities.
  std::vector<bool> final_activated;
  int final_objective = 0;
};

// F(V_l) = |σ(V_l)| with the labeled set's own qualities.
int Objective(InfluenceIndex& index, const LabeledSet& labeled, double theta);
int Objective(const PropagationOperator& op, const LabeledSet& labeled,
              double theta);

struct GreedyResult {
  std::vector<NodeId> picks;
  std::vector<int> gains;
  std::vector<int> objective;
  std::vector<std::vector<NodeId>> crossed;  // nodes activated by each pick
};

// Greedy maximization of F over `candidates`, every candidate entering with
// the same quality. `state` is advanced by each pick. Ties on gain go to the
// larger influence mass, then the lower node id; once every gain is zero this
// ordering picks by mass alone. The lazy variant keeps stale gains in a
// max-heap and returns exactly the naive picks.
GreedyResult GreedySelect(InfluenceIndex& index, ActivationState& state,
                          std::span<const NodeId> candidates, int count,
                          double quality, bool lazy = true);

// One batch of influence-maximizing picks for the current labeled set.
// Existing nodes enter with their qualities (1 when reliable selection is
// off), candidates with alpha (1 when reliable selection is off).
GreedyResult SelectBatch(InfluenceIndex& index, const LabeledSet& labeled,
                         const SelectorConfig& config,
                         std::span<const NodeId> candidates, int count);

struct BaselineOptions {
  int num_classes = 0;
  // Current label-propagation soft labels; required by lp_me and lp_mre.
  const Matrix* soft_labels = nullptr;
  // Operator used to rerun label propagation; required by lp_mre.
  const PropagationOperator* lp_operator = nullptr;
  int lp_iterations = 10;
  bool use_reliability = true;
  int mre_max_candidates = 500;
};

// Shannon entropy of a row normalized to a distribution; log c for zero rows.
double RowEntropy(const Matrix& soft_labels, NodeId row);

// random: uniform without replacement. degree: highest degree. lp_me: highest
// soft-label entropy. lp_mre: largest drop in total entropy after labeling the
// candidate with its current argmax and rerunning propagation. Ties go to the
// lower node id. Throws ValidationError if lp state is missing.
std::vector<NodeId> BaselineSelect(Strategy strategy, const Graph& graph,
                                   const LabeledSet& labeled,
                                   std::span<const NodeId> candidates,
                                   int count, std::mt19937_64& rng,
                                   const BaselineOptions& options);

struct ActiveLearningResult {
  LabeledSet labeled;
  SelectionTrace trace;
};

// Batch loop: select, query the oracle, then refine the new nodes' qualities
// by weighted voting. Qualities are always refined so reliability-weighted
// training stays available; reliable_selection only controls whether
// selection sees them.
ActiveLearningResult RunActiveLearning(const Graph& graph,
                                       const SelectorConfig& config,
                                       NoisyOracle& oracle);

}  // namespace rim

#endif  // RIM_SELECTION_H_
