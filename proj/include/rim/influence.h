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

#ifndef RIM_INFLUENCE_H_
#define RIM_INFLUENCE_H_

#include <memory>
#include <span>
#include <vector>

#include "rim/graph.h"
#include "rim/labeled_set.h"

namespace rim {

// Column `source` of Pᵏ: scores[j] is the probability that a k-step walk
// from j ends at `source`, i.e. the influence of `source` on j. Because Pᵏ is
// row-stochastic this is already the normalized feature influence.
struct InfluenceColumn {
  NodeId source = kNoNode;
  Vector scores;

  double Mass() const { return scores.sum(); }
};

// Nonzero entries of an InfluenceColumn, sorted by node.
struct SparseColumn {
  NodeId source = kNoNode;
  std::vector<NodeId> nodes;
  std::vector<double> scores;
  double mass = 0.0;
};

// Throws IndexError if `source` is not a node of the operator's graph.
InfluenceColumn ComputeInfluenceColumn(const PropagationOperator& op,
                                       NodeId source);
SparseColumn Compress(const InfluenceColumn& column);

// quality · column, elementwise. Throws ValidationError unless quality ∈ [0,1].
Vector ReliableQuantity(const InfluenceColumn& column, double quality);

// Lazily computed cache of sparse influence columns. Columns do not depend on
// the labeled set, so one index serves a whole active-learning run.
class InfluenceIndex {
 public:
  explicit InfluenceIndex(const PropagationOperator& op);

  const PropagationOperator& op() const { return *op_; }
  const SparseColumn& Column(NodeId source);
  void Precompute(std::span<const NodeId> sources);

 private:
  const PropagationOperator* op_;
  std::vector<std::unique_ptr<SparseColumn>> columns_;
};

// Per-node maximum reliable influence Q(v_j, V_l, k) = max_i r_i·I(v_j, v_i, k)
// and the labeled node attaining it (lowest id on ties).
class ActivationState {
 public:
  ActivationState(NodeId num_nodes, double theta);

  double theta() const { return theta_; }
  NodeId size() const { return static_cast<NodeId>(q_max_.size()); }
  std::span<const double> q_max() const { return q_max_; }
  double q_max(NodeId j) const { return q_max_[j]; }
  NodeId best_source(NodeId j) const { return best_source_[j]; }
  bool IsActivated(NodeId j) const { return q_max_[j] > theta_; }
  int NumActivated() const { return num_activated_; }
  std::vector<NodeId> ActivatedNodes() const;

  // Folds quality·column into the running maximum. Returns the nodes that
  // crossed the threshold because of this source.
  std::vector<NodeId> Raise(const SparseColumn& column, double quality);

 private:
  double theta_;
  std::vector<double> q_max_;
  std::vector<NodeId> best_source_;
  int num_activated_ = 0;
};

// Rebuilds the state from scratch for the given sources and qualities.
ActivationState BuildActivation(InfluenceIndex& index,
                                std::span<const NodeId> sources,
                                std::span<const double> qualities,
                                double theta);
ActivationState BuildActivation(InfluenceIndex& index,
                                const LabeledSet& labeled, double theta);
ActivationState BuildActivation(const PropagationOperator& op,
                                const LabeledSet& labeled, double theta);

// F(V_l ∪ {v}) − F(V_l): nodes the candidate would newly push above theta.
int MarginalGain(const ActivationState& state, const SparseColumn& candidate,
                 double quality);
int MarginalGain(const ActivationState& state,
                 const InfluenceColumn& candidate, double quality);

}  // namespace rim

#endif  // RIM_INFLUENCE_H_
