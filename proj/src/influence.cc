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

#include "rim/influence.h"

#include <string>

#include "rim/error.h"

namespace rim {
namespace {

void CheckQuality(double quality) {
  if (!(quality >= 0.0 && quality <= 1.0)) {
    throw ValidationError("quality " + std::to_string(quality) +
                          " outside [0, 1]");
  }
}

}  // namespace

InfluenceColumn ComputeInfluenceColumn(const PropagationOperator& op,
                                       NodeId source) {
  if (source < 0 || source >= op.size()) {
    throw IndexError("source " + std::to_string(source) + " outside [0, " +
                     std::to_string(op.size()) + ")");
  }
  Vector e = Vector::Zero(op.size());
  e[source] = 1.0;
  return {source, op.ApplySteps(std::move(e))};
}

SparseColumn Compress(const InfluenceColumn& column) {
  SparseColumn out;
  out.source = column.source;
  for (Eigen::Index j = 0; j < column.scores.size(); ++j) {
    if (column.scores[j] > 0.0) {
      out.nodes.push_back(static_cast<NodeId>(j));
      out.scores.push_back(column.scores[j]);
    }
  }
  out.mass = column.Mass();
  return out;
}

Vector ReliableQuantity(const InfluenceColumn& column, double quality) {
  CheckQuality(quality);
  return quality * column.scores;
}

InfluenceIndex::InfluenceIndex(const PropagationOperator& op)
    : op_(&op), columns_(op.size()) {}

const SparseColumn& InfluenceIndex::Column(NodeId source) {
  if (source < 0 || source >= op_->size()) {
    throw IndexError("source " + std::to_string(source) + " outside graph");
  }
  auto& slot = columns_[source];
  if (!slot) {
    slot = std::make_unique<SparseColumn>(
        Compress(ComputeInfluenceColumn(*op_, source)));
  }
  return *slot;
}

void InfluenceIndex::Precompute(std::span<const NodeId> sources) {
  for (NodeId s : sources) Column(s);
}

ActivationState::ActivationState(NodeId num_nodes, double theta)
    : theta_(theta), q_max_(num_nodes, 0.0), best_source_(num_nodes, kNoNode) {
  if (!(theta >= 0.0)) throw ValidationError("theta must be non-negative");
}

std::vector<NodeId> ActivationState::ActivatedNodes() const {
  std::vector<NodeId> out;
  for (NodeId j = 0; j < size(); ++j) {
    if (IsActivated(j)) out.push_back(j);
  }
  return out;
}

std::vector<NodeId> ActivationState::Raise(const SparseColumn& column,
                                           double quality) {
  CheckQuality(quality);
  std::vector<NodeId> crossed;
  for (std::size_t t = 0; t < column.nodes.size(); ++t) {
    const NodeId j = column.nodes[t];
    const double q = quality * column.scores[t];
    if (q > q_max_[j]) {
      if (q_max_[j] <= theta_ && q > theta_) {
        crossed.push_back(j);
        ++num_activated_;
      }
      q_max_[j] = q;
      best_source_[j] = column.source;
    } else if (q == q_max_[j] && q > 0.0 && column.source < best_source_[j]) {
      best_source_[j] = column.source;
    }
  }
  return crossed;
}

ActivationState BuildActivation(InfluenceIndex& index,
                                std::span<const NodeId> sources,
                                std::span<const double> qualities,
                                double theta) {
  if (sources.size() != qualities.size()) {
    throw DimensionError("sources and qualities differ in length");
  }
  ActivationState state(index.op().size(), theta);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    state.Raise(index.Column(sources[i]), qualities[i]);
  }
  return state;
}

ActivationState BuildActivation(InfluenceIndex& index,
                                const LabeledSet& labeled, double theta) {
  std::vector<NodeId> sources;
  std::vector<double> qualities;
  for (const auto& e : labeled.entries()) {
    sources.push_back(e.node);
    qualities.push_back(e.quality);
  }
  return BuildActivation(index, sources, qualities, theta);
}

ActivationState BuildActivation(const PropagationOperator& op,
                                const LabeledSet& labeled, double theta) {
  InfluenceIndex index(op);
  return BuildActivation(index, labeled, theta);
}

int MarginalGain(const ActivationState& state, const SparseColumn& candidate,
                 double quality) {
  const double theta = state.theta();
  int gain = 0;
  for (std::size_t t = 0; t < candidate.nodes.size(); ++t) {
    const NodeId j = candidate.nodes[t];
    if (quality * candidate.scores[t] > theta && state.q_max(j) <= theta) {
      ++gain;
    }
  }
  return gain;
}

int MarginalGain(const ActivationState& state,
                 const InfluenceColumn& candidate, double quality) {
  return MarginalGain(state, Compress(candidate), quality);
}

}  // namespace rim
