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

#include "rim/graph.h"

#include <algorithm>
#include <string>

#include "rim/error.h"

namespace rim {

Graph Graph::FromEdges(NodeId num_nodes, std::span<const Edge> edges) {
  if (num_nodes < 0) throw ValidationError("negative node count");
  Graph g;
  g.num_nodes_ = num_nodes;
  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      throw ValidationError("edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") outside [0, " +
                            std::to_string(num_nodes) + ")");
    }
    if (u == v) {
      throw ValidationError("self-loop on node " + std::to_string(u));
    }
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()),
                 g.edges_.end());

  std::vector<std::size_t> degree(num_nodes, 0);
  for (auto [u, v] : g.edges_) {
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(num_nodes + 1, 0);
  for (NodeId i = 0; i < num_nodes; ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  }
  g.neighbors_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : g.edges_) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (NodeId i = 0; i < num_nodes; ++i) {
    std::sort(g.neighbors_.begin() + g.offsets_[i],
              g.neighbors_.begin() + g.offsets_[i + 1]);
  }
  return g;
}

void Graph::set_features(Matrix features) {
  if (features.rows() != 0 && features.rows() != num_nodes_) {
    throw DimensionError("feature matrix has " +
                         std::to_string(features.rows()) + " rows, graph has " +
                         std::to_string(num_nodes_) + " nodes");
  }
  features_ = std::move(features);
}

void Graph::set_labels(std::vector<int> labels, int num_classes) {
  if (static_cast<NodeId>(labels.size()) != num_nodes_) {
    throw DimensionError("label count " + std::to_string(labels.size()) +
                         " does not match node count " +
                         std::to_string(num_nodes_));
  }
  if (num_classes < 1) throw ValidationError("class count must be positive");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw ValidationError("label " + std::to_string(labels[i]) +
                            " of node " + std::to_string(i) +
                            " outside [0, " + std::to_string(num_classes) +
                            ")");
    }
  }
  labels_ = std::move(labels);
  num_classes_ = num_classes;
}

const std::vector<NodeId>& Graph::split(Split which) const {
  switch (which) {
    case Split::kTrain:
      return splits_.train;
    case Split::kVal:
      return splits_.val;
    case Split::kTest:
      return splits_.test;
  }
  return splits_.test;
}

void Graph::set_splits(Splits splits) {
  std::vector<char> owner(num_nodes_, 0);
  auto mark = [&](const std::vector<NodeId>& nodes, char tag,
                  const char* name) {
    for (NodeId v : nodes) {
      if (v < 0 || v >= num_nodes_) {
        throw ValidationError(std::string(name) + " split contains node " +
                              std::to_string(v) + " outside the graph");
      }
      if (owner[v] != 0) {
        throw ValidationError("node " + std::to_string(v) +
                              " listed more than once across splits (" +
                              name + ")");
      }
      owner[v] = tag;
    }
  };
  mark(splits.train, 1, "train");
  mark(splits.val, 2, "val");
  mark(splits.test, 3, "test");
  splits_ = std::move(splits);
}

void Graph::Validate() const {
  for (NodeId i = 0; i < num_nodes_; ++i) {
    auto nbrs = Neighbors(i);
    for (std::size_t t = 0; t < nbrs.size(); ++t) {
      NodeId j = nbrs[t];
      if (j == i) throw ValidationError("stored self-loop");
      if (t > 0 && nbrs[t - 1] >= j) {
        throw ValidationError("neighbor list not strictly sorted");
      }
      auto back = Neighbors(j);
      if (!std::binary_search(back.begin(), back.end(), i)) {
        throw ValidationError("asymmetric adjacency");
      }
    }
  }
  if (!labels_.empty()) {
    for (int y : labels_) {
      if (y < 0 || y >= num_classes_) throw ValidationError("label range");
    }
  }
}

PropagationOperator::PropagationOperator(const Graph& graph, int steps)
    : graph_(&graph), steps_(steps), row_weight_(graph.num_nodes()) {
  if (steps < 0) throw ValidationError("step count must be non-negative");
  for (NodeId i = 0; i < graph.num_nodes(); ++i) {
    row_weight_[i] = 1.0 / (graph.Degree(i) + 1);
  }
}

Vector PropagationOperator::Apply(const Vector& v) const {
  const NodeId n = size();
  if (v.size() != n) {
    throw DimensionError("vector length " + std::to_string(v.size()) +
                         " does not match node count " + std::to_string(n));
  }
  Vector out(n);
  for (NodeId i = 0; i < n; ++i) {
    double acc = v[i];
    for (NodeId j : graph_->Neighbors(i)) acc += v[j];
    out[i] = acc * row_weight_[i];
  }
  return out;
}

Matrix PropagationOperator::Apply(const Matrix& m) const {
  const NodeId n = size();
  if (m.rows() != n) {
    throw DimensionError("matrix rows " + std::to_string(m.rows()) +
                         " do not match node count " + std::to_string(n));
  }
  Matrix out(n, m.cols());
  for (NodeId i = 0; i < n; ++i) {
    auto row = out.row(i);
    row = m.row(i);
    for (NodeId j : graph_->Neighbors(i)) row += m.row(j);
    row *= row_weight_[i];
  }
  return out;
}

Vector PropagationOperator::ApplySteps(Vector v) const {
  for (int s = 0; s < steps_; ++s) v = Apply(v);
  return v;
}

Matrix PropagationOperator::ApplySteps(Matrix m) const {
  for (int s = 0; s < steps_; ++s) m = Apply(m);
  return m;
}

Matrix PropagationOperator::Dense() const {
  const NodeId n = size();
  Matrix p = Matrix::Zero(n, n);
  for (NodeId i = 0; i < n; ++i) {
    p(i, i) = row_weight_[i];
    for (NodeId j : graph_->Neighbors(i)) p(i, j) = row_weight_[i];
  }
  return p;
}

Matrix SmoothFeatures(const PropagationOperator& op) {
  if (!op.graph().has_features()) {
    throw MissingFeatureError("graph has no node features");
  }
  return op.ApplySteps(op.graph().features());
}

}  // namespace rim
