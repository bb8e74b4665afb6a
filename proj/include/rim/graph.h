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

#ifndef RIM_GRAPH_H_
#define RIM_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rim {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

using Edge = std::pair<NodeId, NodeId>;

struct Splits {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

enum class Split { kTrain, kVal, kTest };

// Undirected, unweighted graph in CSR form. Self-loops are never stored; the
// propagation operator adds them logically.
class Graph {
 public:
  Graph() = default;

  // Reversed and duplicate pairs are merged. Throws ValidationError on
  // self-loops or ids outside [0, num_nodes).
  static Graph FromEdges(NodeId num_nodes, std::span<const Edge> edges);

  NodeId num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }

  // Canonical edge list, each pair stored once with first < second, sorted.
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const NodeId> Neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v],
            neighbors_.data() + offsets_[v + 1]};
  }
  int Degree(NodeId v) const {
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }

  bool has_features() const { return features_.rows() > 0; }
  const Matrix& features() const { return features_; }
  void set_features(Matrix features);

  const std::vector<int>& labels() const { return labels_; }
  int num_classes() const { return num_classes_; }
  void set_labels(std::vector<int> labels, int num_classes);

  const Splits& splits() const { return splits_; }
  const std::vector<NodeId>& split(Split which) const;
  void set_splits(Splits splits);

  // Checks every structural invariant; throws ValidationError on failure.
  void Validate() const;

 private:
  NodeId num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  Matrix features_;
  std::vector<int> labels_;
  int num_classes_ = 0;
  Splits splits_;
};

// Row-normalized walk matrix P = D̃⁻¹(A + I) together with a step count k.
// Holds a reference to the graph, which must outlive the operator.
class PropagationOperator {
 public:
  PropagationOperator(const Graph& graph, int steps);

  const Graph& graph() const { return *graph_; }
  int steps() const { return steps_; }
  NodeId size() const { return graph_->num_nodes(); }

  // Weight of every entry in row i: 1 / (deg(i) + 1).
  double RowWeight(NodeId i) const { return row_weight_[i]; }

  // One application, P·v. Throws DimensionError on length mismatch.
  Vector Apply(const Vector& v) const;
  Matrix Apply(const Matrix& m) const;

  // k applications, Pᵏ·v.
  Vector ApplySteps(Vector v) const;
  Matrix ApplySteps(Matrix m) const;

  // Materialized P; intended for small graphs and tests.
  Matrix Dense() const;

 private:
  const Graph* graph_;
  int steps_;
  std::vector<double> row_weight_;
};

// X̂ = Pᵏ X. Throws MissingFeatureError when the graph has no features.
Matrix SmoothFeatures(const PropagationOperator& op);

}  // namespace rim

#endif  // RIM_GRAPH_H_
