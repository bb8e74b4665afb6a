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

#include <random>

#include <gtest/gtest.h>

#include "rim/error.h"
#include "test_graphs.h"

namespace rim {
namespace {

using testing::PathGraph;
using testing::RandomGraph;
using testing::SingleEdge;

TEST(GraphTest, MergesReversedAndDuplicateEdges) {
  std::vector<Edge> edges = {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {1, 2}};
  Graph g = Graph::FromEdges(3, edges);
  EXPECT_EQ(g.num_nodes(), 3);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.Degree(1), 2);
  g.Validate();
}

TEST(GraphTest, RejectsSelfLoopsAndOutOfRangeIds) {
  std::vector<Edge> loop = {{0, 0}};
  EXPECT_THROW(Graph::FromEdges(2, loop), ValidationError);
  std::vector<Edge> far = {{0, 5}};
  EXPECT_THROW(Graph::FromEdges(2, far), ValidationError);
}

TEST(GraphTest, NeighborListsAreSymmetricAndSorted) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = RandomGraph(15, 0.3, rng);
    g.Validate();
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      for (NodeId j : g.Neighbors(i)) {
        auto back = g.Neighbors(j);
        EXPECT_TRUE(std::binary_search(back.begin(), back.end(), i));
      }
    }
  }
}

TEST(GraphTest, SplitsMustBeDisjointAndInRange) {
  Graph g = PathGraph(3);
  EXPECT_NO_THROW(g.set_splits({{0, 1, 2}, {}, {}}));
  EXPECT_THROW(g.set_splits({{0, 1}, {1}, {}}), ValidationError);
  EXPECT_THROW(g.set_splits({{0}, {}, {3}}), ValidationError);
}

TEST(GraphTest, LabelsMustBeInRange) {
  Graph g = PathGraph(3);
  EXPECT_THROW(g.set_labels({0, 1, 2}, 2), ValidationError);
  EXPECT_THROW(g.set_labels({0, 1}, 2), DimensionError);
  EXPECT_NO_THROW(g.set_labels({0, 1, 1}, 2));
}

TEST(PropagationTest, RowsAreStochasticAndNonNegative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = RandomGraph(20, 0.15, rng);
    PropagationOperator op(g, 1);
    Matrix p = op.Dense();
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      EXPECT_NEAR(p.row(i).sum(), 1.0, 1e-12);
      EXPECT_GE(p.row(i).minCoeff(), 0.0);
      for (NodeId j = 0; j < g.num_nodes(); ++j) {
        EXPECT_EQ(p(i, j) > 0.0, p(j, i) > 0.0);
      }
    }
  }
}

TEST(PropagationTest, IsolatedNodeKeepsItsValue) {
  std::vector<Edge> edges = {{0, 1}};
  Graph g = Graph::FromEdges(3, edges);
  PropagationOperator op(g, 1);
  EXPECT_DOUBLE_EQ(op.RowWeight(2), 1.0);
  Vector v(3);
  v << 4.0, 2.0, 9.0;
  EXPECT_DOUBLE_EQ(op.Apply(v)[2], 9.0);
}

TEST(PropagationTest, SingleEdgeExample) {
  Graph g = SingleEdge();
  PropagationOperator op(g, 1);
  Vector v(2);
  v << 1.0, 0.0;
  Vector out = op.Apply(v);
  EXPECT_DOUBLE_EQ(out[0], 0.5);
  EXPECT_DOUBLE_EQ(out[1], 0.5);
}

TEST(PropagationTest, AllOnesIsFixed) {
  std::mt19937_64 rng(3);
  Graph g = RandomGraph(25, 0.1, rng);
  PropagationOperator op(g, 3);
  Vector out = op.ApplySteps(Vector(Vector::Ones(25)));
  for (NodeId i = 0; i < 25; ++i) EXPECT_NEAR(out[i], 1.0, 1e-12);
}

TEST(PropagationTest, PathTwoSteps) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 2);
  Vector e0 = Vector::Zero(3);
  e0[0] = 1.0;
  Vector out = op.ApplySteps(e0);
  EXPECT_NEAR(out[0], 5.0 / 12.0, 1e-12);
  EXPECT_NEAR(out[1], 5.0 / 18.0, 1e-12);
  EXPECT_NEAR(out[2], 1.0 / 6.0, 1e-12);
}

TEST(PropagationTest, MatchesDensePower) {
  std::mt19937_64 rng(5);
  Graph g = RandomGraph(12, 0.3, rng);
  for (int k = 0; k <= 3; ++k) {
    PropagationOperator op(g, k);
    Matrix expected = testing::DenseWalkPower(g, k);
    Matrix got = op.ApplySteps(Matrix(Matrix::Identity(12, 12)));
    EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PropagationTest, IsLinear) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = RandomGraph(18, 0.2, rng);
    PropagationOperator op(g, 1);
    Vector u(18), v(18);
    for (int i = 0; i < 18; ++i) {
      u[i] = gauss(rng);
      v[i] = gauss(rng);
    }
    const double a = gauss(rng), b = gauss(rng);
    Vector lhs = op.Apply(Vector(a * u + b * v));
    Vector rhs = a * op.Apply(u) + b * op.Apply(v);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(PropagationTest, LengthMismatchThrows) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 1);
  EXPECT_THROW(op.Apply(Vector(Vector::Ones(4))), DimensionError);
}

TEST(SmoothFeaturesTest, ZeroStepsIsIdentity) {
  Graph g = PathGraph(3);
  Matrix x(3, 2);
  x << 1, 2, 3, 4, 5, 6;
  g.set_features(x);
  PropagationOperator op(g, 0);
  EXPECT_EQ(SmoothFeatures(op), x);
}

TEST(SmoothFeaturesTest, SingleEdgeOneStep) {
  Graph g = SingleEdge();
  g.set_features(Matrix::Identity(2, 2));
  PropagationOperator op(g, 1);
  Matrix out = SmoothFeatures(op);
  EXPECT_DOUBLE_EQ(out(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(out(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(out(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(out(1, 1), 0.5);
}

TEST(SmoothFeaturesTest, ConstantColumnStaysConstant) {
  std::mt19937_64 rng(21);
  Graph g = RandomGraph(15, 0.2, rng);
  Matrix x = Matrix::Random(15, 3);
  x.col(1).setConstant(2.5);
  g.set_features(x);
  for (int k = 0; k < 5; ++k) {
    Matrix out = SmoothFeatures(PropagationOperator(g, k));
    for (int i = 0; i < 15; ++i) EXPECT_NEAR(out(i, 1), 2.5, 1e-12);
  }
}

TEST(SmoothFeaturesTest, MissingFeaturesThrow) {
  Graph g = PathGraph(3);
  EXPECT_THROW(SmoothFeatures(PropagationOperator(g, 1)), MissingFeatureError);
}

}  // namespace
}  // namespace rim
