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

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "rim/error.h"
#include "rim/labeled_set.h"
#include "test_graphs.h"

namespace rim {
namespace {

using testing::DenseWalkPower;
using testing::PathGraph;
using testing::RandomGraph;

// Activated count evaluated straight from the dense walk matrix.
int DenseObjective(const Matrix& walk, const std::vector<NodeId>& sources,
                   double quality, double theta) {
  int count = 0;
  for (Eigen::Index j = 0; j < walk.rows(); ++j) {
    double best = 0.0;
    for (NodeId s : sources) best = std::max(best, quality * walk(j, s));
    if (best > theta) ++count;
  }
  return count;
}

TEST(InfluenceColumnTest, PathOneStep) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 1);
  InfluenceColumn col = ComputeInfluenceColumn(op, 0);
  EXPECT_NEAR(col.scores[0], 1.0 / 2.0, 1e-12);
  EXPECT_NEAR(col.scores[1], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(col.scores[2], 0.0, 1e-12);
}

TEST(InfluenceColumnTest, PathTwoSteps) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 2);
  InfluenceColumn col = ComputeInfluenceColumn(op, 0);
  EXPECT_NEAR(col.scores[0], 5.0 / 12.0, 1e-12);
  EXPECT_NEAR(col.scores[1], 5.0 / 18.0, 1e-12);
  EXPECT_NEAR(col.scores[2], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(col.Mass(), 31.0 / 36.0, 1e-12);
}

TEST(InfluenceColumnTest, ZeroStepsIsIndicator) {
  Graph g = PathGraph(4);
  PropagationOperator op(g, 0);
  InfluenceColumn col = ComputeInfluenceColumn(op, 2);
  Vector expected = Vector::Zero(4);
  expected[2] = 1.0;
  EXPECT_EQ(col.scores, expected);
}

TEST(InfluenceColumnTest, MatchesDensePowerColumn) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = RandomGraph(14, 0.25, rng);
    for (int k = 1; k <= 3; ++k) {
      PropagationOperator op(g, k);
      Matrix walk = DenseWalkPower(g, k);
      for (NodeId s = 0; s < 14; ++s) {
        InfluenceColumn col = ComputeInfluenceColumn(op, s);
        EXPECT_LT((col.scores - walk.col(s)).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(InfluenceColumnTest, RowsOfPowerSumToOne) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = RandomGraph(16, 0.2, rng);
    for (int k = 1; k <= 3; ++k) {
      PropagationOperator op(g, k);
      Vector row_sums = Vector::Zero(16);
      for (NodeId s = 0; s < 16; ++s) {
        row_sums += ComputeInfluenceColumn(op, s).scores;
      }
      for (NodeId j = 0; j < 16; ++j) EXPECT_NEAR(row_sums[j], 1.0, 1e-9);
    }
  }
}

TEST(InfluenceColumnTest, SourceOutOfRangeThrows) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 1);
  EXPECT_THROW(ComputeInfluenceColumn(op, 3), IndexError);
  EXPECT_THROW(ComputeInfluenceColumn(op, -1), IndexError);
}

TEST(InfluenceColumnTest, CompressKeepsPositiveEntries) {
  Graph g = PathGraph(5);
  PropagationOperator op(g, 1);
  InfluenceColumn col = ComputeInfluenceColumn(op, 0);
  SparseColumn sparse = Compress(col);
  EXPECT_EQ(sparse.nodes, (std::vector<NodeId>{0, 1}));
  EXPECT_NEAR(sparse.mass, col.Mass(), 1e-15);
}

TEST(ReliableQuantityTest, ScalesColumn) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 2);
  Vector q = ReliableQuantity(ComputeInfluenceColumn(op, 0), 0.7);
  EXPECT_NEAR(q[0], 0.7 * 5.0 / 12.0, 1e-12);
  EXPECT_NEAR(q[1], 0.7 * 5.0 / 18.0, 1e-12);
  EXPECT_NEAR(q[2], 0.7 / 6.0, 1e-12);
  EXPECT_NEAR(q[0], 0.2917, 5e-5);
  EXPECT_NEAR(q[1], 0.1944, 5e-5);
  EXPECT_NEAR(q[2], 0.1167, 5e-5);
}

TEST(ReliableQuantityTest, RejectsQualityOutsideUnitInterval) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 1);
  InfluenceColumn col = ComputeInfluenceColumn(op, 0);
  EXPECT_THROW(ReliableQuantity(col, 1.5), ValidationError);
  EXPECT_THROW(ReliableQuantity(col, -0.1), ValidationError);
}

TEST(ActivationTest, ThresholdIsStrict) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 2);
  LabeledSet labeled(0.7);
  labeled.Add(0, 0, 0.7, 0);

  ActivationState strict = BuildActivation(op, labeled, 0.2);
  EXPECT_EQ(strict.ActivatedNodes(), std::vector<NodeId>{0});

  ActivationState all = BuildActivation(op, labeled, 0.0);
  EXPECT_EQ(all.ActivatedNodes(), (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(all.best_source(2), 0);
}

TEST(ActivationTest, EmptySetActivatesNothing) {
  Graph g = PathGraph(4);
  PropagationOperator op(g, 2);
  ActivationState state = BuildActivation(op, LabeledSet(0.9), 0.0);
  EXPECT_EQ(state.NumActivated(), 0);
  EXPECT_EQ(state.best_source(1), kNoNode);
}

TEST(ActivationTest, TiesGoToLowerSource) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 1);
  InfluenceIndex index(op);
  std::vector<NodeId> forward = {0, 2};
  std::vector<NodeId> backward = {2, 0};
  std::vector<double> q = {1.0, 1.0};
  EXPECT_EQ(BuildActivation(index, forward, q, 0.0).best_source(1), 0);
  EXPECT_EQ(BuildActivation(index, backward, q, 0.0).best_source(1), 0);
}

TEST(ActivationTest, RaiseReportsNewlyCrossedNodes) {
  Graph g = PathGraph(5);
  PropagationOperator op(g, 1);
  InfluenceIndex index(op);
  ActivationState state(5, 0.1);
  auto first = state.Raise(index.Column(0), 1.0);
  EXPECT_EQ(first, (std::vector<NodeId>{0, 1}));
  auto second = state.Raise(index.Column(1), 1.0);
  EXPECT_EQ(second, std::vector<NodeId>{2});
  EXPECT_EQ(state.NumActivated(), 3);
}

TEST(MarginalGainTest, PathExamples) {
  Graph g = PathGraph(3);
  PropagationOperator op(g, 2);
  InfluenceIndex index(op);
  ActivationState empty(3, 0.0);
  EXPECT_EQ(MarginalGain(empty, index.Column(1), 1.0), 3);
  ActivationState high(3, 0.3);
  EXPECT_EQ(MarginalGain(high, index.Column(0), 1.0), 1);
  EXPECT_EQ(MarginalGain(high, index.Column(1), 1.0), 3);
  EXPECT_EQ(MarginalGain(high, index.Column(1), 0.7), 1);
  EXPECT_EQ(MarginalGain(high, index.Column(1), 0.6), 0);
}

TEST(MarginalGainTest, SparseAndDenseAgree) {
  std::mt19937_64 rng(31);
  Graph g = RandomGraph(12, 0.3, rng);
  PropagationOperator op(g, 2);
  InfluenceIndex index(op);
  ActivationState state(12, 0.08);
  state.Raise(index.Column(3), 0.8);
  for (NodeId v = 0; v < 12; ++v) {
    EXPECT_EQ(MarginalGain(state, index.Column(v), 0.6),
              MarginalGain(state, ComputeInfluenceColumn(op, v), 0.6));
  }
}

class ObjectivePropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(ObjectivePropertyTest, MonotoneSubmodularAndGainConsistent) {
  std::mt19937_64 rng(1000 + GetParam());
  std::uniform_int_distribution<int> size_dist(3, 9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const NodeId n = size_dist(rng);
  Graph g = RandomGraph(n, 0.2 + 0.5 * unit(rng), rng);
  const int k = 1 + GetParam() % 3;
  const double quality = 0.3 + 0.7 * unit(rng);
  const double theta = 0.3 * unit(rng);
  PropagationOperator op(g, k);
  InfluenceIndex index(op);
  Matrix walk = DenseWalkPower(g, k);

  auto members = [n](unsigned mask) {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n; ++v) {
      if (mask & (1u << v)) out.push_back(v);
    }
    return out;
  };
  const unsigned full = 1u << n;
  std::vector<int> f(full);
  for (unsigned mask = 0; mask < full; ++mask) {
    f[mask] = DenseObjective(walk, members(mask), quality, theta);
  }
  for (unsigned a = 0; a < full; ++a) {
    std::vector<NodeId> sources = members(a);
    std::vector<double> qs(sources.size(), quality);
    ActivationState state = BuildActivation(index, sources, qs, theta);
    ASSERT_EQ(state.NumActivated(), f[a]);
    for (NodeId v = 0; v < n; ++v) {
      const unsigned bit = 1u << v;
      if (a & bit) continue;
      const int gain_a = f[a | bit] - f[a];
      ASSERT_GE(gain_a, 0);
      ASSERT_EQ(MarginalGain(state, index.Column(v), quality), gain_a);
      // Every superset B of A that excludes v.
      const unsigned rest = (full - 1) & ~a & ~bit;
      for (unsigned extra = rest;; extra = (extra - 1) & rest) {
        const unsigned b = a | extra;
        ASSERT_LE(f[b | bit] - f[b], gain_a);
        if (extra == 0) break;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(RandomGraphs, ObjectivePropertyTest,
                         ::testing::Range(0, 30));

}  // namespace
}  // namespace rim
