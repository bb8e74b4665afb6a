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

#include "rim/reliability.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rim/error.h"
#include "rim/labeled_set.h"

namespace rim {
namespace {

// Similarity that yields a given reliability; algebraic inverse of the
// closed form, written out independently.
double SimilarityFor(double reliability, double alpha, int c) {
  const double beta = (1.0 - alpha) / (c - 1);
  return reliability * beta / (alpha * (1.0 - reliability) + reliability * beta);
}

// Unit row in the plane making cosine `s` with (1, 0).
Eigen::RowVector2d RowWithCosine(double s) {
  return {s, std::sqrt(1.0 - s * s)};
}

TEST(SimilarityTest, HandExamples) {
  Matrix rows(4, 3);
  rows << 1, 1, 0,
          1, 0, 0,
          0, 1, 0,
          0, 0, 0;
  SimilaritySource src(SimilarityMode::kFeature, rows);
  EXPECT_NEAR(Similarity(src, 0, 1), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(Similarity(src, 1, 1), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(Similarity(src, 1, 2), 0.0);
  EXPECT_DOUBLE_EQ(Similarity(src, 0, 3), 0.0);
  EXPECT_DOUBLE_EQ(Similarity(src, 3, 3), 0.0);
}

TEST(SimilarityTest, NegativeCosineClampsToZero) {
  Matrix rows(2, 2);
  rows << 1, 0, -1, 0.1;
  SimilaritySource src(SimilarityMode::kFeature, rows);
  EXPECT_DOUBLE_EQ(Similarity(src, 0, 1), 0.0);
}

TEST(SimilarityTest, IsSymmetricAndBounded) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss;
  Matrix rows(10, 5);
  for (int i = 0; i < rows.size(); ++i) rows.data()[i] = gauss(rng);
  SimilaritySource src(SimilarityMode::kLabel, rows);
  for (NodeId i = 0; i < 10; ++i) {
    for (NodeId j = 0; j < 10; ++j) {
      const double s = Similarity(src, i, j);
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
      EXPECT_DOUBLE_EQ(s, Similarity(src, j, i));
    }
  }
}

TEST(LabelReliabilityTest, HandExample) {
  const double expected = 0.63 / (0.63 + 0.3 * 0.1 / 6.0);
  EXPECT_NEAR(LabelReliability(0.7, 0.9, 7), expected, 1e-12);
  EXPECT_NEAR(LabelReliability(0.7, 0.9, 7), 0.99213, 5e-6);
}

TEST(LabelReliabilityTest, Identities) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> alpha_dist(1e-3, 1.0);
  std::uniform_int_distribution<int> c_dist(2, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = alpha_dist(rng);
    const int c = c_dist(rng);
    EXPECT_NEAR(LabelReliability(alpha, 1.0 / c, c), alpha, 1e-12);
    EXPECT_NEAR(LabelReliability(alpha, 1.0, c), 1.0, 1e-12);
  }
}

TEST(LabelReliabilityTest, DegenerateZeroDenominator) {
  EXPECT_DOUBLE_EQ(LabelReliability(1.0, 0.0, 3), 0.0);
  EXPECT_DOUBLE_EQ(LabelReliability(1.0, 0.3, 3), 1.0);
}

TEST(LabelReliabilityTest, RejectsInvalidArguments) {
  EXPECT_THROW(LabelReliability(0.0, 0.5, 3), ValidationError);
  EXPECT_THROW(LabelReliability(1.1, 0.5, 3), ValidationError);
  EXPECT_THROW(LabelReliability(0.7, 0.5, 1), ValidationError);
  EXPECT_THROW(LabelReliability(0.7, 1.5, 3), ValidationError);
}

TEST(LabelReliabilityTest, MonotoneAndBoundedOnGrid) {
  for (int c : {2, 3, 7}) {
    for (int ai = 1; ai <= 20; ++ai) {
      const double alpha = ai / 20.0;
      double previous = -1.0;
      for (int si = 0; si <= 20; ++si) {
        const double s = si / 20.0;
        const double r = LabelReliability(alpha, s, c);
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r, 1.0);
        EXPECT_GE(r, previous - 1e-15);
        previous = r;
        if (ai > 1) {
          EXPECT_GE(r, LabelReliability(alpha - 0.05, s, c) - 1e-15);
        }
      }
    }
  }
}

TEST(LabelReliabilityTest, MatchesMonteCarlo) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double alpha = 0.7, s = 0.5;
  const int c = 5;
  std::uniform_int_distribution<int> cls(0, c - 1);
  std::uniform_int_distribution<int> other(0, c - 2);
  int conditioned = 0, correct = 0;
  while (conditioned < 40000) {
    const int yi = cls(rng);
    int yj = yi;
    if (unit(rng) >= s) {
      yj = other(rng);
      if (yj >= yi) ++yj;
    }
    int noisy = yj;
    if (unit(rng) >= alpha) {
      noisy = other(rng);
      if (noisy >= yj) ++noisy;
    }
    if (noisy != yi) continue;
    ++conditioned;
    if (noisy == yj) ++correct;
  }
  EXPECT_NEAR(static_cast<double>(correct) / conditioned,
              LabelReliability(alpha, s, c), 0.02);
}

TEST(UpdateQualityTest, WeightedVoteExample) {
  const double alpha = 0.7;
  const int c = 3;
  Matrix rows(3, 2);
  rows.row(0) = RowWithCosine(SimilarityFor(0.8, alpha, c));
  rows.row(1) = RowWithCosine(SimilarityFor(0.95, alpha, c));
  rows.row(2) << 1.0, 0.0;
  SimilaritySource src(SimilarityMode::kFeature, rows);
  ASSERT_NEAR(LabelReliability(alpha, Similarity(src, 0, 2), c), 0.8, 1e-9);

  LabeledSet labeled(alpha);
  labeled.Add(0, 1, 0.7, 0);
  labeled.Add(1, 1, 0.9, 0);
  labeled.Add(2, 1, alpha, 1);
  std::vector<NodeId> fresh = {2};
  UpdateQuality(labeled, fresh, src, c);
  EXPECT_NEAR(labeled[2].quality, 0.4375 * 0.8 + 0.5625 * 0.95, 1e-9);
  EXPECT_NEAR(labeled[2].quality, 0.884375, 1e-9);
  EXPECT_DOUBLE_EQ(labeled[0].quality, 0.7);
}

TEST(UpdateQualityTest, SingleReferenceEqualsItsReliability) {
  const double alpha = 0.6;
  Matrix rows(2, 2);
  rows.row(0) = RowWithCosine(0.3);
  rows.row(1) << 1.0, 0.0;
  SimilaritySource src(SimilarityMode::kFeature, rows);
  LabeledSet labeled(alpha);
  labeled.Add(0, 0, 0.123, 0);
  labeled.Add(1, 0, alpha, 1);
  std::vector<NodeId> fresh = {1};
  UpdateQuality(labeled, fresh, src, 4);
  EXPECT_NEAR(labeled[1].quality, LabelReliability(alpha, 0.3, 4), 1e-12);
}

TEST(UpdateQualityTest, EmptyReferenceSetKeepsAlpha) {
  Matrix rows = Matrix::Identity(3, 3);
  SimilaritySource src(SimilarityMode::kFeature, rows);
  LabeledSet labeled(0.8);
  labeled.Add(0, 0, 0.8, 0);
  labeled.Add(1, 1, 0.8, 0);
  labeled.Add(2, 2, 0.8, 1);
  std::vector<NodeId> fresh = {2};
  UpdateQuality(labeled, fresh, src, 3);
  EXPECT_DOUBLE_EQ(labeled[2].quality, 0.8);
}

class UpdateQualityPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(UpdateQualityPropertyTest, SimultaneousAndConvex) {
  std::mt19937_64 rng(500 + GetParam());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int c = 3;
  const double alpha = 0.5 + 0.5 * unit(rng);
  const NodeId n = 12;
  Matrix rows(n, 4);
  for (int i = 0; i < rows.size(); ++i) rows.data()[i] = unit(rng);
  SimilaritySource src(SimilarityMode::kFeature, rows);
  std::uniform_int_distribution<int> cls(0, c - 1);

  LabeledSet base(alpha);
  std::vector<NodeId> fresh;
  for (NodeId v = 0; v < n; ++v) {
    const bool is_new = v >= 6;
    base.Add(v, cls(rng), is_new ? alpha : 0.05 + 0.95 * unit(rng),
             is_new ? 1 : 0);
    if (is_new) fresh.push_back(v);
  }

  LabeledSet forward = base;
  UpdateQuality(forward, fresh, src, c);
  std::vector<NodeId> reversed(fresh.rbegin(), fresh.rend());
  std::shuffle(reversed.begin(), reversed.end(), rng);
  LabeledSet shuffled = base;
  UpdateQuality(shuffled, reversed, src, c);

  for (NodeId v : fresh) {
    const double q = forward[*forward.IndexOf(v)].quality;
    EXPECT_DOUBLE_EQ(q, shuffled[*shuffled.IndexOf(v)].quality);
    EXPECT_GE(q, 0.0);
    EXPECT_LE(q, 1.0);
    double lo = 2.0, hi = -1.0;
    for (const LabeledEntry& ref : base.entries()) {
      if (ref.node == v || ref.label != base[*base.IndexOf(v)].label) continue;
      const double r = LabelReliability(alpha, Similarity(src, ref.node, v), c);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi < 0.0) {
      EXPECT_DOUBLE_EQ(q, alpha);
    } else {
      EXPECT_GE(q, lo - 1e-12);
      EXPECT_LE(q, hi + 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Random, UpdateQualityPropertyTest,
                         ::testing::Range(0, 20));

}  // namespace
}  // namespace rim
