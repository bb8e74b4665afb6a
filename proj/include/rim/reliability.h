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

#ifndef RIM_RELIABILITY_H_
#define RIM_RELIABILITY_H_

#include <span>

#include "rim/graph.h"
#include "rim/labeled_set.h"

namespace rim {

enum class SimilarityMode { kFeature, kLabel };

// Row matrix whose cosine similarities estimate the probability that two
// nodes share a label. Feature mode uses smoothed features Pᵏ X; label mode
// uses the soft labels of a label-propagation run.
class SimilaritySource {
 public:
  SimilaritySource(SimilarityMode mode, const Matrix& rows);

  SimilarityMode mode() const { return mode_; }
  NodeId size() const { return static_cast<NodeId>(unit_rows_.rows()); }

  // Cosine of rows i and j clamped below at 0; 0 if either row is zero.
  double Similarity(NodeId i, NodeId j) const;

 private:
  SimilarityMode mode_;
  Matrix unit_rows_;  // rows scaled to unit norm, zero rows kept zero
};

double Similarity(const SimilaritySource& src, NodeId i, NodeId j);

// Probability that an oracle label is correct given that it agrees with the
// true label of a reference node of similarity s:
//   αs / (αs + (1−α)(1−s)/(c−1)).
// Returns 0 for α = 1, s = 0. Throws ValidationError unless α ∈ (0,1],
// s ∈ [0,1] and c ≥ 2.
double LabelReliability(double alpha, double s, int num_classes);

// Weighted vote over same-label references. Each node v_j in `new_nodes` gets
//   r_j = Σ_{i∈R} (r_i / Σ_{q∈R} r_q) · LabelReliability(α, s_ij, c),
// with R every other labeled node carrying the same oracle label. All updates
// read the qualities as they were on entry. Nodes with an empty R, or whose
// references all have zero quality, keep quality α.
void UpdateQuality(LabeledSet& labeled, std::span<const NodeId> new_nodes,
                   const SimilaritySource& src, int num_classes);

}  // namespace rim

#endif  // RIM_RELIABILITY_H_
