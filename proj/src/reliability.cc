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
#include <string>
#include <vector>

#include "rim/error.h"

namespace rim {

SimilaritySource::SimilaritySource(SimilarityMode mode, const Matrix& rows)
    : mode_(mode), unit_rows_(rows) {
  for (Eigen::Index i = 0; i < unit_rows_.rows(); ++i) {
    const double norm = unit_rows_.row(i).norm();
    if (norm > 0.0) unit_rows_.row(i) /= norm;
  }
}

double SimilaritySource::Similarity(NodeId i, NodeId j) const {
  if (i < 0 || j < 0 || i >= size() || j >= size()) {
    throw IndexError("similarity query outside the source matrix");
  }
  const double cosine = unit_rows_.row(i).dot(unit_rows_.row(j));
  return std::clamp(cosine, 0.0, 1.0);
}

double Similarity(const SimilaritySource& src, NodeId i, NodeId j) {
  return src.Similarity(i, j);
}

double LabelReliability(double alpha, double s, int num_classes) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in (0, 1]");
  }
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("s must lie in [0, 1]");
  if (num_classes < 2) throw ValidationError("need at least two classes");
  const double agree = alpha * s;
  const double denom =
      agree + (1.0 - alpha) * (1.0 - s) / (num_classes - 1);
  if (denom == 0.0) return 0.0;
  return agree / denom;
}

void UpdateQuality(LabeledSet& labeled, std::span<const NodeId> new_nodes,
                   const SimilaritySource& src, int num_classes) {
  const double alpha = labeled.alpha();
  std::vector<double> updated;
  updated.reserve(new_nodes.size());
  for (NodeId vj : new_nodes) {
    const auto idx = labeled.IndexOf(vj);
    if (!idx) throw IndexError("node " + std::to_string(vj) + " not labeled");
    const int label = labeled[*idx].label;
    double weight_sum = 0.0;
    double vote = 0.0;
    for (const auto& ref : labeled.entries()) {
      if (ref.node == vj || ref.label != label) continue;
      weight_sum += ref.quality;
      vote += ref.quality *
              LabelReliability(alpha, src.Similarity(ref.node, vj),
                               num_classes);
    }
    updated.push_back(weight_sum > 0.0 ? std::clamp(vote / weight_sum, 0.0, 1.0)
                                       : alpha);
  }
  for (std::size_t t = 0; t < new_nodes.size(); ++t) {
    labeled.SetQuality(new_nodes[t], updated[t]);
  }
}

}  // namespace rim
