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

#include "rim/sbm.h"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <random>
#include <vector>

#include "rim/error.h"

namespace rim {

void SbmParams::Validate() const {
  if (blocks < 1 || block_size < 1) {
    throw ValidationError("SBM needs at least one block of one node");
  }
  auto is_prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!is_prob(p_intra) || !is_prob(p_inter)) {
    throw ValidationError("SBM edge probabilities must lie in [0, 1]");
  }
  if (feature_dim < blocks) {
    throw ValidationError("feature_dim must be at least the block count");
  }
  if (feature_noise < 0.0) throw ValidationError("negative feature noise");
  if (train_fraction < 0.0 || val_fraction < 0.0 ||
      train_fraction + val_fraction > 1.0) {
    throw ValidationError("split fractions must be non-negative, sum <= 1");
  }
}

Graph GenerateSbm(const SbmParams& params, std::uint64_t seed) {
  params.Validate();
  if (params.p_intra < params.p_inter) {
    std::cerr << "warning: SBM intra-block probability below inter-block "
                 "probability; labels will not be homophilous\n";
  }
  const NodeId n = static_cast<NodeId>(params.blocks) * params.block_size;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const bool same = u / params.block_size == v / params.block_size;
      if (unit(rng) < (same ? params.p_intra : params.p_inter)) {
        edges.emplace_back(u, v);
      }
    }
  }
  Graph g = Graph::FromEdges(n, edges);

  std::vector<int> labels(n);
  for (NodeId v = 0; v < n; ++v) labels[v] = v / params.block_size;
  g.set_labels(std::move(labels), params.blocks);

  std::normal_distribution<double> noise(0.0, 1.0);
  Matrix x(n, params.feature_dim);
  for (NodeId v = 0; v < n; ++v) {
    for (int d = 0; d < params.feature_dim; ++d) {
      x(v, d) = params.feature_noise * noise(rng);
    }
    x(v, v / params.block_size) += 1.0;
  }
  g.set_features(std::move(x));

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train = static_cast<std::size_t>(params.train_fraction * n);
  const auto n_val = static_cast<std::size_t>(params.val_fraction * n);
  Splits splits;
  splits.train.assign(order.begin(), order.begin() + n_train);
  splits.val.assign(order.begin() + n_train, order.begin() + n_train + n_val);
  splits.test.assign(order.begin() + n_train + n_val, order.end());
  for (auto* s : {&splits.train, &splits.val, &splits.test}) {
    std::sort(s->begin(), s->end());
  }
  g.set_splits(std::move(splits));
  return g;
}

}  // namespace rim
