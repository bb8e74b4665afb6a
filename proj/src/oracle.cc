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

#include "rim/oracle.h"

#include <string>

#include "rim/error.h"

namespace rim {

NoisyOracle::NoisyOracle(std::span<const int> ground_truth, int num_classes,
                         double alpha, std::uint64_t seed)
    : truth_(ground_truth),
      num_classes_(num_classes),
      alpha_(alpha),
      rng_(seed) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in (0, 1]");
  }
  if (num_classes < 1) throw ValidationError("class count must be positive");
  if (alpha < 1.0 && num_classes < 2) {
    throw ValidationError("a noisy oracle needs at least two classes");
  }
}

int NoisyOracle::Query(NodeId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= truth_.size()) {
    throw IndexError("query for node " + std::to_string(v) +
                     " outside the graph");
  }
  const int y = truth_[v];
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng_) < alpha_) return y;
  std::uniform_int_distribution<int> wrong(0, num_classes_ - 2);
  const int w = wrong(rng_);
  return w >= y ? w + 1 : w;
}

}  // namespace rim
