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

#ifndef RIM_ORACLE_H_
#define RIM_ORACLE_H_

#include <cstdint>
#include <random>
#include <span>

#include "rim/graph.h"

namespace rim {

// Simulated labeler: returns the true label with probability alpha, otherwise
// a class drawn uniformly from the remaining c − 1. One stream per oracle,
// advanced in query order.
class NoisyOracle {
 public:
  // `ground_truth` must outlive the oracle.
  NoisyOracle(std::span<const int> ground_truth, int num_classes, double alpha,
              std::uint64_t seed);

  int Query(NodeId v);

  double alpha() const { return alpha_; }
  int num_classes() const { return num_classes_; }

 private:
  std::span<const int> truth_;
  int num_classes_;
  double alpha_;
  std::mt19937_64 rng_;
};

}  // namespace rim

#endif  // RIM_ORACLE_H_
