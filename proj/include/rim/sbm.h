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

#ifndef RIM_SBM_H_
#define RIM_SBM_H_

#include <cstdint>

#include "rim/graph.h"

namespace rim {

struct SbmParams {
  int blocks = 4;
  int block_size = 100;
  double p_intra = 0.05;
  double p_inter = 0.005;
  int feature_dim = 16;  // must be >= blocks
  double feature_noise = 1.0;
  double train_fraction = 0.6;
  double val_fraction = 0.2;

  // Throws ValidationError on out-of-range values.
  void Validate() const;
};

// Stochastic block model. Node i belongs to block i / block_size, which is
// also its label. Every pair is an edge independently with p_intra inside a
// block and p_inter across. Features are the one-hot block indicator (padded
// to feature_dim) plus N(0, feature_noise²) noise. The train/val/test split is
// a seeded random permutation.
Graph GenerateSbm(const SbmParams& params, std::uint64_t seed);

}  // namespace rim

#endif  // RIM_SBM_H_
