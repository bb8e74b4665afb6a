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

#ifndef RIM_MODELS_H_
#define RIM_MODELS_H_

#include <span>
#include <vector>

#include "rim/graph.h"
#include "rim/labeled_set.h"

namespace rim {

inline constexpr int kDefaultLpIterations = 10;

// Argmax per row, lowest index on ties.
std::vector<int> ArgmaxRows(const Matrix& m);

struct SoftLabels {
  Matrix values;                 // n × c
  std::vector<int> predictions;  // argmax per row
  std::vector<bool> unreached;   // all-zero rows (predicted as class 0)

  int NumUnreached() const;
};

// Label propagation: labeled rows are clamped to r·onehot(ỹ) (r = 1 when
// use_reliability is false), then Y ← P·Y and re-clamp, `iterations` times.
// Only a single application of P per iteration is used; op.steps() is ignored.
// Throws ValidationError on an empty labeled set or iterations < 1.
SoftLabels LpFitPredict(const PropagationOperator& op,
                        const LabeledSet& labeled, int num_classes,
                        int iterations = kDefaultLpIterations,
                        bool use_reliability = true);

struct SgcHyperparameters {
  double learning_rate = 0.2;
  int epochs = 300;
  double weight_decay = 5e-5;
};

// Linear softmax classifier on propagated features.
struct SoftmaxModel {
  Matrix weights;  // d × c
  Vector bias;     // c

  // Throws DimensionError if the feature width does not match.
  SoftLabels Predict(const Matrix& features) const;
};

// Rows of `features` used for training plus their targets and loss weights.
struct TrainingBatch {
  std::vector<NodeId> rows;
  std::vector<int> labels;
  std::vector<double> weights;
};

TrainingBatch MakeTrainingBatch(const LabeledSet& labeled,
                                bool use_reliability);

struct LossAndGradient {
  double loss = 0.0;
  Matrix grad_weights;
  Vector grad_bias;
};

// (1/m) Σ_i w_i · CE(softmax(x_i W + b), y_i) + (λ/2)‖W‖², m = batch size.
LossAndGradient WeightedCrossEntropy(const SoftmaxModel& model,
                                     const Matrix& features,
                                     const TrainingBatch& batch,
                                     double weight_decay);

// Full-batch gradient descent from zero weights. Throws DivergenceError if the
// loss becomes non-finite.
SoftmaxModel SgcFit(const Matrix& features, const LabeledSet& labeled,
                    int num_classes, const SgcHyperparameters& hyper,
                    bool use_reliability = true);

// Fraction of the split whose prediction matches the ground truth. Throws
// ValidationError on an empty split.
double Evaluate(std::span<const int> predictions, const Graph& graph,
                Split split);

}  // namespace rim

#endif  // RIM_MODELS_H_
