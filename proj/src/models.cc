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

#include "rim/models.h"

#include <cmath>
#include <string>

#include "rim/error.h"

namespace rim {

std::vector<int> ArgmaxRows(const Matrix& m) {
  std::vector<int> out(m.rows(), 0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    int best = 0;
    for (Eigen::Index c = 1; c < m.cols(); ++c) {
      if (m(i, c) > m(i, best)) best = static_cast<int>(c);
    }
    out[i] = best;
  }
  return out;
}

int SoftLabels::NumUnreached() const {
  int count = 0;
  for (bool u : unreached) count += u ? 1 : 0;
  return count;
}

namespace {

SoftLabels Finish(Matrix values) {
  SoftLabels out;
  out.predictions = ArgmaxRows(values);
  out.unreached.resize(values.rows());
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out.unreached[i] = (values.row(i).array() == 0.0).all();
  }
  out.values = std::move(values);
  return out;
}

}  // namespace

SoftLabels LpFitPredict(const PropagationOperator& op,
                        const LabeledSet& labeled, int num_classes,
                        int iterations, bool use_reliability) {
  if (labeled.empty()) {
    throw ValidationError("label propagation needs at least one label");
  }
  if (iterations < 1) throw ValidationError("iterations must be >= 1");
  const NodeId n = op.size();
  Matrix seeds = Matrix::Zero(n, num_classes);
  for (const auto& e : labeled.entries()) {
    if (e.label < 0 || e.label >= num_classes) {
      throw ValidationError("label " + std::to_string(e.label) +
                            " outside class range");
    }
    seeds(e.node, e.label) = use_reliability ? e.quality : 1.0;
  }
  Matrix y = seeds;
  for (int t = 0; t < iterations; ++t) {
    y = op.Apply(y);
    for (const auto& e : labeled.entries()) y.row(e.node) = seeds.row(e.node);
  }
  return Finish(std::move(y));
}

SoftLabels SoftmaxModel::Predict(const Matrix& features) const {
  if (features.cols() != weights.rows()) {
    throw DimensionError("feature width " + std::to_string(features.cols()) +
                         " does not match model width " +
                         std::to_string(weights.rows()));
  }
  Matrix logits = features * weights;
  logits.rowwise() += bias.transpose();
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    auto row = logits.row(i);
    row.array() -= row.maxCoeff();
    row = row.array().exp().matrix();
    row /= row.sum();
  }
  SoftLabels out;
  out.predictions = ArgmaxRows(logits);
  out.unreached.assign(logits.rows(), false);
  out.values = std::move(logits);
  return out;
}

TrainingBatch MakeTrainingBatch(const LabeledSet& labeled,
                                bool use_reliability) {
  TrainingBatch batch;
  for (const auto& e : labeled.entries()) {
    batch.rows.push_back(e.node);
    batch.labels.push_back(e.label);
    batch.weights.push_back(use_reliability ? e.quality : 1.0);
  }
  return batch;
}

LossAndGradient WeightedCrossEntropy(const SoftmaxModel& model,
                                     const Matrix& features,
                                     const TrainingBatch& batch,
                                     double weight_decay) {
  const Eigen::Index d = model.weights.rows();
  const Eigen::Index c = model.weights.cols();
  const auto m = static_cast<double>(batch.rows.size());
  LossAndGradient out;
  out.grad_weights = Matrix::Zero(d, c);
  out.grad_bias = Vector::Zero(c);
  for (std::size_t t = 0; t < batch.rows.size(); ++t) {
    const auto x = features.row(batch.rows[t]);
    Eigen::RowVectorXd logits = x * model.weights + model.bias.transpose();
    const double shift = logits.maxCoeff();
    Eigen::RowVectorXd p = (logits.array() - shift).exp().matrix();
    const double z = p.sum();
    p /= z;
    const int y = batch.labels[t];
    const double w = batch.weights[t] / m;
    out.loss += w * (std::log(z) + shift - logits[y]);
    // d/dlogits of CE is p − onehot(y).
    p[y] -= 1.0;
    p *= w;
    out.grad_weights.noalias() += x.transpose() * p;
    out.grad_bias += p.transpose();
  }
  out.loss += 0.5 * weight_decay * model.weights.squaredNorm();
  out.grad_weights += weight_decay * model.weights;
  return out;
}

SoftmaxModel SgcFit(const Matrix& features, const LabeledSet& labeled,
                    int num_classes, const SgcHyperparameters& hyper,
                    bool use_reliability) {
  if (labeled.empty()) throw ValidationError("no labeled nodes to train on");
  if (!features.allFinite()) throw ValidationError("non-finite features");
  SoftmaxModel model{Matrix::Zero(features.cols(), num_classes),
                     Vector::Zero(num_classes)};
  const TrainingBatch batch = MakeTrainingBatch(labeled, use_reliability);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    LossAndGradient lg =
        WeightedCrossEntropy(model, features, batch, hyper.weight_decay);
    if (!std::isfinite(lg.loss)) {
      throw DivergenceError("training loss became non-finite at epoch " +
                            std::to_string(epoch) +
                            "; try a smaller learning rate");
    }
    model.weights -= hyper.learning_rate * lg.grad_weights;
    model.bias -= hyper.learning_rate * lg.grad_bias;
  }
  return model;
}

double Evaluate(std::span<const int> predictions, const Graph& graph,
                Split split) {
  const auto& nodes = graph.split(split);
  if (nodes.empty()) throw ValidationError("cannot evaluate an empty split");
  if (predictions.size() != static_cast<std::size_t>(graph.num_nodes())) {
    throw DimensionError("prediction count does not match node count");
  }
  std::size_t correct = 0;
  for (NodeId v : nodes) {
    if (predictions[v] == graph.labels()[v]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(nodes.size());
}

}  // namespace rim
