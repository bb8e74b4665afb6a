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

#include "rim/labeled_set.h"

#include <string>

#include "rim/error.h"

namespace rim {

LabeledSet::LabeledSet(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("labeling accuracy must lie in (0, 1], got " +
                          std::to_string(alpha));
  }
}

void LabeledSet::Add(NodeId node, int label, double quality, int batch) {
  if (Contains(node)) {
    throw ValidationError("node " + std::to_string(node) +
                          " is already labeled");
  }
  if (!(quality >= 0.0 && quality <= 1.0)) {
    throw ValidationError("quality " + std::to_string(quality) +
                          " outside [0, 1]");
  }
  if (!entries_.empty() && batch < entries_.back().batch) {
    throw ValidationError("batch indices must be non-decreasing");
  }
  index_.emplace(node, entries_.size());
  entries_.push_back({node, label, quality, batch});
}

std::optional<std::size_t> LabeledSet::IndexOf(NodeId node) const {
  auto it = index_.find(node);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void LabeledSet::SetQuality(NodeId node, double quality) {
  auto idx = IndexOf(node);
  if (!idx) throw IndexError("node " + std::to_string(node) + " not labeled");
  if (!(quality >= 0.0 && quality <= 1.0)) {
    throw ValidationError("quality " + std::to_string(quality) +
                          " outside [0, 1]");
  }
  entries_[*idx].quality = quality;
}

std::vector<NodeId> LabeledSet::Nodes() const {
  std::vector<NodeId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.node);
  return out;
}

std::vector<NodeId> LabeledSet::BatchNodes(int batch) const {
  std::vector<NodeId> out;
  for (const auto& e : entries_) {
    if (e.batch == batch) out.push_back(e.node);
  }
  return out;
}

}  // namespace rim
