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

#ifndef RIM_LABELED_SET_H_
#define RIM_LABELED_SET_H_

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rim/graph.h"

namespace rim {

struct LabeledEntry {
  NodeId node = kNoNode;
  int label = 0;         // label returned by the oracle
  double quality = 1.0;  // estimated probability that `label` is correct
  int batch = 0;
};

// The evolving active-learning state: queried nodes in query order together
// with the oracle accuracy alpha they were labeled under.
class LabeledSet {
 public:
  explicit LabeledSet(double alpha = 1.0);

  // Throws ValidationError on a duplicate node, a quality outside [0, 1] or a
  // batch index lower than the previous entry's.
  void Add(NodeId node, int label, double quality, int batch);

  double alpha() const { return alpha_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<LabeledEntry>& entries() const { return entries_; }
  const LabeledEntry& operator[](std::size_t i) const { return entries_[i]; }

  bool Contains(NodeId node) const { return index_.contains(node); }
  std::optional<std::size_t> IndexOf(NodeId node) const;
  void SetQuality(NodeId node, double quality);

  std::vector<NodeId> Nodes() const;
  std::vector<NodeId> BatchNodes(int batch) const;
  int LastBatch() const { return entries_.empty() ? -1 : entries_.back().batch; }

 private:
  double alpha_;
  std::vector<LabeledEntry> entries_;
  std::unordered_map<NodeId, std::size_t> index_;
};

}  // namespace rim

#endif  // RIM_LABELED_SET_H_
