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

#ifndef RIM_TRACE_IO_H_
#define RIM_TRACE_IO_H_

#include <filesystem>

#include "json.hpp"
#include "rim/labeled_set.h"
#include "rim/selection.h"

namespace rim {

// Selector settings plus the oracle accuracy, as read by `rim select`.
struct SelectionRequest {
  SelectorConfig config;
  double alpha = 1.0;
};

// Strict: unknown keys raise ValidationError. Recognized keys: budget,
// batch_size, theta, steps, mode, reliable_selection, reliable_training,
// strategy, seed, lp_iterations, mre_max_candidates, lazy, alpha.
SelectionRequest ParseSelectionRequest(const nlohmann::json& doc);

nlohmann::json SelectorConfigToJson(const SelectorConfig& config);

// trace.json layout:
//   {"config": {...}, "alpha": a, "num_nodes": n,
//    "labeled": [{"node", "label", "quality", "batch"}, ...],
//    "batches": [{"batch", "picks", "labels", "gains", "objective",
//                 "qualities", "activated_after_update"}, ...],
//    "first_activator": [...], "final_activated": [0/1, ...],
//    "final_objective": F}
nlohmann::json TraceToJson(const SelectorConfig& config,
                           const ActiveLearningResult& result);

// Reads the "labeled" and "alpha" members of a trace document.
LabeledSet LabeledSetFromJson(const nlohmann::json& trace);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path,
                   const nlohmann::json& doc);

}  // namespace rim

#endif  // RIM_TRACE_IO_H_
