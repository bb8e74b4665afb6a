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

#ifndef RIM_DATASET_IO_H_
#define RIM_DATASET_IO_H_

#include <filesystem>
#include <optional>

#include "rim/graph.h"

namespace rim {

// File layout of a dataset directory.
inline constexpr const char* kEdgesFile = "edges.txt";
inline constexpr const char* kLabelsFile = "labels.txt";
inline constexpr const char* kFeaturesCsvFile = "features.csv";
inline constexpr const char* kFeaturesSparseFile = "features.txt";
inline constexpr const char* kSplitsFile = "splits.json";

// Loads a graph from its four text files:
//   edges    "u v" per line, '#' comments, reversed/duplicate pairs merged
//   labels   one integer per line; line i is node i, n = line count
//   features dense CSV rows, or sparse "idx:value ..." lines (detected by ':')
//   splits   {"train":[...],"val":[...],"test":[...]}
// The class count is inferred as max label + 1 unless given.
Graph LoadDataset(const std::filesystem::path& edge_path,
                  const std::optional<std::filesystem::path>& feature_path,
                  const std::filesystem::path& label_path,
                  const std::filesystem::path& split_path,
                  std::optional<int> num_classes = std::nullopt);

// Loads the files above from one directory. features.csv wins over
// features.txt; both are optional.
Graph LoadDatasetDir(const std::filesystem::path& dir);

// Writes edges.txt, labels.txt, splits.json and (if present) features.csv.
void WriteDatasetDir(const Graph& graph, const std::filesystem::path& dir);

}  // namespace rim

#endif  // RIM_DATASET_IO_H_
