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

#include "rim/dataset_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "rim/error.h"

namespace rim {
namespace {

namespace fs = std::filesystem;

std::ifstream OpenInput(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::string_view Trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool IsSkippable(std::string_view line) {
  line = Trim(line);
  return line.empty() || line.front() == '#';
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> SplitTokens(std::string_view line,
                                          std::string_view delims) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    auto start = line.find_first_not_of(delims, pos);
    if (start == std::string_view::npos) break;
    auto stop = line.find_first_of(delims, start);
    if (stop == std::string_view::npos) stop = line.size();
    out.push_back(line.substr(start, stop - start));
    pos = stop;
  }
  return out;
}

std::vector<int> ReadLabels(const fs::path& path) {
  auto in = OpenInput(path);
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    int y;
    if (!ParseNumber(Trim(line), y)) {
      throw ParseError(path.string(), line_no, "expected one integer label");
    }
    labels.push_back(y);
  }
  return labels;
}

std::vector<Edge> ReadEdges(const fs::path& path) {
  auto in = OpenInput(path);
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    auto tokens = SplitTokens(line, " \t\r,");
    NodeId u, v;
    if (tokens.size() != 2 || !ParseNumber(tokens[0], u) ||
        !ParseNumber(tokens[1], v)) {
      throw ParseError(path.string(), line_no, "expected \"u v\"");
    }
    if (u == v) {
      throw ParseError(path.string(), line_no,
                       "self-loop-in-input on node " + std::to_string(u));
    }
    edges.emplace_back(u, v);
  }
  return edges;
}

Matrix ReadFeatures(const fs::path& path, NodeId n) {
  auto in = OpenInput(path);
  std::vector<std::string> lines;
  std::vector<int> line_numbers;
  std::string line;
  int line_no = 0;
  bool sparse = false;
  while (std::getline(in, line)) {
    ++line_no;
    // Sparse rows may legitimately be empty (all-zero node), so only comments
    // are skipped here.
    if (!Trim(line).empty() && Trim(line).front() == '#') continue;
    if (line.find(':') != std::string::npos) sparse = true;
    lines.push_back(line);
    line_numbers.push_back(line_no);
  }
  if (!sparse) {
    while (!lines.empty() && Trim(lines.back()).empty()) {
      lines.pop_back();
      line_numbers.pop_back();
    }
  } else if (static_cast<NodeId>(lines.size()) > n) {
    while (static_cast<NodeId>(lines.size()) > n &&
           Trim(lines.back()).empty()) {
      lines.pop_back();
      line_numbers.pop_back();
    }
  }
  if (static_cast<NodeId>(lines.size()) != n) {
    throw ParseError(path.string(), 0,
                     fmt::format("expected {} feature rows, found {}", n,
                                 lines.size()));
  }

  if (!sparse) {
    std::vector<std::vector<double>> rows(n);
    std::size_t width = 0;
    for (NodeId i = 0; i < n; ++i) {
      for (auto tok : SplitTokens(lines[i], ", \t\r")) {
        double x;
        if (!ParseNumber(tok, x)) {
          throw ParseError(path.string(), line_numbers[i],
                           "bad feature value '" + std::string(tok) + "'");
        }
        rows[i].push_back(x);
      }
      if (i == 0) width = rows[0].size();
      if (rows[i].size() != width || width == 0) {
        throw ParseError(path.string(), line_numbers[i],
                         fmt::format("expected {} columns, found {}", width,
                                     rows[i].size()));
      }
    }
    Matrix x(n, static_cast<Eigen::Index>(width));
    for (NodeId i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < width; ++c) x(i, c) = rows[i][c];
    }
    return x;
  }

  std::vector<std::vector<std::pair<int, double>>> rows(n);
  int width = 0;
  for (NodeId i = 0; i < n; ++i) {
    for (auto tok : SplitTokens(lines[i], " \t\r")) {
      auto colon = tok.find(':');
      int idx;
      double value;
      if (colon == std::string_view::npos ||
          !ParseNumber(tok.substr(0, colon), idx) ||
          !ParseNumber(tok.substr(colon + 1), value) || idx < 0) {
        throw ParseError(path.string(), line_numbers[i],
                         "bad sparse entry '" + std::string(tok) + "'");
      }
      rows[i].emplace_back(idx, value);
      width = std::max(width, idx + 1);
    }
  }
  Matrix x = Matrix::Zero(n, width);
  for (NodeId i = 0; i < n; ++i) {
    for (auto [idx, value] : rows[i]) x(i, idx) = value;
  }
  return x;
}

std::vector<NodeId> ReadSplitList(const nlohmann::json& doc, const char* key,
                                  const fs::path& path) {
  if (!doc.contains(key)) return {};
  const auto& arr = doc.at(key);
  if (!arr.is_array()) {
    throw ParseError(path.string(), 0, std::string(key) + " is not an array");
  }
  std::vector<NodeId> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) {
      throw ParseError(path.string(), 0,
                       std::string(key) + " holds a non-integer entry");
    }
    out.push_back(v.get<NodeId>());
  }
  return out;
}

Splits ReadSplits(const fs::path& path) {
  auto in = OpenInput(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  if (!doc.is_object()) throw ParseError(path.string(), 0, "expected object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "train" && key != "val" && key != "test") {
      throw ParseError(path.string(), 0, "unknown split '" + key + "'");
    }
  }
  return {ReadSplitList(doc, "train", path), ReadSplitList(doc, "val", path),
          ReadSplitList(doc, "test", path)};
}

}  // namespace

Graph LoadDataset(const fs::path& edge_path,
                  const std::optional<fs::path>& feature_path,
                  const fs::path& label_path, const fs::path& split_path,
                  std::optional<int> num_classes) {
  std::vector<int> labels = ReadLabels(label_path);
  const auto n = static_cast<NodeId>(labels.size());
  int c = num_classes.value_or(0);
  if (!num_classes) {
    for (int y : labels) c = std::max(c, y + 1);
  }

  Graph g = Graph::FromEdges(n, ReadEdges(edge_path));
  g.set_labels(std::move(labels), c);
  if (feature_path) g.set_features(ReadFeatures(*feature_path, n));
  g.set_splits(ReadSplits(split_path));
  g.Validate();
  return g;
}

Graph LoadDatasetDir(const fs::path& dir) {
  std::optional<fs::path> features;
  if (fs::exists(dir / kFeaturesCsvFile)) {
    features = dir / kFeaturesCsvFile;
  } else if (fs::exists(dir / kFeaturesSparseFile)) {
    features = dir / kFeaturesSparseFile;
  }
  return LoadDataset(dir / kEdgesFile, features, dir / kLabelsFile,
                     dir / kSplitsFile);
}

void WriteDatasetDir(const Graph& graph, const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / kEdgesFile);
    out << "# " << graph.num_nodes() << " nodes, " << graph.num_edges()
        << " undirected edges\n";
    for (auto [u, v] : graph.edges()) out << u << ' ' << v << '\n';
  }
  {
    std::ofstream out(dir / kLabelsFile);
    for (int y : graph.labels()) out << y << '\n';
  }
  {
    nlohmann::json doc = {{"train", graph.splits().train},
                          {"val", graph.splits().val},
                          {"test", graph.splits().test}};
    std::ofstream(dir / kSplitsFile) << doc.dump() << '\n';
  }
  if (graph.has_features()) {
    std::ofstream out(dir / kFeaturesCsvFile);
    const Matrix& x = graph.features();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        if (c > 0) out << ',';
        out << fmt::format("{}", x(i, c));
      }
      out << '\n';
    }
  }
}

}  // namespace rim
