// Copyright 2026 The cdeval Authors.
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdeval/graph.hpp"
#include "cdeval/partition.hpp"
#include "cdeval/quality.hpp"

namespace cdeval {

struct LouvainResult {
  Partition partition;
  double quality = 0.0;               // modularity at the run's scale
  std::vector<double> level_quality;  // after each local-moving phase
};

// Multi-level greedy modularity maximization at scale c (gamma = 1/c).
LouvainResult louvain(const Graph& g, double scale, std::uint64_t seed);
LouvainResult louvain_gamma(const Graph& g, double gamma, std::uint64_t seed);

struct InfomapResult {
  Partition partition;
  double codelength = 0.0;
  std::vector<double> level_codelength;
};

// Multi-level greedy minimization of the map equation. The result never
// codes worse than the one-module or all-singleton partitions.
InfomapResult infomap(const Graph& g, std::uint64_t seed);

struct BecResult {
  Partition partition;
  EdgeFScore score;
  std::size_t edge_visits = 0;
  std::vector<double> accepted_f;  // F_s after each accepted merge
};

// Single pass over the edges (descending weight, ties by endpoint indices);
// an edge merges its endpoint clusters when F_s does not decrease. `seed` is
// accepted for interface symmetry; the edge order is fully deterministic.
BecResult bec(const Graph& g, double s, std::uint64_t seed = 0);

enum class Algorithm { kLouvain, kLouvainGamma, kBec, kInfomap };

Algorithm parse_algorithm(const std::string& name);  // throws ConfigError listing names
std::string algorithm_name(Algorithm a);
bool algorithm_has_parameter(Algorithm a);

struct DetectionResult {
  Partition partition;
  double objective = 0.0;  // Q for Louvain, L for Infomap, F_s for BEC
};

DetectionResult run_detection(const Graph& g, Algorithm a, double parameter, std::uint64_t seed);

}  // namespace cdeval
