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

#include <cstddef>
#include <vector>

#include "cdeval/graph.hpp"

namespace cdeval {

struct CentralityScores {
  std::vector<double> score;  // unit Euclidean norm, non-negative
  std::size_t iterations = 0;
  bool converged = false;
};

// Power iteration for the dominant eigenvector of the weighted adjacency
// matrix. Iterates with A + I, which has the same eigenvectors but no
// +/- lambda pair at the top of the spectrum, so bipartite graphs converge.
CentralityScores eigencentrality(const Graph& g, double tol = 1e-12, std::size_t max_iter = 10000);

struct AnchorSplit {
  std::vector<NodeIndex> anchors;  // ascending
  std::vector<NodeIndex> tested;   // ascending
  double quantile = 0.75;
  double threshold = 0.0;
};

// Nearest-rank q-quantile of the scores; strictly greater scores are anchors.
AnchorSplit quantile_split(const CentralityScores& scores, double q);

}  // namespace cdeval
