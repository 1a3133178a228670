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

#include <vector>

#include "cdeval/graph.hpp"
#include "cdeval/partition.hpp"

namespace cdeval {

// Generalized modularity with resolution gamma = 1/scale:
//   Q = sum_i [ w_ii / w - gamma * (w_i / 2w)^2 ].
// scale = 1 is standard modularity; larger scales favour coarser partitions.
double modularity(const Graph& g, const Partition& p, double scale = 1.0);
double modularity_gamma(const Graph& g, const Partition& p, double gamma);

// Two-level map equation terms for the undirected random walk without
// teleportation. Visit rates are strength / 2w, all logs base 2.
struct MapEquationTerms {
  double q_switch = 0.0;              // sum of module exit probabilities
  std::vector<double> module_exit;    // q_i
  std::vector<double> module_flow;    // p_i = q_i + sum of member visit rates
  double index_entropy = 0.0;         // H(Q)
  std::vector<double> module_entropy;  // H(P^i)
  double codelength = 0.0;            // L(M), bits per step
};

// When `strict` is set a disconnected graph is rejected; otherwise the
// strength-proportional rates are used over the whole graph.
MapEquationTerms map_equation(const Graph& g, const Partition& p, bool strict = false);

struct EdgeFScore {
  double precision = 1.0;  // intra weight / intra node pairs
  double recall = 0.0;     // intra weight / total weight
  double scale = 1.0;
  double f = 0.0;
};

// F_s = (1+s^2) P R / (s^2 P + R) from raw totals. pairs == 0 gives P = 1.
EdgeFScore edge_fscore_from_totals(double intra_weight, double intra_pairs, double total_weight,
                                   double s);
EdgeFScore edge_fscore(const Graph& g, const Partition& p, double s);

}  // namespace cdeval
