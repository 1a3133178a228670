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

// Independent reference evaluations shared by the unit and acceptance suites.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cdeval/graph.hpp"
#include "cdeval/partition.hpp"

namespace cdeval::testing {

// Pairwise route: Q = 1/(2w) sum_ij [A_ij - gamma k_i k_j / 2w] delta(c_i, c_j).
inline double modularity_oracle(const Graph& g, const std::vector<CommunityId>& c, double gamma) {
  const auto n = g.node_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = e.weight;
  const double two_w = 2.0 * g.total_weight();
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] == c[j]) q += a[i][j] - gamma * g.strength(i) * g.strength(j) / two_w;
  return q / two_w;
}

inline double plogp(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

// Expanded route: L = plogp(q) - 2 sum plogp(q_i) - sum plogp(p_a) + sum plogp(q_i + p_i),
// exit rates from a dense adjacency matrix.
inline double map_equation_oracle(const Graph& g, const std::vector<CommunityId>& c) {
  const auto n = g.node_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = e.weight;
  const double two_w = 2.0 * g.total_weight();
  const auto m = *std::max_element(c.begin(), c.end()) + 1;
  std::vector<double> exit(m, 0.0), visit(m, 0.0);
  double node_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    visit[c[i]] += g.strength(i) / two_w;
    node_term += plogp(g.strength(i) / two_w);
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] != c[j]) exit[c[i]] += a[i][j] / two_w;
  }
  double q = 0.0, l = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    q += exit[k];
    l += -2.0 * plogp(exit[k]) + plogp(exit[k] + visit[k]);
  }
  return l + plogp(q) - node_term;
}

// Calls f on every set partition of {0..n-1} (restricted growth strings).
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<CommunityId>&)>& f) {
  std::vector<CommunityId> c(n, 0);
  std::function<void(std::size_t, CommunityId)> rec = [&](std::size_t i, CommunityId used) {
    if (i == n) {
      f(c);
      return;
    }
    for (CommunityId k = 0; k <= used && k < n; ++k) {
      c[i] = k;
      rec(i + 1, std::max<CommunityId>(used, k + 1));
    }
  };
  if (n > 0) rec(1, 1);
}

}  // namespace cdeval::testing
