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

#include <cmath>

#include "cdeval/cda.hpp"
#include "cdeval/error.hpp"
#include "cdeval/rng.hpp"
#include "level_graph.hpp"

namespace cdeval {

namespace {

using detail::LevelGraph;
using detail::NeighborWeights;

// Greedy local moving on one level. Returns true if any node changed
// community. Gains are in units of w (the modularity change times w).
bool local_moves(const LevelGraph& lg, double gamma, Rng& rng, std::vector<CommunityId>& comm) {
  const auto n = lg.n;
  comm.resize(n);
  std::vector<double> tot(n);
  for (std::size_t i = 0; i < n; ++i) {
    comm[i] = static_cast<CommunityId>(i);
    tot[i] = lg.strength[i];
  }
  const auto order = detail::sweep_order(n, rng);
  NeighborWeights links(n);
  // Relative threshold keeps float noise from producing endless swaps.
  const double eps = 1e-12 * (lg.two_w > 0 ? lg.two_w : 1.0);
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto i : order) {
      const auto own = comm[i];
      const double k = lg.strength[i];
      links.clear();
      links.add(own, 0.0);
      for (const auto& nb : lg.neighbors(i)) links.add(comm[nb.node], nb.weight);
      tot[own] -= k;

      const double own_gain = links.get(own) - gamma * tot[own] * k / lg.two_w;
      CommunityId best = own;
      double best_gain = -INFINITY;
      for (auto c : links.touched()) {
        if (c == own) continue;
        const double gain = links.get(c) - gamma * tot[c] * k / lg.two_w;
        if (gain > best_gain || (gain == best_gain && c < best)) {
          best = c;
          best_gain = gain;
        }
      }
      if (best != own && best_gain > own_gain + eps) {
        comm[i] = best;
        tot[best] += k;
        moved = true;
        any_move = true;
      } else {
        tot[own] += k;
      }
    }
  }
  return any_move;
}

}  // namespace

LouvainResult louvain_gamma(const Graph& g, double gamma, std::uint64_t seed) {
  if (g.empty()) throw InvalidArgument("louvain: empty graph");
  if (!(gamma > 0.0)) throw InvalidArgument("louvain: resolution must be positive");
  Rng rng(seed);
  auto level = LevelGraph::from_graph(g);
  std::vector<CommunityId> membership(g.node_count());
  for (std::size_t i = 0; i < membership.size(); ++i) membership[i] = static_cast<CommunityId>(i);

  LouvainResult result;
  std::vector<CommunityId> comm;
  while (true) {
    if (!local_moves(level, gamma, rng, comm)) break;
    const auto k = detail::compact_labels(comm);
    for (auto& m : membership) m = comm[m];
    result.level_quality.push_back(modularity_gamma(g, Partition(membership), gamma));
    if (k == level.n) break;
    level = level.aggregate(comm, k);
  }
  detail::compact_labels(membership);
  result.partition = Partition(std::move(membership));
  result.quality = modularity_gamma(g, result.partition, gamma);
  return result;
}

LouvainResult louvain(const Graph& g, double scale, std::uint64_t seed) {
  if (!(scale > 0.0)) throw InvalidArgument("louvain: scale must be positive");
  return louvain_gamma(g, 1.0 / scale, seed);
}

}  // namespace cdeval
