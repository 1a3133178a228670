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

#include "level_graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace cdeval::detail {

LevelGraph LevelGraph::from_graph(const Graph& g) {
  LevelGraph lg;
  lg.n = g.node_count();
  lg.offsets.assign(lg.n + 1, 0);
  for (NodeIndex i = 0; i < lg.n; ++i) lg.offsets[i + 1] = lg.offsets[i] + g.degree(i);
  lg.adjacency.reserve(lg.offsets.back());
  for (NodeIndex i = 0; i < lg.n; ++i) {
    const auto nbs = g.neighbors(i);
    lg.adjacency.insert(lg.adjacency.end(), nbs.begin(), nbs.end());
  }
  lg.self_loop.assign(lg.n, 0.0);
  lg.strength = g.strengths();
  lg.two_w = 2.0 * g.total_weight();
  return lg;
}

LevelGraph LevelGraph::aggregate(const std::vector<CommunityId>& community, std::size_t k) const {
  LevelGraph out;
  out.n = k;
  out.self_loop.assign(k, 0.0);
  out.strength.assign(k, 0.0);
  out.two_w = two_w;
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < n; ++i) {
    members[community[i]].push_back(i);
    out.strength[community[i]] += strength[i];
    out.self_loop[community[i]] += self_loop[i];
  }
  NeighborWeights acc(k);
  out.offsets.assign(k + 1, 0);
  for (std::size_t c = 0; c < k; ++c) {
    for (auto i : members[c]) {
      for (const auto& nb : neighbors(i)) {
        const auto d = community[nb.node];
        if (d == c) {
          // Each internal edge is seen from both endpoints.
          out.self_loop[c] += 0.5 * nb.weight;
        } else {
          acc.add(d, nb.weight);
        }
      }
    }
    auto touched = acc.touched();
    std::sort(touched.begin(), touched.end());
    for (auto d : touched) out.adjacency.push_back({static_cast<NodeIndex>(d), acc.get(d)});
    out.offsets[c + 1] = out.adjacency.size();
    acc.clear();
  }
  return out;
}

std::size_t compact_labels(std::vector<CommunityId>& labels) {
  std::unordered_map<CommunityId, CommunityId> remap;
  for (auto& l : labels) {
    const auto [it, inserted] = remap.emplace(l, static_cast<CommunityId>(remap.size()));
    l = it->second;
  }
  return remap.size();
}

std::vector<std::uint32_t> sweep_order(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(std::span<std::uint32_t>(order));
  return order;
}

}  // namespace cdeval::detail
