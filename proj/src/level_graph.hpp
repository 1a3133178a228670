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
#include <vector>

#include "cdeval/graph.hpp"
#include "cdeval/partition.hpp"
#include "cdeval/rng.hpp"

namespace cdeval::detail {

// Working graph for the multi-level optimizers. Aggregated levels carry
// self-loops; `strength` counts a self-loop twice.
struct LevelGraph {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<Neighbor> adjacency;  // no self entries
  std::vector<double> self_loop;
  std::vector<double> strength;
  double two_w = 0.0;

  static LevelGraph from_graph(const Graph& g);
  // One node per community of `community` (labels 0..k-1).
  LevelGraph aggregate(const std::vector<CommunityId>& community, std::size_t k) const;

  std::span<const Neighbor> neighbors(std::size_t i) const {
    return {adjacency.data() + offsets[i], adjacency.data() + offsets[i + 1]};
  }
};

// Relabels in place to 0..k-1 by first appearance and returns k.
std::size_t compact_labels(std::vector<CommunityId>& labels);

// Sparse accumulator of node -> community link weights.
class NeighborWeights {
 public:
  explicit NeighborWeights(std::size_t n) : weight_(n, 0.0), seen_(n, false) {}

  void add(CommunityId c, double w) {
    if (!seen_[c]) {
      seen_[c] = true;
      touched_.push_back(c);
    }
    weight_[c] += w;
  }
  double get(CommunityId c) const { return weight_[c]; }
  const std::vector<CommunityId>& touched() const { return touched_; }
  void clear() {
    for (auto c : touched_) {
      weight_[c] = 0.0;
      seen_[c] = false;
    }
    touched_.clear();
  }

 private:
  std::vector<double> weight_;
  std::vector<bool> seen_;
  std::vector<CommunityId> touched_;
};

// Visiting order for one level.
std::vector<std::uint32_t> sweep_order(std::size_t n, Rng& rng);

}  // namespace cdeval::detail
