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

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "cdeval/cda.hpp"
#include "cdeval/error.hpp"

namespace cdeval {

namespace {

// Clusters with their inter-cluster link weights. Merging folds the smaller
// cluster into the larger one, so each node and link is moved O(log n) times.
class ClusterState {
 public:
  explicit ClusterState(const Graph& g)
      : cluster_of_(g.node_count()), members_(g.node_count()), links_(g.node_count()) {
    for (NodeIndex i = 0; i < g.node_count(); ++i) {
      cluster_of_[i] = i;
      members_[i] = {i};
    }
    for (const auto& e : g.edges()) {
      links_[e.u][e.v] += e.weight;
      links_[e.v][e.u] += e.weight;
    }
  }

  NodeIndex cluster(NodeIndex node) const { return cluster_of_[node]; }
  std::size_t size(NodeIndex c) const { return members_[c].size(); }

  double link(NodeIndex a, NodeIndex b) const {
    const auto it = links_[a].find(b);
    return it == links_[a].end() ? 0.0 : it->second;
  }

  void merge(NodeIndex a, NodeIndex b) {
    if (size(a) < size(b) || (size(a) == size(b) && b < a)) std::swap(a, b);
    for (auto node : members_[b]) cluster_of_[node] = a;
    members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
    members_[b].clear();
    members_[b].shrink_to_fit();
    for (const auto& [d, w] : links_[b]) {
      if (d == a) {
        links_[a].erase(b);
        continue;
      }
      links_[a][d] += w;
      links_[d].erase(b);
      links_[d][a] += w;
    }
    links_[b].clear();
  }

  const std::vector<NodeIndex>& assignment() const { return cluster_of_; }

 private:
  std::vector<NodeIndex> cluster_of_;
  std::vector<std::vector<NodeIndex>> members_;
  std::vector<std::unordered_map<NodeIndex, double>> links_;
};

}  // namespace

BecResult bec(const Graph& g, double s, std::uint64_t /*seed*/) {
  if (g.empty()) throw InvalidArgument("bec: empty graph");
  if (!(s > 0.0)) throw InvalidArgument("bec: s must be positive");

  const auto edges = g.edges();
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Edges are already sorted by (u, v); a stable sort on weight keeps that
  // as the tie order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a].weight > edges[b].weight; });

  ClusterState state(g);
  const double total = g.total_weight();
  double intra_weight = 0.0;
  double intra_pairs = 0.0;
  BecResult result;
  double current = edge_fscore_from_totals(intra_weight, intra_pairs, total, s).f;

  for (auto idx : order) {
    ++result.edge_visits;
    const auto& e = edges[idx];
    const auto a = state.cluster(e.u);
    const auto b = state.cluster(e.v);
    if (a == b) continue;
    const double new_weight = intra_weight + state.link(a, b);
    const double new_pairs =
        intra_pairs + static_cast<double>(state.size(a)) * static_cast<double>(state.size(b));
    const double candidate = edge_fscore_from_totals(new_weight, new_pairs, total, s).f;
    if (candidate >= current) {
      state.merge(a, b);
      intra_weight = new_weight;
      intra_pairs = new_pairs;
      current = candidate;
      result.accepted_f.push_back(candidate);
    }
  }

  const auto& clusters = state.assignment();
  std::vector<std::uint64_t> labels(clusters.begin(), clusters.end());
  result.partition = Partition::from_labels(labels);
  result.score = edge_fscore_from_totals(intra_weight, intra_pairs, total, s);
  return result;
}

}  // namespace cdeval
