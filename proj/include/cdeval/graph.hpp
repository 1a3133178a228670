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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cdeval {

using NodeIndex = std::uint32_t;

struct Edge {
  NodeIndex u;
  NodeIndex v;
  double weight;
};

struct Neighbor {
  NodeIndex node;
  double weight;
};

// Directed weighted interactions as read from an edge list. Duplicate
// (src, dst) lines are summed; iteration order is by (src, dst) so the
// content never depends on line order.
class DirectedEdgeBag {
 public:
  void add(const std::string& src, const std::string& dst, double weight);

  const std::map<std::pair<std::string, std::string>, double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::optional<double> weight(const std::string& src, const std::string& dst) const;

 private:
  std::map<std::pair<std::string, std::string>, double> entries_;
};

// Weighted undirected graph without self-loops. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Builds from explicit node ids and index edges. Throws InvalidArgument on
  // self-loops, non-positive weights, out-of-range indices, duplicate edges
  // or duplicate ids.
  static Graph from_edges(std::vector<std::string> node_ids, std::vector<Edge> edges);

  // Convenience for tests and bindings: node ids are "0".."n-1".
  static Graph from_index_edges(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return node_ids_.empty(); }

  const std::string& node_id(NodeIndex i) const { return node_ids_[i]; }
  const std::vector<std::string>& node_ids() const { return node_ids_; }
  std::optional<NodeIndex> index_of(const std::string& id) const;

  // Edges with u < v, sorted by (u, v).
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NodeIndex i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeIndex i) const { return offsets_[i + 1] - offsets_[i]; }
  double strength(NodeIndex i) const { return strengths_[i]; }
  const std::vector<double>& strengths() const { return strengths_; }
  double total_weight() const { return total_weight_; }

 private:
  std::vector<std::string> node_ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> strengths_;
  double total_weight_ = 0.0;
};

// Parses `src<TAB or ,>dst<TAB or ,>weight` lines; '#' lines are comments.
DirectedEdgeBag load_edge_list(std::istream& in, const std::string& source = "<stream>");
DirectedEdgeBag load_edge_list_file(const std::string& path);

// weight{u,v} = max(w(u->v), w(v->u)); self-loops dropped. Node indices follow
// the lexicographic order of node ids.
Graph to_undirected_max(const DirectedEdgeBag& bag);

// Peels nodes with fewer than k incident edges until none remain.
Graph filter_min_degree(const Graph& g, std::size_t k);

// Subgraph on `keep` (any order); relative index order is preserved.
Graph induced_subgraph(const Graph& g, std::span<const NodeIndex> keep);

// Component label per node (labels in order of first node) and the count.
std::pair<std::vector<std::uint32_t>, std::size_t> connected_components(const Graph& g);
bool is_connected(const Graph& g);
Graph largest_component(const Graph& g);

// Canonical files: edges as `src\tdst\tweight`, node map as `node_id,index`.
void write_edge_list(std::ostream& out, const Graph& g);
void write_node_map(std::ostream& out, const Graph& g);
std::vector<std::string> load_node_map(std::istream& in, const std::string& source = "<stream>");

// Reads a canonical graph, ordering nodes by the node map.
Graph load_graph(const std::string& edges_path, const std::string& node_map_path);

}  // namespace cdeval
