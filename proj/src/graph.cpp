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

#include "cdeval/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"

namespace cdeval {

void DirectedEdgeBag::add(const std::string& src, const std::string& dst, double weight) {
  if (!(weight > 0.0)) throw InvalidArgument("edge weight must be positive");
  entries_[{src, dst}] += weight;
}

std::optional<double> DirectedEdgeBag::weight(const std::string& src, const std::string& dst) const {
  const auto it = entries_.find({src, dst});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::from_edges(std::vector<std::string> node_ids, std::vector<Edge> edges) {
  Graph g;
  const auto n = node_ids.size();
  g.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.index_.emplace(node_ids[i], static_cast<NodeIndex>(i)).second) {
      throw InvalidArgument("duplicate node id '" + node_ids[i] + "'");
    }
  }
  g.node_ids_ = std::move(node_ids);

  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw InvalidArgument("edge endpoint out of range");
    if (e.u == e.v) throw InvalidArgument("self-loop on node " + g.node_ids_[e.u]);
    if (!(e.weight > 0.0)) throw InvalidArgument("edge weight must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw InvalidArgument("duplicate edge {" + g.node_ids_[edges[i].u] + "," +
                            g.node_ids_[edges[i].v] + "}");
    }
  }
  g.edges_ = std::move(edges);

  std::vector<std::size_t> degree(n, 0);
  g.strengths_.assign(n, 0.0);
  for (const auto& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
    g.strengths_[e.u] += e.weight;
    g.strengths_[e.v] += e.weight;
    g.total_weight_ += e.weight;
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so each row fills in ascending neighbor order
  // except for the entries contributed as `v`; sort rows afterwards.
  for (const auto& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

Graph Graph::from_index_edges(std::size_t node_count, std::vector<Edge> edges) {
  std::vector<std::string> ids(node_count);
  for (std::size_t i = 0; i < node_count; ++i) ids[i] = std::to_string(i);
  return from_edges(std::move(ids), std::move(edges));
}

std::optional<NodeIndex> Graph::index_of(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DirectedEdgeBag load_edge_list(std::istream& in, const std::string& source) {
  DirectedEdgeBag bag;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const char sep = text.find('\t') != std::string_view::npos ? '\t' : ',';
    const auto fields = split(text, sep);
    if (fields.size() != 3) {
      throw ParseError(source, line_no, "expected src, dst, weight");
    }
    const auto src = trim(fields[0]);
    const auto dst = trim(fields[1]);
    if (src.empty() || dst.empty()) throw ParseError(source, line_no, "empty node id");
    double weight = 0.0;
    if (!parse_double(fields[2], weight)) {
      throw ParseError(source, line_no, "bad weight '" + std::string(trim(fields[2])) + "'");
    }
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw ParseError(source, line_no, "weight must be positive");
    }
    bag.add(std::string(src), std::string(dst), weight);
  }
  return bag;
}

DirectedEdgeBag load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list " + path);
  return load_edge_list(in, path);
}

Graph to_undirected_max(const DirectedEdgeBag& bag) {
  std::set<std::string> ids;
  for (const auto& [key, w] : bag.entries()) {
    if (key.first == key.second) continue;
    ids.insert(key.first);
    ids.insert(key.second);
  }
  std::vector<std::string> node_ids(ids.begin(), ids.end());
  std::unordered_map<std::string, NodeIndex> index;
  for (std::size_t i = 0; i < node_ids.size(); ++i) index[node_ids[i]] = static_cast<NodeIndex>(i);

  std::map<std::pair<NodeIndex, NodeIndex>, double> pairs;
  for (const auto& [key, w] : bag.entries()) {
    if (key.first == key.second) continue;
    auto a = index[key.first];
    auto b = index[key.second];
    if (a > b) std::swap(a, b);
    auto& slot = pairs[{a, b}];
    slot = std::max(slot, w);
  }
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [key, w] : pairs) edges.push_back({key.first, key.second, w});
  return Graph::from_edges(std::move(node_ids), std::move(edges));
}

Graph induced_subgraph(const Graph& g, std::span<const NodeIndex> keep) {
  std::vector<NodeIndex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  constexpr NodeIndex kAbsent = ~NodeIndex{0};
  std::vector<NodeIndex> remap(g.node_count(), kAbsent);
  std::vector<std::string> ids;
  ids.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    remap[sorted[i]] = static_cast<NodeIndex>(i);
    ids.push_back(g.node_id(sorted[i]));
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (remap[e.u] != kAbsent && remap[e.v] != kAbsent) {
      edges.push_back({remap[e.u], remap[e.v], e.weight});
    }
  }
  return Graph::from_edges(std::move(ids), std::move(edges));
}

Graph filter_min_degree(const Graph& g, std::size_t k) {
  const auto n = g.node_count();
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::vector<NodeIndex> queue;
  for (NodeIndex i = 0; i < n; ++i) {
    degree[i] = g.degree(i);
    if (degree[i] < k) {
      removed[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const auto i = queue.back();
    queue.pop_back();
    for (const auto& nb : g.neighbors(i)) {
      if (removed[nb.node]) continue;
      if (--degree[nb.node] < k) {
        removed[nb.node] = true;
        queue.push_back(nb.node);
      }
    }
  }
  std::vector<NodeIndex> keep;
  for (NodeIndex i = 0; i < n; ++i) {
    if (!removed[i]) keep.push_back(i);
  }
  if (keep.size() == n) return g;
  return induced_subgraph(g, keep);
}

std::pair<std::vector<std::uint32_t>, std::size_t> connected_components(const Graph& g) {
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> label(g.node_count(), kUnset);
  std::uint32_t count = 0;
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(i)) {
        if (label[nb.node] == kUnset) {
          label[nb.node] = count;
          stack.push_back(nb.node);
        }
      }
    }
    ++count;
  }
  return {std::move(label), count};
}

bool is_connected(const Graph& g) { return connected_components(g).second <= 1; }

Graph largest_component(const Graph& g) {
  const auto [label, count] = connected_components(g);
  if (count <= 1) return g;
  std::vector<std::size_t> size(count, 0);
  for (auto l : label) ++size[l];
  const auto best = static_cast<std::uint32_t>(
      std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<NodeIndex> keep;
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (label[i] == best) keep.push_back(i);
  }
  return induced_subgraph(g, keep);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) {
    out << g.node_id(e.u) << '\t' << g.node_id(e.v) << '\t' << format_number(e.weight) << '\n';
  }
}

void write_node_map(std::ostream& out, const Graph& g) {
  out << "node_id,index\n";
  for (NodeIndex i = 0; i < g.node_count(); ++i) out << g.node_id(i) << ',' << i << '\n';
}

std::vector<std::string> load_node_map(std::istream& in, const std::string& source) {
  std::vector<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (line_no == 1 && text == "node_id,index") continue;
    const auto fields = split(text, ',');
    long long index = 0;
    if (fields.size() != 2 || !parse_int(fields[1], index)) {
      throw ParseError(source, line_no, "expected node_id,index");
    }
    if (index != static_cast<long long>(ids.size())) {
      throw ParseError(source, line_no, "node indices must be dense and ascending");
    }
    ids.emplace_back(trim(fields[0]));
  }
  return ids;
}

Graph load_graph(const std::string& edges_path, const std::string& node_map_path) {
  std::ifstream map_in(node_map_path);
  if (!map_in) throw DataError("cannot open node map " + node_map_path);
  auto ids = load_node_map(map_in, node_map_path);
  const auto bag = load_edge_list_file(edges_path);
  std::unordered_map<std::string, NodeIndex> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = static_cast<NodeIndex>(i);
  std::map<std::pair<NodeIndex, NodeIndex>, double> pairs;
  for (const auto& [key, w] : bag.entries()) {
    const auto a = index.find(key.first);
    const auto b = index.find(key.second);
    if (a == index.end() || b == index.end()) {
      throw DataError(edges_path + ": node missing from node map");
    }
    if (a->second == b->second) continue;
    auto lo = std::min(a->second, b->second);
    auto hi = std::max(a->second, b->second);
    auto& slot = pairs[{lo, hi}];
    slot = std::max(slot, w);
  }
  std::vector<Edge> edges;
  for (const auto& [key, w] : pairs) edges.push_back({key.first, key.second, w});
  return Graph::from_edges(std::move(ids), std::move(edges));
}

}  // namespace cdeval
