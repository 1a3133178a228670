#pragma once

#include <cstdint>
#include <vector>

#include "cdeval/graph.hpp"
#include "cdeval/rng.hpp"

namespace cdeval::testing {

inline Graph clique(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i < n; ++i)
    for (NodeIndex j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph::from_index_edges(n, edges);
}

// `count` cliques of `size` nodes; clique k is bridged to clique k+1
// (and the last back to the first when `ring` is set).
inline Graph clique_chain(std::size_t count, std::size_t size, bool ring) {
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < count; ++k) {
    const auto base = static_cast<NodeIndex>(k * size);
    for (NodeIndex i = 0; i < size; ++i)
      for (NodeIndex j = i + 1; j < size; ++j) edges.push_back({base + i, base + j, 1.0});
  }
  const std::size_t bridges = ring ? count : count - 1;
  for (std::size_t k = 0; k < bridges; ++k) {
    const auto from = static_cast<NodeIndex>(k * size);
    const auto to = static_cast<NodeIndex>(((k + 1) % count) * size + 1);
    edges.push_back({from, to, 1.0});
  }
  return Graph::from_index_edges(count * size, edges);
}

inline Graph two_triangles(bool bridge) {
  std::vector<Edge> edges = {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {3, 4, 1}, {3, 5, 1}, {4, 5, 1}};
  if (bridge) edges.push_back({2, 3, 1});
  return Graph::from_index_edges(6, edges);
}

// Connected random graph: a random spanning tree plus extra edges, weights
// uniform in [0.5, 3.5).
inline Graph random_connected(std::size_t n, double extra_p, Rng& rng, bool integer_weights = false) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  auto weight = [&] {
    return integer_weights ? static_cast<double>(1 + rng.index(4)) : 0.5 + 3.0 * rng.uniform();
  };
  for (std::size_t i = 1; i < n; ++i) {
    const auto j = rng.index(i);
    w[i][j] = w[j][i] = weight();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[i][j] == 0.0 && rng.bernoulli(extra_p)) w[i][j] = w[j][i] = weight();
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i < n; ++i)
    for (NodeIndex j = i + 1; j < n; ++j)
      if (w[i][j] > 0.0) edges.push_back({i, j, w[i][j]});
  return Graph::from_index_edges(n, edges);
}

}  // namespace cdeval::testing
