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

#include <Eigen/Dense>
#include <cmath>
#include <set>
#include <sstream>

#include "cdeval/centrality.hpp"
#include "cdeval/error.hpp"
#include "cdeval/graph.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdeval;

namespace {

DirectedEdgeBag parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in, "test");
}

Graph path3() { return Graph::from_index_edges(3, {{0, 1, 1}, {1, 2, 1}}); }

Eigen::VectorXd dense_dominant(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.node_count(), g.node_count());
  for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = e.weight;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  Eigen::VectorXd v = solver.eigenvectors().col(g.node_count() - 1);
  return v.cwiseAbs();
}

}  // namespace

TEST_CASE("edge list parsing") {
  SUBCASE("both directions kept") {
    const auto bag = parse("a,b,3\nb,a,1\n");
    CHECK(bag.size() == 2);
    CHECK(*bag.weight("a", "b") == 3.0);
    CHECK(*bag.weight("b", "a") == 1.0);
  }
  SUBCASE("duplicates are summed") {
    const auto bag = parse("a,b,2\na,b,2");
    CHECK(bag.size() == 1);
    CHECK(*bag.weight("a", "b") == 4.0);
  }
  SUBCASE("tabs, comments, real weights") {
    const auto bag = parse("# header\na\tb\t2.5\n\nb\tc\t1\n");
    CHECK(*bag.weight("a", "b") == 2.5);
    CHECK(bag.size() == 2);
  }
  SUBCASE("line order does not matter") {
    const auto x = parse("a,b,1\nc,d,2\nb,a,5\n");
    const auto y = parse("b,a,5\nc,d,2\na,b,1\n");
    CHECK(x.entries() == y.entries());
  }
  SUBCASE("zero weight rejected with line number") {
    try {
      parse("a,b,0");
      FAIL("expected error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("malformed line reports its number") {
    try {
      parse("a,b,1\n# c\nbroken line\n");
      FAIL("expected error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse("a,b,x"), ParseError);
    CHECK_THROWS_AS(parse("a,b,-2"), ParseError);
  }
}

TEST_CASE("max-of-directions symmetrization") {
  SUBCASE("larger direction wins") {
    const auto g = to_undirected_max(parse("a,b,3\nb,a,1"));
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges()[0].weight == 3.0);
  }
  SUBCASE("single direction") {
    const auto g = to_undirected_max(parse("a,b,5"));
    CHECK(g.edges()[0].weight == 5.0);
  }
  SUBCASE("self-loops dropped") {
    const auto g = to_undirected_max(parse("a,a,4\na,b,1"));
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges()[0].weight == 1.0);
    CHECK(g.node_count() == 2);
  }
  SUBCASE("idempotent on its own symmetric output") {
    Rng rng(3);
    const auto g = to_undirected_max(parse("a,b,3\nb,a,1\nb,c,2\nc,d,7\nd,c,7\nd,a,1\n"));
    DirectedEdgeBag sym;
    for (const auto& e : g.edges()) {
      sym.add(g.node_id(e.u), g.node_id(e.v), e.weight);
      sym.add(g.node_id(e.v), g.node_id(e.u), e.weight);
    }
    const auto again = to_undirected_max(sym);
    REQUIRE(again.edge_count() == g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      CHECK(again.edges()[i].u == g.edges()[i].u);
      CHECK(again.edges()[i].v == g.edges()[i].v);
      CHECK(again.edges()[i].weight == g.edges()[i].weight);
    }
  }
}

TEST_CASE("graph invariants") {
  Rng rng(11);
  const auto g = testing::random_connected(30, 0.2, rng);
  double total = 0.0;
  std::vector<double> strength(g.node_count(), 0.0);
  for (const auto& e : g.edges()) {
    CHECK(e.u < e.v);
    CHECK(e.weight > 0.0);
    total += e.weight;
    strength[e.u] += e.weight;
    strength[e.v] += e.weight;
  }
  CHECK(g.total_weight() == doctest::Approx(total));
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    CHECK(g.strength(i) == doctest::Approx(strength[i]));
    CHECK(*g.index_of(g.node_id(i)) == i);
  }
  CHECK_THROWS_AS(Graph::from_index_edges(2, {{0, 0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(Graph::from_index_edges(2, {{0, 1, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(Graph::from_index_edges(2, {{0, 1, 1.0}, {1, 0, 1.0}}), InvalidArgument);
}

TEST_CASE("degree filter peels to a fixed point") {
  CHECK(filter_min_degree(path3(), 2).empty());
  const auto tri = testing::clique(3);
  CHECK(filter_min_degree(tri, 2).node_count() == 3);
  CHECK(filter_min_degree(tri, 0).edge_count() == 3);

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_connected(25, 0.08, rng);
    for (std::size_t k : {1u, 2u, 3u, 4u}) {
      const auto f = filter_min_degree(g, k);
      for (NodeIndex i = 0; i < f.node_count(); ++i) CHECK(f.degree(i) >= k);
    }
  }
}

TEST_CASE("canonical files round-trip") {
  const auto g = to_undirected_max(parse("x,y,2\ny,z,1\nz,x,4\nw,x,1\n"));
  std::ostringstream edges, nodes;
  write_edge_list(edges, g);
  write_node_map(nodes, g);
  std::istringstream nodes_in(nodes.str());
  const auto ids = load_node_map(nodes_in);
  CHECK(ids == g.node_ids());
  std::istringstream edges_in(edges.str());
  const auto again = to_undirected_max(load_edge_list(edges_in));
  CHECK(again.node_ids() == g.node_ids());
  CHECK(again.edge_count() == g.edge_count());
}

TEST_CASE("eigencentrality examples") {
  SUBCASE("single edge") {
    const auto c = eigencentrality(Graph::from_index_edges(2, {{0, 1, 1}}));
    CHECK(c.converged);
    CHECK(c.score[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(c.score[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  }
  SUBCASE("star converges despite bipartite spectrum") {
    const auto g = Graph::from_index_edges(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
    const auto c = eigencentrality(g);
    CHECK(c.converged);
    CHECK(c.score[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    for (int i = 1; i < 5; ++i) CHECK(c.score[i] == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-9));
  }
  SUBCASE("cycle is uniform") {
    std::vector<Edge> edges;
    for (NodeIndex i = 0; i < 7; ++i) edges.push_back({i, static_cast<NodeIndex>((i + 1) % 7), 1.0});
    const auto c = eigencentrality(Graph::from_index_edges(7, edges));
    for (double s : c.score) CHECK(s == doctest::Approx(1.0 / std::sqrt(7.0)));
  }
  SUBCASE("empty graph rejected") { CHECK_THROWS_AS(eigencentrality(Graph{}), InvalidArgument); }
  SUBCASE("max_iter cap reports non-convergence") {
    Rng rng(1);
    const auto c = eigencentrality(testing::random_connected(20, 0.2, rng), 1e-15, 2);
    CHECK_FALSE(c.converged);
    CHECK(c.iterations == 2);
  }
}

TEST_CASE("eigencentrality matches dense eigensolver") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = 3 + rng.index(48);
    const auto g = testing::random_connected(n, 0.1, rng);
    const auto c = eigencentrality(g);
    REQUIRE(c.converged);
    const auto ref = dense_dominant(g);
    double dot = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(c.score[i] >= 0.0);
      dot += c.score[i] * ref[static_cast<Eigen::Index>(i)];
      norm += c.score[i] * c.score[i];
    }
    CHECK(std::abs(norm - 1.0) < 1e-12);
    CHECK(std::abs(dot) / (std::sqrt(norm) * ref.norm()) >= 1.0 - 1e-8);
  }
}

TEST_CASE("quantile split") {
  CentralityScores s;
  for (int i = 0; i < 100; ++i) s.score.push_back(0.01 * (i + 1));
  const auto split = quantile_split(s, 0.75);
  CHECK(split.anchors.size() == 25);
  CHECK(split.tested.size() == 75);
  for (auto a : split.anchors)
    for (auto t : split.tested) CHECK(s.score[a] >= s.score[t]);

  CentralityScores tied;
  tied.score.assign(12, 0.5);
  CHECK(quantile_split(tied, 0.75).anchors.empty());
  CHECK_THROWS_AS(quantile_split(tied, 1.0), InvalidArgument);

  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    CentralityScores r;
    const auto n = 1 + rng.index(60);
    for (std::size_t i = 0; i < n; ++i) r.score.push_back(static_cast<double>(rng.index(10)));
    const auto sp = quantile_split(r, 0.05 + 0.9 * rng.uniform());
    std::set<NodeIndex> all(sp.anchors.begin(), sp.anchors.end());
    for (auto t : sp.tested) CHECK(all.insert(t).second);
    CHECK(all.size() == n);
  }
}
