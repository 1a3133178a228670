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

#include "cdeval/quality.hpp"

#include <cmath>

#include "cdeval/error.hpp"

namespace cdeval {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

double modularity_gamma(const Graph& g, const Partition& p, double gamma) {
  const auto mw = module_weights(g, p);
  const double w = g.total_weight();
  if (w <= 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < p.module_count(); ++i) {
    const double share = mw.strength[i] / (2.0 * w);
    q += mw.internal[i] / w - gamma * share * share;
  }
  return q;
}

double modularity(const Graph& g, const Partition& p, double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("modularity: scale must be positive");
  return modularity_gamma(g, p, 1.0 / scale);
}

MapEquationTerms map_equation(const Graph& g, const Partition& p, bool strict) {
  check_partition(g, p);
  if (strict && !is_connected(g)) throw InvalidArgument("map_equation: graph is disconnected");
  const double two_w = 2.0 * g.total_weight();
  const auto m = p.module_count();
  MapEquationTerms t;
  t.module_exit.assign(m, 0.0);
  t.module_flow.assign(m, 0.0);
  t.module_entropy.assign(m, 0.0);
  if (two_w <= 0.0) return t;

  for (const auto& e : g.edges()) {
    const auto a = p.community(e.u);
    const auto b = p.community(e.v);
    if (a != b) {
      t.module_exit[a] += e.weight / two_w;
      t.module_exit[b] += e.weight / two_w;
    }
  }
  std::vector<double> visit(m, 0.0);
  for (NodeIndex i = 0; i < g.node_count(); ++i) visit[p.community(i)] += g.strength(i) / two_w;
  for (std::size_t i = 0; i < m; ++i) {
    t.module_flow[i] = t.module_exit[i] + visit[i];
    t.q_switch += t.module_exit[i];
  }

  if (t.q_switch > 0.0) {
    for (double q : t.module_exit) t.index_entropy -= plogp(q / t.q_switch);
  }
  for (NodeIndex a = 0; a < g.node_count(); ++a) {
    const auto i = p.community(a);
    if (t.module_flow[i] > 0.0) t.module_entropy[i] -= plogp(g.strength(a) / two_w / t.module_flow[i]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (t.module_flow[i] > 0.0) t.module_entropy[i] -= plogp(t.module_exit[i] / t.module_flow[i]);
  }

  t.codelength = t.q_switch * t.index_entropy;
  for (std::size_t i = 0; i < m; ++i) t.codelength += t.module_flow[i] * t.module_entropy[i];
  return t;
}

EdgeFScore edge_fscore_from_totals(double intra_weight, double intra_pairs, double total_weight,
                                   double s) {
  EdgeFScore f;
  f.scale = s;
  f.precision = intra_pairs > 0.0 ? intra_weight / intra_pairs : 1.0;
  f.recall = total_weight > 0.0 ? intra_weight / total_weight : 0.0;
  const double s2 = s * s;
  const double denom = s2 * f.precision + f.recall;
  f.f = (f.precision == 0.0 && f.recall == 0.0) || denom <= 0.0
            ? 0.0
            : (1.0 + s2) * f.precision * f.recall / denom;
  return f;
}

EdgeFScore edge_fscore(const Graph& g, const Partition& p, double s) {
  if (!(s > 0.0)) throw InvalidArgument("edge_fscore: s must be positive");
  const auto mw = module_weights(g, p);
  double intra = 0.0;
  for (double x : mw.internal) intra += x;
  double pairs = 0.0;
  for (auto n : p.module_sizes()) pairs += 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return edge_fscore_from_totals(intra, pairs, g.total_weight(), s);
}

}  // namespace cdeval
