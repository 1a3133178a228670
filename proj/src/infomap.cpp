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

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Module bookkeeping in weight units; probabilities are weight / 2w.
//   L = plogp(q) - 2 sum plogp(q_i) - sum_a plogp(p_a) + sum plogp(q_i + p_i)
// The node term is constant across partitions and kept separately.
struct CodelengthState {
  double two_w = 0.0;
  std::vector<double> exit;  // weight leaving each module
  std::vector<double> tot;   // strength sum of each module
  double exit_total = 0.0;
  double sum_exit_log = 0.0;       // sum plogp(q_i)
  double sum_exit_flow_log = 0.0;  // sum plogp(q_i + p_i)

  double q(double weight) const { return std::max(weight, 0.0) / two_w; }

  double module_terms(double exit_w, double tot_w) const {
    return -2.0 * plogp(q(exit_w)) + plogp(q(exit_w) + q(tot_w));
  }

  double codelength(double node_term) const {
    return plogp(q(exit_total)) - 2.0 * sum_exit_log - node_term + sum_exit_flow_log;
  }

  void init(const LevelGraph& lg) {
    two_w = lg.two_w;
    exit.resize(lg.n);
    tot.resize(lg.n);
    exit_total = sum_exit_log = sum_exit_flow_log = 0.0;
    for (std::size_t i = 0; i < lg.n; ++i) {
      tot[i] = lg.strength[i];
      exit[i] = lg.strength[i] - 2.0 * lg.self_loop[i];
      exit_total += exit[i];
      sum_exit_log += plogp(q(exit[i]));
      sum_exit_flow_log += plogp(q(exit[i]) + q(tot[i]));
    }
  }

  void set_module(std::size_t m, double new_exit, double new_tot) {
    exit_total += new_exit - exit[m];
    sum_exit_log += plogp(q(new_exit)) - plogp(q(exit[m]));
    sum_exit_flow_log += plogp(q(new_exit) + q(new_tot)) - plogp(q(exit[m]) + q(tot[m]));
    exit[m] = new_exit;
    tot[m] = new_tot;
  }
};

bool local_moves(const LevelGraph& lg, Rng& rng, std::vector<CommunityId>& comm) {
  const auto n = lg.n;
  comm.resize(n);
  for (std::size_t i = 0; i < n; ++i) comm[i] = static_cast<CommunityId>(i);
  CodelengthState st;
  st.init(lg);
  const auto order = detail::sweep_order(n, rng);
  NeighborWeights links(n);
  constexpr double kMinGain = 1e-12;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto i : order) {
      const auto own = comm[i];
      const double k = lg.strength[i];
      const double loop = lg.self_loop[i];
      links.clear();
      links.add(own, 0.0);
      for (const auto& nb : lg.neighbors(i)) links.add(comm[nb.node], nb.weight);

      const double own_exit_after = st.exit[own] - k + 2.0 * links.get(own) + 2.0 * loop;
      const double own_tot_after = st.tot[own] - k;
      const double own_before = st.module_terms(st.exit[own], st.tot[own]);
      const double own_after = st.module_terms(own_exit_after, own_tot_after);

      CommunityId best = own;
      double best_delta = 0.0;
      for (auto c : links.touched()) {
        if (c == own) continue;
        const double c_exit_after = st.exit[c] + k - 2.0 * loop - 2.0 * links.get(c);
        const double c_tot_after = st.tot[c] + k;
        const double exit_total_after =
            st.exit_total - st.exit[own] - st.exit[c] + own_exit_after + c_exit_after;
        const double delta = plogp(st.q(exit_total_after)) - plogp(st.q(st.exit_total)) +
                             own_after - own_before + st.module_terms(c_exit_after, c_tot_after) -
                             st.module_terms(st.exit[c], st.tot[c]);
        if (delta < best_delta - kMinGain || (best != own && delta == best_delta && c < best)) {
          best = c;
          best_delta = delta;
        }
      }
      if (best != own) {
        const double best_exit_after = st.exit[best] + k - 2.0 * loop - 2.0 * links.get(best);
        const double best_tot_after = st.tot[best] + k;
        st.set_module(own, own_exit_after, own_tot_after);
        st.set_module(best, best_exit_after, best_tot_after);
        comm[i] = best;
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

}  // namespace

InfomapResult infomap(const Graph& g, std::uint64_t seed) {
  if (g.empty()) throw InvalidArgument("infomap: empty graph");
  Rng rng(seed);
  auto level = LevelGraph::from_graph(g);
  std::vector<CommunityId> membership(g.node_count());
  for (std::size_t i = 0; i < membership.size(); ++i) membership[i] = static_cast<CommunityId>(i);

  InfomapResult result;
  std::vector<CommunityId> comm;
  while (level.two_w > 0.0) {
    if (!local_moves(level, rng, comm)) break;
    const auto k = detail::compact_labels(comm);
    for (auto& m : membership) m = comm[m];
    result.level_codelength.push_back(map_equation(g, Partition(membership)).codelength);
    if (k == level.n) break;
    level = level.aggregate(comm, k);
  }
  detail::compact_labels(membership);
  result.partition = Partition(std::move(membership));
  result.codelength = map_equation(g, result.partition).codelength;

  // Greedy search from singletons can stall above the one-module solution.
  for (auto candidate : {Partition::single_module(g.node_count()), Partition::singletons(g.node_count())}) {
    const double l = map_equation(g, candidate).codelength;
    if (l < result.codelength - 1e-12) {
      result.partition = std::move(candidate);
      result.codelength = l;
    }
  }
  return result;
}

}  // namespace cdeval
