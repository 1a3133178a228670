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

#include "cdeval/dendrogram.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cdeval/centrality.hpp"
#include "cdeval/error.hpp"
#include "cdeval/parallel.hpp"
#include "cdeval/partition.hpp"

namespace cdeval {

std::size_t Dendrogram::tracked_category_count(std::size_t level) const {
  std::set<int> seen;
  for (int c : levels.at(level).tracked_category) {
    if (c != n_cut) seen.insert(c);
  }
  return seen.size();
}

namespace {

std::vector<std::string> default_tracked(const Graph& g, const LabeledPartition& lp) {
  const auto scores = eigencentrality(g);
  std::vector<std::optional<NodeIndex>> best(static_cast<std::size_t>(lp.n_cut));
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (lp.is_catch_all(i)) continue;
    auto& b = best[static_cast<std::size_t>(lp.category[i])];
    if (!b || scores.score[i] > scores.score[*b]) b = i;
  }
  std::vector<std::string> out;
  for (const auto& b : best) {
    if (b) out.push_back(g.node_id(*b));
  }
  return out;
}

}  // namespace

Dendrogram dendrogram_sweep(const Graph& g, const SweepRequest& request) {
  if (request.grid.empty()) throw ConfigError("dendrogram_sweep: empty parameter grid");
  for (std::size_t i = 1; i < request.grid.size(); ++i) {
    if (!(request.grid[i - 1] < request.grid[i])) throw ConfigError("dendrogram_sweep: grid must be strictly ascending");
  }
  std::vector<NodeIndex> tracked_nodes;
  for (const auto& id : request.tracked) {
    const auto i = g.index_of(id);
    if (!i) throw DataError("tracked user '" + id + "' is not in the graph");
    tracked_nodes.push_back(*i);
  }

  const std::size_t levels = request.grid.size();
  std::vector<LabeledPartition> labeled(levels);
  std::vector<DetectionResult> results(levels);
  parallel_for(levels, request.jobs, [&](std::size_t i) {
    results[i] = run_detection(g, request.algorithm, request.grid[i], request.seed);
    labeled[i] = truncate_partition(results[i].partition, request.n_cut);
  });

  Dendrogram d;
  d.algorithm = algorithm_name(request.algorithm);
  d.n_cut = request.n_cut;
  d.tracked = request.tracked;
  if (d.tracked.empty()) {
    d.tracked = default_tracked(g, labeled.front());
    for (const auto& id : d.tracked) tracked_nodes.push_back(*g.index_of(id));
  }

  const double n = static_cast<double>(g.node_count());
  for (std::size_t l = 0; l < levels; ++l) {
    const auto& lp = labeled[l];
    DendrogramLevel level;
    level.parameter = request.grid[l];
    level.modules = results[l].partition.module_count();
    level.objective = results[l].objective;
    std::map<int, std::size_t> slot;
    for (int k = 1; k <= lp.n_cut; ++k) {
      const auto size = lp.category_size[static_cast<std::size_t>(k - 1)];
      if (size == 0) continue;
      slot[k] = level.categories.size();
      level.categories.push_back({k, size, n > 0 ? static_cast<double>(size) / n : 0.0, {}, std::nullopt});
    }
    for (std::size_t t = 0; t < tracked_nodes.size(); ++t) {
      const int c = lp.category[tracked_nodes[t]];
      level.tracked_category.push_back(c);
      level.categories[slot[c]].tracked.push_back(d.tracked[t]);
    }
    d.levels.push_back(std::move(level));
  }

  // Link each category to the coarser category sharing most members; ties go
  // to the larger coarse category, then the smaller id.
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    const auto& fine = labeled[l];
    const auto& coarse = labeled[l + 1];
    std::map<std::pair<int, int>, std::size_t> overlap;
    for (NodeIndex i = 0; i < g.node_count(); ++i) ++overlap[{fine.category[i], coarse.category[i]}];
    for (auto& cat : d.levels[l].categories) {
      std::size_t best_overlap = 0, best_size = 0;
      for (auto it = overlap.lower_bound({cat.id, 0}); it != overlap.end() && it->first.first == cat.id; ++it) {
        const int parent = it->first.second;
        const auto size = coarse.category_size[static_cast<std::size_t>(parent - 1)];
        if (it->second > best_overlap || (it->second == best_overlap && size > best_size)) {
          best_overlap = it->second;
          best_size = size;
          cat.parent = parent;
        }
      }
    }
  }
  return d;
}

nlohmann::ordered_json dendrogram_json(const Dendrogram& d) {
  nlohmann::ordered_json child;
  for (std::size_t l = 0; l < d.levels.size(); ++l) {
    const auto& level = d.levels[l];
    nlohmann::ordered_json node;
    node["parameter"] = level.parameter;
    node["modules"] = level.modules;
    node["tracked_categories"] = d.tracked_category_count(l);
    auto cats = nlohmann::ordered_json::array();
    for (const auto& c : level.categories) {
      nlohmann::ordered_json jc;
      jc["id"] = c.id;
      jc["catch_all"] = c.id == d.n_cut;
      jc["size"] = c.size;
      jc["share"] = c.share;
      jc["tracked"] = c.tracked;
      jc["parent"] = c.parent ? nlohmann::ordered_json(*c.parent) : nlohmann::ordered_json(nullptr);
      cats.push_back(std::move(jc));
    }
    node["categories"] = std::move(cats);
    node["children"] = child.is_null() ? nlohmann::ordered_json::array() : nlohmann::ordered_json::array({child});
    child = std::move(node);
  }
  nlohmann::ordered_json root;
  root["algorithm"] = d.algorithm;
  root["n_cut"] = d.n_cut;
  root["tracked"] = d.tracked;
  std::vector<double> grid;
  for (const auto& level : d.levels) grid.push_back(level.parameter);
  root["grid"] = grid;
  for (auto& [key, value] : child.items()) root[key] = value;
  return root;
}

}  // namespace cdeval
