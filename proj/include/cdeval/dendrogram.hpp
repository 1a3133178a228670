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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdeval/cda.hpp"
#include "json.hpp"

namespace cdeval {

struct DendrogramCategory {
  int id = 0;
  std::size_t size = 0;
  double share = 0.0;
  std::vector<std::string> tracked;
  std::optional<int> parent;  // category at the next (coarser) grid value
};

struct DendrogramLevel {
  double parameter = 0.0;
  std::size_t modules = 0;
  double objective = 0.0;
  std::vector<DendrogramCategory> categories;  // by id; empty categories omitted
  std::vector<int> tracked_category;           // per tracked user
};

struct Dendrogram {
  std::string algorithm;
  int n_cut = 2;
  std::vector<std::string> tracked;
  std::vector<DendrogramLevel> levels;  // ascending grid, finest first

  // Distinct non-catch-all categories holding tracked users.
  std::size_t tracked_category_count(std::size_t level) const;
};

struct SweepRequest {
  Algorithm algorithm = Algorithm::kLouvain;
  std::vector<double> grid;  // strictly ascending
  // When empty, the most central node of every non-catch-all category at the
  // first grid value is tracked.
  std::vector<std::string> tracked;
  int n_cut = 5;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

Dendrogram dendrogram_sweep(const Graph& g, const SweepRequest& request);

// Tree rooted at the coarsest level; `children` holds the next finer level.
nlohmann::ordered_json dendrogram_json(const Dendrogram& d);

}  // namespace cdeval
