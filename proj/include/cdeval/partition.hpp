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
#include <span>
#include <string>
#include <vector>

#include "cdeval/graph.hpp"

namespace cdeval {

using CommunityId = std::uint32_t;

// Node -> community map with contiguous ids 0..m-1 and no empty community.
class Partition {
 public:
  Partition() = default;

  // Throws InvalidArgument when ids are not contiguous or a module is empty.
  explicit Partition(std::vector<CommunityId> assignment);

  // Relabels arbitrary labels to 0..m-1 in order of first appearance.
  static Partition from_labels(std::span<const std::uint64_t> labels);
  static Partition singletons(std::size_t n);
  static Partition single_module(std::size_t n);

  std::size_t size() const { return assignment_.size(); }
  std::size_t module_count() const { return sizes_.size(); }
  CommunityId community(NodeIndex i) const { return assignment_[i]; }
  const std::vector<CommunityId>& assignment() const { return assignment_; }
  const std::vector<std::size_t>& module_sizes() const { return sizes_; }

  bool operator==(const Partition& other) const { return assignment_ == other.assignment_; }

 private:
  std::vector<CommunityId> assignment_;
  std::vector<std::size_t> sizes_;
};

// Partition truncated to its n_cut - 1 largest communities plus a catch-all.
struct LabeledPartition {
  Partition base;
  int n_cut = 2;
  std::vector<int> category;              // per node, in [1, n_cut]
  std::vector<std::size_t> category_size;  // index k-1 holds |category k|, k in [1, n_cut]
  std::vector<CommunityId> source_community;  // community behind categories 1..n_cut-1 (may be shorter)

  int catch_all() const { return n_cut; }
  std::size_t catch_all_size() const { return category_size.back(); }
  bool is_catch_all(NodeIndex i) const { return category[i] == n_cut; }
};

// Communities ranked by size (descending, ties to the smaller id); the top
// n_cut - 1 become categories 1..n_cut-1, every other node goes to n_cut.
LabeledPartition truncate_partition(const Partition& p, int n_cut);

// Per-module w_ii (internal weight, each edge once) and w_i (strength sum).
struct ModuleWeights {
  std::vector<double> internal;
  std::vector<double> strength;
};
ModuleWeights module_weights(const Graph& g, const Partition& p);

// Throws InvalidArgument unless p covers exactly the nodes of g.
void check_partition(const Graph& g, const Partition& p);

// CSV `node_id,community_id`.
void write_partition(std::ostream& out, const Graph& g, const Partition& p);
// CSV `node_id,category`, preceded by a `#` header line describing the source.
void write_labeled_partition(std::ostream& out, const Graph& g, const LabeledPartition& lp,
                             const std::string& algorithm, double parameter);

// Reads `node_id,community_id` (or `node_id,category`) CSV in node order of g.
Partition read_partition(std::istream& in, const Graph& g, const std::string& source = "<stream>");

}  // namespace cdeval
