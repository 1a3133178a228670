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

#include "cdeval/partition.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"

namespace cdeval {

Partition::Partition(std::vector<CommunityId> assignment) : assignment_(std::move(assignment)) {
  for (auto c : assignment_) {
    if (c >= sizes_.size()) sizes_.resize(static_cast<std::size_t>(c) + 1, 0);
    ++sizes_[c];
  }
  for (std::size_t c = 0; c < sizes_.size(); ++c) {
    if (sizes_[c] == 0) {
      throw InvalidArgument("partition has empty community " + std::to_string(c));
    }
  }
}

Partition Partition::from_labels(std::span<const std::uint64_t> labels) {
  std::unordered_map<std::uint64_t, CommunityId> remap;
  std::vector<CommunityId> assignment;
  assignment.reserve(labels.size());
  for (auto l : labels) {
    const auto [it, inserted] = remap.emplace(l, static_cast<CommunityId>(remap.size()));
    assignment.push_back(it->second);
  }
  return Partition(std::move(assignment));
}

Partition Partition::singletons(std::size_t n) {
  std::vector<CommunityId> a(n);
  std::iota(a.begin(), a.end(), CommunityId{0});
  return Partition(std::move(a));
}

Partition Partition::single_module(std::size_t n) {
  return Partition(std::vector<CommunityId>(n, 0));
}

LabeledPartition truncate_partition(const Partition& p, int n_cut) {
  if (n_cut < 2) throw InvalidArgument("n_cut must be >= 2");
  const auto m = p.module_count();
  std::vector<CommunityId> order(m);
  std::iota(order.begin(), order.end(), CommunityId{0});
  const auto& sizes = p.module_sizes();
  std::stable_sort(order.begin(), order.end(),
                   [&](CommunityId a, CommunityId b) { return sizes[a] > sizes[b]; });

  const auto kept = std::min<std::size_t>(m, static_cast<std::size_t>(n_cut - 1));
  std::vector<int> category_of(m, n_cut);
  LabeledPartition lp;
  lp.base = p;
  lp.n_cut = n_cut;
  for (std::size_t k = 0; k < kept; ++k) {
    category_of[order[k]] = static_cast<int>(k) + 1;
    lp.source_community.push_back(order[k]);
  }
  lp.category.resize(p.size());
  lp.category_size.assign(static_cast<std::size_t>(n_cut), 0);
  for (NodeIndex i = 0; i < p.size(); ++i) {
    const int cat = category_of[p.community(i)];
    lp.category[i] = cat;
    ++lp.category_size[static_cast<std::size_t>(cat - 1)];
  }
  return lp;
}

void check_partition(const Graph& g, const Partition& p) {
  if (p.size() != g.node_count()) {
    throw InvalidArgument("partition covers " + std::to_string(p.size()) + " nodes, graph has " +
                          std::to_string(g.node_count()));
  }
}

ModuleWeights module_weights(const Graph& g, const Partition& p) {
  check_partition(g, p);
  ModuleWeights mw;
  mw.internal.assign(p.module_count(), 0.0);
  mw.strength.assign(p.module_count(), 0.0);
  for (NodeIndex i = 0; i < g.node_count(); ++i) mw.strength[p.community(i)] += g.strength(i);
  for (const auto& e : g.edges()) {
    if (p.community(e.u) == p.community(e.v)) mw.internal[p.community(e.u)] += e.weight;
  }
  return mw;
}

void write_partition(std::ostream& out, const Graph& g, const Partition& p) {
  check_partition(g, p);
  out << "node_id,community_id\n";
  for (NodeIndex i = 0; i < g.node_count(); ++i) out << g.node_id(i) << ',' << p.community(i) << '\n';
}

void write_labeled_partition(std::ostream& out, const Graph& g, const LabeledPartition& lp,
                             const std::string& algorithm, double parameter) {
  check_partition(g, lp.base);
  out << "# algorithm=" << algorithm << " parameter=" << format_number(parameter)
      << " n_cut=" << lp.n_cut << " modules=" << lp.base.module_count() << '\n';
  out << "node_id,category\n";
  for (NodeIndex i = 0; i < g.node_count(); ++i) out << g.node_id(i) << ',' << lp.category[i] << '\n';
}

Partition read_partition(std::istream& in, const Graph& g, const std::string& source) {
  constexpr std::uint64_t kUnset = ~std::uint64_t{0};
  std::vector<std::uint64_t> labels(g.node_count(), kUnset);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (!header_seen && text.starts_with("node_id,")) {
      header_seen = true;
      continue;
    }
    const auto fields = split(text, ',');
    long long label = 0;
    if (fields.size() != 2 || !parse_int(fields[1], label) || label < 0) {
      throw ParseError(source, line_no, "expected node_id,community");
    }
    const auto idx = g.index_of(std::string(trim(fields[0])));
    if (!idx) throw ParseError(source, line_no, "unknown node '" + std::string(trim(fields[0])) + "'");
    labels[*idx] = static_cast<std::uint64_t>(label);
  }
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (labels[i] == kUnset) throw DataError(source + ": node " + g.node_id(i) + " missing");
  }
  // Keep the file's ids when they are already contiguous.
  std::vector<CommunityId> direct(labels.begin(), labels.end());
  try {
    return Partition(std::move(direct));
  } catch (const InvalidArgument&) {
    return Partition::from_labels(labels);
  }
}

}  // namespace cdeval
