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

#include "cdeval/datasets.hpp"

#include <algorithm>

#include "cdeval/error.hpp"
#include "cdeval/rng.hpp"

namespace cdeval {

namespace {

// Uniform sample of k positions without replacement, returned ascending.
std::vector<std::size_t> sample(std::vector<std::size_t> pool, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.index(pool.size() - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

BalancedDatasets build_datasets(const Corpus& corpus, const MessageEmbedder& embedder, const Graph& g,
                                const LabeledPartition& lp, const AnchorSplit& split,
                                const DatasetRequest& request) {
  if (request.n_train == 0) throw InvalidArgument("build_datasets: n_train must be >= 1");
  if (lp.category.size() != g.node_count()) throw InvalidArgument("build_datasets: partition does not match graph");

  BalancedDatasets out;
  for (int k = 1; k < lp.n_cut; ++k) {
    if (lp.category_size[static_cast<std::size_t>(k - 1)] > 0) out.categories.push_back(k);
  }
  if (out.categories.size() < 2) throw DataError("build_datasets: fewer than 2 populated categories");

  std::vector<char> is_anchor(g.node_count(), 0);
  for (NodeIndex a : split.anchors) is_anchor[a] = 1;

  const std::size_t kc = out.categories.size();
  std::vector<std::vector<std::size_t>> anchor_pool(kc), test_pool(kc);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& m = corpus[i];
    const auto node = g.index_of(m.user);
    if (!node) {
      if (request.external && request.external->count(m.user)) continue;
      throw DataError("unknown user '" + m.user + "' (message " + m.id + ")");
    }
    if (lp.is_catch_all(*node)) continue;
    const auto slot = static_cast<std::size_t>(lp.category[*node] - 1);
    (is_anchor[*node] ? anchor_pool : test_pool)[slot].push_back(i);
  }

  for (std::size_t c = 0; c < kc; ++c) {
    out.anchor_messages.push_back(anchor_pool[c].size());
    out.tested_messages.push_back(test_pool[c].size());
    if (anchor_pool[c].size() < request.n_train) {
      throw DataError("category " + std::to_string(out.categories[c]) + " has " +
                      std::to_string(anchor_pool[c].size()) + " anchor messages, " +
                      std::to_string(request.n_train - anchor_pool[c].size()) + " short of n_train=" +
                      std::to_string(request.n_train));
    }
  }
  const std::size_t available = *std::min_element(out.tested_messages.begin(), out.tested_messages.end());
  std::size_t n_test = request.n_test == 0 ? available : request.n_test;
  if (n_test > available) {
    out.warnings.push_back("test set reduced from " + std::to_string(n_test) + " to " + std::to_string(available) +
                           " messages per category");
    n_test = available;
  }
  if (n_test == 0) throw DataError("build_datasets: a category has no tested-user messages");
  out.n_train_per_cat = request.n_train;
  out.n_test_per_cat = n_test;

  const std::size_t dim = embedder.dim();
  out.train_x.cols = dim;
  out.test_x.cols = dim;
  for (std::size_t c = 0; c < kc; ++c) {
    Rng train_rng(Rng::derive(request.seed, 2 * c));
    for (std::size_t i : sample(anchor_pool[c], request.n_train, train_rng)) {
      out.train.push_back({i, out.categories[c]});
      out.train_x.append(embedder.embed(corpus[i]));
    }
    Rng test_rng(Rng::derive(request.seed, 2 * c + 1));
    for (std::size_t i : sample(test_pool[c], n_test, test_rng)) {
      out.test.push_back({i, corpus[i].user, out.categories[c]});
      out.test_x.append(embedder.embed(corpus[i]));
    }
  }

  std::set<std::size_t> train_ids;
  for (const auto& t : out.train) train_ids.insert(t.message);
  for (const auto& t : out.test) {
    out.audit.shared_messages += train_ids.count(t.message);
    out.audit.anchor_test_users += is_anchor[*g.index_of(t.user)];
  }
  return out;
}

}  // namespace cdeval
