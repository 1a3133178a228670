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
#include <set>
#include <string>
#include <vector>

#include "cdeval/centrality.hpp"
#include "cdeval/classifiers.hpp"
#include "cdeval/corpus.hpp"
#include "cdeval/partition.hpp"

namespace cdeval {

struct TrainItem {
  std::size_t message = 0;  // position in the corpus
  int category = 0;
};

struct TestItem {
  std::size_t message = 0;
  std::string user;
  int category = 0;
};

struct DatasetAudit {
  std::size_t shared_messages = 0;    // messages in both train and test
  std::size_t anchor_test_users = 0;  // test users that are anchors
};

struct BalancedDatasets {
  std::size_t n_train_per_cat = 0;
  std::size_t n_test_per_cat = 0;
  std::vector<int> categories;  // populated categories among 1..n_cut-1
  std::vector<TrainItem> train;
  FeatureMatrix train_x;
  std::vector<TestItem> test;
  FeatureMatrix test_x;
  std::vector<std::size_t> anchor_messages;  // available per category
  std::vector<std::size_t> tested_messages;
  std::vector<std::string> warnings;
  DatasetAudit audit;
};

struct DatasetRequest {
  std::size_t n_train = 0;
  std::size_t n_test = 0;  // 0 takes the smallest per-category availability
  std::uint64_t seed = 1;
  // Users known to be outside the graph (for instance removed by the degree
  // filter); their messages are skipped instead of rejected.
  const std::set<std::string>* external = nullptr;
};

// Throws DataError naming the category on a training shortfall and on
// messages from users that are neither graph nodes nor external.
BalancedDatasets build_datasets(const Corpus& corpus, const MessageEmbedder& embedder, const Graph& g,
                                const LabeledPartition& lp, const AnchorSplit& split,
                                const DatasetRequest& request);

}  // namespace cdeval
