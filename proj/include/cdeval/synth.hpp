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
#include <string>
#include <vector>

#include "cdeval/corpus.hpp"
#include "cdeval/graph.hpp"
#include "cdeval/partition.hpp"

namespace cdeval {

// Planted-partition benchmark with a unigram text model.
struct SynthConfig {
  std::size_t communities = 4;
  std::size_t nodes_per_community = 250;
  double p_in = 0.1;
  double p_out = 0.002;
  double weight_p = 0.5;     // weight = 1 + Geometric(weight_p)
  double reciprocity = 0.5;  // chance the reverse direction is listed too, never heavier
  double tweets_mean = 50;   // tweets per user = 1 + Geometric(1 / tweets_mean)
  std::size_t vocabulary = 200;
  std::size_t tokens_per_tweet = 12;
  double mu_text = 0.05;  // chance a token comes from another community
  std::uint64_t seed = 1;
};

void validate(const SynthConfig& cfg);  // throws ConfigError

struct SynthData {
  std::vector<std::string> users;  // "u<i>", community i / nodes_per_community
  DirectedEdgeBag edges;
  Corpus corpus;
  std::vector<CommunityId> truth;  // per entry of users
};

SynthData generate_synthetic(const SynthConfig& cfg);

// Writes edges.csv, tweets.jsonl, truth.csv and synth_manifest.json into dir.
void write_synthetic(const std::string& dir, const SynthConfig& cfg, const SynthData& data);

}  // namespace cdeval
