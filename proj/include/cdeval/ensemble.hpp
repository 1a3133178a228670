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

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cdeval/classifiers.hpp"

namespace cdeval {

inline constexpr std::size_t kVoters = 4;

// Vote weights of the (a) SGD, (b) margin, (c) MLP and (d) forest voters.
using VoteWeights = std::array<int, kVoters>;
inline constexpr VoteWeights kDefaultWeights = {1, 1, 3, 2};
inline constexpr int kTotalVotes = 7;

// Throws ConfigError unless all weights are positive and sum to 7.
void validate_weights(const VoteWeights& w);

struct EnsembleConfig {
  VoteWeights weights = kDefaultWeights;
  std::uint64_t seed = 1;
  SgdConfig sgd;
  MarginConfig margin;
  MlpConfig mlp;
  ForestConfig forest;
};

struct Vote {
  int category = 0;
  std::vector<int> counts;             // weighted votes per category (categories order)
  std::array<int, kVoters> choices{};  // category picked by each voter
};

// Weighted vote over `categories` (ascending). The winner has the largest
// count; ties go to the category backed by the heaviest voter among the tied
// ones, then to the smaller category.
Vote tally_votes(const VoteWeights& weights, const std::array<int, kVoters>& choices,
                 std::span<const int> categories);

class Ensemble {
 public:
  Ensemble(std::size_t dim, std::vector<int> categories, EnsembleConfig config,
           std::array<std::unique_ptr<Classifier>, kVoters> voters);

  std::size_t dim() const { return dim_; }
  const std::vector<int>& categories() const { return categories_; }
  const EnsembleConfig& config() const { return config_; }
  const Classifier& voter(std::size_t k) const { return *voters_[k]; }

  Vote predict(std::span<const float> x) const;

  // Directory bundle: manifest.json plus one JSON file per voter.
  void save(const std::string& dir) const;
  static Ensemble load(const std::string& dir);

 private:
  std::size_t dim_;
  std::vector<int> categories_;
  EnsembleConfig config_;
  std::array<std::unique_ptr<Classifier>, kVoters> voters_;
};

// Trains the four voters on the same data. `labels` are category values;
// at least two distinct ones are required.
Ensemble train_ensemble(const FeatureMatrix& x, std::span<const int> labels, const EnsembleConfig& config);

struct UserClassification {
  int category = 0;
  std::map<int, int> histogram;  // predicted category -> message count
};

// Modal per-message category; ties go to the larger summed vote mass, then
// the smaller category. Throws InvalidArgument on an empty list.
UserClassification classify_user(std::span<const Vote> votes, std::span<const int> categories);
UserClassification classify_user(const Ensemble& e, std::span<const std::vector<float>> messages);

}  // namespace cdeval
