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

#include "cdeval/ensemble.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"
#include "cdeval/rng.hpp"

namespace cdeval {

namespace {

constexpr std::array<const char*, kVoters> kVoterFiles = {"sgd.json", "margin.json", "mlp.json", "forest.json"};

std::size_t category_slot(std::span<const int> categories, int category) {
  const auto it = std::lower_bound(categories.begin(), categories.end(), category);
  if (it == categories.end() || *it != category) {
    throw InvalidArgument("category " + std::to_string(category) + " not in ensemble");
  }
  return static_cast<std::size_t>(it - categories.begin());
}

nlohmann::json config_to_json(const EnsembleConfig& c) {
  return {{"sgd", {{"epochs", c.sgd.epochs}, {"learning_rate", c.sgd.learning_rate}, {"alpha", c.sgd.alpha}}},
          {"margin", {{"c", c.margin.c}, {"max_iter", c.margin.max_iter}, {"tol", c.margin.tol}}},
          {"mlp",
           {{"learning_rate", c.mlp.learning_rate},
            {"epochs", c.mlp.epochs},
            {"batch", c.mlp.batch},
            {"momentum", c.mlp.momentum}}},
          {"forest",
           {{"trees", c.forest.trees}, {"max_features", c.forest.max_features}, {"max_depth", c.forest.max_depth}}}};
}

EnsembleConfig config_from_json(const nlohmann::json& j, const VoteWeights& weights, std::uint64_t seed) {
  EnsembleConfig c;
  c.weights = weights;
  c.seed = seed;
  const auto& s = j.at("sgd");
  c.sgd = {s.at("epochs").get<int>(), s.at("learning_rate").get<double>(), s.at("alpha").get<double>()};
  const auto& m = j.at("margin");
  c.margin = {m.at("c").get<double>(), m.at("max_iter").get<int>(), m.at("tol").get<double>()};
  const auto& p = j.at("mlp");
  c.mlp = {p.at("learning_rate").get<double>(), p.at("epochs").get<int>(), p.at("batch").get<int>(),
           p.at("momentum").get<double>()};
  const auto& f = j.at("forest");
  c.forest = {f.at("trees").get<int>(), f.at("max_features").get<int>(), f.at("max_depth").get<int>()};
  return c;
}

std::uint64_t voter_seed(std::uint64_t seed, std::size_t k) { return Rng::derive(seed, 100 + k); }

}  // namespace

void validate_weights(const VoteWeights& w) {
  int sum = 0;
  for (int x : w) {
    if (x <= 0) throw ConfigError("ensemble weights must be positive integers");
    sum += x;
  }
  if (sum != kTotalVotes) throw ConfigError("ensemble weights must sum to 7, got " + std::to_string(sum));
}

Vote tally_votes(const VoteWeights& weights, const std::array<int, kVoters>& choices,
                 std::span<const int> categories) {
  Vote v;
  v.choices = choices;
  v.counts.assign(categories.size(), 0);
  for (std::size_t k = 0; k < kVoters; ++k) v.counts[category_slot(categories, choices[k])] += weights[k];
  const int top = *std::max_element(v.counts.begin(), v.counts.end());
  int best_weight = -1;
  int best_category = 0;
  for (std::size_t k = 0; k < kVoters; ++k) {
    if (v.counts[category_slot(categories, choices[k])] != top) continue;
    if (weights[k] > best_weight || (weights[k] == best_weight && choices[k] < best_category)) {
      best_weight = weights[k];
      best_category = choices[k];
    }
  }
  v.category = best_category;
  return v;
}

Ensemble::Ensemble(std::size_t dim, std::vector<int> categories, EnsembleConfig config,
                   std::array<std::unique_ptr<Classifier>, kVoters> voters)
    : dim_(dim), categories_(std::move(categories)), config_(config), voters_(std::move(voters)) {
  validate_weights(config_.weights);
  if (categories_.size() < 2) throw InvalidArgument("ensemble needs at least two categories");
  if (!std::is_sorted(categories_.begin(), categories_.end())) throw InvalidArgument("categories must be sorted");
  for (const auto& v : voters_) {
    if (!v || v->dim() != dim_) throw InvalidArgument("voter dimension mismatch");
  }
}

Vote Ensemble::predict(std::span<const float> x) const {
  if (x.size() != dim_) {
    throw InvalidArgument("input has dim " + std::to_string(x.size()) + ", ensemble expects " +
                          std::to_string(dim_));
  }
  std::array<int, kVoters> choices{};
  for (std::size_t k = 0; k < kVoters; ++k) choices[k] = categories_[static_cast<std::size_t>(voters_[k]->predict(x))];
  return tally_votes(config_.weights, choices, categories_);
}

void Ensemble::save(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["dim"] = dim_;
  manifest["categories"] = categories_;
  manifest["weights"] = config_.weights;
  manifest["seeds"] = {{"ensemble", config_.seed},
                       {"sgd", voter_seed(config_.seed, 0)},
                       {"margin", voter_seed(config_.seed, 1)},
                       {"mlp", voter_seed(config_.seed, 2)},
                       {"forest", voter_seed(config_.seed, 3)}};
  manifest["config"] = config_to_json(config_);
  manifest["voters"] = kVoterFiles;
  for (std::size_t k = 0; k < kVoters; ++k) {
    write_file_atomic(dir + "/" + kVoterFiles[k], voters_[k]->to_json().dump());
  }
  write_file_atomic(dir + "/manifest.json", manifest.dump(2) + "\n");
}

Ensemble Ensemble::load(const std::string& dir) {
  try {
    const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
    std::array<std::unique_ptr<Classifier>, kVoters> voters;
    for (std::size_t k = 0; k < kVoters; ++k) {
      voters[k] = classifier_from_json(nlohmann::json::parse(read_file(dir + "/" + kVoterFiles[k])));
    }
    const auto weights = manifest.at("weights").get<VoteWeights>();
    const auto seed = manifest.at("seeds").at("ensemble").get<std::uint64_t>();
    return Ensemble(manifest.at("dim").get<std::size_t>(), manifest.at("categories").get<std::vector<int>>(),
                    config_from_json(manifest.at("config"), weights, seed), std::move(voters));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model bundle " + dir + ": " + e.what());
  }
}

Ensemble train_ensemble(const FeatureMatrix& x, std::span<const int> labels, const EnsembleConfig& config) {
  validate_weights(config.weights);
  if (labels.size() != x.rows) throw InvalidArgument("label count does not match rows");
  const std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) throw InvalidArgument("training data must contain at least two categories");
  std::vector<int> categories(distinct.begin(), distinct.end());
  std::vector<int> y(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y[i] = static_cast<int>(category_slot(categories, labels[i]));
  const int classes = static_cast<int>(categories.size());

  std::array<std::unique_ptr<Classifier>, kVoters> voters;
  voters[0] = train_sgd(x, y, classes, config.sgd, voter_seed(config.seed, 0));
  voters[1] = train_margin(x, y, classes, config.margin, voter_seed(config.seed, 1));
  voters[2] = train_mlp(x, y, classes, config.mlp, voter_seed(config.seed, 2));
  voters[3] = train_forest(x, y, classes, config.forest, voter_seed(config.seed, 3));
  return Ensemble(x.cols, std::move(categories), config, std::move(voters));
}

UserClassification classify_user(std::span<const Vote> votes, std::span<const int> categories) {
  if (votes.empty()) throw InvalidArgument("classify_user: no messages");
  UserClassification out;
  std::map<int, long long> mass;
  for (const auto& v : votes) {
    ++out.histogram[v.category];
    for (std::size_t s = 0; s < categories.size(); ++s) mass[categories[s]] += v.counts[s];
  }
  int best = 0;
  int best_count = -1;
  long long best_mass = -1;
  for (const auto& [category, count] : out.histogram) {  // ascending category
    const auto m = mass[category];
    if (count > best_count || (count == best_count && m > best_mass)) {
      best = category;
      best_count = count;
      best_mass = m;
    }
  }
  out.category = best;
  return out;
}

UserClassification classify_user(const Ensemble& e, std::span<const std::vector<float>> messages) {
  std::vector<Vote> votes;
  votes.reserve(messages.size());
  for (const auto& m : messages) votes.push_back(e.predict(m));
  return classify_user(votes, e.categories());
}

}  // namespace cdeval
