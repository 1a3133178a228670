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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace cdeval {

// Row-major float matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0f) {}

  std::span<const float> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  std::span<float> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  void append(std::span<const float> v);
};

// Multiclass classifier over class indices 0..k-1.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string kind() const = 0;
  virtual std::size_t dim() const = 0;
  virtual int predict(std::span<const float> x) const = 0;
  virtual nlohmann::json to_json() const = 0;
};

struct SgdConfig {
  int epochs = 20;
  double learning_rate = 0.01;
  double alpha = 1e-4;  // L2 penalty
};

struct MarginConfig {
  double c = 1.0;
  int max_iter = 200;
  double tol = 0.01;
};

struct MlpConfig {
  double learning_rate = 0.01;
  int epochs = 50;
  int batch = 32;
  double momentum = 0.9;
};

struct ForestConfig {
  int trees = 100;
  int max_features = 0;  // 0 = round(sqrt(dim))
  int max_depth = 0;     // 0 = unlimited
};

// (a) One-vs-rest linear model, hinge loss, plain SGD.
std::unique_ptr<Classifier> train_sgd(const FeatureMatrix& x, std::span<const int> y, int classes,
                                      const SgdConfig& cfg, std::uint64_t seed);
// (b) One-vs-rest L2-regularized hinge-loss SVM, dual coordinate descent.
std::unique_ptr<Classifier> train_margin(const FeatureMatrix& x, std::span<const int> y, int classes,
                                         const MarginConfig& cfg, std::uint64_t seed);
// (c) input -> 5 -> 2 -> classes, ReLU hidden layers, softmax cross-entropy.
std::unique_ptr<Classifier> train_mlp(const FeatureMatrix& x, std::span<const int> y, int classes,
                                      const MlpConfig& cfg, std::uint64_t seed);
// (d) Bootstrap forest of Gini trees on random feature subsets.
std::unique_ptr<Classifier> train_forest(const FeatureMatrix& x, std::span<const int> y, int classes,
                                         const ForestConfig& cfg, std::uint64_t seed);

std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);

}  // namespace cdeval
