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
#include <map>
#include <string>
#include <vector>

#include "cdeval/cda.hpp"
#include "cdeval/ensemble.hpp"
#include "cdeval/synth.hpp"

namespace cdeval {

struct AlgorithmSpec {
  std::string label;  // unique; keys "<label>.grid" and "<label>.seed" refer to it
  Algorithm algorithm = Algorithm::kLouvain;
  std::vector<double> grid;
  std::uint64_t seed = 1;
};

struct RunConfig {
  std::string edges;
  std::string tweets;
  std::string embeddings = "builtin-hash:1024";
  std::size_t min_degree = 3;
  std::vector<AlgorithmSpec> algorithms;
  int n_cut = 5;
  double anchor_quantile = 0.75;
  std::size_t n_train = 1000;
  std::size_t n_test = 0;
  std::vector<double> betas = {0.1, 0.25, 0.75};
  std::size_t jackknife_blocks = 50;
  std::vector<std::string> tracked;
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
  double centrality_tol = 1e-12;
  std::size_t centrality_max_iter = 10000;
  EnsembleConfig ensemble;  // its seed is replaced per evaluation
  SynthConfig synth;
};

// Flat "key = value" text; '#' starts a comment line. Overrides are
// "key=value" strings applied after the file. Relative paths resolve against
// base_dir. Throws ConfigError on unknown keys, bad values or failed
// invariants.
RunConfig parse_run_config(const std::string& text, const std::string& base_dir,
                           const std::vector<std::string>& overrides = {},
                           const std::string& source = "<config>");
RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides = {});

// Every accepted key with a one-line description, for --help output.
const std::map<std::string, std::string>& config_keys();

}  // namespace cdeval
