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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdeval/config.hpp"
#include "cdeval/datasets.hpp"
#include "cdeval/dendrogram.hpp"
#include "cdeval/metrics.hpp"
#include "json.hpp"

namespace cdeval {

struct UserResult {
  std::string user;
  int cda = 0;
  int nlp = 0;
  std::size_t tweets = 0;  // test messages classified for this user
  UserEntropy entropy;
};

struct EvaluationSeeds {
  std::uint64_t detect = 0;
  std::uint64_t datasets = 0;
  std::uint64_t ensemble = 0;
  std::uint64_t jackknife = 0;
};

struct EvaluationReport {
  std::string tag;
  std::string label;
  std::string algorithm;
  std::optional<double> parameter;
  int n_cut = 0;
  std::size_t m = 0;
  bool classified = false;  // false when fewer than 2 categories are populated
  Precision precision;
  double coverage = 0.0;
  std::vector<std::pair<double, double>> f_beta;  // (beta, value)
  std::array<AgreementBin, kAgreementBins> bins;
  std::vector<EntropyPoint> entropy_curve;
  std::vector<UserResult> users;
  std::size_t train_items = 0;
  std::size_t test_items = 0;
  std::vector<int> categories;                // classified categories
  std::vector<std::size_t> anchor_messages;  // available per category
  std::vector<std::size_t> tested_messages;
  DatasetAudit audit;
  EvaluationSeeds seeds;
  std::vector<std::string> warnings;
  std::optional<std::string> error;  // data error that stopped this entry

  nlohmann::ordered_json to_json() const;
};

struct EvaluationInputs {
  const Graph* graph = nullptr;
  const Corpus* corpus = nullptr;
  const MessageEmbedder* embedder = nullptr;
  const AnchorSplit* split = nullptr;
  const std::set<std::string>* external = nullptr;
};

struct EvaluationSettings {
  int n_cut = 5;
  std::size_t n_train = 1000;
  std::size_t n_test = 0;
  std::vector<double> betas = {0.1, 0.25, 0.75};
  std::size_t jackknife_blocks = 50;
  EnsembleConfig ensemble;
  std::uint64_t seed = 1;      // datasets, ensemble and jackknife seeds derive from it
  std::string model_dir;       // bundle destination, empty to skip
};

// Anchor split, balanced datasets, ensemble training and scoring for one
// partition. The tag, label, algorithm and parameter fields are left for the
// caller.
EvaluationReport evaluate_partition(const EvaluationInputs& in, const Partition& p, const EvaluationSettings& s);

std::map<std::string, AgreementRecord> agreement_by_user(const EvaluationReport& r);

// Command entry points. Each writes under out_dir atomically and returns a
// summary; see the README for the file layout.
struct IngestSummary {
  std::size_t raw_nodes = 0;
  std::size_t raw_edges = 0;  // undirected, after symmetrization
  std::size_t directed_entries = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t removed = 0;
};
IngestSummary cmd_ingest(const RunConfig& cfg, const std::string& out_dir);

struct DetectEntry {
  std::string tag;
  std::string label;
  Algorithm algorithm = Algorithm::kLouvain;
  std::optional<double> parameter;
  std::uint64_t seed = 0;
  std::string partition_path;  // relative to out_dir
  std::string labels_path;
  std::size_t m = 0;
  double objective = 0.0;
};
std::vector<DetectEntry> cmd_detect(const RunConfig& cfg, const std::string& out_dir);
std::vector<DetectEntry> read_detect_manifest(const std::string& out_dir);

std::vector<EvaluationReport> cmd_evaluate(const RunConfig& cfg, const std::string& out_dir);
std::vector<Dendrogram> cmd_sweep(const RunConfig& cfg, const std::string& out_dir);
SynthData cmd_synth(const RunConfig& cfg, const std::string& out_dir);

std::string entry_tag(const std::string& label, std::optional<double> parameter);

}  // namespace cdeval
