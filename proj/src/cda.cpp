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

#include "cdeval/cda.hpp"

#include "cdeval/error.hpp"

namespace cdeval {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "louvain") return Algorithm::kLouvain;
  if (name == "louvain-gamma") return Algorithm::kLouvainGamma;
  if (name == "bec") return Algorithm::kBec;
  if (name == "infomap") return Algorithm::kInfomap;
  throw ConfigError("unknown algorithm '" + name +
                    "' (supported: louvain, louvain-gamma, bec, infomap)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kLouvain:
      return "louvain";
    case Algorithm::kLouvainGamma:
      return "louvain-gamma";
    case Algorithm::kBec:
      return "bec";
    case Algorithm::kInfomap:
      return "infomap";
  }
  return "?";
}

bool algorithm_has_parameter(Algorithm a) { return a != Algorithm::kInfomap; }

DetectionResult run_detection(const Graph& g, Algorithm a, double parameter, std::uint64_t seed) {
  switch (a) {
    case Algorithm::kLouvain: {
      auto r = louvain(g, parameter, seed);
      return {std::move(r.partition), r.quality};
    }
    case Algorithm::kLouvainGamma: {
      auto r = louvain_gamma(g, parameter, seed);
      return {std::move(r.partition), r.quality};
    }
    case Algorithm::kBec: {
      auto r = bec(g, parameter, seed);
      return {std::move(r.partition), r.score.f};
    }
    case Algorithm::kInfomap: {
      auto r = infomap(g, seed);
      return {std::move(r.partition), r.codelength};
    }
  }
  throw InvalidArgument("unknown algorithm");
}

}  // namespace cdeval
