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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdeval/partition.hpp"

namespace cdeval {

// One evaluated user: CDA category against NLPCA category.
struct AgreementRecord {
  int cda = 0;
  int nlp = 0;
  bool agrees() const { return cda == nlp; }
};

struct Precision {
  double value = 0.0;
  double err = 0.0;  // delete-block jackknife, 1 sigma
  std::size_t users = 0;
  std::size_t blocks = 0;
};

// Blocks are contiguous after a seeded shuffle of the canonically ordered
// records, so the result does not depend on input order. Uses n blocks when
// there are fewer than `blocks` records.
Precision agreement_precision(std::span<const AgreementRecord> records, std::size_t blocks = 50,
                              std::uint64_t seed = 0);

struct BinnedRecord {
  AgreementRecord record;
  std::size_t tweets = 0;
};

struct AgreementBin {
  std::size_t lo = 0;
  std::size_t hi = 0;  // 0 means unbounded
  std::size_t users = 0;
  std::size_t agree = 0;
  std::optional<double> fraction;
  std::optional<double> poisson_err;
};

inline constexpr std::size_t kAgreementBins = 4;
std::size_t agreement_bin(std::size_t tweets);  // 0-based bin index
std::array<AgreementBin, kAgreementBins> binned_agreement(std::span<const BinnedRecord> records);

double coverage(const LabeledPartition& lp);
double f_beta(double p, double r, double beta);

struct UserEntropy {
  double bits = 0.0;
  std::size_t distinct = 0;
};
UserEntropy user_entropy(std::span<const int> histogram);
UserEntropy user_entropy(const std::map<int, int>& histogram);

struct EntropyPoint {
  std::size_t tweets = 0;
  std::size_t users = 0;
  double mean_entropy = 0.0;
  double mean_distinct = 0.0;
};
// Mean entropy and distinct-category count per tweet count, ascending.
std::vector<EntropyPoint> entropy_curve(std::span<const std::pair<std::size_t, UserEntropy>> users);

struct MisassignmentOverlap {
  std::size_t wrong_a = 0;
  std::size_t wrong_b = 0;
  std::size_t both = 0;
  double jaccard = 0.0;
  double overlap_min = 0.0;
};
// Keys are user ids; callers leave catch-all users out.
MisassignmentOverlap misassigned_intersection(const std::map<std::string, AgreementRecord>& a,
                                              const std::map<std::string, AgreementRecord>& b);

}  // namespace cdeval
