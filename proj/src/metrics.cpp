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

#include "cdeval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cdeval/error.hpp"
#include "cdeval/rng.hpp"

namespace cdeval {

Precision agreement_precision(std::span<const AgreementRecord> records, std::size_t blocks,
                              std::uint64_t seed) {
  if (records.empty()) throw InvalidArgument("agreement_precision: no records");
  if (blocks < 2) throw InvalidArgument("agreement_precision: need at least 2 blocks");
  const std::size_t n = records.size();
  std::vector<std::uint8_t> hit(n);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    hit[i] = records[i].agrees();
    matches += hit[i];
  }
  std::sort(hit.begin(), hit.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::uint8_t>(hit));

  Precision out;
  out.users = n;
  out.value = static_cast<double>(matches) / static_cast<double>(n);
  const std::size_t b = std::min(blocks, n);
  out.blocks = b;
  if (b < 2) return out;
  std::vector<double> loo(b);
  for (std::size_t k = 0; k < b; ++k) {
    const std::size_t lo = k * n / b, hi = (k + 1) * n / b;
    std::size_t in_block = 0;
    for (std::size_t i = lo; i < hi; ++i) in_block += hit[i];
    loo[k] = static_cast<double>(matches - in_block) / static_cast<double>(n - (hi - lo));
  }
  double mean = 0.0;
  for (double v : loo) mean += v;
  mean /= static_cast<double>(b);
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  out.err = std::sqrt(static_cast<double>(b - 1) / static_cast<double>(b) * ss);
  return out;
}

std::size_t agreement_bin(std::size_t tweets) {
  if (tweets == 0) throw InvalidArgument("agreement_bin: tweet count must be >= 1");
  if (tweets <= 3) return 0;
  if (tweets <= 10) return 1;
  if (tweets <= 31) return 2;
  return 3;
}

std::array<AgreementBin, kAgreementBins> binned_agreement(std::span<const BinnedRecord> records) {
  std::array<AgreementBin, kAgreementBins> bins;
  const std::size_t bounds[kAgreementBins][2] = {{1, 3}, {4, 10}, {11, 31}, {32, 0}};
  for (std::size_t k = 0; k < kAgreementBins; ++k) {
    bins[k].lo = bounds[k][0];
    bins[k].hi = bounds[k][1];
  }
  for (const auto& r : records) {
    auto& bin = bins[agreement_bin(r.tweets)];
    ++bin.users;
    bin.agree += r.record.agrees();
  }
  for (auto& bin : bins) {
    if (bin.users == 0) continue;
    const double n = static_cast<double>(bin.users);
    bin.fraction = static_cast<double>(bin.agree) / n;
    bin.poisson_err = std::sqrt(static_cast<double>(bin.agree)) / n;
  }
  return bins;
}

double coverage(const LabeledPartition& lp) {
  const std::size_t n = lp.category.size();
  if (n == 0) return 0.0;
  return static_cast<double>(n - lp.catch_all_size()) / static_cast<double>(n);
}

double f_beta(double p, double r, double beta) {
  if (p < 0.0 || p > 1.0 || r < 0.0 || r > 1.0) throw InvalidArgument("f_beta: P and R must lie in [0, 1]");
  if (beta < 0.0) throw InvalidArgument("f_beta: beta must be >= 0");
  const double b2 = beta * beta;
  const double denom = b2 * p + r;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * p * r / denom;
}

UserEntropy user_entropy(std::span<const int> histogram) {
  long long total = 0;
  UserEntropy out;
  for (int c : histogram) {
    if (c < 0) throw InvalidArgument("user_entropy: negative count");
    total += c;
    out.distinct += c > 0;
  }
  if (total == 0) throw InvalidArgument("user_entropy: empty histogram");
  double h = 0.0;
  for (int c : histogram) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  out.bits = out.distinct == 1 ? 0.0 : h;
  return out;
}

UserEntropy user_entropy(const std::map<int, int>& histogram) {
  std::vector<int> counts;
  counts.reserve(histogram.size());
  for (const auto& [category, n] : histogram) counts.push_back(n);
  return user_entropy(counts);
}

std::vector<EntropyPoint> entropy_curve(std::span<const std::pair<std::size_t, UserEntropy>> users) {
  std::map<std::size_t, EntropyPoint> by_count;
  for (const auto& [tweets, e] : users) {
    auto& pt = by_count[tweets];
    pt.tweets = tweets;
    ++pt.users;
    pt.mean_entropy += e.bits;
    pt.mean_distinct += static_cast<double>(e.distinct);
  }
  std::vector<EntropyPoint> out;
  out.reserve(by_count.size());
  for (auto& [tweets, pt] : by_count) {
    pt.mean_entropy /= static_cast<double>(pt.users);
    pt.mean_distinct /= static_cast<double>(pt.users);
    out.push_back(pt);
  }
  return out;
}

MisassignmentOverlap misassigned_intersection(const std::map<std::string, AgreementRecord>& a,
                                              const std::map<std::string, AgreementRecord>& b) {
  bool shared = false;
  for (const auto& [user, r] : a) {
    if (b.count(user)) {
      shared = true;
      break;
    }
  }
  if (!shared && !(a.empty() && b.empty())) {
    throw InvalidArgument("misassigned_intersection: result sets share no users");
  }
  MisassignmentOverlap out;
  for (const auto& [user, r] : a) {
    if (r.agrees()) continue;
    ++out.wrong_a;
    const auto it = b.find(user);
    if (it != b.end() && !it->second.agrees()) ++out.both;
  }
  for (const auto& [user, r] : b) out.wrong_b += !r.agrees();
  const std::size_t uni = out.wrong_a + out.wrong_b - out.both;
  out.jaccard = uni == 0 ? 1.0 : static_cast<double>(out.both) / static_cast<double>(uni);
  const std::size_t lo = std::min(out.wrong_a, out.wrong_b);
  out.overlap_min = lo == 0 ? (uni == 0 ? 1.0 : 0.0) : static_cast<double>(out.both) / static_cast<double>(lo);
  return out;
}

}  // namespace cdeval
