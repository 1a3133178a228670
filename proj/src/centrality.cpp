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

#include "cdeval/centrality.hpp"

#include <algorithm>
#include <cmath>

#include "cdeval/error.hpp"

namespace cdeval {

namespace {

double normalize(std::vector<double>& x) {
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& v : x) v /= norm;
  }
  return norm;
}

}  // namespace

CentralityScores eigencentrality(const Graph& g, double tol, std::size_t max_iter) {
  if (g.empty()) throw InvalidArgument("eigencentrality: empty graph");
  if (!(tol > 0.0)) throw InvalidArgument("eigencentrality: tol must be positive");
  if (max_iter < 1) throw InvalidArgument("eigencentrality: max_iter must be >= 1");

  const auto n = g.node_count();
  CentralityScores result;
  std::vector<double> x(n, 1.0);
  normalize(x);
  std::vector<double> next(n);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (NodeIndex i = 0; i < n; ++i) {
      double acc = x[i];
      for (const auto& nb : g.neighbors(i)) acc += nb.weight * x[nb.node];
      next[i] = acc;
    }
    normalize(next);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - x[i]));
    x.swap(next);
    result.iterations = it;
    if (diff < tol) {
      result.converged = true;
      break;
    }
  }
  result.score = std::move(x);
  return result;
}

AnchorSplit quantile_split(const CentralityScores& scores, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("quantile_split: q must be in (0,1)");
  AnchorSplit split;
  split.quantile = q;
  const auto n = scores.score.size();
  if (n == 0) return split;
  std::vector<double> sorted = scores.score;
  std::sort(sorted.begin(), sorted.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  split.threshold = sorted[rank - 1];
  for (NodeIndex i = 0; i < n; ++i) {
    (scores.score[i] > split.threshold ? split.anchors : split.tested).push_back(i);
  }
  return split;
}

}  // namespace cdeval
