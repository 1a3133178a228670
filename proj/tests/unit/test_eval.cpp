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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "cdeval/datasets.hpp"
#include "cdeval/dendrogram.hpp"
#include "cdeval/error.hpp"
#include "cdeval/metrics.hpp"
#include "cdeval/rng.hpp"
#include "cdeval/synth.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdeval;

namespace {

std::vector<AgreementRecord> bernoulli_records(std::size_t n, double p, Rng& rng) {
  std::vector<AgreementRecord> out(n);
  for (auto& r : out) {
    r.cda = 1;
    r.nlp = rng.bernoulli(p) ? 1 : 2;
  }
  return out;
}

// Three 4-cliques; node 4k is the anchor of category k+1.
struct DatasetFixture {
  Graph g = testing::clique_chain(3, 4, false);
  LabeledPartition lp;
  AnchorSplit split;
  Corpus corpus;
  HashEmbedder embedder{16};

  explicit DatasetFixture(std::vector<std::size_t> anchor_msgs, std::size_t tested_msgs = 10) {
    std::vector<CommunityId> assign(12);
    for (std::size_t i = 0; i < 12; ++i) assign[i] = static_cast<CommunityId>(i / 4);
    lp = truncate_partition(Partition(assign), 4);
    for (NodeIndex i = 0; i < 12; ++i) (i % 4 == 0 ? split.anchors : split.tested).push_back(i);
    std::vector<Message> msgs;
    std::size_t id = 0;
    for (NodeIndex i = 0; i < 12; ++i) {
      const auto count = i % 4 == 0 ? anchor_msgs[i / 4] : tested_msgs;
      for (std::size_t k = 0; k < count; ++k) {
        msgs.push_back({"m" + std::to_string(id++), g.node_id(i), "topic" + std::to_string(i / 4) + " word" + std::to_string(k)});
      }
    }
    corpus = Corpus(std::move(msgs));
  }
};

}  // namespace

TEST_CASE("f_beta") {
  CHECK(f_beta(0.9, 0.8, 1.0) == doctest::Approx(0.8470588235294118).epsilon(1e-15));
  CHECK(f_beta(0.37, 0.91, 0.0) == 0.37);
  CHECK(f_beta(0.0, 0.0, 0.5) == 0.0);
  CHECK_THROWS_AS(f_beta(1.2, 0.5, 1.0), InvalidArgument);
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 25; ++j) {
      const double p = i / 40.0, r = j / 25.0;
      const double harmonic = p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
      CHECK(std::abs(f_beta(p, r, 1.0) - harmonic) <= 1e-12);
      for (double beta : {0.1, 0.25, 0.75, 3.0}) {
        const double f = f_beta(p, r, beta);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-15);
      }
    }
    const double x = i / 40.0;
    for (double beta : {0.0, 0.1, 0.25, 0.75, 1.0, 7.0}) CHECK(std::abs(f_beta(x, x, beta) - x) <= 1e-15);
  }
}

TEST_CASE("user entropy") {
  CHECK(user_entropy(std::vector<int>{9}).bits == 0.0);
  CHECK(user_entropy(std::vector<int>{9}).distinct == 1);
  const auto uniform = user_entropy(std::vector<int>{3, 3, 3, 3});
  CHECK(uniform.bits == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(uniform.distinct == 4);
  // Values from a direct Shannon evaluation in Python.
  CHECK(user_entropy(std::vector<int>{5, 2, 2, 1}).bits == doctest::Approx(1.7609640474436812).epsilon(1e-14));
  CHECK(user_entropy(std::vector<int>{4, 3, 2, 1}).bits == doctest::Approx(1.8464393446710154).epsilon(1e-14));
  CHECK(user_entropy(std::map<int, int>{{2, 0}, {4, 6}}).bits == 0.0);
  CHECK_THROWS_AS(user_entropy(std::vector<int>{0, 0}), InvalidArgument);

  Rng rng(4);
  for (int t = 0; t < 1000; ++t) {
    std::vector<int> h(1 + rng.index(5));
    for (auto& c : h) c = rng.bernoulli(0.4) ? 0 : static_cast<int>(rng.index(20));
    if (std::all_of(h.begin(), h.end(), [](int c) { return c == 0; })) h[0] = 1;
    const auto e = user_entropy(h);
    CHECK((e.bits == 0.0) == (e.distinct == 1));
    CHECK(e.bits <= std::log2(static_cast<double>(e.distinct)) + 1e-12);
  }
}

TEST_CASE("agreement precision and jackknife") {
  std::vector<AgreementRecord> all(30, {2, 2});
  const auto p = agreement_precision(all);
  CHECK(p.value == 1.0);
  CHECK(p.err == 0.0);
  CHECK(p.blocks == 30);

  std::vector<AgreementRecord> half;
  for (int i = 0; i < 100; ++i) half.push_back({1, i < 50 ? 1 : 3});
  CHECK(agreement_precision(half).value == 0.5);
  CHECK_THROWS_AS(agreement_precision(std::vector<AgreementRecord>{}), InvalidArgument);

  SUBCASE("delete-one limit matches the closed form") {
    Rng rng(9);
    for (std::size_t n : {7u, 20u, 49u}) {
      const auto recs = bernoulli_records(n, 0.6, rng);
      const auto j = agreement_precision(recs, 50, 3);
      CHECK(j.blocks == n);
      const double pv = j.value;
      CHECK(std::abs(j.err - std::sqrt(pv * (1 - pv) / static_cast<double>(n - 1))) <= 1e-12);
    }
  }
  SUBCASE("permutation invariant") {
    Rng rng(10);
    auto recs = bernoulli_records(500, 0.7, rng);
    const auto a = agreement_precision(recs, 50, 5);
    rng.shuffle(std::span<AgreementRecord>(recs));
    const auto b = agreement_precision(recs, 50, 5);
    CHECK(a.value == b.value);
    CHECK(a.err == b.err);
  }
  SUBCASE("calibrated against the binomial standard error") {
    Rng rng(11);
    const auto big = agreement_precision(bernoulli_records(10000, 0.85, rng), 50, 1);
    const double analytic = std::sqrt(0.85 * 0.15 / 10000.0);
    CHECK(std::abs(big.err - analytic) <= 0.2 * analytic);
    const auto small = agreement_precision(bernoulli_records(1000, 0.85, rng), 50, 1);
    const double ratio = small.err / big.err;
    CHECK(ratio >= std::sqrt(10.0) / 2.0);
    CHECK(ratio <= std::sqrt(10.0) * 2.0);
  }
}

TEST_CASE("binned agreement") {
  CHECK(agreement_bin(1) == 0);
  CHECK(agreement_bin(3) == 0);
  CHECK(agreement_bin(4) == 1);
  CHECK(agreement_bin(10) == 1);
  CHECK(agreement_bin(11) == 2);
  CHECK(agreement_bin(31) == 2);
  CHECK(agreement_bin(32) == 3);
  CHECK(agreement_bin(5000) == 3);
  CHECK_THROWS_AS(agreement_bin(0), InvalidArgument);

  const std::vector<BinnedRecord> recs = {{{1, 1}, 2}, {{1, 2}, 3}, {{2, 2}, 3}, {{3, 3}, 40}, {{1, 1}, 5}};
  const auto bins = binned_agreement(recs);
  CHECK(bins[0].users == 3);
  CHECK(*bins[0].fraction == doctest::Approx(2.0 / 3.0));
  CHECK(*bins[0].poisson_err == doctest::Approx(std::sqrt(2.0) / 3.0));
  CHECK(*bins[1].fraction == 1.0);
  CHECK_FALSE(bins[2].fraction.has_value());
  CHECK_FALSE(bins[2].poisson_err.has_value());
  CHECK(*bins[3].fraction == 1.0);
  CHECK(bins[3].hi == 0);
}

TEST_CASE("coverage") {
  std::vector<CommunityId> a(100);
  for (std::size_t i = 0; i < 100; ++i) a[i] = i < 80 ? static_cast<CommunityId>(i / 20) : static_cast<CommunityId>(4 + (i - 80) / 5);
  CHECK(coverage(truncate_partition(Partition(a), 5)) == doctest::Approx(0.8));
  CHECK(coverage(truncate_partition(Partition::single_module(10), 3)) == 1.0);

  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint64_t> labels(60);
    for (auto& l : labels) l = rng.index(1 + rng.index(12));
    const auto p = Partition::from_labels(labels);
    double prev = 0.0;
    for (int n_cut = 2; n_cut <= 14; ++n_cut) {
      const double c = coverage(truncate_partition(p, n_cut));
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("misassigned intersection") {
  std::map<std::string, AgreementRecord> a, b;
  for (int u = 1; u <= 6; ++u) {
    a["u" + std::to_string(u)] = {1, u <= 3 ? 2 : 1};
    b["u" + std::to_string(u)] = {1, u >= 2 && u <= 4 ? 2 : 1};
  }
  const auto o = misassigned_intersection(a, b);
  CHECK(o.wrong_a == 3);
  CHECK(o.wrong_b == 3);
  CHECK(o.both == 2);
  CHECK(o.jaccard == doctest::Approx(0.5));
  CHECK(o.overlap_min == doctest::Approx(2.0 / 3.0));
  CHECK(misassigned_intersection(a, a).jaccard == 1.0);
  std::map<std::string, AgreementRecord> other = {{"x", {1, 2}}};
  CHECK_THROWS_AS(misassigned_intersection(a, other), InvalidArgument);
}

TEST_CASE("balanced datasets") {
  SUBCASE("exact per-category counts and clean separation") {
    DatasetFixture f({120, 100, 150});
    const auto ds = build_datasets(f.corpus, f.embedder, f.g, f.lp, f.split, {100, 0, 5, nullptr});
    CHECK(ds.categories == std::vector<int>{1, 2, 3});
    CHECK(ds.train.size() == 300);
    CHECK(ds.train_x.rows == 300);
    for (int k = 1; k <= 3; ++k) {
      CHECK(std::count_if(ds.train.begin(), ds.train.end(), [&](const TrainItem& t) { return t.category == k; }) == 100);
      CHECK(std::count_if(ds.test.begin(), ds.test.end(), [&](const TestItem& t) { return t.category == k; }) == 30);
    }
    std::set<std::size_t> train_ids;
    for (const auto& t : ds.train) {
      train_ids.insert(t.message);
      CHECK(f.g.index_of(f.corpus[t.message].user).value() % 4 == 0);
    }
    CHECK(train_ids.size() == 300);
    for (const auto& t : ds.test) {
      CHECK_FALSE(train_ids.count(t.message));
      CHECK(f.g.index_of(t.user).value() % 4 != 0);
    }
    CHECK(ds.audit.shared_messages == 0);
    CHECK(ds.audit.anchor_test_users == 0);
    CHECK(ds.warnings.empty());

    const auto again = build_datasets(f.corpus, f.embedder, f.g, f.lp, f.split, {100, 0, 5, nullptr});
    CHECK(again.train_x.data == ds.train_x.data);
    CHECK(again.test_x.data == ds.test_x.data);
    const auto other = build_datasets(f.corpus, f.embedder, f.g, f.lp, f.split, {100, 0, 6, nullptr});
    CHECK(other.train_x.data != ds.train_x.data);
  }
  SUBCASE("shortfall names the category") {
    DatasetFixture f({120, 40, 150});
    try {
      build_datasets(f.corpus, f.embedder, f.g, f.lp, f.split, {100, 0, 5, nullptr});
      FAIL("expected a shortfall");
    } catch (const DataError& e) {
      const std::string what = e.what();
      CHECK(what.find("category 2") != std::string::npos);
      CHECK(what.find("60 short") != std::string::npos);
    }
  }
  SUBCASE("test set degrades to the smallest availability") {
    DatasetFixture f({120, 100, 150}, 4);
    const auto ds = build_datasets(f.corpus, f.embedder, f.g, f.lp, f.split, {50, 20, 5, nullptr});
    CHECK(ds.n_test_per_cat == 12);
    CHECK(ds.test.size() == 36);
    CHECK(ds.warnings.size() == 1);
  }
  SUBCASE("unknown and external users") {
    DatasetFixture f({120, 100, 150});
    auto msgs = f.corpus.messages();
    msgs.push_back({"stray", "ghost", "hello"});
    const Corpus c(msgs);
    CHECK_THROWS_AS(build_datasets(c, f.embedder, f.g, f.lp, f.split, {100, 0, 5, nullptr}), DataError);
    const std::set<std::string> external = {"ghost"};
    CHECK(build_datasets(c, f.embedder, f.g, f.lp, f.split, {100, 0, 5, &external}).train.size() == 300);
  }
}

TEST_CASE("synthetic benchmark") {
  SynthConfig cfg;
  cfg.communities = 2;
  cfg.nodes_per_community = 40;
  cfg.p_in = 0.3;
  cfg.p_out = 0.0;
  cfg.tweets_mean = 5;
  cfg.seed = 3;
  const auto d = generate_synthetic(cfg);
  const Graph g = to_undirected_max(d.edges);
  const auto [comp, count] = connected_components(g);
  CHECK(count >= 2);
  for (const auto& e : g.edges()) {
    CHECK(d.truth[std::stoul(g.node_id(e.u).substr(1))] == d.truth[std::stoul(g.node_id(e.v).substr(1))]);
  }
  for (const auto& [key, w] : d.edges.entries()) {
    const auto rev = d.edges.weight(key.second, key.first);
    CHECK(w >= 1.0);
    if (rev && key.first < key.second) CHECK(std::min(w, *rev) <= std::max(w, *rev));
  }

  const auto again = generate_synthetic(cfg);
  CHECK(again.edges.entries() == d.edges.entries());
  CHECK(again.corpus.size() == d.corpus.size());
  for (std::size_t i = 0; i < d.corpus.size(); ++i) CHECK(again.corpus[i].text == d.corpus[i].text);

  SynthConfig four;
  four.p_in = 0.05;
  const auto big = generate_synthetic(four);
  std::vector<std::size_t> sizes(4);
  for (auto c : big.truth) ++sizes[c];
  CHECK(sizes == std::vector<std::size_t>{250, 250, 250, 250});

  SynthConfig bad;
  bad.p_out = 0.5;
  bad.p_in = 0.1;
  CHECK_THROWS_AS(generate_synthetic(bad), ConfigError);
  bad = SynthConfig{};
  bad.mu_text = 1.5;
  CHECK_THROWS_AS(generate_synthetic(bad), ConfigError);
}

TEST_CASE("separable text when vocabularies do not mix") {
  SynthConfig cfg;
  cfg.communities = 3;
  cfg.nodes_per_community = 30;
  cfg.p_in = 0.2;
  cfg.p_out = 0.01;
  cfg.mu_text = 0.0;
  cfg.tweets_mean = 10;
  cfg.seed = 21;
  const auto d = generate_synthetic(cfg);
  const HashEmbedder embed(256);
  FeatureMatrix train, test;
  std::vector<int> ytrain, ytest;
  for (std::size_t i = 0; i < d.corpus.size(); ++i) {
    const auto& m = d.corpus[i];
    const int label = static_cast<int>(d.truth[std::stoul(m.user.substr(1))]);
    (i % 2 ? test : train).append(embed.embed(m));
    (i % 2 ? ytest : ytrain).push_back(label);
  }
  const auto model = train_sgd(train, ytrain, 3, {}, 1);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < test.rows; ++r) hits += model->predict(test.row(r)) == ytest[r];
  CHECK(static_cast<double>(hits) / static_cast<double>(test.rows) >= 0.99);
}

TEST_CASE("dendrogram sweep") {
  SUBCASE("disconnected cliques never share a category") {
    const Graph g = testing::clique_chain(2, 6, false);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    edges.erase(std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return e.u < 6 && e.v >= 6; }), edges.end());
    const Graph split = Graph::from_index_edges(12, edges);
    for (auto a : {Algorithm::kLouvain, Algorithm::kBec}) {
      SweepRequest req;
      req.algorithm = a;
      req.grid = {0.1, 1, 10, 100};
      req.tracked = {"0", "7"};
      req.n_cut = 4;
      const auto d = dendrogram_sweep(split, req);
      for (const auto& level : d.levels) CHECK(level.tracked_category[0] != level.tracked_category[1]);
    }
  }
  SUBCASE("single grid value") {
    SweepRequest req;
    req.grid = {1.0};
    req.n_cut = 3;
    const auto d = dendrogram_sweep(testing::clique_chain(3, 5, true), req);
    CHECK(d.levels.size() == 1);
    CHECK(d.tracked.size() == 2);
    const auto j = dendrogram_json(d);
    CHECK(j["children"].empty());
    for (const auto& c : j["categories"]) CHECK(c["parent"].is_null());
  }
  SUBCASE("errors") {
    SweepRequest req;
    req.grid = {1.0};
    req.tracked = {"nobody"};
    CHECK_THROWS_AS(dendrogram_sweep(testing::clique(4), req), DataError);
    req.tracked.clear();
    req.grid = {2.0, 1.0};
    CHECK_THROWS_AS(dendrogram_sweep(testing::clique(4), req), ConfigError);
  }
  SUBCASE("coarsening on the planted benchmark") {
    SynthConfig cfg;
    cfg.seed = 5;
    const Graph g = filter_min_degree(to_undirected_max(generate_synthetic(cfg).edges), 3);
    for (const auto& [a, grid] : {std::pair{Algorithm::kBec, std::vector<double>{0.5, 7, 15, 60}},
                                  std::pair{Algorithm::kLouvain, std::vector<double>{0.01, 0.5, 2, 10}}}) {
      SweepRequest req;
      req.algorithm = a;
      req.grid = grid;
      req.n_cut = 5;
      const auto d = dendrogram_sweep(g, req);
      for (std::size_t l = 1; l < d.levels.size(); ++l) {
        CHECK(d.tracked_category_count(l) <= d.tracked_category_count(l - 1));
      }
      // Tree shape: root is the coarsest level, every non-root category has a parent there.
      auto node = dendrogram_json(d);
      CHECK(node["parameter"].get<double>() == grid.back());
      std::size_t depth = 1;
      while (!node["children"].empty()) {
        const auto parent_ids = node["categories"];
        node = node["children"][0];
        ++depth;
        for (const auto& c : node["categories"]) {
          const int pid = c["parent"].get<int>();
          CHECK(std::any_of(parent_ids.begin(), parent_ids.end(), [&](const auto& p) { return p["id"] == pid; }));
        }
      }
      CHECK(depth == grid.size());
      CHECK(node["parameter"].get<double>() == grid.front());
    }
  }
}
