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
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "cdeval/classifiers.hpp"
#include "cdeval/corpus.hpp"
#include "cdeval/embedding.hpp"
#include "cdeval/ensemble.hpp"
#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"
#include "cdeval/rng.hpp"
#include "doctest.h"

using namespace cdeval;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("cdeval_test_nlp_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
  double d = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return d / std::sqrt(na * nb);
}

struct Blobs {
  FeatureMatrix x;
  std::vector<int> y;
};

Blobs gaussian_blobs(std::size_t per_class, std::size_t dim, Rng& rng) {
  Blobs b;
  for (int label = 0; label < 2; ++label) {
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<float> v(dim);
      for (auto& x : v) x = static_cast<float>((label == 0 ? -1.0 : 1.0) + rng.normal());
      b.x.append(v);
      b.y.push_back(label);
    }
  }
  return b;
}

double accuracy(const Classifier& c, const Blobs& b) {
  std::size_t hits = 0;
  for (std::size_t r = 0; r < b.x.rows; ++r) hits += c.predict(b.x.row(r)) == b.y[r];
  return static_cast<double>(hits) / static_cast<double>(b.x.rows);
}

// Independent weighted-argmax oracle with the documented tie rule.
int brute_force_winner(const VoteWeights& w, const std::array<int, kVoters>& choices) {
  std::map<int, int> counts;
  for (std::size_t k = 0; k < kVoters; ++k) counts[choices[k]] += w[k];
  int top = 0;
  for (const auto& [c, n] : counts) top = std::max(top, n);
  std::vector<std::pair<int, int>> backers;  // (weight, category) of voters for tied categories
  for (std::size_t k = 0; k < kVoters; ++k)
    if (counts[choices[k]] == top) backers.push_back({w[k], choices[k]});
  std::sort(backers.begin(), backers.end(), [](auto a, auto b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  return backers.front().second;
}

EnsembleConfig fast_config() {
  EnsembleConfig c;
  c.forest.trees = 15;
  c.mlp.epochs = 30;
  return c;
}

}  // namespace

TEST_CASE("tokenizer") {
  const auto t = tokenize("Hello, WORLD! #Climate @bob_smith it's 2024 # @");
  CHECK(t == std::vector<std::string>{"hello", "world", "#climate", "@bob", "smith", "it", "s", "2024"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("caf\xc3\xa9 ok") == std::vector<std::string>{"caf\xc3\xa9", "ok"});
}

TEST_CASE("hash embedding") {
  const auto empty = hash_embed("", 64);
  CHECK(empty.size() == 64);
  CHECK(std::all_of(empty.begin(), empty.end(), [](float v) { return v == 0.0f; }));
  CHECK(hash_embed("the quick brown fox", 128) == hash_embed("the quick brown fox", 128));
  CHECK(hash_embed("The QUICK brown fox!", 128) == hash_embed("the quick brown fox", 128));
  const auto v = hash_embed("a b c d e f", 256);
  double norm = 0;
  for (float x : v) norm += x * x;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(hash_embed("x", 8), InvalidArgument);

  // Buckets and signs pinned from an independent re-implementation of the hash.
  const auto pin = [](const char* token, std::size_t dim) {
    const auto v = hash_embed(token, dim);
    std::vector<int> nonzero;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0.0f) nonzero.push_back((static_cast<int>(i) + 1) * (v[i] > 0 ? 1 : -1));
    return nonzero;
  };
  CHECK(pin("climate", 16) == std::vector<int>{3});
  CHECK(pin("climate", 1024) == std::vector<int>{739});
  CHECK(pin("#climate", 16) == std::vector<int>{-5});
  CHECK(pin("#climate", 1024) == std::vector<int>{-501});
}

TEST_CASE("disjoint vocabularies embed nearly orthogonally") {
  Rng rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::string a, b;
    for (int i = 0; i < 20; ++i) {
      a += "left" + std::to_string(rng.index(5000)) + " ";
      b += "right" + std::to_string(rng.index(5000)) + " ";
    }
    worst = std::max(worst, std::abs(cosine(hash_embed(a, 1024), hash_embed(b, 1024))));
  }
  CHECK(worst < 0.3);
}

TEST_CASE("embedding file format") {
  const auto dir = scratch_dir("emb");
  const std::string path = (dir / "m.emb").string();
  EmbeddingStore store(4, {"t1", "t2"}, {1, 2, 3, 4, -0.5f, 0.25f, 0, 1e-7f});
  write_embeddings(path, store);
  const auto back = load_embeddings(path);
  CHECK(back.count() == 2);
  CHECK(back.dim() == 4);
  CHECK(back.ids() == store.ids());
  CHECK(std::memcmp(back.values().data(), store.values().data(), 8 * sizeof(float)) == 0);
  CHECK(back.find("t2") == 1);
  CHECK(back.find("zz") == -1);

  const auto bytes = read_file(path);
  CHECK(bytes.size() == 16 + 2 * 4 * 4);
  CHECK(bytes.substr(0, 4) == "EMB1");
  CHECK(static_cast<unsigned char>(bytes[4]) == 4);  // little-endian dim
  write_embeddings((dir / "again.emb").string(), back);
  CHECK(read_file((dir / "again.emb").string()) == bytes);

  auto expect_kind = [&](const std::string& content, const std::string& ids, EmbeddingFormatError::Kind kind) {
    const auto p = (dir / "bad.emb").string();
    write_file_atomic(p, content);
    write_file_atomic(p + ".ids", ids);
    try {
      load_embeddings(p);
      FAIL("expected EmbeddingFormatError");
    } catch (const EmbeddingFormatError& e) {
      CHECK(static_cast<int>(e.kind()) == static_cast<int>(kind));
    }
  };
  expect_kind("EMB2" + bytes.substr(4), "t1\nt2\n", EmbeddingFormatError::Kind::kBadMagic);
  expect_kind(bytes.substr(0, bytes.size() - 3), "t1\nt2\n", EmbeddingFormatError::Kind::kTruncated);
  expect_kind(bytes, "t1\nt1\n", EmbeddingFormatError::Kind::kDuplicateId);
  expect_kind(bytes, "t1\n", EmbeddingFormatError::Kind::kIdMismatch);
  auto nan_bytes = bytes;
  const float nan = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(nan_bytes.data() + 16, &nan, 4);
  expect_kind(nan_bytes, "t1\nt2\n", EmbeddingFormatError::Kind::kNonFinite);
}

TEST_CASE("corpus JSON lines") {
  std::istringstream in(
      "{\"user_id\":\"u1\",\"tweet_id\":\"t1\",\"text\":\"hi #x\"}\n"
      "\n"
      "{\"user_id\":\"u2\",\"tweet_id\":\"t2\",\"text\":\"yo\"}\n"
      "{\"user_id\":\"u1\",\"tweet_id\":\"t3\",\"text\":\"again\"}\n");
  const auto c = load_corpus(in);
  CHECK(c.size() == 3);
  CHECK(c.by_user().at("u1") == std::vector<std::size_t>{0, 2});
  std::ostringstream out;
  write_corpus(out, c);
  std::istringstream again(out.str());
  CHECK(load_corpus(again).messages()[2].text == "again");

  std::istringstream dup("{\"user_id\":\"a\",\"tweet_id\":\"t\",\"text\":\"\"}\n{\"user_id\":\"b\",\"tweet_id\":\"t\",\"text\":\"\"}\n");
  CHECK_THROWS_AS(load_corpus(dup), DataError);
  std::istringstream bad("{\"user_id\":\"a\",\"text\":\"\"}\n");
  CHECK_THROWS_AS(load_corpus(bad), ParseError);
}

TEST_CASE("each voter separates Gaussian blobs") {
  Rng rng(5);
  const auto train = gaussian_blobs(100, 8, rng);
  const auto holdout = gaussian_blobs(100, 8, rng);
  const int k = 2;
  CHECK(accuracy(*train_sgd(train.x, train.y, k, {}, 1), holdout) >= 0.95);
  CHECK(accuracy(*train_margin(train.x, train.y, k, {}, 2), holdout) >= 0.95);
  CHECK(accuracy(*train_mlp(train.x, train.y, k, {}, 3), holdout) >= 0.95);
  CHECK(accuracy(*train_forest(train.x, train.y, k, {}, 4), holdout) >= 0.95);

  const auto e = train_ensemble(train.x, std::vector<int>{train.y.begin(), train.y.end()}, fast_config());
  std::size_t hits = 0;
  for (std::size_t r = 0; r < holdout.x.rows; ++r) hits += e.predict(holdout.x.row(r)).category == holdout.y[r];
  CHECK(static_cast<double>(hits) / holdout.x.rows >= 0.95);
}

TEST_CASE("conflicting duplicated labels carry no signal") {
  Blobs b;
  for (int i = 0; i < 100; ++i) {
    b.x.append(std::vector<float>{0.5f, -1.0f, 2.0f, 0.0f});
    b.y.push_back(i % 2);
  }
  for (auto* train : {+[](const Blobs& d) { return train_sgd(d.x, d.y, 2, {}, 1); },
                      +[](const Blobs& d) { return train_margin(d.x, d.y, 2, {}, 1); },
                      +[](const Blobs& d) { return train_mlp(d.x, d.y, 2, {}, 1); },
                      +[](const Blobs& d) { return train_forest(d.x, d.y, 2, {20, 0, 0}, 1); }}) {
    const double acc = accuracy(*train(b), b);
    CHECK(acc >= 0.4);
    CHECK(acc <= 0.6);
  }
}

TEST_CASE("training is deterministic and models serialize losslessly") {
  Rng rng(8);
  auto data = gaussian_blobs(60, 12, rng);
  const auto probe = gaussian_blobs(40, 12, rng);
  std::vector<int> labels;
  for (int y : data.y) labels.push_back(y + 1);
  labels[3] = 3;  // a third, tiny category
  const auto a = train_ensemble(data.x, labels, fast_config());
  const auto b = train_ensemble(data.x, labels, fast_config());
  CHECK(a.categories() == std::vector<int>{1, 2, 3});
  const auto dir = scratch_dir("bundle");
  a.save(dir.string());
  const auto c = Ensemble::load(dir.string());
  for (std::size_t r = 0; r < probe.x.rows; ++r) {
    const auto va = a.predict(probe.x.row(r));
    CHECK(va.choices == b.predict(probe.x.row(r)).choices);
    CHECK(va.choices == c.predict(probe.x.row(r)).choices);
  }
  for (std::size_t k = 0; k < kVoters; ++k) CHECK(a.voter(k).to_json() == c.voter(k).to_json());
}

TEST_CASE("training contract errors") {
  FeatureMatrix x;
  x.append(std::vector<float>{1, 2});
  x.append(std::vector<float>{3, 4});
  CHECK_THROWS_AS(train_ensemble(x, std::vector<int>{2, 2}, fast_config()), InvalidArgument);
  CHECK_THROWS_AS(x.append(std::vector<float>{1, 2, 3}), InvalidArgument);
  const auto e = train_ensemble(x, std::vector<int>{1, 2}, fast_config());
  CHECK_THROWS_AS(e.predict(std::vector<float>{1, 2, 3}), InvalidArgument);
  EnsembleConfig bad = fast_config();
  bad.weights = {1, 1, 1, 1};
  CHECK_THROWS_AS(train_ensemble(x, std::vector<int>{1, 2}, bad), ConfigError);
}

TEST_CASE("weighted vote arithmetic") {
  const std::vector<int> cats = {1, 2, 3, 4};
  SUBCASE("unanimity") {
    const auto v = tally_votes(kDefaultWeights, {2, 2, 2, 2}, cats);
    CHECK(v.category == 2);
    CHECK(v.counts[1] == 7);
  }
  SUBCASE("weighted majority") {
    const auto v = tally_votes(kDefaultWeights, {1, 1, 2, 3}, cats);
    CHECK(v.counts == std::vector<int>{2, 3, 2, 0});
    CHECK(v.category == 2);
  }
  SUBCASE("tie resolved by the heaviest tied voter") {
    // (a)=1, (b)=3, (c)=2, (d)=1: counts {1:3, 2:3, 3:1}.
    const auto v = tally_votes(kDefaultWeights, {1, 3, 2, 1}, cats);
    CHECK(v.counts == std::vector<int>{3, 3, 1, 0});
    CHECK(v.category == 2);
  }
  SUBCASE("exhaustive patterns against the brute-force oracle") {
    int ties = 0;
    for (int p = 0; p < 256; ++p) {
      const std::array<int, kVoters> choices = {1 + (p & 3), 1 + ((p >> 2) & 3), 1 + ((p >> 4) & 3), 1 + ((p >> 6) & 3)};
      const auto v = tally_votes(kDefaultWeights, choices, cats);
      int sum = 0;
      for (int c : v.counts) {
        CHECK(c >= 0);
        sum += c;
      }
      CHECK(sum == kTotalVotes);
      CHECK(v.counts[static_cast<std::size_t>(v.category - 1)] == *std::max_element(v.counts.begin(), v.counts.end()));
      CHECK(v.category == brute_force_winner(kDefaultWeights, choices));
      ties += std::count(v.counts.begin(), v.counts.end(), *std::max_element(v.counts.begin(), v.counts.end())) > 1;
    }
    CHECK(ties > 0);
  }
  CHECK_THROWS_AS(validate_weights({1, 2, 3, 2}), ConfigError);
  CHECK_THROWS_AS(validate_weights({0, 2, 3, 2}), ConfigError);
}

TEST_CASE("user classification") {
  const std::vector<int> cats = {1, 2, 3};
  auto vote = [&](int category, std::vector<int> counts) {
    Vote v;
    v.category = category;
    v.counts = std::move(counts);
    return v;
  };
  SUBCASE("majority") {
    const std::vector<Vote> votes = {vote(1, {7, 0, 0}), vote(1, {4, 3, 0}), vote(2, {0, 7, 0})};
    CHECK(classify_user(votes, cats).category == 1);
    CHECK(classify_user(votes, cats).histogram == std::map<int, int>{{1, 2}, {2, 1}});
  }
  SUBCASE("single message") {
    const std::vector<Vote> votes = {vote(3, {2, 0, 5})};
    CHECK(classify_user(votes, cats).category == 3);
  }
  SUBCASE("tie broken by vote mass") {
    const std::vector<Vote> votes = {vote(1, {4, 3, 0}), vote(2, {2, 4, 1})};  // masses 6 vs 7
    CHECK(classify_user(votes, cats).category == 2);
  }
  SUBCASE("permutation invariant") {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Vote> votes;
      for (std::size_t i = 0; i < 1 + rng.index(8); ++i) {
        std::array<int, kVoters> ch;
        for (auto& c : ch) c = 1 + static_cast<int>(rng.index(3));
        votes.push_back(tally_votes(kDefaultWeights, ch, cats));
      }
      const int before = classify_user(votes, cats).category;
      rng.shuffle(std::span<Vote>(votes));
      CHECK(classify_user(votes, cats).category == before);
    }
  }
  CHECK_THROWS_AS(classify_user(std::vector<Vote>{}, cats), InvalidArgument);
}
