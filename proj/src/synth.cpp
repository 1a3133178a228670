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

#include "cdeval/synth.hpp"

#include <filesystem>
#include <sstream>

#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"
#include "cdeval/rng.hpp"
#include "json.hpp"

namespace cdeval {

void validate(const SynthConfig& cfg) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("synth: " + what);
  };
  require(cfg.communities >= 1, "communities must be >= 1");
  require(cfg.nodes_per_community >= 1, "nodes_per_community must be >= 1");
  require(cfg.p_out >= 0.0 && cfg.p_out <= cfg.p_in && cfg.p_in <= 1.0, "need 0 <= p_out <= p_in <= 1");
  require(cfg.mu_text >= 0.0 && cfg.mu_text <= 1.0, "mu_text must lie in [0, 1]");
  require(cfg.weight_p > 0.0 && cfg.weight_p <= 1.0, "weight_p must lie in (0, 1]");
  require(cfg.reciprocity >= 0.0 && cfg.reciprocity <= 1.0, "reciprocity must lie in [0, 1]");
  require(cfg.tweets_mean >= 1.0, "tweets_mean must be >= 1");
  require(cfg.vocabulary >= 1 && cfg.tokens_per_tweet >= 1, "vocabulary and tokens_per_tweet must be >= 1");
}

SynthData generate_synthetic(const SynthConfig& cfg) {
  validate(cfg);
  const std::size_t k = cfg.communities;
  const std::size_t n = k * cfg.nodes_per_community;
  SynthData out;
  out.users.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.users.push_back("u" + std::to_string(i));
    out.truth.push_back(static_cast<CommunityId>(i / cfg.nodes_per_community));
  }

  Rng graph_rng(Rng::derive(cfg.seed, 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = out.truth[i] == out.truth[j] ? cfg.p_in : cfg.p_out;
      if (!graph_rng.bernoulli(p)) continue;
      const auto w = 1 + graph_rng.geometric(cfg.weight_p);
      const bool flip = graph_rng.bernoulli(0.5);
      const auto& src = out.users[flip ? j : i];
      const auto& dst = out.users[flip ? i : j];
      out.edges.add(src, dst, static_cast<double>(w));
      if (graph_rng.bernoulli(cfg.reciprocity)) {
        out.edges.add(dst, src, static_cast<double>(1 + graph_rng.index(w)));
      }
    }
  }

  Rng text_rng(Rng::derive(cfg.seed, 2));
  std::vector<Message> messages;
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto own = out.truth[i];
    const auto tweets = 1 + text_rng.geometric(1.0 / cfg.tweets_mean);
    for (std::uint64_t t = 0; t < tweets; ++t) {
      std::string text;
      for (std::size_t w = 0; w < cfg.tokens_per_tweet; ++w) {
        std::size_t c = own;
        if (k > 1 && text_rng.bernoulli(cfg.mu_text)) {
          c = text_rng.index(k - 1);
          if (c >= own) ++c;
        }
        if (!text.empty()) text += ' ';
        text += "c" + std::to_string(c) + "w" + std::to_string(text_rng.index(cfg.vocabulary));
      }
      messages.push_back({"t" + std::to_string(next_id++), out.users[i], std::move(text)});
    }
  }
  out.corpus = Corpus(std::move(messages));
  return out;
}

void write_synthetic(const std::string& dir, const SynthConfig& cfg, const SynthData& data) {
  namespace fs = std::filesystem;
  const fs::path root(dir);

  std::ostringstream edges;
  edges << "# src,dst,weight\n";
  for (const auto& [key, w] : data.edges.entries()) {
    edges << key.first << ',' << key.second << ',' << format_number(w) << '\n';
  }
  write_file_atomic((root / "edges.csv").string(), edges.str());

  std::ostringstream tweets;
  write_corpus(tweets, data.corpus);
  write_file_atomic((root / "tweets.jsonl").string(), tweets.str());

  std::ostringstream truth;
  truth << "node_id,community_id\n";
  for (std::size_t i = 0; i < data.users.size(); ++i) truth << data.users[i] << ',' << data.truth[i] << '\n';
  write_file_atomic((root / "truth.csv").string(), truth.str());

  const Graph g = to_undirected_max(data.edges);
  nlohmann::ordered_json m;
  m["config"] = {{"communities", cfg.communities},
                 {"nodes_per_community", cfg.nodes_per_community},
                 {"p_in", cfg.p_in},
                 {"p_out", cfg.p_out},
                 {"weight_p", cfg.weight_p},
                 {"reciprocity", cfg.reciprocity},
                 {"tweets_mean", cfg.tweets_mean},
                 {"vocabulary", cfg.vocabulary},
                 {"tokens_per_tweet", cfg.tokens_per_tweet},
                 {"mu_text", cfg.mu_text},
                 {"seed", cfg.seed}};
  m["users"] = data.users.size();
  m["directed_edges"] = data.edges.size();
  m["nodes"] = g.node_count();
  m["edges"] = g.edge_count();
  m["messages"] = data.corpus.size();
  write_file_atomic((root / "synth_manifest.json").string(), m.dump(2) + "\n");
}

}  // namespace cdeval
