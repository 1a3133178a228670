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

#include "cdeval/config.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"

namespace cdeval {

namespace {

namespace fs = std::filesystem;

struct Entry {
  std::string value;
  std::string where;
};

double to_double(const std::string& key, const Entry& e) {
  double v = 0.0;
  if (!parse_double(e.value, v)) throw ConfigError(e.where + ": " + key + ": expected a number, got '" + e.value + "'");
  return v;
}

long long to_int(const std::string& key, const Entry& e, long long lo) {
  long long v = 0;
  if (!parse_int(e.value, v) || v < lo) {
    throw ConfigError(e.where + ": " + key + ": expected an integer >= " + std::to_string(lo) + ", got '" + e.value + "'");
  }
  return v;
}

std::uint64_t to_seed(const std::string& key, const Entry& e) {
  return static_cast<std::uint64_t>(to_int(key, e, 0));
}

std::vector<std::string> to_list(const Entry& e) {
  std::vector<std::string> out;
  for (auto part : split(e.value, ',')) {
    const auto t = trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const Entry& e) {
  std::vector<double> out;
  for (const auto& item : to_list(e)) out.push_back(to_double(key, {item, e.where}));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const Entry&)>;

struct KeySpec {
  std::string help;
  Setter set;
};

const std::map<std::string, KeySpec>& key_table() {
  static const auto* table = new std::map<std::string, KeySpec>{
      {"edges", {"edge list (src,dst,weight per line)", [](RunConfig& c, auto&, auto& e) { c.edges = e.value; }}},
      {"tweets", {"message lines as JSON objects {user_id, tweet_id, text}",
                  [](RunConfig& c, auto&, auto& e) { c.tweets = e.value; }}},
      {"embeddings", {"EMB1 file or builtin-hash:<dim>", [](RunConfig& c, auto&, auto& e) { c.embeddings = e.value; }}},
      {"min_degree", {"degree filter threshold", [](RunConfig& c, auto& k, auto& e) { c.min_degree = to_int(k, e, 0); }}},
      {"n_cut", {"number of categories including the catch-all",
                 [](RunConfig& c, auto& k, auto& e) { c.n_cut = static_cast<int>(to_int(k, e, 2)); }}},
      {"anchor_quantile", {"centrality quantile above which users are anchors",
                           [](RunConfig& c, auto& k, auto& e) { c.anchor_quantile = to_double(k, e); }}},
      {"n_train", {"training messages per category", [](RunConfig& c, auto& k, auto& e) { c.n_train = to_int(k, e, 1); }}},
      {"n_test", {"test messages per category, 0 for the smallest availability",
                  [](RunConfig& c, auto& k, auto& e) { c.n_test = to_int(k, e, 0); }}},
      {"weights", {"ensemble weights for sgd,margin,mlp,forest",
                   [](RunConfig& c, auto& k, auto& e) {
                     const auto items = to_list(e);
                     if (items.size() != kVoters) throw ConfigError(e.where + ": weights: expected 4 integers");
                     for (std::size_t i = 0; i < kVoters; ++i) {
                       c.ensemble.weights[i] = static_cast<int>(to_int(k, {items[i], e.where}, 1));
                     }
                   }}},
      {"betas", {"F-beta values", [](RunConfig& c, auto& k, auto& e) { c.betas = to_doubles(k, e); }}},
      {"jackknife_blocks", {"jackknife block count",
                            [](RunConfig& c, auto& k, auto& e) { c.jackknife_blocks = to_int(k, e, 2); }}},
      {"tracked", {"node ids followed through the dendrogram", [](RunConfig& c, auto&, auto& e) { c.tracked = to_list(e); }}},
      {"jobs", {"worker threads", [](RunConfig& c, auto& k, auto& e) { c.jobs = to_int(k, e, 1); }}},
      {"seed", {"default seed for every stage", [](RunConfig& c, auto& k, auto& e) { c.seed = to_seed(k, e); }}},
      {"centrality.tol", {"power iteration tolerance",
                          [](RunConfig& c, auto& k, auto& e) { c.centrality_tol = to_double(k, e); }}},
      {"centrality.max_iter", {"power iteration cap",
                               [](RunConfig& c, auto& k, auto& e) { c.centrality_max_iter = to_int(k, e, 1); }}},
      {"ensemble.sgd.epochs", {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.sgd.epochs = to_int(k, e, 1); }}},
      {"ensemble.sgd.learning_rate",
       {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.sgd.learning_rate = to_double(k, e); }}},
      {"ensemble.sgd.alpha", {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.sgd.alpha = to_double(k, e); }}},
      {"ensemble.margin.c", {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.margin.c = to_double(k, e); }}},
      {"ensemble.margin.max_iter",
       {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.margin.max_iter = to_int(k, e, 1); }}},
      {"ensemble.margin.tol", {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.margin.tol = to_double(k, e); }}},
      {"ensemble.mlp.learning_rate",
       {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.mlp.learning_rate = to_double(k, e); }}},
      {"ensemble.mlp.epochs", {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.mlp.epochs = to_int(k, e, 1); }}},
      {"ensemble.mlp.batch", {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.mlp.batch = to_int(k, e, 1); }}},
      {"ensemble.mlp.momentum", {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.mlp.momentum = to_double(k, e); }}},
      {"ensemble.forest.trees", {"", [](RunConfig& c, auto& k, auto& e) { c.ensemble.forest.trees = to_int(k, e, 1); }}},
      {"ensemble.forest.max_features",
       {"0 for round(sqrt(dim))", [](RunConfig& c, auto& k, auto& e) { c.ensemble.forest.max_features = to_int(k, e, 0); }}},
      {"ensemble.forest.max_depth",
       {"0 for unlimited", [](RunConfig& c, auto& k, auto& e) { c.ensemble.forest.max_depth = to_int(k, e, 0); }}},
      {"synth.communities", {"", [](RunConfig& c, auto& k, auto& e) { c.synth.communities = to_int(k, e, 1); }}},
      {"synth.nodes_per_community",
       {"", [](RunConfig& c, auto& k, auto& e) { c.synth.nodes_per_community = to_int(k, e, 1); }}},
      {"synth.p_in", {"", [](RunConfig& c, auto& k, auto& e) { c.synth.p_in = to_double(k, e); }}},
      {"synth.p_out", {"", [](RunConfig& c, auto& k, auto& e) { c.synth.p_out = to_double(k, e); }}},
      {"synth.weight_p", {"weights are 1 + Geometric(weight_p)",
                          [](RunConfig& c, auto& k, auto& e) { c.synth.weight_p = to_double(k, e); }}},
      {"synth.reciprocity", {"", [](RunConfig& c, auto& k, auto& e) { c.synth.reciprocity = to_double(k, e); }}},
      {"synth.tweets_mean", {"", [](RunConfig& c, auto& k, auto& e) { c.synth.tweets_mean = to_double(k, e); }}},
      {"synth.vocabulary", {"", [](RunConfig& c, auto& k, auto& e) { c.synth.vocabulary = to_int(k, e, 1); }}},
      {"synth.tokens_per_tweet",
       {"", [](RunConfig& c, auto& k, auto& e) { c.synth.tokens_per_tweet = to_int(k, e, 1); }}},
      {"synth.mu_text", {"", [](RunConfig& c, auto& k, auto& e) { c.synth.mu_text = to_double(k, e); }}},
      {"synth.seed", {"defaults to seed", [](RunConfig& c, auto& k, auto& e) { c.synth.seed = to_seed(k, e); }}},
  };
  return *table;
}

void parse_lines(const std::string& text, const std::string& source, std::map<std::string, Entry>& out) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(t.substr(0, eq)));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (out.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    out[key] = {std::string(trim(t.substr(eq + 1))), where};
  }
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || path.rfind("builtin-hash:", 0) == 0) return path;
  const fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

const std::map<std::string, std::string>& config_keys() {
  static const auto* keys = [] {
    auto* m = new std::map<std::string, std::string>;
    for (const auto& [k, spec] : key_table()) (*m)[k] = spec.help;
    (*m)["algorithms"] = "comma list of <alg> or <label>:<alg>; alg in louvain, louvain-gamma, bec, infomap";
    (*m)["<label>.grid"] = "comma list of parameter values";
    (*m)["<label>.seed"] = "seed for this algorithm, defaults to seed";
    return m;
  }();
  return *keys;
}

RunConfig parse_run_config(const std::string& text, const std::string& base_dir,
                           const std::vector<std::string>& overrides, const std::string& source) {
  std::map<std::string, Entry> entries;
  parse_lines(text, source, entries);
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const auto& o = overrides[i];
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("--set " + o + ": expected key=value");
    entries[std::string(trim(std::string_view(o).substr(0, eq)))] = {
        std::string(trim(std::string_view(o).substr(eq + 1))), "--set " + o};
  }

  RunConfig cfg;
  const auto& table = key_table();
  std::set<std::string> consumed;
  for (const auto& [key, e] : entries) {
    const auto it = table.find(key);
    if (it == table.end()) continue;
    it->second.set(cfg, key, e);
    consumed.insert(key);
  }
  if (!entries.count("synth.seed")) cfg.synth.seed = cfg.seed;

  if (const auto it = entries.find("algorithms"); it != entries.end()) {
    consumed.insert("algorithms");
    std::set<std::string> labels;
    for (const auto& item : to_list(it->second)) {
      AlgorithmSpec spec;
      const auto colon = item.find(':');
      spec.label = colon == std::string::npos ? item : std::string(trim(std::string_view(item).substr(0, colon)));
      const std::string name =
          colon == std::string::npos ? item : std::string(trim(std::string_view(item).substr(colon + 1)));
      spec.algorithm = parse_algorithm(name);
      if (spec.label.empty() || !labels.insert(spec.label).second) {
        throw ConfigError(it->second.where + ": algorithm label '" + spec.label + "' must be unique and non-empty");
      }
      spec.seed = cfg.seed;
      if (const auto g = entries.find(spec.label + ".grid"); g != entries.end()) {
        spec.grid = to_doubles(g->first, g->second);
        consumed.insert(g->first);
      }
      if (const auto s = entries.find(spec.label + ".seed"); s != entries.end()) {
        spec.seed = to_seed(s->first, s->second);
        consumed.insert(s->first);
      }
      cfg.algorithms.push_back(std::move(spec));
    }
  }
  for (const auto& [key, e] : entries) {
    if (!consumed.count(key)) throw ConfigError(e.where + ": unknown key '" + key + "'");
  }

  if (!(cfg.anchor_quantile > 0.0 && cfg.anchor_quantile < 1.0)) {
    throw ConfigError("anchor_quantile must lie in (0, 1)");
  }
  validate_weights(cfg.ensemble.weights);
  for (double b : cfg.betas) {
    if (!(b >= 0.0)) throw ConfigError("betas must be >= 0");
  }
  for (const auto& spec : cfg.algorithms) {
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
      if (!(spec.grid[i] > 0.0)) throw ConfigError(spec.label + ".grid: values must be positive");
      if (i > 0 && !(spec.grid[i - 1] < spec.grid[i])) {
        throw ConfigError(spec.label + ".grid: values must be strictly ascending");
      }
    }
  }
  validate(cfg.synth);
  cfg.edges = resolve(cfg.edges, base_dir);
  cfg.tweets = resolve(cfg.tweets, base_dir);
  cfg.embeddings = resolve(cfg.embeddings, base_dir);
  return cfg;
}

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  if (path.empty()) return parse_run_config("", "", overrides, "<none>");
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path);
  const auto base = fs::absolute(path).parent_path().string();
  return parse_run_config(read_file(path), base, overrides, path);
}

}  // namespace cdeval
