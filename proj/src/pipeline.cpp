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

#include "cdeval/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"
#include "cdeval/parallel.hpp"
#include "cdeval/rng.hpp"

namespace cdeval {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

void write_json(const fs::path& path, const Json& j) { write_file_atomic(path.string(), j.dump(2) + "\n"); }

std::string csv_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void require_file(const std::string& key, const std::string& path) {
  if (path.empty()) throw ConfigError("config key '" + key + "' is required");
  if (!fs::exists(path)) throw ConfigError(key + ": file not found: " + path);
}

struct Ingested {
  Graph graph;
  std::set<std::string> external;
};

Ingested load_ingested(const fs::path& out) {
  const auto edges = out / "graph.tsv";
  const auto nodes = out / "nodes.csv";
  if (!fs::exists(edges) || !fs::exists(nodes)) {
    throw ConfigError("no ingested graph under " + out.string() + "; run 'ingest' first");
  }
  Ingested in{load_graph(edges.string(), nodes.string()), {}};
  std::istringstream removed(read_file((out / "filtered_out.txt").string()));
  std::string line;
  while (std::getline(removed, line)) {
    if (!line.empty()) in.external.insert(line);
  }
  return in;
}

std::vector<std::optional<double>> parameters_of(const AlgorithmSpec& spec) {
  if (!algorithm_has_parameter(spec.algorithm)) return {std::nullopt};
  if (spec.grid.empty()) throw ConfigError("'" + spec.label + ".grid' is missing");
  return {spec.grid.begin(), spec.grid.end()};
}

}  // namespace

std::string entry_tag(const std::string& label, std::optional<double> parameter) {
  return parameter ? label + "_" + format_number(*parameter) : label;
}

Json EvaluationReport::to_json() const {
  Json j;
  j["tag"] = tag;
  j["label"] = label;
  j["algorithm"] = algorithm;
  j["parameter"] = optional_number(parameter);
  j["N_cut"] = n_cut;
  j["m"] = m;
  j["precision"] = classified ? Json(precision.value) : Json(nullptr);
  j["precision_err"] = classified ? Json(precision.err) : Json(nullptr);
  j["evaluated_users"] = precision.users;
  j["jackknife_blocks"] = precision.blocks;
  j["coverage"] = coverage;
  Json fb = Json::object();
  for (const auto& [beta, value] : f_beta) fb[format_number(beta)] = classified ? Json(value) : Json(nullptr);
  j["f_beta"] = fb;
  Json bins_j = Json::array();
  for (const auto& b : bins) {
    bins_j.push_back({{"lo", b.lo},
                      {"hi", b.hi == 0 ? Json(nullptr) : Json(b.hi)},
                      {"users", b.users},
                      {"agree", b.agree},
                      {"fraction", optional_number(b.fraction)},
                      {"poisson_err", optional_number(b.poisson_err)}});
  }
  j["bins"] = bins_j;
  Json curve = Json::array();
  for (const auto& p : entropy_curve) {
    curve.push_back({{"tweets", p.tweets},
                     {"users", p.users},
                     {"mean_entropy", p.mean_entropy},
                     {"mean_distinct", p.mean_distinct}});
  }
  j["entropy_curve"] = curve;
  j["seeds"] = {{"detect", seeds.detect},
                {"datasets", seeds.datasets},
                {"ensemble", seeds.ensemble},
                {"jackknife", seeds.jackknife}};
  j["audit"] = {{"train_messages", train_items},
                {"test_messages", test_items},
                {"shared_messages", audit.shared_messages},
                {"anchor_test_users", audit.anchor_test_users}};
  Json avail = Json::array();
  for (std::size_t k = 0; k < categories.size(); ++k) {
    avail.push_back({{"category", categories[k]},
                     {"anchor_messages", anchor_messages[k]},
                     {"tested_messages", tested_messages[k]}});
  }
  j["datasets"] = avail;
  j["warnings"] = warnings;
  j["error"] = error ? Json(*error) : Json(nullptr);
  return j;
}

EvaluationReport evaluate_partition(const EvaluationInputs& in, const Partition& p, const EvaluationSettings& s) {
  const Graph& g = *in.graph;
  if (p.size() != g.node_count()) throw InvalidArgument("evaluate_partition: partition does not match graph");
  const auto lp = truncate_partition(p, s.n_cut);

  EvaluationReport r;
  r.n_cut = s.n_cut;
  r.m = p.module_count();
  r.coverage = coverage(lp);
  r.seeds.datasets = Rng::derive(s.seed, 11);
  r.seeds.ensemble = Rng::derive(s.seed, 12);
  r.seeds.jackknife = Rng::derive(s.seed, 13);

  std::size_t populated = 0;
  for (int k = 1; k < lp.n_cut; ++k) populated += lp.category_size[static_cast<std::size_t>(k - 1)] > 0;
  if (populated < 2) {
    r.warnings.push_back("fewer than 2 populated categories; nothing to classify");
    r.bins = binned_agreement({});
    for (double beta : s.betas) r.f_beta.emplace_back(beta, 0.0);
    return r;
  }
  r.classified = true;

  DatasetRequest request;
  request.n_train = s.n_train;
  request.n_test = s.n_test;
  request.seed = r.seeds.datasets;
  request.external = in.external;
  const auto ds = build_datasets(*in.corpus, *in.embedder, g, lp, *in.split, request);
  r.warnings = ds.warnings;
  r.audit = ds.audit;
  r.train_items = ds.train.size();
  r.categories = ds.categories;
  r.anchor_messages = ds.anchor_messages;
  r.tested_messages = ds.tested_messages;
  r.test_items = ds.test.size();

  EnsembleConfig ec = s.ensemble;
  ec.seed = r.seeds.ensemble;
  std::vector<int> labels;
  labels.reserve(ds.train.size());
  for (const auto& t : ds.train) labels.push_back(t.category);
  const Ensemble ensemble = train_ensemble(ds.train_x, labels, ec);
  if (!s.model_dir.empty()) ensemble.save(s.model_dir);

  std::map<std::string, std::vector<Vote>> votes;
  for (std::size_t i = 0; i < ds.test.size(); ++i) votes[ds.test[i].user].push_back(ensemble.predict(ds.test_x.row(i)));

  std::vector<AgreementRecord> records;
  std::vector<BinnedRecord> binned;
  std::vector<std::pair<std::size_t, UserEntropy>> entropies;
  for (const auto& [user, user_votes] : votes) {
    const auto uc = classify_user(user_votes, ensemble.categories());
    UserResult u{user, lp.category[*g.index_of(user)], uc.category, user_votes.size(), user_entropy(uc.histogram)};
    records.push_back({u.cda, u.nlp});
    binned.push_back({records.back(), u.tweets});
    entropies.emplace_back(u.tweets, u.entropy);
    r.users.push_back(std::move(u));
  }
  r.precision = agreement_precision(records, s.jackknife_blocks, r.seeds.jackknife);
  r.bins = binned_agreement(binned);
  r.entropy_curve = entropy_curve(entropies);
  for (double beta : s.betas) r.f_beta.emplace_back(beta, f_beta(r.precision.value, r.coverage, beta));
  return r;
}

std::map<std::string, AgreementRecord> agreement_by_user(const EvaluationReport& r) {
  std::map<std::string, AgreementRecord> out;
  for (const auto& u : r.users) out[u.user] = {u.cda, u.nlp};
  return out;
}

IngestSummary cmd_ingest(const RunConfig& cfg, const std::string& out_dir) {
  require_file("edges", cfg.edges);
  const auto bag = load_edge_list_file(cfg.edges);
  if (bag.size() == 0) throw DataError(cfg.edges + ": edge list is empty");
  const Graph raw = to_undirected_max(bag);
  const Graph g = filter_min_degree(raw, cfg.min_degree);
  if (g.empty()) {
    throw DataError(cfg.edges + ": no node survives min_degree=" + std::to_string(cfg.min_degree));
  }

  IngestSummary s{raw.node_count(), raw.edge_count(), bag.size(), g.node_count(), g.edge_count(),
                  raw.node_count() - g.node_count()};
  const fs::path out(out_dir);
  std::ostringstream edges, nodes, removed;
  write_edge_list(edges, g);
  write_node_map(nodes, g);
  for (const auto& id : raw.node_ids()) {
    if (!g.index_of(id)) removed << id << '\n';
  }
  write_file_atomic((out / "graph.tsv").string(), edges.str());
  write_file_atomic((out / "nodes.csv").string(), nodes.str());
  write_file_atomic((out / "filtered_out.txt").string(), removed.str());
  write_json(out / "ingest.json", {{"edges_path", cfg.edges},
                                   {"min_degree", cfg.min_degree},
                                   {"directed_entries", s.directed_entries},
                                   {"raw_nodes", s.raw_nodes},
                                   {"raw_edges", s.raw_edges},
                                   {"nodes", s.nodes},
                                   {"edges", s.edges},
                                   {"removed", s.removed}});
  return s;
}

std::vector<DetectEntry> cmd_detect(const RunConfig& cfg, const std::string& out_dir) {
  if (cfg.algorithms.empty()) throw ConfigError("config key 'algorithms' is required");
  const fs::path out(out_dir);
  const auto in = load_ingested(out);

  std::vector<DetectEntry> entries;
  for (const auto& spec : cfg.algorithms) {
    for (const auto& param : parameters_of(spec)) {
      DetectEntry e;
      e.label = spec.label;
      e.algorithm = spec.algorithm;
      e.parameter = param;
      e.seed = spec.seed;
      e.tag = entry_tag(spec.label, param);
      e.partition_path = "partitions/" + e.tag + ".partition.csv";
      e.labels_path = "partitions/" + e.tag + ".labels.csv";
      entries.push_back(std::move(e));
    }
  }

  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    auto& e = entries[i];
    const auto result = run_detection(in.graph, e.algorithm, e.parameter.value_or(0.0), e.seed);
    e.m = result.partition.module_count();
    e.objective = result.objective;
    const auto lp = truncate_partition(result.partition, cfg.n_cut);
    std::ostringstream part, labels;
    write_partition(part, in.graph, result.partition);
    write_labeled_partition(labels, in.graph, lp, algorithm_name(e.algorithm), e.parameter.value_or(0.0));
    write_file_atomic((out / e.partition_path).string(), part.str());
    write_file_atomic((out / e.labels_path).string(), labels.str());
  });

  Json manifest = Json::array();
  for (const auto& e : entries) {
    manifest.push_back({{"tag", e.tag},
                        {"label", e.label},
                        {"algorithm", algorithm_name(e.algorithm)},
                        {"parameter", optional_number(e.parameter)},
                        {"seed", e.seed},
                        {"partition_path", e.partition_path},
                        {"labels_path", e.labels_path},
                        {"N_cut", cfg.n_cut},
                        {"m", e.m},
                        {"Q_or_L", e.objective}});
  }
  write_json(out / "manifest.json", manifest);
  return entries;
}

std::vector<DetectEntry> read_detect_manifest(const std::string& out_dir) {
  const auto path = fs::path(out_dir) / "manifest.json";
  if (!fs::exists(path)) throw ConfigError("no detection manifest under " + out_dir + "; run 'detect' first");
  std::vector<DetectEntry> entries;
  try {
    for (const auto& j : nlohmann::json::parse(read_file(path.string()))) {
      DetectEntry e;
      e.tag = j.at("tag").get<std::string>();
      e.label = j.at("label").get<std::string>();
      e.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
      if (!j.at("parameter").is_null()) e.parameter = j.at("parameter").get<double>();
      e.seed = j.at("seed").get<std::uint64_t>();
      e.partition_path = j.at("partition_path").get<std::string>();
      e.labels_path = j.at("labels_path").get<std::string>();
      e.m = j.at("m").get<std::size_t>();
      e.objective = j.at("Q_or_L").get<double>();
      entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(path.string() + ": malformed manifest: " + ex.what());
  }
  return entries;
}

std::vector<EvaluationReport> cmd_evaluate(const RunConfig& cfg, const std::string& out_dir) {
  require_file("tweets", cfg.tweets);
  if (cfg.embeddings.rfind("builtin-hash:", 0) != 0) require_file("embeddings", cfg.embeddings);
  const fs::path out(out_dir);
  const auto entries = read_detect_manifest(out_dir);
  const auto in = load_ingested(out);
  const auto corpus = load_corpus_file(cfg.tweets);
  const auto embedder = make_embedder(cfg.embeddings);
  const auto scores = eigencentrality(in.graph, cfg.centrality_tol, cfg.centrality_max_iter);
  const auto split = quantile_split(scores, cfg.anchor_quantile);
  std::ostringstream anchors;
  anchors << "node_id,centrality,anchor\n";
  {
    std::vector<char> is_anchor(in.graph.node_count(), 0);
    for (NodeIndex a : split.anchors) is_anchor[a] = 1;
    for (NodeIndex i = 0; i < in.graph.node_count(); ++i) {
      anchors << in.graph.node_id(i) << ',' << format_number(scores.score[i]) << ',' << int(is_anchor[i]) << '\n';
    }
  }
  write_file_atomic((out / "anchors.csv").string(), anchors.str());
  const EvaluationInputs inputs{&in.graph, &corpus, embedder.get(), &split, &in.external};

  std::vector<EvaluationReport> reports(entries.size());
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    std::ifstream part((out / e.partition_path).string());
    if (!part) throw DataError("cannot open " + (out / e.partition_path).string());
    const auto p = read_partition(part, in.graph, (out / e.partition_path).string());

    EvaluationSettings s;
    s.n_cut = cfg.n_cut;
    s.n_train = cfg.n_train;
    s.n_test = cfg.n_test;
    s.betas = cfg.betas;
    s.jackknife_blocks = cfg.jackknife_blocks;
    s.ensemble = cfg.ensemble;
    s.seed = e.seed;
    s.model_dir = (out / "models" / e.tag).string();
    EvaluationReport r;
    try {
      r = evaluate_partition(inputs, p, s);
    } catch (const DataError& ex) {
      r = EvaluationReport{};
      r.n_cut = cfg.n_cut;
      r.m = p.module_count();
      r.coverage = coverage(truncate_partition(p, cfg.n_cut));
      r.bins = binned_agreement({});
      for (double beta : cfg.betas) r.f_beta.emplace_back(beta, 0.0);
      r.error = ex.what();
    }
    r.tag = e.tag;
    r.label = e.label;
    r.algorithm = algorithm_name(e.algorithm);
    r.parameter = e.parameter;
    r.seeds.detect = e.seed;
    write_json(out / "reports" / (e.tag + ".json"), r.to_json());
    reports[i] = std::move(r);
  });

  Json mis = Json::array();
  for (std::size_t a = 0; a < reports.size(); ++a) {
    for (std::size_t b = a + 1; b < reports.size(); ++b) {
      if (!reports[a].classified || !reports[b].classified) continue;
      auto ua = agreement_by_user(reports[a]);
      auto ub = agreement_by_user(reports[b]);
      std::erase_if(ua, [&](const auto& kv) { return !ub.count(kv.first); });
      std::erase_if(ub, [&](const auto& kv) { return !ua.count(kv.first); });
      Json j = {{"a", reports[a].tag}, {"b", reports[b].tag}, {"shared_users", ua.size()}};
      if (!ua.empty()) {
        const auto o = misassigned_intersection(ua, ub);
        j["wrong_a"] = o.wrong_a;
        j["wrong_b"] = o.wrong_b;
        j["both"] = o.both;
        j["jaccard"] = o.jaccard;
        j["overlap_min"] = o.overlap_min;
      }
      mis.push_back(std::move(j));
    }
  }
  write_json(out / "misassignment.json", mis);

  std::ostringstream summary, bins, curve;
  summary << "tag,algorithm,parameter,m,precision,precision_err,coverage";
  for (double beta : cfg.betas) summary << ",f_beta_" << format_number(beta);
  summary << '\n';
  bins << "tag,algorithm,parameter,bin_lo,bin_hi,users,agree,fraction,poisson_err\n";
  curve << "tag,algorithm,parameter,tweets,users,mean_entropy,mean_distinct\n";
  for (const auto& r : reports) {
    const std::string head = r.tag + ',' + r.algorithm + ',' + csv_number(r.parameter);
    const auto when = [&](double v) { return r.classified ? format_number(v) : std::string(); };
    summary << head << ',' << r.m << ',' << when(r.precision.value) << ',' << when(r.precision.err) << ','
            << format_number(r.coverage);
    for (const auto& [beta, value] : r.f_beta) summary << ',' << when(value);
    summary << '\n';
    for (const auto& b : r.bins) {
      bins << head << ',' << b.lo << ',' << (b.hi == 0 ? std::string() : std::to_string(b.hi)) << ',' << b.users
           << ',' << b.agree << ',' << csv_number(b.fraction) << ',' << csv_number(b.poisson_err) << '\n';
    }
    for (const auto& p : r.entropy_curve) {
      curve << head << ',' << p.tweets << ',' << p.users << ',' << format_number(p.mean_entropy) << ','
            << format_number(p.mean_distinct) << '\n';
    }
  }
  write_file_atomic((out / "plots" / "precision_coverage.csv").string(), summary.str());
  write_file_atomic((out / "plots" / "agreement_bins.csv").string(), bins.str());
  write_file_atomic((out / "plots" / "entropy_curve.csv").string(), curve.str());

  std::string failures;
  for (const auto& r : reports) {
    if (r.error) failures += "\n  " + r.tag + ": " + *r.error;
  }
  if (!failures.empty()) throw DataError("evaluation failed for some entries (other reports were written):" + failures);
  return reports;
}

std::vector<Dendrogram> cmd_sweep(const RunConfig& cfg, const std::string& out_dir) {
  const fs::path out(out_dir);
  const auto in = load_ingested(out);
  std::vector<Dendrogram> out_trees;
  std::ostringstream csv;
  csv << "label,algorithm,parameter,modules,categories,tracked_categories,coverage\n";
  for (const auto& spec : cfg.algorithms) {
    if (!algorithm_has_parameter(spec.algorithm)) continue;
    if (spec.grid.empty()) throw ConfigError("'" + spec.label + ".grid' is missing");
    SweepRequest req;
    req.algorithm = spec.algorithm;
    req.grid = spec.grid;
    req.tracked = cfg.tracked;
    req.n_cut = cfg.n_cut;
    req.seed = spec.seed;
    req.jobs = cfg.jobs;
    auto d = dendrogram_sweep(in.graph, req);
    write_json(out / ("dendrogram_" + spec.label + ".json"), dendrogram_json(d));
    for (std::size_t l = 0; l < d.levels.size(); ++l) {
      const auto& level = d.levels[l];
      double covered = 0.0;
      std::size_t categories = 0;
      for (const auto& c : level.categories) {
        if (c.id == d.n_cut) continue;
        covered += c.share;
        ++categories;
      }
      csv << spec.label << ',' << d.algorithm << ',' << format_number(level.parameter) << ',' << level.modules << ','
          << categories << ',' << d.tracked_category_count(l) << ',' << format_number(covered) << '\n';
    }
    out_trees.push_back(std::move(d));
  }
  if (out_trees.empty()) throw ConfigError("sweep: no algorithm with a parameter grid is configured");
  write_file_atomic((out / "plots" / "sweep.csv").string(), csv.str());
  return out_trees;
}

SynthData cmd_synth(const RunConfig& cfg, const std::string& out_dir) {
  auto data = generate_synthetic(cfg.synth);
  write_synthetic(out_dir, cfg.synth, data);
  return data;
}

}  // namespace cdeval
