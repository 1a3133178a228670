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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cdeval/cda.hpp"
#include "cdeval/centrality.hpp"
#include "cdeval/config.hpp"
#include "cdeval/dendrogram.hpp"
#include "cdeval/embedding.hpp"
#include "cdeval/error.hpp"
#include "cdeval/graph.hpp"
#include "cdeval/metrics.hpp"
#include "cdeval/partition.hpp"
#include "cdeval/pipeline.hpp"
#include "cdeval/quality.hpp"
#include "cdeval/synth.hpp"

namespace py = pybind11;
using namespace cdeval;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
template <typename J>
py::object to_py(const J& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Graph graph_from_tuples(const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  DirectedEdgeBag bag;
  for (const auto& [u, v, w] : edges) bag.add(u, v, w);
  return to_undirected_max(bag);
}

Partition partition_of(const Graph& g, const std::vector<std::uint64_t>& labels) {
  if (labels.size() != g.node_count()) {
    throw InvalidArgument("partition has " + std::to_string(labels.size()) + " labels for " +
                          std::to_string(g.node_count()) + " nodes");
  }
  return Partition::from_labels(labels);
}

std::vector<AgreementRecord> records_of(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<AgreementRecord> out;
  out.reserve(pairs.size());
  for (const auto& [c, n] : pairs) out.push_back({c, n});
  return out;
}

py::dict bin_dict(const AgreementBin& b) {
  py::dict d;
  d["lo"] = b.lo;
  d["hi"] = b.hi == 0 ? py::object(py::none()) : py::object(py::int_(b.hi));
  d["users"] = b.users;
  d["agree"] = b.agree;
  d["fraction"] = b.fraction;
  d["poisson_err"] = b.poisson_err;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Community detection scored against text classification.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  auto data = py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", data.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges", &graph_from_tuples, py::arg("edges"),
                  "Symmetrize directed (src, dst, weight) triples with the max rule.")
      .def_static("from_file", [](const std::string& path) {
        return to_undirected_max(load_edge_list_file(path));
      }, py::arg("path"))
      .def_static("load", &load_graph, py::arg("edges_path"), py::arg("node_map_path"))
      .def("filter_min_degree", &filter_min_degree, py::arg("k"))
      .def("largest_component", &largest_component)
      .def("is_connected", &is_connected)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("node_ids", &Graph::node_ids)
      .def_property_readonly("total_weight", &Graph::total_weight)
      .def("index_of", &Graph::index_of, py::arg("node_id"))
      .def("degree", &Graph::degree)
      .def("strength", &Graph::strength)
      .def("edges", [](const Graph& g) {
        std::vector<std::tuple<std::string, std::string, double>> out;
        for (const Edge& e : g.edges()) out.emplace_back(g.node_id(e.u), g.node_id(e.v), e.weight);
        return out;
      })
      .def("__len__", &Graph::node_count)
      .def("__repr__", [](const Graph& g) {
        return "<Graph nodes=" + std::to_string(g.node_count()) + " edges=" +
               std::to_string(g.edge_count()) + ">";
      });

  m.def("modularity", [](const Graph& g, const std::vector<std::uint64_t>& labels, double scale) {
    return modularity(g, partition_of(g, labels), scale);
  }, py::arg("graph"), py::arg("labels"), py::arg("scale") = 1.0);

  m.def("map_equation", [](const Graph& g, const std::vector<std::uint64_t>& labels, bool strict) {
    const MapEquationTerms t = map_equation(g, partition_of(g, labels), strict);
    py::dict d;
    d["codelength"] = t.codelength;
    d["q_switch"] = t.q_switch;
    d["index_entropy"] = t.index_entropy;
    d["module_exit"] = t.module_exit;
    d["module_flow"] = t.module_flow;
    d["module_entropy"] = t.module_entropy;
    return d;
  }, py::arg("graph"), py::arg("labels"), py::arg("strict") = false);

  m.def("edge_fscore", [](const Graph& g, const std::vector<std::uint64_t>& labels, double s) {
    const EdgeFScore f = edge_fscore(g, partition_of(g, labels), s);
    return py::make_tuple(f.precision, f.recall, f.f);
  }, py::arg("graph"), py::arg("labels"), py::arg("s"), "Returns (precision, recall, F_s).");

  m.def("eigencentrality", [](const Graph& g, double tol, std::size_t max_iter) {
    const CentralityScores c = eigencentrality(g, tol, max_iter);
    return py::make_tuple(c.score, c.converged, c.iterations);
  }, py::arg("graph"), py::arg("tol") = 1e-12, py::arg("max_iter") = 10000,
     "Returns (scores, converged, iterations).");

  m.def("quantile_split", [](const std::vector<double>& scores, double q) {
    CentralityScores c;
    c.score = scores;
    const AnchorSplit s = quantile_split(c, q);
    return py::make_tuple(s.anchors, s.tested, s.threshold);
  }, py::arg("scores"), py::arg("q") = 0.75, "Returns (anchors, tested, threshold).");

  m.def("detect", [](const Graph& g, const std::string& algorithm, double parameter,
                     std::uint64_t seed) {
    DetectionResult r;
    {
      py::gil_scoped_release release;
      r = run_detection(g, parse_algorithm(algorithm), parameter, seed);
    }
    return py::make_tuple(r.partition.assignment(), r.objective);
  }, py::arg("graph"), py::arg("algorithm"), py::arg("parameter") = 1.0, py::arg("seed") = 1,
     "Returns (community per node, objective). Algorithms: louvain, louvain_gamma, bec, infomap.");

  m.def("truncate_partition", [](const std::vector<std::uint64_t>& labels, int n_cut) {
    const LabeledPartition lp = truncate_partition(Partition::from_labels(labels), n_cut);
    return py::make_tuple(lp.category, lp.category_size);
  }, py::arg("labels"), py::arg("n_cut"), "Returns (category per node, size per category).");

  m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
  m.def("hash_embed", [](const std::string& text, std::size_t dim) { return hash_embed(text, dim); },
        py::arg("text"), py::arg("dim") = 1024);

  m.def("f_beta", &f_beta, py::arg("p"), py::arg("r"), py::arg("beta"));
  m.def("user_entropy", [](const std::vector<int>& histogram) {
    const UserEntropy e = user_entropy(std::span<const int>(histogram));
    return py::make_tuple(e.bits, e.distinct);
  }, py::arg("histogram"), "Returns (bits, distinct categories).");

  m.def("agreement_precision", [](const std::vector<std::pair<int, int>>& pairs,
                                  std::size_t blocks, std::uint64_t seed) {
    const auto records = records_of(pairs);
    const Precision p = agreement_precision(records, blocks, seed);
    return py::make_tuple(p.value, p.err);
  }, py::arg("pairs"), py::arg("blocks") = 50, py::arg("seed") = 0,
     "pairs holds (cda, nlp) categories; returns (precision, jackknife error).");

  m.def("binned_agreement", [](const std::vector<std::tuple<int, int, std::size_t>>& rows) {
    std::vector<BinnedRecord> records;
    for (const auto& [c, n, t] : rows) records.push_back({{c, n}, t});
    py::list out;
    for (const AgreementBin& b : binned_agreement(records)) out.append(bin_dict(b));
    return out;
  }, py::arg("rows"), "rows holds (cda, nlp, tweets).");

  m.def("coverage", [](const std::vector<std::uint64_t>& labels, int n_cut) {
    return coverage(truncate_partition(Partition::from_labels(labels), n_cut));
  }, py::arg("labels"), py::arg("n_cut"));

  m.def("generate_synthetic", [](py::dict overrides) {
    RunConfig cfg;
    std::vector<std::string> sets;
    for (auto item : overrides) {
      sets.push_back("synth." + py::str(item.first).cast<std::string>() + "=" +
                     py::str(item.second).cast<std::string>());
    }
    const SynthConfig sc = parse_run_config("", ".", sets, "<python>").synth;
    const SynthData d = generate_synthetic(sc);
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (const auto& [key, w] : d.edges.entries()) edges.emplace_back(key.first, key.second, w);
    py::dict out;
    out["users"] = d.users;
    out["truth"] = d.truth;
    out["edges"] = edges;
    out["messages"] = d.corpus.size();
    return out;
  }, py::arg("overrides") = py::dict(),
     "Planted-partition benchmark; overrides use the synth.* config key names.");

  m.def("dendrogram", [](const Graph& g, const std::string& algorithm, std::vector<double> grid,
                         std::vector<std::string> tracked, int n_cut, std::uint64_t seed) {
    SweepRequest req;
    req.algorithm = parse_algorithm(algorithm);
    req.grid = std::move(grid);
    req.tracked = std::move(tracked);
    req.n_cut = n_cut;
    req.seed = seed;
    return to_py(dendrogram_json(dendrogram_sweep(g, req)));
  }, py::arg("graph"), py::arg("algorithm"), py::arg("grid"),
     py::arg("tracked") = std::vector<std::string>{}, py::arg("n_cut") = 5, py::arg("seed") = 1);

  m.def("load_config", [](const std::string& path, const std::vector<std::string>& overrides) {
    load_run_config(path, overrides);
  }, py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
     "Validate a config file; raises ConfigError.");

  auto command = [](auto fn) {
    return [fn](const std::string& config, const std::string& out,
                const std::vector<std::string>& overrides) {
      const RunConfig cfg = load_run_config(config, overrides);
      py::gil_scoped_release release;
      return fn(cfg, out);
    };
  };
  m.def("ingest", command([](const RunConfig& c, const std::string& o) {
    const IngestSummary s = cmd_ingest(c, o);
    return std::vector<std::size_t>{s.raw_nodes, s.raw_edges, s.nodes, s.edges, s.removed};
  }), py::arg("config"), py::arg("out") = ".", py::arg("overrides") = std::vector<std::string>{},
     "Returns [raw_nodes, raw_edges, nodes, edges, removed].");
  m.def("detect_all", command([](const RunConfig& c, const std::string& o) {
    std::vector<std::string> tags;
    for (const DetectEntry& e : cmd_detect(c, o)) tags.push_back(e.tag);
    return tags;
  }), py::arg("config"), py::arg("out") = ".", py::arg("overrides") = std::vector<std::string>{});
  m.def("evaluate", command([](const RunConfig& c, const std::string& o) {
    std::vector<std::string> reports;
    for (const EvaluationReport& r : cmd_evaluate(c, o)) reports.push_back(r.to_json().dump());
    return reports;
  }), py::arg("config"), py::arg("out") = ".", py::arg("overrides") = std::vector<std::string>{},
     "Returns one JSON report string per entry.");
  m.def("sweep", command([](const RunConfig& c, const std::string& o) {
    std::vector<std::string> out;
    for (const Dendrogram& d : cmd_sweep(c, o)) out.push_back(dendrogram_json(d).dump());
    return out;
  }), py::arg("config"), py::arg("out") = ".", py::arg("overrides") = std::vector<std::string>{});
  m.def("synth", command([](const RunConfig& c, const std::string& o) {
    return cmd_synth(c, o).users.size();
  }), py::arg("config"), py::arg("out") = ".", py::arg("overrides") = std::vector<std::string>{});
}
