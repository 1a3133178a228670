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

// Command-line driver: ingest, detect, evaluate, sweep and synth.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdeval/error.hpp"
#include "cdeval/io_util.hpp"
#include "cdeval/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kData = 3, kInternal = 4 };

struct CommonOptions {
  std::string config;
  std::string out = ".";
  std::optional<long long> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "flat key = value configuration file");
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  cmd->add_option("--seed", o.seed, "overrides the 'seed' key");
  cmd->add_option("--set", o.overrides, "key=value override, repeatable");
}

cdeval::RunConfig resolve_config(const CommonOptions& o) {
  auto overrides = o.overrides;
  if (o.seed) {
    if (*o.seed < 0) throw cdeval::ConfigError("--seed must be >= 0");
    overrides.push_back("seed=" + std::to_string(*o.seed));
  }
  return cdeval::load_run_config(o.config, overrides);
}

std::string parameter_text(const std::optional<double>& p) { return p ? cdeval::format_number(*p) : "-"; }

int run_ingest(const CommonOptions& o) {
  const auto s = cdeval::cmd_ingest(resolve_config(o), o.out);
  std::printf("raw: %zu nodes, %zu edges (%zu directed entries)\n", s.raw_nodes, s.raw_edges, s.directed_entries);
  std::printf("filtered: %zu nodes, %zu edges (%zu nodes removed)\n", s.nodes, s.edges, s.removed);
  return kOk;
}

int run_detect(const CommonOptions& o) {
  for (const auto& e : cdeval::cmd_detect(resolve_config(o), o.out)) {
    std::printf("%-24s m=%-6zu objective=%.6f  %s\n", e.tag.c_str(), e.m, e.objective, e.labels_path.c_str());
  }
  return kOk;
}

int run_evaluate(const CommonOptions& o) {
  for (const auto& r : cdeval::cmd_evaluate(resolve_config(o), o.out)) {
    for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s: %s\n", r.tag.c_str(), w.c_str());
    if (!r.classified) {
      std::printf("%-24s m=%-6zu not classified  R=%.4f\n", r.tag.c_str(), r.m, r.coverage);
      continue;
    }
    std::printf("%-24s m=%-6zu P=%.4f +- %.4f  R=%.4f  users=%zu\n", r.tag.c_str(), r.m, r.precision.value,
                r.precision.err, r.coverage, r.precision.users);
  }
  return kOk;
}

int run_sweep(const CommonOptions& o) {
  for (const auto& d : cdeval::cmd_sweep(resolve_config(o), o.out)) {
    for (std::size_t l = 0; l < d.levels.size(); ++l) {
      std::printf("%-14s parameter=%-8s modules=%-6zu tracked categories=%zu\n", d.algorithm.c_str(),
                  parameter_text(d.levels[l].parameter).c_str(), d.levels[l].modules, d.tracked_category_count(l));
    }
  }
  return kOk;
}

int run_synth(const CommonOptions& o) {
  const auto data = cdeval::cmd_synth(resolve_config(o), o.out);
  std::printf("%zu users, %zu directed edge entries, %zu messages\n", data.users.size(), data.edges.size(),
              data.corpus.size());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection evaluation against text classification"};
  app.require_subcommand(1);
  CommonOptions opts;
  int (*action)(const CommonOptions&) = nullptr;
  const std::pair<const char*, int (*)(const CommonOptions&)> commands[] = {
      {"ingest", run_ingest}, {"detect", run_detect}, {"evaluate", run_evaluate},
      {"sweep", run_sweep},   {"synth", run_synth},
  };
  const char* help[] = {
      "symmetrize and degree-filter the edge list",
      "run every configured algorithm and parameter",
      "train the text ensemble per partition and score agreement",
      "follow categories across each parameter grid",
      "write a planted-partition benchmark",
  };
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* cmd = app.add_subcommand(commands[i].first, help[i]);
    add_common(cmd, opts);
    const auto fn = commands[i].second;
    cmd->callback([&action, fn] { action = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    return action(opts);
  } catch (const cdeval::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const cdeval::InvalidArgument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kConfig;
  } catch (const cdeval::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternal;
  }
}
