// Copyright 2026 The smellgen Authors
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

// smellgen: command-line driver for the dataset pipeline.

#include <signal.h>

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "smellgen/pipeline.h"
#include "smellgen/review.h"
#include "smellgen/review_server.h"

namespace {

using namespace smellgen;  // NOLINT
namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::string work_dir;
  std::string dataset_dir;
  std::optional<uint64_t> seed;
  bool balance = false;
  bool no_balance = false;
  std::optional<int> lm_min, lm_max, fe_min, fe_max;
  std::optional<std::string> host;
  std::optional<int> port;
  std::optional<int> lease_minutes;
  bool json = false;
  bool verbose = false;
  bool quiet = false;
};

PipelineConfig Resolve(const Flags& f) {
  if (f.config.empty()) throw ConfigError("--config is required");
  PipelineConfig c = LoadConfig(f.config);
  if (!f.work_dir.empty()) c.work_dir = f.work_dir;
  if (f.seed) c.seed = f.seed;
  if (f.balance) c.balance = true;
  if (f.no_balance) c.balance = false;
  if (f.lm_min) c.thresholds.lm_min = *f.lm_min;
  if (f.lm_max) c.thresholds.lm_max = *f.lm_max;
  if (f.fe_min) c.thresholds.fe_min = *f.fe_min;
  if (f.fe_max) c.thresholds.fe_max = *f.fe_max;
  if (f.host) c.review.host = *f.host;
  if (f.port) c.review.port = *f.port;
  if (f.lease_minutes) c.review.lease_minutes = *f.lease_minutes;
  c.Validate();
  return c;
}

fs::path DatasetDir(const Flags& f) {
  if (!f.dataset_dir.empty()) return f.dataset_dir;
  return WorkPaths{Resolve(f).work_dir}.DatasetDir();
}

int Validate(const fs::path& dir) {
  ValidationReport report = ValidateDatasetDir(dir);
  for (const std::string& v : report.violations) {
    std::cout << "violation: " << v << "\n";
  }
  if (!report.ok()) {
    std::cout << fmt::format("INVALID {} ({} violations)\n", dir.string(),
                             report.violations.size());
    return kExitInvalid;
  }
  std::cout << fmt::format("OK {} records in {}\n", report.recount.total,
                           dir.string());
  return kExitOk;
}

int Stats(const fs::path& dir, bool as_json) {
  fs::path data = dir / "dataset.jsonl";
  if (!fs::exists(data)) throw MissingInputError(data);
  DatasetStats st = compute_stats(read_records(data));
  if (as_json) {
    std::cout << StatsToJson(st).dump(2) << "\n";
  } else {
    std::cout << FormatStats(st);
  }
  return kExitOk;
}

int Serve(const PipelineConfig& c) {
  WorkPaths work{c.work_dir};
  if (!fs::exists(work.Store())) throw MissingInputError(work.Store());
  ReviewOptions opts;
  opts.lease_timeout = std::chrono::minutes(c.review.lease_minutes);
  ReviewStore store(read_records(work.Store()), work.Log(), opts);
  ServerOptions so;
  so.export_dir = work.DatasetDir();
  so.meta.thresholds = c.thresholds;
  so.meta.advisor = HeuristicAdvisor().Name();
  if (c.balance) so.meta.balance_seed = c.seed;
  ReviewServer server(store, so);
  int port = server.Bind(c.review.host, c.review.port);
  if (port < 0) {
    spdlog::error("cannot bind {}:{}", c.review.host, c.review.port);
    return kExitFailure;
  }

  // Wait for SIGINT/SIGTERM on this thread while another one serves.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
  std::thread serving([&server] { server.Serve(); });
  server.WaitUntilReady();
  std::cout << fmt::format("review service on http://{}:{}/api (log {})\n",
                           c.review.host, port, work.Log().string())
            << std::flush;
  int sig = 0;
  sigwait(&stop_signals, &sig);
  spdlog::info("signal {}, stopping", sig);
  server.Stop();
  serving.join();
  return kExitOk;
}

void PrintGroup(const GroupSummary& g) {
  std::cout << fmt::format("auto {}  review {}  discarded {}\n", g.auto_group,
                           g.manual_group, g.discarded);
  for (Smell s : {Smell::kLongMethod, Smell::kLargeClass, Smell::kFeatureEnvy}) {
    auto get = [s](const std::map<Smell, int>& m) {
      auto it = m.find(s);
      return it == m.end() ? 0 : it->second;
    };
    std::cout << fmt::format("  {:<13} auto-positive {:>5}  review {:>5}\n",
                             ToString(s), get(g.auto_positive), get(g.manual));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-automatic code smell dataset generation"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("-c,--config", f.config, "pipeline config file (YAML)");
  app.add_option("-w,--work-dir", f.work_dir, "override the config's work_dir");
  app.add_flag("-v,--verbose", f.verbose, "debug logging");
  app.add_flag("-q,--quiet", f.quiet, "warnings and errors only");

  auto* ingest = app.add_subcommand("ingest", "parse the corpora, snapshot sources");
  auto* generate = app.add_subcommand("generate", "inject smells, collect originals");
  auto* group = app.add_subcommand("group", "route candidates by thresholds");
  auto* exp = app.add_subcommand("export", "write the labeled dataset");
  auto* stats = app.add_subcommand("stats", "count a dataset by smell, label, split");
  auto* validate = app.add_subcommand("validate", "check dataset invariants");
  auto* serve = app.add_subcommand("serve", "run the review service");
  auto* run = app.add_subcommand("run", "ingest, generate, group, export, validate");

  for (CLI::App* sub : {group, run}) {
    sub->add_option("--lm-min", f.lm_min, "long-method LOC minimum");
    sub->add_option("--lm-max", f.lm_max, "long-method LOC maximum");
    sub->add_option("--fe-min", f.fe_min, "feature-envy NFDI minimum");
    sub->add_option("--fe-max", f.fe_max, "feature-envy NFDI maximum");
  }
  for (CLI::App* sub : {exp, run, serve}) {
    sub->add_option("--seed", f.seed, "balance seed");
    sub->add_flag("--balance", f.balance, "down-sample training negatives");
    sub->add_flag("--no-balance", f.no_balance, "keep every negative");
  }
  for (CLI::App* sub : {stats, validate}) {
    sub->add_option("-d,--dataset", f.dataset_dir,
                    "dataset directory (default: <work_dir>/dataset)");
  }
  stats->add_flag("--json", f.json, "print JSON");
  serve->add_option("--host", f.host, "bind address");
  serve->add_option("--port", f.port, "port (0 picks a free one)");
  serve->add_option("--lease-minutes", f.lease_minutes, "review lease timeout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  spdlog::set_level(f.verbose ? spdlog::level::debug
                    : f.quiet ? spdlog::level::warn
                              : spdlog::level::info);

  try {
    if (*stats) return Stats(DatasetDir(f), f.json);
    if (*validate) return Validate(DatasetDir(f));
    PipelineConfig c = Resolve(f);
    if (*ingest) {
      IngestSummary s = RunIngest(c);
      std::cout << fmt::format("ingested {} projects, {} files, {} classes\n",
                               s.projects, s.files, s.classes);
    } else if (*generate) {
      GenerateSummary s = RunGenerate(c);
      std::cout << fmt::format("{} generated, {} originals, {} discarded\n",
                               s.generated, s.originals, s.discarded);
    } else if (*group) {
      PrintGroup(RunGroup(c));
    } else if (*exp) {
      ExportSummary s = RunExport(c);
      std::cout << FormatStats(s.stats);
    } else if (*serve) {
      return Serve(c);
    } else if (*run) {
      RunIngest(c);
      RunGenerate(c);
      PrintGroup(RunGroup(c));
      std::cout << FormatStats(RunExport(c).stats);
      return Validate(WorkPaths{c.work_dir}.DatasetDir());
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const MissingInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const IngestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const ReviewError& e) {
    std::cerr << "annotation log: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
