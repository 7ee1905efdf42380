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

// Release acceptance runner. Prints one PASS or FAIL line per criterion,
// followed by indented detail lines for failures, and exits non-zero if any
// criterion fails.
//
//   acceptance [--keep] [--work DIR]

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "smellgen/dataset.h"
#include "smellgen/generators.h"
#include "smellgen/ingest.h"
#include "smellgen/pipeline.h"
#include "support/oracles.h"

namespace {

using namespace smellgen;  // NOLINT
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct CriterionResult {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

constexpr size_t kMaxDetails = 10;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

ProjectModel Load(const fs::path& root, const std::string& id) {
  CorpusConfig c;
  c.root_dirs = {root};
  c.project_id = id;
  return build_project_model(c);
}

fs::path Fixtures() { return SMELLGEN_FIXTURES; }
fs::path Corpus() { return SMELLGEN_CORPUS; }
fs::path CordovaSrc() { return Corpus() / "cordova-android" / "src"; }

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int Shell(const std::string& cmd, std::string* output) {
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return -1;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    output->append(buf.data(), n);
  }
  int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void WriteConfig(const fs::path& path, const fs::path& work, bool balance) {
  fs::create_directories(path.parent_path());
  std::ofstream(path) << "work_dir: " << work.string() << "\n"
                      << "seed: 20260416\n"
                      << "balance: " << (balance ? "true" : "false") << "\n"
                      << "corpora:\n"
                      << "  - project: cordova-android\n"
                      << "    roots: [" << CordovaSrc().string() << "]\n";
}

// --- 1, 2: fixture oracles -------------------------------------------------

CriterionResult MetricOracle() {
  auto start = Clock::now();
  ProjectModel m = Load(Fixtures() / "oracle", "oracle");
  int checked = 0;
  std::vector<std::string> diffs = oracle::CompareMetricAnswers(
      m, Fixtures() / "oracle" / "expected_metrics.json", &checked);
  double secs = Seconds(start);
  CriterionResult v;
  v.details = diffs;
  if (secs >= 5.0) v.details.push_back(fmt::format("took {:.2f}s", secs));
  v.pass = v.details.empty() && checked > 0;
  v.summary = fmt::format("{} metric values over {} classes, {} mismatches, {:.2f}s",
                          checked, m.classes().size(), diffs.size(), secs);
  return v;
}

CriterionResult PatternOracle() {
  ProjectModel m = Load(Fixtures() / "oracle", "oracle");
  int checked = 0;
  std::vector<std::string> diffs = oracle::ComparePatternAnswers(
      m, Fixtures() / "oracle" / "expected_patterns.txt", &checked);
  CriterionResult v;
  v.details = diffs;
  v.pass = diffs.empty() && checked > 0;
  v.summary = fmt::format("{} invocation sites, {} disagreements", checked,
                          diffs.size());
  return v;
}

// --- 3, 4: generators --------------------------------------------------------

struct Corpora {
  ProjectModel shop;
  ProjectModel cordova;
};

CriterionResult WellFormedness(const Corpora& c) {
  CriterionResult v;
  std::map<Smell, int> counts;
  int total = 0;
  for (const ProjectModel* m : {&c.shop, &c.cordova}) {
    for (const GeneratedSample& s : GenerateSamples(*m).samples) {
      ++total;
      ++counts[s.smell];
      for (std::string& p : oracle::WellFormednessProblems(*m, s)) {
        v.details.push_back(std::move(p));
      }
    }
  }
  v.pass = v.details.empty() && counts.size() == 3;
  if (counts.size() != 3) v.details.push_back("some smell produced no sample");
  v.summary = fmt::format(
      "{} samples (LM {}, LC {}, FE {}) re-parsed and swept, {} problems", total,
      counts[Smell::kLongMethod], counts[Smell::kLargeClass],
      counts[Smell::kFeatureEnvy], v.details.size());
  return v;
}

CriterionResult InverseRefactoring(const Corpora& c) {
  CriterionResult v;
  int lm = 0;
  int lc = 0;
  for (const ProjectModel* m : {&c.shop, &c.cordova}) {
    for (const MergeCandidateLM& cand : find_merge_candidates_long_method(*m)) {
      Outcome o = merge_methods(cand, *m);
      if (!o.sample) continue;
      ++lm;
      std::string bad = CheckExtractInverse(*o.sample, cand, *m);
      if (!bad.empty()) v.details.push_back(CandidateKey(cand) + ": " + bad);
    }
    for (const MergeCandidateLC& cand : find_merge_candidates_large_class(*m)) {
      Outcome o = merge_classes(cand, *m);
      if (!o.sample) continue;
      ++lc;
      std::string bad = CheckMembersInverse(*o.sample, cand, *m);
      if (!bad.empty()) v.details.push_back(CandidateKey(cand) + ": " + bad);
    }
  }
  v.pass = v.details.empty() && lm > 0 && lc > 0;
  v.summary = fmt::format("{} long-method and {} large-class samples inverted, "
                          "{} failures",
                          lm, lc, v.details.size());
  return v;
}

// --- 5: grouping -------------------------------------------------------------

CriterionResult GroupingOracle() {
  constexpr int kDraws = 10000;
  int cells = 0;
  CriterionResult v;
  v.details = oracle::CheckGroupingCells(&cells);
  std::vector<std::string> random = oracle::CheckGroupingRandom(kDraws, 20260416);
  v.details.insert(v.details.end(), random.begin(), random.end());
  v.pass = v.details.empty() && cells == 21;
  v.summary = fmt::format("{} exhaustive cells with one rule each, {} random "
                          "candidates, {} disagreements",
                          cells, kDraws, v.details.size());
  return v;
}

// --- 6..9: pipeline runs -----------------------------------------------------

struct EndToEnd {
  int exit_code = -1;
  double seconds = 0;
  std::string output;
  fs::path work;
};

EndToEnd RunCli(const fs::path& root, const std::string& name, bool balance) {
  EndToEnd r;
  r.work = root / name;
  fs::remove_all(r.work);
  fs::path config = root / (name + ".yaml");
  WriteConfig(config, r.work, balance);
  auto start = Clock::now();
  r.exit_code = Shell(fmt::format("{} -q -c {} run", SMELLGEN_CLI, config.string()),
                      &r.output);
  r.seconds = Seconds(start);
  return r;
}

CriterionResult ScaledEndToEnd(const EndToEnd& run) {
  CriterionResult v;
  if (run.exit_code != 0) {
    v.summary = fmt::format("smellgen run exited {}", run.exit_code);
    std::istringstream lines(run.output);
    for (std::string line; std::getline(lines, line);) v.details.push_back(line);
    return v;
  }
  std::map<Smell, int> auto_positive;
  std::map<Smell, int> manual;
  for (const SampleRecord& r : read_records(run.work / "store.jsonl")) {
    if (r.group == Group::kAuto && r.label == smellgen::Verdict::kPositive) {
      ++auto_positive[r.smell];
    }
    if (r.group == Group::kManual) ++manual[r.smell];
  }
  for (Smell s : {Smell::kLongMethod, Smell::kLargeClass, Smell::kFeatureEnvy}) {
    if (auto_positive[s] == 0) {
      v.details.push_back(fmt::format("no auto-group positive for {}", ToString(s)));
    }
    if (manual[s] == 0) {
      v.details.push_back(fmt::format("no review-group sample for {}", ToString(s)));
    }
  }
  ValidationReport report = ValidateDatasetDir(run.work / "dataset");
  for (const std::string& s : report.violations) v.details.push_back(s);
  if (run.seconds >= 300) {
    v.details.push_back(fmt::format("took {:.1f}s", run.seconds));
  }
  v.pass = v.details.empty();
  v.summary = fmt::format(
      "cordova-android in {:.1f}s; auto positives LM {} LC {} FE {}; review "
      "LM {} LC {} FE {}; validate {}",
      run.seconds, auto_positive[Smell::kLongMethod],
      auto_positive[Smell::kLargeClass], auto_positive[Smell::kFeatureEnvy],
      manual[Smell::kLongMethod], manual[Smell::kLargeClass],
      manual[Smell::kFeatureEnvy], report.ok() ? "ok" : "failed");
  return v;
}

// Two projects carved out of the same corpus so that both splits are
// populated, exported once with and once without balancing.
struct SplitExports {
  std::vector<SampleRecord> unbalanced;
  std::vector<SampleRecord> balanced;
  std::string error;
};

SplitExports ExportBothWays(const fs::path& root) {
  SplitExports out;
  try {
    PipelineConfig c;
    CorpusConfig train;
    train.project_id = "cordova-core";
    train.root_dirs = {CordovaSrc()};
    train.exclude_globs = {"**/engine/**"};
    train.role = Split::kTrain;
    CorpusConfig eval;
    eval.project_id = "cordova-engine";
    eval.root_dirs = {CordovaSrc() / "org" / "apache" / "cordova" / "engine"};
    eval.role = Split::kEval;
    c.corpora = {train, eval};
    c.work_dir = root / "splits";
    c.seed = 11;
    fs::remove_all(c.work_dir);
    RunIngest(c);
    RunGenerate(c);
    RunGroup(c);
    RunExport(c);
    out.unbalanced = read_records(WorkPaths{c.work_dir}.Dataset());
    c.balance = true;
    RunExport(c);
    out.balanced = read_records(WorkPaths{c.work_dir}.Dataset());
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

CriterionResult ThresholdConformance(const std::vector<fs::path>& datasets,
                             const SplitExports& splits) {
  CriterionResult v;
  size_t checked = 0;
  auto check = [&](const std::vector<SampleRecord>& records) {
    for (const SampleRecord& r : records) checked += r.group == Group::kAuto;
    for (std::string& s : oracle::ThresholdViolations(records)) {
      v.details.push_back(std::move(s));
    }
  };
  for (const fs::path& d : datasets) {
    if (!fs::exists(d)) {
      v.details.push_back("missing " + d.string());
      continue;
    }
    check(read_records(d));
  }
  check(splits.unbalanced);
  check(splits.balanced);
  if (!splits.error.empty()) v.details.push_back(splits.error);
  v.pass = v.details.empty() && checked > 0;
  v.summary = fmt::format("{} auto-labeled records across {} exports, {} "
                          "violations",
                          checked, datasets.size() + 2, v.details.size());
  return v;
}

CriterionResult BalanceProperty(const SplitExports& s) {
  CriterionResult v;
  if (!s.error.empty()) {
    v.summary = "pipeline failed";
    v.details.push_back(s.error);
    return v;
  }
  struct Count {
    int pos = 0;
    int neg = 0;
  };
  auto tally = [](const std::vector<SampleRecord>& records) {
    std::map<std::pair<Smell, Split>, Count> out;
    for (const SampleRecord& r : records) {
      Count& c = out[{r.smell, r.split}];
      if (r.label == smellgen::Verdict::kPositive) ++c.pos;
      if (r.label == smellgen::Verdict::kNegative) ++c.neg;
    }
    return out;
  };
  auto before = tally(s.unbalanced);
  auto after = tally(s.balanced);
  std::vector<std::string> parts;
  for (Smell smell : {Smell::kLongMethod, Smell::kLargeClass, Smell::kFeatureEnvy}) {
    Count b = before[{smell, Split::kTrain}];
    Count a = after[{smell, Split::kTrain}];
    int want = std::min(b.pos, b.neg);
    if (a.pos != a.neg || a.pos != want) {
      v.details.push_back(fmt::format("{} TRAIN {} / {} after balancing, "
                                      "expected {} / {}",
                                      ToString(smell), a.pos, a.neg, want, want));
    }
    Count e = after[{smell, Split::kEval}];
    parts.push_back(fmt::format("{} TRAIN {}/{} EVAL {}/{}", ToString(smell),
                                a.pos, a.neg, e.pos, e.neg));
  }
  // EVAL must come through byte for byte.
  auto eval_only = [](const std::vector<SampleRecord>& records) {
    std::vector<SampleRecord> out;
    for (const SampleRecord& r : records) {
      if (r.split == Split::kEval) out.push_back(r);
    }
    return out;
  };
  std::vector<SampleRecord> eval_before = eval_only(s.unbalanced);
  if (eval_before.empty()) v.details.push_back("EVAL split is empty");
  if (eval_only(s.balanced) != eval_before) {
    v.details.push_back("EVAL records changed by balancing");
  }
  v.pass = v.details.empty();
  v.summary = fmt::format("{}", fmt::join(parts, "; "));
  return v;
}

CriterionResult Determinism(const EndToEnd& a, const EndToEnd& b) {
  CriterionResult v;
  int compared = 0;
  for (const char* f : {"dataset/dataset.jsonl", "dataset/meta.json",
                        "store.jsonl", "candidates.jsonl"}) {
    fs::path pa = a.work / f;
    fs::path pb = b.work / f;
    if (!fs::exists(pa) || !fs::exists(pb)) {
      v.details.push_back(std::string("missing ") + f);
      continue;
    }
    ++compared;
    std::string da = Slurp(pa);
    if (da.empty() || da != Slurp(pb)) {
      v.details.push_back(std::string(f) + (da.empty() ? " is empty" : " differs"));
    }
  }
  if (a.exit_code != 0 || b.exit_code != 0) {
    v.details.push_back(fmt::format("exit codes {} and {}", a.exit_code, b.exit_code));
  }
  v.pass = v.details.empty();
  v.summary = fmt::format("{} files compared between two balanced runs, {} "
                          "differences",
                          compared, v.details.size());
  return v;
}

void Report(int index, const char* name, const CriterionResult& v, bool* all) {
  std::cout << fmt::format("{} [{}] {}: {}\n", v.pass ? "PASS" : "FAIL", index,
                           name, v.summary);
  for (size_t i = 0; i < v.details.size() && i < kMaxDetails; ++i) {
    std::cout << "    " << v.details[i] << "\n";
  }
  if (v.details.size() > kMaxDetails) {
    std::cout << fmt::format("    ... {} more\n", v.details.size() - kMaxDetails);
  }
  std::cout << std::flush;
  *all = *all && v.pass;
}

// Runs one check, turning an escaped exception into a failure.
CriterionResult Guard(const std::function<CriterionResult()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    CriterionResult v;
    v.summary = std::string("exception: ") + e.what();
    return v;
  }
}

}  // namespace

int main(int argc, char** argv) {
  bool keep = false;
  fs::path root = fs::temp_directory_path() /
                  ("smellgen_acceptance_" + std::to_string(::getpid()));
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--keep") {
      keep = true;
    } else if (a == "--work" && i + 1 < argc) {
      root = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--keep] [--work DIR]\n";
      return 2;
    }
  }
  fs::create_directories(root);
  spdlog::set_level(spdlog::level::warn);
  bool all = true;

  Report(1, "metric oracle", Guard(MetricOracle), &all);
  Report(2, "pattern classification", Guard(PatternOracle), &all);
  std::optional<Corpora> corpora;
  CriterionResult load_failure = Guard([&] {
    corpora = Corpora{Load(Fixtures() / "gen" / "shop", "shop"),
                      Load(CordovaSrc(), "cordova-android")};
    return CriterionResult{true, "", {}};
  });
  if (corpora) {
    Report(3, "generation well-formedness", Guard([&] { return WellFormedness(*corpora); }), &all);
    Report(4, "inverse refactoring", Guard([&] { return InverseRefactoring(*corpora); }), &all);
  } else {
    Report(3, "generation well-formedness", load_failure, &all);
    Report(4, "inverse refactoring", load_failure, &all);
  }
  Report(5, "grouping oracle", Guard(GroupingOracle), &all);

  EndToEnd first = RunCli(root, "run-a", true);
  EndToEnd second = RunCli(root, "run-b", true);
  EndToEnd plain = RunCli(root, "run-plain", false);
  SplitExports splits = ExportBothWays(root);

  Report(6, "threshold conformance",
         Guard([&] {
           return ThresholdConformance({first.work / "dataset" / "dataset.jsonl",
                                        plain.work / "dataset" / "dataset.jsonl"},
                                       splits);
         }),
         &all);
  Report(7, "balance property", Guard([&] { return BalanceProperty(splits); }), &all);
  Report(8, "scaled end-to-end", Guard([&] { return ScaledEndToEnd(first); }), &all);
  Report(9, "determinism", Guard([&] { return Determinism(first, second); }), &all);

  if (!keep) fs::remove_all(root);
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << "\n";
  return all ? 0 : 1;
}
