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

// Runs the smellgen binary as a user would and checks exit codes, files
// and the invariants of what it writes.

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "smellgen/pipeline.h"
#include "smellgen/review.h"

namespace smellgen {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

struct Result {
  int code = -1;
  std::string out;  // stdout and stderr together
};

Result Cli(const std::string& args) {
  std::string cmd = std::string(SMELLGEN_CLI) + " -q " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), n);
  }
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("smellgen_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // A config over the bundled demo corpus with its work dir in the sandbox.
  fs::path Config(const std::string& extra = "") {
    fs::path p = dir_ / "smellgen.yaml";
    std::ofstream(p) << "work_dir: work\n"
                     << "seed: 7\n"
                     << extra << "corpora:\n"
                     << "  - project: demo\n"
                     << "    roots: [" << SMELLGEN_CORPUS << "/demo]\n";
    return p;
  }

  fs::path Work() const { return dir_ / "work"; }

  fs::path dir_;
};

TEST_F(CliTest, DemoPipelineEndToEnd) {
  fs::path cfg = Config();
  Result run = Cli("-c " + cfg.string() + " run");
  ASSERT_EQ(run.code, 0) << run.out;
  EXPECT_THAT(run.out, HasSubstr("OK "));
  std::vector<std::pair<CandidateSample, Split>> pool =
      read_candidates(Work() / "candidates.jsonl");
  EXPECT_GT(pool.size(), 0u);
  int generated = 0;
  for (const auto& [c, split] : pool) generated += c.origin == Origin::kGenerated;
  EXPECT_GT(generated, 0);
  ValidationReport report = ValidateDatasetDir(Work() / "dataset");
  EXPECT_TRUE(report.ok()) << ::testing::PrintToString(report.violations);
  EXPECT_GT(report.recount.total, 0);

  // Stats agree with the validator's recount.
  Result stats = Cli("stats --json -d " + (Work() / "dataset").string());
  ASSERT_EQ(stats.code, 0) << stats.out;
  EXPECT_EQ(nlohmann::json::parse(stats.out),
            nlohmann::json::parse(StatsToJson(report.recount).dump()));
}

TEST_F(CliTest, StagesAreIdempotent) {
  fs::path cfg = Config("balance: true\n");
  ASSERT_EQ(Cli("-c " + cfg.string() + " run").code, 0);
  std::string store = ReadFile(Work() / "store.jsonl");
  std::string data = ReadFile(Work() / "dataset" / "dataset.jsonl");
  std::string meta = ReadFile(Work() / "dataset" / "meta.json");
  for (const char* stage : {"ingest", "generate", "group", "export"}) {
    Result r = Cli("-c " + cfg.string() + " " + stage);
    ASSERT_EQ(r.code, 0) << stage << ": " << r.out;
  }
  EXPECT_EQ(ReadFile(Work() / "store.jsonl"), store);
  EXPECT_EQ(ReadFile(Work() / "dataset" / "dataset.jsonl"), data);
  EXPECT_EQ(ReadFile(Work() / "dataset" / "meta.json"), meta);
  DatasetMeta m = MetaFromJson(nlohmann::json::parse(meta));
  EXPECT_EQ(m.balance_seed, 7u);
  EXPECT_EQ(m.projects.at("demo"), "TRAIN");
}

TEST_F(CliTest, LongMethodMaximumOverride) {
  fs::path cfg = Config();
  ASSERT_EQ(Cli("-c " + cfg.string() + " ingest").code, 0);
  ASSERT_EQ(Cli("-c " + cfg.string() + " generate").code, 0);
  ASSERT_EQ(Cli("-c " + cfg.string() + " group").code, 0);
  auto auto_positive_locs = [&] {
    std::vector<int> locs;
    for (const SampleRecord& r : read_records(Work() / "store.jsonl")) {
      if (r.smell == Smell::kLongMethod && r.group == Group::kAuto &&
          r.label == Verdict::kPositive) {
        locs.push_back(r.metrics.loc);
      }
    }
    return locs;
  };
  std::vector<int> before = auto_positive_locs();
  Result r = Cli("-c " + cfg.string() + " group --lm-max 20");
  ASSERT_EQ(r.code, 0) << r.out;
  std::vector<int> after = auto_positive_locs();
  for (int loc : after) EXPECT_GT(loc, 20);
  // The demo has merged methods between 21 and 30 lines; they move up.
  EXPECT_GT(after.size(), before.size());
  for (const SampleRecord& rec : read_records(Work() / "store.jsonl")) {
    if (rec.smell == Smell::kLongMethod && rec.origin == Origin::kGenerated &&
        rec.metrics.loc > 20) {
      EXPECT_EQ(rec.group, Group::kAuto) << rec.provenance.entity;
    }
  }
}

TEST_F(CliTest, ExitCodes) {
  // Missing config file.
  Result missing = Cli("-c " + (dir_ / "nope.yaml").string() + " ingest");
  EXPECT_EQ(missing.code, kExitMissingInput) << missing.out;
  EXPECT_THAT(missing.out, HasSubstr("nope.yaml"));

  // Syntax error, reported with its line.
  fs::path bad = dir_ / "bad.yaml";
  std::ofstream(bad) << "seed: 7\ncorpora: [\n  - project: x\n";
  Result syntax = Cli("-c " + bad.string() + " ingest");
  EXPECT_EQ(syntax.code, kExitConfig) << syntax.out;
  EXPECT_THAT(syntax.out, HasSubstr("bad.yaml:"));

  // Unknown key, reported with its position.
  fs::path typo = dir_ / "typo.yaml";
  std::ofstream(typo) << "seed: 7\nthresholds:\n  long_methd: {max: 20}\n"
                      << "corpora:\n  - project: x\n    roots: [x]\n";
  Result unknown = Cli("-c " + typo.string() + " ingest");
  EXPECT_EQ(unknown.code, kExitConfig);
  EXPECT_THAT(unknown.out, HasSubstr("typo.yaml:3:3: unknown key 'long_methd'"));

  // Balance needs a seed.
  fs::path noseed = dir_ / "noseed.yaml";
  std::ofstream(noseed) << "balance: true\ncorpora:\n  - project: x\n"
                        << "    roots: [x]\n";
  EXPECT_EQ(Cli("-c " + noseed.string() + " ingest").code, kExitConfig);

  // A stage whose input was never produced names the expected path.
  fs::path cfg = Config();
  Result group = Cli("-c " + cfg.string() + " group");
  EXPECT_EQ(group.code, kExitMissingInput);
  EXPECT_THAT(group.out, HasSubstr((Work() / "candidates.jsonl").string()));
  EXPECT_EQ(Cli("validate -d " + (dir_ / "empty").string()).code,
            kExitMissingInput);

  // Bad command line.
  EXPECT_EQ(Cli("frobnicate").code, kExitConfig);
  EXPECT_EQ(Cli("-c " + cfg.string() + " group --lm-max many").code, kExitConfig);
  EXPECT_EQ(Cli("--help").code, 0);
}

TEST_F(CliTest, ValidateRejectsTamperedDataset) {
  fs::path cfg = Config();
  ASSERT_EQ(Cli("-c " + cfg.string() + " run").code, 0);
  fs::path data = Work() / "dataset" / "dataset.jsonl";
  std::vector<SampleRecord> recs = read_records(data);
  ASSERT_FALSE(recs.empty());
  // Flip an auto negative to positive: the label no longer fits its band.
  for (SampleRecord& r : recs) {
    if (r.label == Verdict::kNegative) {
      r.label = Verdict::kPositive;
      break;
    }
  }
  write_records(recs, data);
  Result v = Cli("validate -d " + (Work() / "dataset").string());
  EXPECT_EQ(v.code, kExitInvalid) << v.out;
  EXPECT_THAT(v.out, HasSubstr("violation:"));
}

TEST_F(CliTest, ExportMergesTheAnnotationLog) {
  fs::path cfg = Config();
  ASSERT_EQ(Cli("-c " + cfg.string() + " run").code, 0);
  std::vector<SampleRecord> store = read_records(Work() / "store.jsonl");
  const SampleRecord* pending = nullptr;
  for (const SampleRecord& r : store) {
    if (r.group == Group::kManual) {
      pending = &r;
      break;
    }
  }
  ASSERT_NE(pending, nullptr);
  size_t before = read_records(Work() / "dataset" / "dataset.jsonl").size();
  {
    ReviewStore review(store, Work() / "annotations.jsonl");
    Annotation a;
    a.sample_id = pending->id;
    a.reviewer_id = "ana";
    a.verdict = Verdict::kNegative;
    for (const ChecklistQuestion& q : ChecklistFor(pending->smell).questions) {
      if (q.kind == AnswerKind::kYesNo) a.answers[q.id] = false;
    }
    ASSERT_TRUE(review.submit_annotation(a).accepted);
  }
  Result r = Cli("-c " + cfg.string() + " export");
  ASSERT_EQ(r.code, 0) << r.out;
  std::vector<SampleRecord> out = read_records(Work() / "dataset" / "dataset.jsonl");
  EXPECT_EQ(out.size(), before + 1);
  bool found = false;
  for (const SampleRecord& rec : out) {
    if (rec.id != pending->id) continue;
    found = true;
    EXPECT_EQ(rec.label, Verdict::kNegative);
    EXPECT_THAT(rec.provenance.label_source, HasSubstr("annotation:ana@"));
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(Cli("validate -d " + (Work() / "dataset").string()).code, 0);
}

// --- Config parsing -----------------------------------------------------------

TEST(ConfigTest, DefaultsAndRelativePaths) {
  PipelineConfig c = ParseConfig(
      "corpora:\n"
      "  - project: a\n"
      "    roots: [src, /abs/src]\n"
      "    exclude: ['**/test/**']\n"
      "  - project: b\n"
      "    roots: [b]\n"
      "    split: EVAL\n",
      "/base/dir");
  ASSERT_EQ(c.corpora.size(), 2u);
  EXPECT_EQ(c.corpora[0].root_dirs,
            (std::vector<fs::path>{"/base/dir/src", "/abs/src"}));
  EXPECT_EQ(c.corpora[0].exclude_globs, std::vector<std::string>{"**/test/**"});
  EXPECT_EQ(c.corpora[0].role, Split::kTrain);
  EXPECT_EQ(c.corpora[1].role, Split::kEval);
  EXPECT_EQ(c.work_dir, fs::path("/base/dir/smellgen-out"));
  EXPECT_EQ(c.thresholds, Thresholds{});
  EXPECT_FALSE(c.balance);
  EXPECT_FALSE(c.seed);
  EXPECT_EQ(c.review.lease_minutes, 30);
}

TEST(ConfigTest, Overrides) {
  PipelineConfig c = ParseConfig(
      "work_dir: ../out\n"
      "seed: 42\n"
      "balance: true\n"
      "thresholds:\n"
      "  long_method: {max: 20}\n"
      "  large_class: {max: {loc: 150, nom: 12, noa: 12}}\n"
      "generation: {large_class: false, max_candidates_per_smell: 50}\n"
      "review: {port: 9000, lease_minutes: 5}\n"
      "corpora: [{project: a, roots: [a]}]\n",
      "/base/dir");
  EXPECT_EQ(c.work_dir, fs::path("/base/out"));
  EXPECT_EQ(c.seed, 42u);
  EXPECT_TRUE(c.balance);
  EXPECT_EQ(c.thresholds.lm_min, 15);
  EXPECT_EQ(c.thresholds.lm_max, 20);
  EXPECT_EQ(c.thresholds.lc_max, (ClassBounds{150, 12, 12}));
  EXPECT_FALSE(c.generation.large_class);
  EXPECT_TRUE(c.generation.long_method);
  EXPECT_EQ(c.generation.max_candidates_per_smell, 50u);
  EXPECT_EQ(c.review.port, 9000);
  EXPECT_EQ(c.review.lease_minutes, 5);
}

TEST(ConfigTest, ErrorsCarryLocations) {
  auto error = [](const std::string& text) {
    try {
      ParseConfig(text, "/b", "cfg.yaml");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_THAT(error("seed: 1\n"), HasSubstr("missing 'corpora'"));
  EXPECT_THAT(error("corpora: []\n"), HasSubstr("no corpus"));
  EXPECT_THAT(error("corpora:\n  - project: a\n    roots: [a]\n    split: TEST\n"),
              HasSubstr("cfg.yaml:4:12: split must be TRAIN or EVAL"));
  EXPECT_THAT(error("seed: lots\ncorpora: [{project: a, roots: [a]}]\n"),
              HasSubstr("cfg.yaml:1:7: 'seed' has the wrong type"));
  EXPECT_THAT(error("thresholds: {long_method: {min: 40}}\n"
                    "corpora: [{project: a, roots: [a]}]\n"),
              HasSubstr("long"));
  EXPECT_THAT(error("corpora: [{project: a, roots: [a]}, {project: a, roots: [b]}]\n"),
              HasSubstr("configured twice"));
}

}  // namespace
}  // namespace smellgen
