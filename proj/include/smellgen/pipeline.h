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

// Stage wiring for the command-line tool. Every stage reads the artifacts
// of the one before it from the work directory and writes its own.
//
//   <work>/sources/<project>.jsonl   ingest: file snapshot
//   <work>/model/<project>.json      ingest: resolved model dump
//   <work>/candidates.jsonl          generate: generated + original pool
//   <work>/generation.json           generate: counts and discard reasons
//   <work>/store.jsonl               group: every candidate with its group
//   <work>/annotations.jsonl         serve: append-only review log
//   <work>/dataset/dataset.jsonl     export: final labeled records
//   <work>/dataset/meta.json         export: thresholds, seed, projects

#ifndef SMELLGEN_PIPELINE_H_
#define SMELLGEN_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smellgen/dataset.h"
#include "smellgen/generators.h"
#include "smellgen/ingest.h"
#include "smellgen/metrics.h"

namespace smellgen {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitMissingInput = 3,
  kExitInvalid = 4,
};

// Malformed or inconsistent configuration. The message carries the file
// location when there is one.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stage input that an earlier stage should have produced.
class MissingInputError : public std::runtime_error {
 public:
  explicit MissingInputError(const std::filesystem::path& path)
      : std::runtime_error("missing input: " + path.string()), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct ReviewConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  int lease_minutes = 30;
};

struct PipelineConfig {
  std::vector<CorpusConfig> corpora;
  Thresholds thresholds;
  GenerationConfig generation;
  std::filesystem::path work_dir = "smellgen-out";
  bool balance = false;
  std::optional<uint64_t> seed;
  ReviewConfig review;

  // Throws ConfigError: no corpus, duplicate project ids, bad thresholds,
  // balance without a seed.
  void Validate() const;
};

// Relative corpus roots and work_dir resolve against the config file's
// directory.
PipelineConfig LoadConfig(const std::filesystem::path& path);
PipelineConfig ParseConfig(const std::string& yaml_text,
                           const std::filesystem::path& base_dir,
                           const std::string& source_name = "<config>");

struct WorkPaths {
  std::filesystem::path root;

  std::filesystem::path Sources(const std::string& project) const;
  std::filesystem::path Model(const std::string& project) const;
  std::filesystem::path Candidates() const { return root / "candidates.jsonl"; }
  std::filesystem::path GenerationReport() const {
    return root / "generation.json";
  }
  std::filesystem::path Store() const { return root / "store.jsonl"; }
  std::filesystem::path Log() const { return root / "annotations.jsonl"; }
  std::filesystem::path DatasetDir() const { return root / "dataset"; }
  std::filesystem::path Dataset() const { return DatasetDir() / "dataset.jsonl"; }
  std::filesystem::path Meta() const { return DatasetDir() / "meta.json"; }
};

struct IngestSummary {
  int projects = 0;
  int files = 0;
  int classes = 0;
  int skipped_files = 0;
};

struct GenerateSummary {
  int generated = 0;
  int originals = 0;
  int discarded = 0;
  size_t attempted = 0;
};

struct GroupSummary {
  int auto_group = 0;
  int manual_group = 0;
  int discarded = 0;
  // Per smell, auto-group positives and review-group members.
  std::map<Smell, int> auto_positive;
  std::map<Smell, int> manual;
};

struct ExportSummary {
  int records = 0;
  DatasetStats stats;
};

IngestSummary RunIngest(const PipelineConfig& config);
GenerateSummary RunGenerate(const PipelineConfig& config);
GroupSummary RunGroup(const PipelineConfig& config);
ExportSummary RunExport(const PipelineConfig& config);

struct ValidationReport {
  std::vector<std::string> violations;
  DatasetStats recount;
  bool ok() const { return violations.empty(); }
};

// Re-reads a dataset directory and checks every dataset-level invariant
// against the thresholds recorded in its meta file.
ValidationReport ValidateDatasetDir(const std::filesystem::path& dataset_dir);

// Loads the snapshot written by ingest.
ProjectModel LoadSnapshot(const WorkPaths& work, const CorpusConfig& corpus);

}  // namespace smellgen

#endif  // SMELLGEN_PIPELINE_H_
