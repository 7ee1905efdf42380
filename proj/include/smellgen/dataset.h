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

#ifndef SMELLGEN_DATASET_H_
#define SMELLGEN_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "smellgen/generators.h"
#include "smellgen/grouping.h"
#include "smellgen/ingest.h"
#include "smellgen/metrics.h"

namespace smellgen {

inline constexpr std::string_view kPipelineVersion = "smellgen-0.1.0";

struct RecordProvenance {
  std::string project;
  std::string entity;
  std::string pattern;
  std::vector<std::string> files;
  std::vector<LineSpan> spans;
  std::map<std::string, std::string> details;
  std::string rule_id;
  // "rule:<rule id>" for automatic labels, "annotation:<reviewer>@<time>"
  // for reviewed ones, empty while unlabeled.
  std::string label_source;
  std::string pipeline_version;

  bool operator==(const RecordProvenance&) const = default;
};

struct SampleRecord {
  std::string id;
  Smell smell = Smell::kLongMethod;
  Origin origin = Origin::kOriginal;
  Group group = Group::kDiscard;
  std::optional<Verdict> label;
  Split split = Split::kTrain;
  std::string code;
  std::map<std::string, std::string> context;
  MetricVector metrics;
  Likelihood likelihood = Likelihood::kLow;
  std::optional<Verdict> advisor;
  std::optional<RefactoringAction> ground_truth;
  RecordProvenance provenance;

  bool operator==(const SampleRecord&) const = default;
};

// Bad input data: unreadable file, malformed line, wrong field.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string Fnv1a64Hex(std::string_view bytes);

// Stable id over project, smell, origin, entity, pattern, details, files
// and spans. Identical corpus input gives identical ids across runs.
std::string ComputeRecordId(const SampleRecord& r);

SampleRecord MakeRecord(const CandidateSample& c, const GroupAssignment& g,
                        Split split);

nlohmann::ordered_json ActionToJson(const RefactoringAction& a);
// Throws DatasetError on a malformed action.
RefactoringAction ActionFromJson(const nlohmann::json& j);

nlohmann::ordered_json RecordToJson(const SampleRecord& r);
SampleRecord RecordFromJson(const nlohmann::json& j);

// Candidates between the generate and group stages: the record layout
// without id, group, label, rule id and label source.
nlohmann::ordered_json CandidateToJson(const CandidateSample& c, Split split);
std::pair<CandidateSample, Split> CandidateFromJson(const nlohmann::json& j);
void write_candidates(
    const std::vector<std::pair<CandidateSample, Split>>& candidates,
    const std::filesystem::path& path);
std::vector<std::pair<CandidateSample, Split>> read_candidates(
    const std::filesystem::path& path);

// Writes `text` to a sibling temp file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view text);
std::string ReadFile(const std::filesystem::path& path);

// One JSON object per line, keys in fixed order, written atomically.
void write_records(const std::vector<SampleRecord>& records,
                   const std::filesystem::path& path);
// Throws DatasetError naming the 1-based line of the first bad record.
std::vector<SampleRecord> read_records(const std::filesystem::path& path);

struct DatasetStats {
  // (smell, label or "UNLABELED", split) -> count
  std::map<std::tuple<Smell, std::string, Split>, int> counts;
  std::map<std::pair<Smell, Group>, int> groups;
  int total = 0;

  int Count(Smell s, std::string_view label, Split split) const;
  bool operator==(const DatasetStats&) const = default;
};

DatasetStats compute_stats(const std::vector<SampleRecord>& records);
std::string FormatStats(const DatasetStats& stats);
nlohmann::ordered_json StatsToJson(const DatasetStats& stats);

// Down-samples the negatives of (smell, split) to the positive count,
// chosen uniformly with a generator seeded by `seed`. The evaluation split
// and cells with fewer negatives than positives are returned unchanged.
// Record order is preserved.
std::vector<SampleRecord> balance_negatives(std::vector<SampleRecord> records,
                                            Smell smell, Split split,
                                            uint64_t seed);

// Indices of the `keep` elements chosen from `n`: the first `keep` draws of
// a Fisher-Yates shuffle driven by mt19937_64(seed), sorted ascending.
std::vector<size_t> SeededChoice(size_t n, size_t keep, uint64_t seed);

struct DatasetMeta {
  std::string pipeline_version = std::string(kPipelineVersion);
  std::optional<uint64_t> balance_seed;
  Thresholds thresholds;
  std::string advisor;
  std::string loc_definition =
      "lines holding at least one token; blank and comment-only lines "
      "excluded";
  std::map<std::string, std::string> projects;  // project -> split
  int records = 0;

  bool operator==(const DatasetMeta&) const = default;
};

nlohmann::ordered_json MetaToJson(const DatasetMeta& m);
DatasetMeta MetaFromJson(const nlohmann::json& j);
nlohmann::ordered_json ThresholdsToJson(const Thresholds& t);
Thresholds ThresholdsFromJson(const nlohmann::json& j);

// Writes <dir>/dataset.jsonl and <dir>/meta.json. When the meta names a
// balance seed, training negatives are first down-sampled per smell.
// Returns the records written.
std::vector<SampleRecord> ExportDataset(std::vector<SampleRecord> records,
                                        const std::filesystem::path& dir,
                                        DatasetMeta meta);

// Dataset-level invariants: ids unique and recomputable, labels present
// exactly when explained by a rule or an annotation, no discarded or
// pending records, one split per project, auto-group metrics inside their
// bands, a well-formed ground truth of the smell's kind on every positive
// and none on negatives. Returns one message per violation.
std::vector<std::string> ValidateDataset(const std::vector<SampleRecord>& records,
                                         const Thresholds& thresholds);

}  // namespace smellgen

#endif  // SMELLGEN_DATASET_H_
