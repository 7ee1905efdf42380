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

// Manual review of M_Group samples: checklists, leases, the annotation log
// and the merge of reviewer labels into the final dataset.

#ifndef SMELLGEN_REVIEW_H_
#define SMELLGEN_REVIEW_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "smellgen/dataset.h"

namespace smellgen {

enum class AnswerKind { kYesNo, kAction };

std::string_view ToString(AnswerKind k);

struct ChecklistQuestion {
  std::string id;  // "LM.Q1"
  std::string text;
  AnswerKind kind = AnswerKind::kYesNo;
};

struct GuidelineChecklist {
  Smell smell = Smell::kLongMethod;
  std::vector<ChecklistQuestion> questions;
};

// The reviewer guideline for `smell`. The last question asks for the
// refactoring action; the others take yes/no answers.
const GuidelineChecklist& ChecklistFor(Smell smell);
nlohmann::ordered_json ChecklistToJson(const GuidelineChecklist& c);

struct Annotation {
  std::string sample_id;
  std::string reviewer_id;
  Verdict verdict = Verdict::kNegative;
  std::map<std::string, bool> answers;  // yes/no question id -> answer
  std::optional<RefactoringAction> action;
  std::string timestamp;  // UTC, "YYYY-MM-DDTHH:MM:SSZ"

  bool operator==(const Annotation&) const = default;
};

nlohmann::ordered_json AnnotationToJson(const Annotation& a);
// Throws DatasetError on a malformed annotation.
Annotation AnnotationFromJson(const nlohmann::json& j);

std::string FormatUtc(std::chrono::system_clock::time_point t);

// "annotation:<reviewer>@<timestamp>"
std::string AnnotationLabelSource(const Annotation& a);

struct Rejection {
  enum class Code { kInvalid, kNotFound, kConflict };

  std::string field;  // "sample_id", "answers.LM.Q2", "action.lines", ...
  std::string reason;
  Code code = Code::kInvalid;
};

// Checks an annotation against the sample it labels: checklist answers
// complete, action present exactly for positive verdicts, of the kind the
// smell calls for, and pointing at real lines, members or candidate
// classes. Empty when acceptable.
std::optional<Rejection> CheckAnnotation(const Annotation& a,
                                         const SampleRecord& sample);

// Move targets offered for a feature-envy sample.
std::vector<std::string> CandidateTargets(const SampleRecord& sample);
// Field and method names declared directly in a class sample's code.
std::vector<std::string> DeclaredMembers(const SampleRecord& sample);

// Problem while opening or replaying the annotation log.
class ReviewError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads the log and returns the labeled state it describes, keyed by sample
// id. Every event is re-checked as it was on submission; the first bad
// line raises ReviewError naming it. A missing log means no annotations.
std::map<std::string, Annotation> ReplayLog(
    const std::vector<SampleRecord>& records,
    const std::filesystem::path& log_path);

// A_Group records with their rule labels plus every annotated M_Group
// record with its reviewer label. Pending and discarded records are left
// out. Record order follows `records`.
std::vector<SampleRecord> MergeAnnotations(
    const std::vector<SampleRecord>& records,
    const std::map<std::string, Annotation>& annotations);

struct ReviewOptions {
  std::chrono::seconds lease_timeout{30 * 60};
  // Injectable for tests.
  std::function<std::chrono::system_clock::time_point()> clock =
      [] { return std::chrono::system_clock::now(); };
};

struct QueueItem {
  SampleRecord record;
  const GuidelineChecklist* checklist = nullptr;
  std::chrono::system_clock::time_point lease_expires;
};

struct SubmitResult {
  bool accepted = false;
  Rejection rejection;
  std::optional<Annotation> stored;
};

struct ReviewStats {
  std::map<Smell, int> pending;
  std::map<Smell, int> leased;
  std::map<Smell, int> annotated;
  std::map<Smell, int> auto_labeled;
  int exportable = 0;
};

nlohmann::ordered_json ReviewStatsToJson(const ReviewStats& s);

// The review queue over one grouped store. Mutations (leasing, appending to
// the log) go through one writer lock; readers share it.
class ReviewStore {
 public:
  // Replays `log_path` on open; throws ReviewError if it does not replay.
  ReviewStore(std::vector<SampleRecord> records,
              std::filesystem::path log_path, ReviewOptions options = {});

  // The oldest pending M_Group sample, in store order, not leased to someone
  // else. A reviewer who still holds a lease gets that sample again. The
  // returned sample is leased to `reviewer_id`.
  std::optional<QueueItem> queue_next(const std::string& reviewer_id,
                                      std::optional<Smell> smell = std::nullopt);

  // Stamps the annotation with the current time, checks it and appends it to
  // the log. A sample takes exactly one annotation.
  SubmitResult submit_annotation(Annotation a);

  std::vector<SampleRecord> export_final() const;
  ReviewStats stats() const;
  std::map<std::string, Annotation> annotations() const;
  // Reviewer currently holding `sample_id`, if the lease is live.
  std::optional<std::string> lease_holder(const std::string& sample_id) const;

  const std::filesystem::path& log_path() const { return log_path_; }

 private:
  struct Lease {
    std::string reviewer;
    std::chrono::system_clock::time_point expires;
  };

  bool LiveLease(const std::string& id,
                 std::chrono::system_clock::time_point now,
                 const Lease** out) const;

  std::vector<SampleRecord> records_;
  std::unordered_map<std::string, size_t> index_;
  std::filesystem::path log_path_;
  ReviewOptions options_;

  mutable std::shared_mutex mu_;
  std::map<std::string, Annotation> annotations_;
  std::map<std::string, Lease> leases_;
};

}  // namespace smellgen

#endif  // SMELLGEN_REVIEW_H_
