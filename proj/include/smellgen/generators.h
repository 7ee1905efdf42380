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

#ifndef SMELLGEN_GENERATORS_H_
#define SMELLGEN_GENERATORS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smellgen/metrics.h"
#include "smellgen/program_model.h"

namespace smellgen {

// Where a call sits relative to its statement.
enum class InlinePattern { kStatement, kAssigned, kExpression };
enum class ClassMergePattern { kInheritance, kUsage };
enum class MovePattern { kParent, kProperty, kParameter };

std::string_view ToString(InlinePattern p);
std::string_view ToString(ClassMergePattern p);
std::string_view ToString(MovePattern p);

struct MergeCandidateLM {
  MethodRef caller;
  MethodRef callee;
  // Index of the site in the caller's invocation list.
  int site_index = 0;
  InvocationSite site;
  InlinePattern pattern = InlinePattern::kStatement;
};

struct MergeCandidateLC {
  std::string absorber;
  std::string absorbed;
  ClassMergePattern pattern = ClassMergePattern::kInheritance;
  // Usage merges: the absorber's field holding the absorbed class.
  std::string field;
};

struct MoveCandidateFE {
  MethodRef method;
  std::string source_class;
  std::string target_class;
  MovePattern pattern = MovePattern::kParent;
  // Property moves: the source field of the target type. Parameter moves:
  // the parameter of the target type.
  std::string via;
  int param_index = -1;
};

struct LineRange {
  int first = 0;  // 1-based, inclusive
  int last = 0;

  bool operator==(const LineRange&) const = default;
};

struct RefactoringAction {
  enum class Kind { kExtractLines, kExtractMembers, kMoveMethod };

  Kind kind = Kind::kExtractLines;
  std::vector<LineRange> extract_lines;
  std::vector<std::string> extract_members;
  std::string move_target;

  static RefactoringAction ExtractLines(std::vector<LineRange> lines);
  static RefactoringAction ExtractMembers(std::vector<std::string> names);
  static RefactoringAction MoveMethod(std::string target);

  // Empty when well formed for a source of `source_lines` lines, else a
  // description of the first problem.
  std::string Check(int source_lines) const;
  bool operator==(const RefactoringAction&) const = default;
};

std::string_view ToString(RefactoringAction::Kind k);
std::optional<RefactoringAction::Kind> ParseActionKind(std::string_view s);

// The action kind that removes each smell.
RefactoringAction::Kind ActionKindFor(Smell s);

// Lines in a sample's code, as counted by RefactoringAction::Check. A
// trailing newline does not start a new line.
int SourceLineCount(const std::string& text);

struct Provenance {
  std::string project;
  // "pkg.Cls#name/arity" for methods, the qualified name for classes.
  std::string entity;
  std::vector<std::string> files;
  std::vector<LineSpan> spans;
  std::string pattern;
  std::map<std::string, std::string> details;

  bool operator==(const Provenance&) const = default;
};

struct GeneratedSample {
  Smell smell = Smell::kLongMethod;
  std::string new_source;
  std::map<std::string, std::string> context_sources;
  RefactoringAction ground_truth;
  Provenance provenance;
  // Measured on the rebuilt project.
  MetricVector metrics;
  // Full texts of the rewritten files, for verification; not persisted.
  std::map<std::string, std::string> file_edits;

  // Stable identity of the transformation that produced the sample.
  std::string Key() const;
};

struct Discard {
  std::string key;
  std::string reason;
};

struct Outcome {
  std::optional<GeneratedSample> sample;
  std::string discard_reason;
};

std::string EntityId(const MethodRef& m);

std::vector<MergeCandidateLM> find_merge_candidates_long_method(
    const ProjectModel& model);
Outcome merge_methods(const MergeCandidateLM& c, const ProjectModel& model);

std::vector<MergeCandidateLC> find_merge_candidates_large_class(
    const ProjectModel& model);
Outcome merge_classes(const MergeCandidateLC& c, const ProjectModel& model);

std::vector<MoveCandidateFE> find_move_candidates_feature_envy(
    const ProjectModel& model);
Outcome move_method(const MoveCandidateFE& c, const ProjectModel& model);

std::string CandidateKey(const MergeCandidateLM& c);
std::string CandidateKey(const MergeCandidateLC& c);
std::string CandidateKey(const MoveCandidateFE& c);

// Independent re-checks of a sample's ground truth against its inputs.
// Each returns an empty string when the inverse holds.
std::string CheckExtractInverse(const GeneratedSample& s,
                                const MergeCandidateLM& c,
                                const ProjectModel& original);
std::string CheckMembersInverse(const GeneratedSample& s,
                                const MergeCandidateLC& c,
                                const ProjectModel& original);

struct GenerationConfig {
  bool long_method = true;
  bool large_class = true;
  bool feature_envy = true;
  // 0 means unlimited; otherwise the first N candidates per smell in key
  // order are attempted.
  size_t max_candidates_per_smell = 0;
};

struct GenerationResult {
  std::vector<GeneratedSample> samples;  // sorted by Key()
  std::vector<Discard> discards;         // sorted by key
  size_t candidates = 0;
};

// Runs all enabled generators once over the original model. Generated
// entities never feed back as inputs.
GenerationResult GenerateSamples(const ProjectModel& model,
                                 const GenerationConfig& config = {});

}  // namespace smellgen

#endif  // SMELLGEN_GENERATORS_H_
