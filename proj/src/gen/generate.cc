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

#include <algorithm>

#include <spdlog/spdlog.h>

#include "smellgen/generators.h"

namespace smellgen {

std::string_view ToString(InlinePattern p) {
  switch (p) {
    case InlinePattern::kStatement:
      return "P1_STATEMENT";
    case InlinePattern::kAssigned:
      return "P2_ASSIGNED";
    case InlinePattern::kExpression:
      return "P3_EXPRESSION";
  }
  return "?";
}

std::string_view ToString(ClassMergePattern p) {
  return p == ClassMergePattern::kInheritance ? "P1_INHERITANCE" : "P2_USAGE";
}

std::string_view ToString(MovePattern p) {
  switch (p) {
    case MovePattern::kParent:
      return "P1_PARENT";
    case MovePattern::kProperty:
      return "P2_PROPERTY";
    case MovePattern::kParameter:
      return "P3_PARAMETER";
  }
  return "?";
}

RefactoringAction::Kind ActionKindFor(Smell s) {
  switch (s) {
    case Smell::kLongMethod:
      return RefactoringAction::Kind::kExtractLines;
    case Smell::kLargeClass:
      return RefactoringAction::Kind::kExtractMembers;
    case Smell::kFeatureEnvy:
      return RefactoringAction::Kind::kMoveMethod;
  }
  return RefactoringAction::Kind::kExtractLines;
}

int SourceLineCount(const std::string& text) {
  if (text.empty()) return 0;
  int n = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  return text.back() == '\n' ? n : n + 1;
}

std::string_view ToString(RefactoringAction::Kind k) {
  switch (k) {
    case RefactoringAction::Kind::kExtractLines:
      return "EXTRACT_LINES";
    case RefactoringAction::Kind::kExtractMembers:
      return "EXTRACT_MEMBERS";
    case RefactoringAction::Kind::kMoveMethod:
      return "MOVE_METHOD";
  }
  return "?";
}

std::optional<RefactoringAction::Kind> ParseActionKind(std::string_view s) {
  for (auto k : {RefactoringAction::Kind::kExtractLines,
                 RefactoringAction::Kind::kExtractMembers,
                 RefactoringAction::Kind::kMoveMethod}) {
    if (ToString(k) == s) return k;
  }
  return std::nullopt;
}

RefactoringAction RefactoringAction::ExtractLines(std::vector<LineRange> lines) {
  RefactoringAction a;
  a.kind = Kind::kExtractLines;
  a.extract_lines = std::move(lines);
  return a;
}

RefactoringAction RefactoringAction::ExtractMembers(
    std::vector<std::string> names) {
  RefactoringAction a;
  a.kind = Kind::kExtractMembers;
  a.extract_members = std::move(names);
  return a;
}

RefactoringAction RefactoringAction::MoveMethod(std::string target) {
  RefactoringAction a;
  a.kind = Kind::kMoveMethod;
  a.move_target = std::move(target);
  return a;
}

std::string RefactoringAction::Check(int source_lines) const {
  switch (kind) {
    case Kind::kExtractLines:
      if (extract_lines.empty()) return "no line ranges";
      if (!extract_members.empty() || !move_target.empty()) {
        return "extra fields populated";
      }
      for (const LineRange& r : extract_lines) {
        if (r.first < 1 || r.last < r.first || r.last > source_lines) {
          return "line range " + std::to_string(r.first) + "-" +
                 std::to_string(r.last) + " outside 1-" +
                 std::to_string(source_lines);
        }
      }
      return "";
    case Kind::kExtractMembers:
      if (extract_members.empty()) return "no members";
      if (!extract_lines.empty() || !move_target.empty()) {
        return "extra fields populated";
      }
      return "";
    case Kind::kMoveMethod:
      if (move_target.empty()) return "no move target";
      if (!extract_lines.empty() || !extract_members.empty()) {
        return "extra fields populated";
      }
      return "";
  }
  return "unknown kind";
}

std::string GeneratedSample::Key() const {
  std::string key = std::string(SmellCode(smell)) + "|" + provenance.project +
                    "|" + provenance.entity + "|" + provenance.pattern;
  for (const auto& [k, v] : provenance.details) key += "|" + k + "=" + v;
  return key;
}

namespace {

template <typename Candidate, typename Transform>
void Run(const std::vector<Candidate>& found, const ProjectModel& model,
         const GenerationConfig& config, Transform transform,
         GenerationResult* out) {
  std::vector<const Candidate*> order;
  for (const Candidate& c : found) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const Candidate* a, const Candidate* b) {
                     return CandidateKey(*a) < CandidateKey(*b);
                   });
  if (config.max_candidates_per_smell > 0 &&
      order.size() > config.max_candidates_per_smell) {
    order.resize(config.max_candidates_per_smell);
  }
  for (const Candidate* c : order) {
    ++out->candidates;
    Outcome o = transform(*c, model);
    if (o.sample) {
      out->samples.push_back(std::move(*o.sample));
    } else {
      spdlog::debug("discard {}: {}", CandidateKey(*c), o.discard_reason);
      out->discards.push_back({CandidateKey(*c), o.discard_reason});
    }
  }
}

}  // namespace

GenerationResult GenerateSamples(const ProjectModel& model,
                                 const GenerationConfig& config) {
  GenerationResult out;
  if (config.long_method) {
    Run(find_merge_candidates_long_method(model), model, config,
        merge_methods, &out);
  }
  if (config.large_class) {
    Run(find_merge_candidates_large_class(model), model, config,
        merge_classes, &out);
  }
  if (config.feature_envy) {
    Run(find_move_candidates_feature_envy(model), model, config, move_method,
        &out);
  }
  std::stable_sort(out.samples.begin(), out.samples.end(),
                   [](const GeneratedSample& a, const GeneratedSample& b) {
                     return a.Key() < b.Key();
                   });
  std::stable_sort(out.discards.begin(), out.discards.end(),
                   [](const Discard& a, const Discard& b) {
                     return a.key < b.key;
                   });
  return out;
}

}  // namespace smellgen
