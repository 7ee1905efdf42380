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

#ifndef SMELLGEN_GROUPING_H_
#define SMELLGEN_GROUPING_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smellgen/generators.h"
#include "smellgen/metrics.h"
#include "smellgen/program_model.h"

namespace smellgen {

enum class Origin { kGenerated, kOriginal };
enum class Group { kAuto, kManual, kDiscard };

std::string_view ToString(Origin o);
std::string_view ToString(Group g);
std::optional<Origin> ParseOrigin(std::string_view s);
std::optional<Group> ParseGroup(std::string_view s);

struct CandidateSample {
  Smell smell = Smell::kLongMethod;
  Origin origin = Origin::kOriginal;
  std::string entity_source;
  std::map<std::string, std::string> context_sources;
  MetricVector metrics;
  Likelihood likelihood = Likelihood::kLow;
  // Original long-method candidates only.
  std::optional<Verdict> advisor;
  // Generated candidates only.
  std::optional<RefactoringAction> ground_truth;
  Provenance provenance;

  bool operator==(const CandidateSample&) const = default;
};

struct GroupAssignment {
  Group group = Group::kDiscard;
  std::optional<Verdict> auto_label;  // set exactly for the auto group
  std::string rule_id;

  bool operator==(const GroupAssignment&) const = default;
};

// A candidate that breaks the field invariants, e.g. an original long-method
// candidate without an advisor verdict. Indicates a pipeline bug.
class GroupingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Routes a candidate by smell, origin, likelihood band and (for original
// long methods) the advisor verdict. Every well-formed candidate matches
// exactly one rule; rule_id names it.
GroupAssignment assign_group(const CandidateSample& c);

// Human-readable meaning of a rule id, or empty for an unknown id.
std::string_view DescribeRule(std::string_view rule_id);
// Every rule id assign_group can return, in table order.
const std::vector<std::string>& AllRuleIds();

// One long-method and one feature-envy candidate per method with a body,
// one large-class candidate per class, over eligible classes. A null
// advisor means the default heuristic.
std::vector<CandidateSample> collect_original_candidates(
    const ProjectModel& model, const Thresholds& thresholds = {},
    const Advisor* advisor = nullptr);

CandidateSample CandidateFromGenerated(const GeneratedSample& s,
                                       const Thresholds& thresholds = {});

}  // namespace smellgen

#endif  // SMELLGEN_GROUPING_H_
