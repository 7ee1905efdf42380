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

// Reference implementations shared by the unit tests and the acceptance
// runner. None of these call into the code they check beyond reading its
// inputs and outputs.

#ifndef SMELLGEN_TESTS_SUPPORT_ORACLES_H_
#define SMELLGEN_TESTS_SUPPORT_ORACLES_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smellgen/dataset.h"
#include "smellgen/generators.h"
#include "smellgen/grouping.h"
#include "smellgen/metrics.h"
#include "smellgen/program_model.h"

namespace smellgen::oracle {

// One row of the grouping decision tables. A row with an empty advisor list
// ignores the advisor.
struct Row {
  Smell smell;
  Origin origin;
  std::vector<int> bands;    // 0 low, 1 moderate, 2 high
  std::vector<int> advisor;  // 0 positive, 1 negative
  Group group;
  int label;  // -1 none, 0 positive, 1 negative
  const char* rule;
};

const std::vector<Row>& Table();

// Rows covering a cell; advisor is -1 when the cell takes no advisor.
std::vector<const Row*> Matches(Smell s, Origin o, int band, int advisor);

// Likelihood band from the published default thresholds, written out
// literally rather than through Thresholds.
int Band(Smell s, const MetricVector& v);

GroupAssignment Expected(const Row& r);

CandidateSample MakeCandidate(Smell s, Origin o, Likelihood l,
                              std::optional<Verdict> advisor);

// Both return a description of every disagreement (empty when none).
// `checked` receives the number of comparisons.
std::vector<std::string> CompareMetricAnswers(const ProjectModel& m,
                                              const std::filesystem::path& answers,
                                              int* checked = nullptr);
std::vector<std::string> ComparePatternAnswers(const ProjectModel& m,
                                               const std::filesystem::path& answers,
                                               int* checked = nullptr);

// Exhaustive cell check and randomized agreement (n draws) against the
// decision table.
std::vector<std::string> CheckGroupingCells(int* cells = nullptr);
std::vector<std::string> CheckGroupingRandom(int n, unsigned seed);

// Empty when the sample's rewritten files introduce no identifier the
// resolver could not bind before.
std::string SweepViolation(const ProjectModel& before, const GeneratedSample& s);

// Re-parse and sweep problems of one sample.
std::vector<std::string> WellFormednessProblems(const ProjectModel& m,
                                                const GeneratedSample& s);

// Threshold-band violations of the auto-labeled records, using the published
// default thresholds.
std::vector<std::string> ThresholdViolations(
    const std::vector<SampleRecord>& records);

int LineCount(const std::string& s);

}  // namespace smellgen::oracle

#endif  // SMELLGEN_TESTS_SUPPORT_ORACLES_H_
