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

#ifndef SMELLGEN_METRICS_H_
#define SMELLGEN_METRICS_H_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smellgen/program_model.h"

namespace smellgen {

enum class Smell { kLongMethod, kLargeClass, kFeatureEnvy };
enum class Likelihood { kLow = 0, kModerate = 1, kHigh = 2 };
enum class Verdict { kPositive, kNegative };

std::string_view ToString(Smell s);
std::string_view ToString(Likelihood l);
std::string_view ToString(Verdict v);
std::optional<Smell> ParseSmell(std::string_view s);
std::optional<Likelihood> ParseLikelihood(std::string_view s);
std::optional<Verdict> ParseVerdict(std::string_view s);
// Short rule-id prefix: LM, LC, FE.
std::string_view SmellCode(Smell s);

struct MetricVector {
  int loc = 0;
  std::optional<int> nom;   // classes only
  std::optional<int> noa;   // classes only
  std::optional<int> nfdi;  // methods only

  bool operator==(const MetricVector&) const = default;
};

struct ClassBounds {
  int loc = 0;
  int nom = 0;
  int noa = 0;

  bool operator==(const ClassBounds&) const = default;
};

struct Thresholds {
  int lm_min = 15;
  int lm_max = 30;
  ClassBounds lc_min{70, 7, 5};
  ClassBounds lc_max{130, 10, 10};
  int fe_min = 2;
  int fe_max = 5;

  // Throws std::invalid_argument unless every min < its max.
  void Validate() const;
  bool operator==(const Thresholds&) const = default;
};

// Lines of `text` carrying at least one token; comments and blank lines do
// not count. Throws java::LexError on malformed text.
int CountLoc(std::string_view text);

int loc(const MethodEntity& m);
int loc(const ClassEntity& c);
int nom(const ClassEntity& c);
int noa(const ClassEntity& c);
// Occurrences of field reads/writes and method calls whose target is a
// project class other than the owner and its ancestors.
int nfdi(const MethodEntity& m, const ProjectModel& model);

MetricVector MethodMetrics(const MethodEntity& m, const ProjectModel& model);
MetricVector ClassMetrics(const ClassEntity& c);

Likelihood likelihood_long_method(const MetricVector& v, const Thresholds& t);
Likelihood likelihood_large_class(const MetricVector& v, const Thresholds& t);
Likelihood likelihood_feature_envy(const MetricVector& v, const Thresholds& t);
Likelihood LikelihoodFor(Smell s, const MetricVector& v, const Thresholds& t);

// Deepest nesting of control statements in the body; an else-if chain
// counts as one level.
int MaxNestingDepth(const MethodEntity& m);
// Distinct project classes, other than the owner and its ancestors, that the
// method touches.
int DistinctForeignClasses(const MethodEntity& m, const ProjectModel& model);
// The same classes by qualified name, sorted.
std::vector<std::string> ForeignClasses(const MethodEntity& m,
                                        const ProjectModel& model);

// Pre-screens original methods for the long-method grouping rules.
class Advisor {
 public:
  virtual ~Advisor() = default;
  virtual Verdict Judge(const MethodEntity& m,
                        const ProjectModel& model) const = 0;
  // Recorded in sample provenance.
  virtual std::string Name() const = 0;
};

// POSITIVE when nesting depth exceeds 3, parameters exceed 4, or more than 3
// distinct foreign classes are touched.
class HeuristicAdvisor : public Advisor {
 public:
  struct Limits {
    int nesting = 3;
    int params = 4;
    int foreign_classes = 3;
  };

  HeuristicAdvisor() = default;
  explicit HeuristicAdvisor(Limits limits) : limits_(limits) {}

  Verdict Judge(const MethodEntity& m,
                const ProjectModel& model) const override;
  std::string Name() const override;

 private:
  Limits limits_;
};

Verdict advisor_long_method(const MethodEntity& m, const ProjectModel& model);

}  // namespace smellgen

#endif  // SMELLGEN_METRICS_H_
