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

#include "smellgen/grouping.h"

#include <algorithm>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace smellgen {

std::string_view ToString(Origin o) {
  return o == Origin::kGenerated ? "GENERATED" : "ORIGINAL";
}

std::string_view ToString(Group g) {
  switch (g) {
    case Group::kAuto:
      return "A_GROUP";
    case Group::kManual:
      return "M_GROUP";
    case Group::kDiscard:
      return "DISCARD";
  }
  return "?";
}

std::optional<Origin> ParseOrigin(std::string_view s) {
  if (s == "GENERATED") return Origin::kGenerated;
  if (s == "ORIGINAL") return Origin::kOriginal;
  return std::nullopt;
}

std::optional<Group> ParseGroup(std::string_view s) {
  for (Group g : {Group::kAuto, Group::kManual, Group::kDiscard}) {
    if (ToString(g) == s) return g;
  }
  return std::nullopt;
}

namespace {

struct RuleText {
  const char* id;
  const char* text;
};

// The feature-envy manual rows appear in print under the long-method table;
// they are read here as the feature-envy manual group.
constexpr RuleText kRules[] = {
    {"LM.T1.A1", "merged method with LOC in the high band"},
    {"LM.T1.A2", "original method, advisor negative, LOC in the low band"},
    {"LM.T1.M1", "original method with LOC in the high band"},
    {"LM.T1.M2", "merged method with LOC in the moderate band"},
    {"LM.T1.M3", "original method, advisor negative, LOC in the moderate band"},
    {"LM.D-G1", "merged method still in the low band: no smell was made"},
    {"LM.D-G2", "original method, advisor positive, below the high band"},
    {"LC.T2.A1", "merged class in the high band"},
    {"LC.T2.A2", "original class in the low band"},
    {"LC.T2.M1", "merged class in the moderate band"},
    {"LC.T2.M2", "original class in the moderate band"},
    {"LC.T2.M3", "original class in the high band"},
    {"LC.D-G1", "merged class still in the low band: no smell was made"},
    {"FE.T3.A1", "moved method with NFDI in the high band"},
    {"FE.T3.A2", "original method with NFDI in the low band"},
    {"FE.T3.M1", "moved method with NFDI in the moderate band"},
    {"FE.T3.M2", "original method with NFDI in the moderate band"},
    {"FE.T3.M3", "original method with NFDI in the high band"},
    {"FE.D-G1", "moved method still in the low band: no smell was made"},
};

GroupAssignment Auto(Verdict label, std::string rule) {
  return {Group::kAuto, label, std::move(rule)};
}

GroupAssignment Manual(std::string rule) {
  return {Group::kManual, std::nullopt, std::move(rule)};
}

GroupAssignment Drop(std::string rule) {
  return {Group::kDiscard, std::nullopt, std::move(rule)};
}

void CheckShape(const CandidateSample& c) {
  bool generated = c.origin == Origin::kGenerated;
  if (generated && !c.ground_truth) {
    throw GroupingError("generated candidate without ground truth: " +
                        c.provenance.entity);
  }
  bool wants_advisor = c.smell == Smell::kLongMethod && !generated;
  if (wants_advisor && !c.advisor) {
    throw GroupingError("original long-method candidate without advisor "
                        "verdict: " + c.provenance.entity);
  }
  if (!wants_advisor && c.advisor) {
    throw GroupingError("advisor verdict on a candidate that takes none: " +
                        c.provenance.entity);
  }
}

GroupAssignment LongMethod(const CandidateSample& c) {
  if (c.origin == Origin::kGenerated) {
    switch (c.likelihood) {
      case Likelihood::kHigh:
        return Auto(Verdict::kPositive, "LM.T1.A1");
      case Likelihood::kModerate:
        return Manual("LM.T1.M2");
      case Likelihood::kLow:
        return Drop("LM.D-G1");
    }
  }
  if (c.likelihood == Likelihood::kHigh) return Manual("LM.T1.M1");
  if (*c.advisor == Verdict::kPositive) return Manual("LM.D-G2");
  return c.likelihood == Likelihood::kLow ? Auto(Verdict::kNegative, "LM.T1.A2")
                                          : Manual("LM.T1.M3");
}

// Large class and feature envy share one table shape.
GroupAssignment ByBand(const CandidateSample& c, const std::string& p) {
  if (c.origin == Origin::kGenerated) {
    switch (c.likelihood) {
      case Likelihood::kHigh:
        return Auto(Verdict::kPositive, p + ".A1");
      case Likelihood::kModerate:
        return Manual(p + ".M1");
      case Likelihood::kLow:
        return Drop(std::string(SmellCode(c.smell)) + ".D-G1");
    }
  }
  switch (c.likelihood) {
    case Likelihood::kLow:
      return Auto(Verdict::kNegative, p + ".A2");
    case Likelihood::kModerate:
      return Manual(p + ".M2");
    case Likelihood::kHigh:
      return Manual(p + ".M3");
  }
  throw GroupingError("unknown likelihood");
}

}  // namespace

GroupAssignment assign_group(const CandidateSample& c) {
  CheckShape(c);
  switch (c.smell) {
    case Smell::kLongMethod:
      return LongMethod(c);
    case Smell::kLargeClass:
      return ByBand(c, "LC.T2");
    case Smell::kFeatureEnvy:
      return ByBand(c, "FE.T3");
  }
  throw GroupingError("unknown smell");
}

std::string_view DescribeRule(std::string_view rule_id) {
  for (const RuleText& r : kRules) {
    if (rule_id == r.id) return r.text;
  }
  return {};
}

const std::vector<std::string>& AllRuleIds() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const RuleText& r : kRules) out.emplace_back(r.id);
    return out;
  }();
  return ids;
}

std::vector<CandidateSample> collect_original_candidates(
    const ProjectModel& model, const Thresholds& thresholds,
    const Advisor* advisor) {
  HeuristicAdvisor fallback;
  const Advisor& judge = advisor != nullptr ? *advisor : fallback;
  std::vector<const ClassEntity*> classes;
  for (const auto& c : model.classes()) {
    if (c->IsCandidateEligible()) classes.push_back(c.get());
  }
  std::sort(classes.begin(), classes.end(),
            [](const ClassEntity* a, const ClassEntity* b) {
              return a->qualified_name < b->qualified_name;
            });

  std::vector<CandidateSample> out;
  for (const ClassEntity* c : classes) {
    Provenance where;
    where.project = model.project_id();
    where.files = {c->file};
    where.pattern = "ORIGINAL";

    CandidateSample lc;
    lc.smell = Smell::kLargeClass;
    lc.origin = Origin::kOriginal;
    lc.entity_source = c->source_text;
    lc.metrics = ClassMetrics(*c);
    lc.likelihood = likelihood_large_class(lc.metrics, thresholds);
    lc.provenance = where;
    lc.provenance.entity = c->qualified_name;
    lc.provenance.spans = {c->span};
    out.push_back(std::move(lc));

    for (const MethodEntity& m : c->methods) {
      if (!m.has_body) continue;
      MetricVector v = MethodMetrics(m, model);
      Provenance mp = where;
      mp.entity = EntityId(m.Ref());
      mp.spans = {m.span};

      CandidateSample lm;
      lm.smell = Smell::kLongMethod;
      lm.origin = Origin::kOriginal;
      lm.entity_source = m.source_text;
      lm.context_sources["owner_class"] = c->source_text;
      lm.metrics = v;
      lm.likelihood = likelihood_long_method(lm.metrics, thresholds);
      lm.advisor = judge.Judge(m, model);
      lm.provenance = mp;
      lm.provenance.details["advisor"] = judge.Name();
      out.push_back(std::move(lm));

      CandidateSample fe;
      fe.smell = Smell::kFeatureEnvy;
      fe.origin = Origin::kOriginal;
      fe.entity_source = m.source_text;
      fe.context_sources["owner_class"] = c->source_text;
      fe.metrics = v;
      fe.likelihood = likelihood_feature_envy(fe.metrics, thresholds);
      fe.provenance = std::move(mp);
      fe.provenance.details["candidate_targets"] =
          fmt::format("{}", fmt::join(ForeignClasses(m, model), ","));
      out.push_back(std::move(fe));
    }
  }
  return out;
}

CandidateSample CandidateFromGenerated(const GeneratedSample& s,
                                       const Thresholds& thresholds) {
  CandidateSample c;
  c.smell = s.smell;
  c.origin = Origin::kGenerated;
  c.entity_source = s.new_source;
  c.context_sources = s.context_sources;
  c.metrics = s.metrics;
  c.likelihood = LikelihoodFor(s.smell, s.metrics, thresholds);
  c.ground_truth = s.ground_truth;
  c.provenance = s.provenance;
  return c;
}

}  // namespace smellgen
