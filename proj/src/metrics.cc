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

#include "smellgen/metrics.h"

#include <algorithm>
#include <set>

#include "smellgen/java/lexer.h"

namespace smellgen {

std::string_view ToString(Smell s) {
  switch (s) {
    case Smell::kLongMethod:
      return "LONG_METHOD";
    case Smell::kLargeClass:
      return "LARGE_CLASS";
    case Smell::kFeatureEnvy:
      return "FEATURE_ENVY";
  }
  return "?";
}

std::string_view SmellCode(Smell s) {
  switch (s) {
    case Smell::kLongMethod:
      return "LM";
    case Smell::kLargeClass:
      return "LC";
    case Smell::kFeatureEnvy:
      return "FE";
  }
  return "?";
}

std::string_view ToString(Likelihood l) {
  switch (l) {
    case Likelihood::kLow:
      return "LOW";
    case Likelihood::kModerate:
      return "MODERATE";
    case Likelihood::kHigh:
      return "HIGH";
  }
  return "?";
}

std::string_view ToString(Verdict v) {
  return v == Verdict::kPositive ? "POSITIVE" : "NEGATIVE";
}

std::optional<Smell> ParseSmell(std::string_view s) {
  for (Smell x : {Smell::kLongMethod, Smell::kLargeClass, Smell::kFeatureEnvy}) {
    if (s == ToString(x) || s == SmellCode(x)) return x;
  }
  return std::nullopt;
}

std::optional<Likelihood> ParseLikelihood(std::string_view s) {
  for (Likelihood x :
       {Likelihood::kLow, Likelihood::kModerate, Likelihood::kHigh}) {
    if (s == ToString(x)) return x;
  }
  return std::nullopt;
}

std::optional<Verdict> ParseVerdict(std::string_view s) {
  if (s == "POSITIVE") return Verdict::kPositive;
  if (s == "NEGATIVE") return Verdict::kNegative;
  return std::nullopt;
}

void Thresholds::Validate() const {
  auto check = [](int lo, int hi, const char* what) {
    if (lo < 0 || lo >= hi) {
      throw std::invalid_argument(std::string(what) + ": min " +
                                  std::to_string(lo) + " must be below max " +
                                  std::to_string(hi));
    }
  };
  check(lm_min, lm_max, "long method LOC");
  check(lc_min.loc, lc_max.loc, "large class LOC");
  check(lc_min.nom, lc_max.nom, "large class NOM");
  check(lc_min.noa, lc_max.noa, "large class NOA");
  check(fe_min, fe_max, "feature envy NFDI");
}

int CountLoc(std::string_view text) {
  return static_cast<int>(java::TokenBearingLines(java::Tokenize(text)).size());
}

int loc(const MethodEntity& m) { return CountLoc(m.source_text); }
int loc(const ClassEntity& c) { return CountLoc(c.source_text); }
int nom(const ClassEntity& c) { return static_cast<int>(c.methods.size()); }
int noa(const ClassEntity& c) { return static_cast<int>(c.fields.size()); }

namespace {

bool IsForeignTarget(const FieldAccessSite& s, const ClassEntity* owner,
                     const MethodEntity& m, const ProjectModel& model) {
  if (!s.internal || s.target_class == m.owner) return false;
  if (owner == nullptr) return true;
  return !model.IsAncestor(*owner, s.target_class);
}

}  // namespace

int nfdi(const MethodEntity& m, const ProjectModel& model) {
  const ClassEntity* owner = model.LookupClass(m.owner);
  int n = 0;
  for (const FieldAccessSite& s : m.field_accesses) {
    if (IsForeignTarget(s, owner, m, model)) ++n;
  }
  return n;
}

std::vector<std::string> ForeignClasses(const MethodEntity& m,
                                        const ProjectModel& model) {
  const ClassEntity* owner = model.LookupClass(m.owner);
  std::set<std::string> classes;
  for (const FieldAccessSite& s : m.field_accesses) {
    if (IsForeignTarget(s, owner, m, model)) classes.insert(s.target_class);
  }
  return {classes.begin(), classes.end()};
}

int DistinctForeignClasses(const MethodEntity& m, const ProjectModel& model) {
  return static_cast<int>(ForeignClasses(m, model).size());
}

MetricVector MethodMetrics(const MethodEntity& m, const ProjectModel& model) {
  MetricVector v;
  v.loc = loc(m);
  v.nfdi = nfdi(m, model);
  return v;
}

MetricVector ClassMetrics(const ClassEntity& c) {
  MetricVector v;
  v.loc = loc(c);
  v.nom = nom(c);
  v.noa = noa(c);
  return v;
}

Likelihood likelihood_long_method(const MetricVector& v, const Thresholds& t) {
  if (v.loc < t.lm_min) return Likelihood::kLow;
  if (v.loc > t.lm_max) return Likelihood::kHigh;
  return Likelihood::kModerate;
}

Likelihood likelihood_large_class(const MetricVector& v, const Thresholds& t) {
  int nom_v = v.nom.value_or(0);
  int noa_v = v.noa.value_or(0);
  if (v.loc > t.lc_max.loc && nom_v > t.lc_max.nom && noa_v > t.lc_max.noa) {
    return Likelihood::kHigh;
  }
  if (v.loc < t.lc_min.loc && nom_v < t.lc_min.nom && noa_v < t.lc_min.noa) {
    return Likelihood::kLow;
  }
  return Likelihood::kModerate;
}

Likelihood likelihood_feature_envy(const MetricVector& v, const Thresholds& t) {
  int n = v.nfdi.value_or(0);
  if (n < t.fe_min) return Likelihood::kLow;
  if (n > t.fe_max) return Likelihood::kHigh;
  return Likelihood::kModerate;
}

Likelihood LikelihoodFor(Smell s, const MetricVector& v, const Thresholds& t) {
  switch (s) {
    case Smell::kLongMethod:
      return likelihood_long_method(v, t);
    case Smell::kLargeClass:
      return likelihood_large_class(v, t);
    case Smell::kFeatureEnvy:
      return likelihood_feature_envy(v, t);
  }
  return Likelihood::kLow;
}

namespace {

bool IsControl(java::StmtKind k) {
  switch (k) {
    case java::StmtKind::kIf:
    case java::StmtKind::kFor:
    case java::StmtKind::kForEach:
    case java::StmtKind::kWhile:
    case java::StmtKind::kDo:
    case java::StmtKind::kTry:
    case java::StmtKind::kSwitch:
    case java::StmtKind::kSynchronized:
      return true;
    default:
      return false;
  }
}

int Depth(const java::Stmt& s, int level);

int DepthOf(const java::StmtPtr& s, int level) {
  return s ? Depth(*s, level) : level;
}

int Depth(const java::Stmt& s, int level) {
  int here = IsControl(s.kind) ? level + 1 : level;
  int best = here;
  auto take = [&best](int d) { best = std::max(best, d); };
  switch (s.kind) {
    case java::StmtKind::kIf:
      take(DepthOf(s.body, here));
      // `else if` stays at the level of the first `if`.
      if (s.else_body && s.else_body->kind == java::StmtKind::kIf) {
        take(Depth(*s.else_body, level));
      } else {
        take(DepthOf(s.else_body, here));
      }
      break;
    case java::StmtKind::kTry:
      for (const auto& r : s.stmts) take(DepthOf(r, here));
      take(DepthOf(s.body, here));
      for (const auto& c : s.catches) take(DepthOf(c.block, here));
      take(DepthOf(s.finally_block, here));
      break;
    case java::StmtKind::kSwitch:
      for (const auto& c : s.cases) {
        for (const auto& b : c.body) take(DepthOf(b, here));
      }
      break;
    default:
      for (const auto& c : s.stmts) take(DepthOf(c, here));
      take(DepthOf(s.body, here));
      take(DepthOf(s.else_body, here));
      take(DepthOf(s.finally_block, here));
      break;
  }
  return best;
}

}  // namespace

int MaxNestingDepth(const MethodEntity& m) {
  if (m.decl == nullptr || !m.decl->body) return 0;
  return Depth(*m.decl->body, 0);
}

Verdict HeuristicAdvisor::Judge(const MethodEntity& m,
                                const ProjectModel& model) const {
  if (MaxNestingDepth(m) > limits_.nesting) return Verdict::kPositive;
  if (m.arity() > limits_.params) return Verdict::kPositive;
  if (DistinctForeignClasses(m, model) > limits_.foreign_classes) {
    return Verdict::kPositive;
  }
  return Verdict::kNegative;
}

std::string HeuristicAdvisor::Name() const {
  return "heuristic(nesting>" + std::to_string(limits_.nesting) + ",params>" +
         std::to_string(limits_.params) + ",foreign_classes>" +
         std::to_string(limits_.foreign_classes) + ")";
}

Verdict advisor_long_method(const MethodEntity& m, const ProjectModel& model) {
  return HeuristicAdvisor().Judge(m, model);
}

}  // namespace smellgen
