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

#include "oracles.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "smellgen/java/parser.h"

namespace smellgen::oracle {

namespace fs = std::filesystem;

const std::vector<Row>& Table() {
  using S = Smell;
  using O = Origin;
  using G = Group;
  // Row by row from the grouping tables, plus the two discard rules.
  static const std::vector<Row> rows = {
      {S::kLongMethod, O::kGenerated, {2}, {}, G::kAuto, 0, "LM.T1.A1"},
      {S::kLongMethod, O::kOriginal, {0}, {1}, G::kAuto, 1, "LM.T1.A2"},
      {S::kLongMethod, O::kOriginal, {2}, {0, 1}, G::kManual, -1, "LM.T1.M1"},
      {S::kLongMethod, O::kGenerated, {1}, {}, G::kManual, -1, "LM.T1.M2"},
      {S::kLongMethod, O::kOriginal, {1}, {1}, G::kManual, -1, "LM.T1.M3"},
      {S::kLongMethod, O::kGenerated, {0}, {}, G::kDiscard, -1, "LM.D-G1"},
      {S::kLongMethod, O::kOriginal, {0, 1}, {0}, G::kManual, -1, "LM.D-G2"},
      {S::kLargeClass, O::kGenerated, {2}, {}, G::kAuto, 0, "LC.T2.A1"},
      {S::kLargeClass, O::kOriginal, {0}, {}, G::kAuto, 1, "LC.T2.A2"},
      {S::kLargeClass, O::kGenerated, {1}, {}, G::kManual, -1, "LC.T2.M1"},
      {S::kLargeClass, O::kOriginal, {1}, {}, G::kManual, -1, "LC.T2.M2"},
      {S::kLargeClass, O::kOriginal, {2}, {}, G::kManual, -1, "LC.T2.M3"},
      {S::kLargeClass, O::kGenerated, {0}, {}, G::kDiscard, -1, "LC.D-G1"},
      {S::kFeatureEnvy, O::kGenerated, {2}, {}, G::kAuto, 0, "FE.T3.A1"},
      {S::kFeatureEnvy, O::kOriginal, {0}, {}, G::kAuto, 1, "FE.T3.A2"},
      {S::kFeatureEnvy, O::kGenerated, {1}, {}, G::kManual, -1, "FE.T3.M1"},
      {S::kFeatureEnvy, O::kOriginal, {1}, {}, G::kManual, -1, "FE.T3.M2"},
      {S::kFeatureEnvy, O::kOriginal, {2}, {}, G::kManual, -1, "FE.T3.M3"},
      {S::kFeatureEnvy, O::kGenerated, {0}, {}, G::kDiscard, -1, "FE.D-G1"},
  };
  return rows;
}

namespace {

bool Has(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

constexpr Smell kSmells[] = {Smell::kLongMethod, Smell::kLargeClass,
                             Smell::kFeatureEnvy};
constexpr Origin kOrigins[] = {Origin::kGenerated, Origin::kOriginal};

}  // namespace

std::vector<const Row*> Matches(Smell s, Origin o, int band, int advisor) {
  std::vector<const Row*> out;
  for (const Row& r : Table()) {
    if (r.smell != s || r.origin != o || !Has(r.bands, band)) continue;
    if (!r.advisor.empty() && !Has(r.advisor, advisor)) continue;
    out.push_back(&r);
  }
  return out;
}

int Band(Smell s, const MetricVector& v) {
  switch (s) {
    case Smell::kLongMethod:
      return v.loc > 30 ? 2 : v.loc >= 15 ? 1 : 0;
    case Smell::kFeatureEnvy:
      return *v.nfdi > 5 ? 2 : *v.nfdi >= 2 ? 1 : 0;
    case Smell::kLargeClass:
      if (v.loc > 130 && *v.nom > 10 && *v.noa > 10) return 2;
      if (v.loc < 70 && *v.nom < 7 && *v.noa < 5) return 0;
      return 1;
  }
  return -1;
}

GroupAssignment Expected(const Row& r) {
  GroupAssignment a;
  a.group = r.group;
  if (r.label >= 0) {
    a.auto_label = r.label == 0 ? Verdict::kPositive : Verdict::kNegative;
  }
  a.rule_id = r.rule;
  return a;
}

CandidateSample MakeCandidate(Smell s, Origin o, Likelihood l,
                              std::optional<Verdict> advisor) {
  CandidateSample c;
  c.smell = s;
  c.origin = o;
  c.likelihood = l;
  c.advisor = advisor;
  if (o == Origin::kGenerated) {
    c.ground_truth = RefactoringAction::MoveMethod("a.B");
  }
  return c;
}

std::vector<std::string> CompareMetricAnswers(const ProjectModel& m,
                                              const fs::path& answers,
                                              int* checked) {
  std::vector<std::string> out;
  std::ifstream in(answers);
  if (!in) return {"cannot read " + answers.string()};
  nlohmann::json expected = nlohmann::json::parse(in);
  int n = 0;
  auto compare = [&](const std::string& key, const char* metric, int got,
                     const nlohmann::json& want) {
    ++n;
    if (got != want.get<int>()) {
      out.push_back(fmt::format("{} {}: got {}, expected {}", key, metric, got,
                                want.get<int>()));
    }
  };
  std::set<std::string> classes;
  std::set<std::string> methods;
  for (const auto& c : m.classes()) {
    const std::string& name = c->qualified_name;
    if (!expected["classes"].contains(name)) {
      out.push_back("class missing from answers: " + name);
      continue;
    }
    const auto& e = expected["classes"][name];
    MetricVector v = ClassMetrics(*c);
    compare(name, "loc", v.loc, e["loc"]);
    compare(name, "nom", v.nom.value_or(-1), e["nom"]);
    compare(name, "noa", v.noa.value_or(-1), e["noa"]);
    classes.insert(name);
    for (const MethodEntity& me : c->methods) {
      std::string key = fmt::format("{}#{}/{}", me.owner, me.name, me.arity());
      if (!expected["methods"].contains(key)) {
        out.push_back("method missing from answers: " + key);
        continue;
      }
      const auto& em = expected["methods"][key];
      MetricVector mv = MethodMetrics(me, m);
      compare(key, "loc", mv.loc, em["loc"]);
      compare(key, "nfdi", mv.nfdi.value_or(-1), em["nfdi"]);
      methods.insert(key);
    }
  }
  if (classes.size() != expected["classes"].size() ||
      methods.size() != expected["methods"].size()) {
    out.push_back(fmt::format("answer file lists {} classes / {} methods, model "
                              "has {} / {}",
                              expected["classes"].size(),
                              expected["methods"].size(), classes.size(),
                              methods.size()));
  }
  if (checked) *checked = n;
  return out;
}

std::vector<std::string> ComparePatternAnswers(const ProjectModel& m,
                                               const fs::path& answers,
                                               int* checked) {
  std::multiset<std::string> got;
  for (const auto& c : m.classes()) {
    for (const MethodEntity& me : c->methods) {
      for (const InvocationSite& s : me.invocations) {
        got.insert(fmt::format("{} {} {} {}", c->file, s.line, s.callee.name,
                               ToString(s.pattern)));
      }
    }
  }
  std::multiset<std::string> expected;
  std::ifstream in(answers);
  if (!in) return {"cannot read " + answers.string()};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    expected.insert(line);
  }
  std::vector<std::string> out;
  std::vector<std::string> diff;
  std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                      std::back_inserter(diff));
  for (const std::string& d : diff) out.push_back("expected but not found: " + d);
  diff.clear();
  std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                      std::back_inserter(diff));
  for (const std::string& d : diff) out.push_back("found but not expected: " + d);
  if (checked) *checked = static_cast<int>(expected.size());
  return out;
}

std::vector<std::string> CheckGroupingCells(int* cells) {
  std::vector<std::string> out;
  int n = 0;
  for (Smell s : kSmells) {
    for (Origin o : kOrigins) {
      bool takes_advisor = s == Smell::kLongMethod && o == Origin::kOriginal;
      for (int band = 0; band < 3; ++band) {
        for (int adv : takes_advisor ? std::vector<int>{0, 1}
                                     : std::vector<int>{-1}) {
          ++n;
          std::string cell = fmt::format("{} {} band {} advisor {}", ToString(s),
                                         ToString(o), band, adv);
          std::vector<const Row*> rows = Matches(s, o, band, adv);
          if (rows.size() != 1) {
            out.push_back(fmt::format("{}: {} rules fire", cell, rows.size()));
            continue;
          }
          std::optional<Verdict> v;
          if (adv >= 0) v = adv == 0 ? Verdict::kPositive : Verdict::kNegative;
          GroupAssignment got =
              assign_group(MakeCandidate(s, o, static_cast<Likelihood>(band), v));
          if (!(got == Expected(*rows[0]))) {
            out.push_back(fmt::format("{}: got {}, expected {}", cell,
                                      got.rule_id, rows[0]->rule));
          }
        }
      }
    }
  }
  if (cells) *cells = n;
  return out;
}

std::vector<std::string> CheckGroupingRandom(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> loc(0, 300);
  std::uniform_int_distribution<int> small(0, 25);
  std::uniform_int_distribution<int> nfdi(0, 12);
  Thresholds t;
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    Smell s = kSmells[pick(rng)];
    Origin o = kOrigins[coin(rng)];
    MetricVector v;
    v.loc = loc(rng);
    if (s == Smell::kLargeClass) {
      v.nom = small(rng);
      v.noa = small(rng);
      // Push a share of classes into the corners so both extreme bands show.
      if (coin(rng) == 0) {
        bool big = coin(rng) == 0;
        v.loc = big ? 131 + small(rng) * 10 : small(rng) * 2;
        v.nom = big ? 11 + small(rng) : small(rng) % 7;
        v.noa = big ? 11 + small(rng) : small(rng) % 5;
      }
    } else {
      v.nfdi = nfdi(rng);
    }
    std::optional<Verdict> adv;
    int adv_code = -1;
    if (s == Smell::kLongMethod && o == Origin::kOriginal) {
      adv_code = coin(rng);
      adv = adv_code == 0 ? Verdict::kPositive : Verdict::kNegative;
    }
    CandidateSample c = MakeCandidate(s, o, LikelihoodFor(s, v, t), adv);
    c.metrics = v;
    int band = Band(s, v);
    if (static_cast<int>(c.likelihood) != band) {
      out.push_back(fmt::format("draw {}: likelihood {} vs band {}", i,
                                static_cast<int>(c.likelihood), band));
      continue;
    }
    std::vector<const Row*> rows = Matches(s, o, band, adv_code);
    if (rows.size() != 1) {
      out.push_back(fmt::format("draw {}: {} rules fire", i, rows.size()));
      continue;
    }
    GroupAssignment got = assign_group(c);
    if (!(got == Expected(*rows[0]))) {
      out.push_back(fmt::format("draw {}: got {}, expected {}", i, got.rule_id,
                                rows[0]->rule));
    }
  }
  return out;
}

std::string SweepViolation(const ProjectModel& before, const GeneratedSample& s) {
  std::string error;
  std::optional<ProjectModel> after =
      RebuildWithReplacedFiles(before, s.file_edits, &error);
  if (!after) return "rebuild failed: " + error;
  std::set<std::string> known;
  for (const auto& c : before.classes()) {
    if (!s.file_edits.count(c->file)) continue;
    for (const MethodEntity& m : c->methods) {
      for (const NameRef& r : m.names) {
        if (r.kind == BindingKind::kUnresolved) known.insert(r.name);
      }
    }
  }
  for (const auto& c : after->classes()) {
    if (!s.file_edits.count(c->file)) continue;
    for (const MethodEntity& m : c->methods) {
      for (const NameRef& r : m.names) {
        if (r.kind == BindingKind::kUnresolved && !known.count(r.name)) {
          return "new unresolved name " + r.name + " in " + c->qualified_name;
        }
      }
    }
  }
  return "";
}

int LineCount(const std::string& s) {
  if (s.empty()) return 0;
  int n = static_cast<int>(std::count(s.begin(), s.end(), '\n'));
  return s.back() == '\n' ? n : n + 1;
}

std::vector<std::string> WellFormednessProblems(const ProjectModel& m,
                                                const GeneratedSample& s) {
  std::vector<std::string> out;
  const std::string key = s.Key();
  if (!java::ParseClassMembers(s.new_source).ok()) {
    out.push_back(key + ": sample code does not parse");
  }
  for (const auto& [file, text] : s.file_edits) {
    if (!java::ParseCompilationUnit(file, text).ok()) {
      out.push_back(key + ": rewritten " + file + " does not parse");
    }
  }
  for (const auto& [name, text] : s.context_sources) {
    if (!java::ParseClassMembers(text).ok()) {
      out.push_back(key + ": context " + name + " does not parse");
    }
  }
  std::string bad = s.ground_truth.Check(LineCount(s.new_source));
  if (!bad.empty()) out.push_back(key + ": ground truth " + bad);
  if (s.file_edits.empty()) out.push_back(key + ": no file edits");
  std::string sweep = SweepViolation(m, s);
  if (!sweep.empty()) out.push_back(key + ": " + sweep);
  return out;
}

std::vector<std::string> ThresholdViolations(
    const std::vector<SampleRecord>& records) {
  std::vector<std::string> out;
  for (const SampleRecord& r : records) {
    if (r.group != Group::kAuto || !r.label) continue;
    const MetricVector& v = r.metrics;
    bool positive = *r.label == Verdict::kPositive;
    bool ok = true;
    switch (r.smell) {
      case Smell::kLongMethod:
        ok = positive ? v.loc > 30 : v.loc < 15;
        break;
      case Smell::kFeatureEnvy:
        ok = v.nfdi && (positive ? *v.nfdi > 5 : *v.nfdi < 2);
        break;
      case Smell::kLargeClass:
        ok = v.nom && v.noa &&
             (positive ? v.loc > 130 && *v.nom > 10 && *v.noa > 10
                       : v.loc < 70 && *v.nom < 7 && *v.noa < 5);
        break;
    }
    if (!ok) {
      out.push_back(fmt::format("{} {} {} loc={} nom={} noa={} nfdi={}", r.id,
                                ToString(r.smell), ToString(*r.label), v.loc,
                                v.nom.value_or(-1), v.noa.value_or(-1),
                                v.nfdi.value_or(-1)));
    }
  }
  return out;
}

}  // namespace smellgen::oracle
