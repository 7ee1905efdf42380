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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "smellgen/ingest.h"

namespace smellgen {
namespace {

namespace fs = std::filesystem;

ProjectModel OracleModel() {
  CorpusConfig c;
  c.root_dirs = {fs::path(SMELLGEN_FIXTURES) / "oracle"};
  c.project_id = "oracle";
  return build_project_model(c);
}

ProjectModel CordovaModel() {
  CorpusConfig c;
  c.root_dirs = {fs::path(SMELLGEN_CORPUS) / "cordova-android" / "src"};
  c.project_id = "cordova";
  return build_project_model(c);
}

const MethodEntity& Method(const ProjectModel& m, const std::string& cls,
                           const std::string& name) {
  for (const MethodEntity& me : m.LookupClass(cls)->methods) {
    if (me.name == name) return me;
  }
  throw std::runtime_error("no method " + name);
}

MetricVector Loc(int loc) {
  MetricVector v;
  v.loc = loc;
  return v;
}

MetricVector Nfdi(int n) {
  MetricVector v;
  v.nfdi = n;
  return v;
}

MetricVector Cls(int loc, int nom, int noa) {
  MetricVector v;
  v.loc = loc;
  v.nom = nom;
  v.noa = noa;
  return v;
}

TEST(LocTest, SingleLineMethod) {
  EXPECT_EQ(CountLoc("int id() { return 1; }"), 1);
}

TEST(LocTest, BlankAndCommentLinesExcluded) {
  EXPECT_EQ(CountLoc("int f() {\n  // why\n\n  return 3;\n}"), 3);
  EXPECT_EQ(CountLoc("void f() {\n}"), 2);
  EXPECT_EQ(CountLoc("/* a\n b */\n"), 0);
  EXPECT_EQ(CountLoc("int x; /* trailing\n comment */ int y;"), 2);
}

TEST(NomNoaTest, DirectCounts) {
  ProjectModel m = BuildModelFromSources(
      "p", {{"A.java",
             "class A { int x, y; void a() {} void b() {} void c() {} }\n"
             "class Ctor { Ctor() {} }\n"
             "class Empty {}\n"}});
  EXPECT_EQ(nom(*m.LookupClass("A")), 3);
  EXPECT_EQ(noa(*m.LookupClass("A")), 2);
  EXPECT_EQ(nom(*m.LookupClass("Ctor")), 1);
  EXPECT_EQ(noa(*m.LookupClass("Ctor")), 0);
  EXPECT_EQ(nom(*m.LookupClass("Empty")), 0);
  EXPECT_EQ(noa(*m.LookupClass("Empty")), 0);
  MetricVector v = ClassMetrics(*m.LookupClass("A"));
  EXPECT_FALSE(v.nfdi.has_value());
}

TEST(NfdiTest, BookDiscountCountsForeignAccesses) {
  ProjectModel m = OracleModel();
  EXPECT_EQ(nfdi(Method(m, "shop.Book", "discount"), m), 3);
  EXPECT_EQ(nfdi(Method(m, "shop.Campaign", "getRate"), m), 0);
  EXPECT_EQ(nfdi(Method(m, "shop.util.Strings", "join"), m), 0);
  // Inherited members are not foreign.
  EXPECT_EQ(nfdi(Method(m, "shop.Ebook", "summary"), m), 1);
  MetricVector v = MethodMetrics(Method(m, "shop.Book", "discount"), m);
  EXPECT_FALSE(v.nom.has_value());
  EXPECT_FALSE(v.noa.has_value());
}

// Every entity of the oracle corpus against the hand-computed answer file.
TEST(OracleTest, MatchesAnswerFile) {
  ProjectModel m = OracleModel();
  std::ifstream in(fs::path(SMELLGEN_FIXTURES) / "oracle" /
                   "expected_metrics.json");
  nlohmann::json expected = nlohmann::json::parse(in);
  std::set<std::string> seen_classes;
  std::set<std::string> seen_methods;
  for (const auto& c : m.classes()) {
    const auto& e = expected["classes"].at(c->qualified_name);
    MetricVector v = ClassMetrics(*c);
    EXPECT_EQ(v.loc, e["loc"].get<int>()) << c->qualified_name;
    EXPECT_EQ(*v.nom, e["nom"].get<int>()) << c->qualified_name;
    EXPECT_EQ(*v.noa, e["noa"].get<int>()) << c->qualified_name;
    seen_classes.insert(c->qualified_name);
    for (const MethodEntity& me : c->methods) {
      std::string key =
          me.owner + "#" + me.name + "/" + std::to_string(me.arity());
      const auto& em = expected["methods"].at(key);
      MetricVector mv = MethodMetrics(me, m);
      EXPECT_EQ(mv.loc, em["loc"].get<int>()) << key;
      EXPECT_EQ(*mv.nfdi, em["nfdi"].get<int>()) << key;
      seen_methods.insert(key);
    }
  }
  EXPECT_EQ(seen_classes.size(), expected["classes"].size());
  EXPECT_EQ(seen_methods.size(), expected["methods"].size());
}

TEST(LikelihoodTest, LongMethodBands) {
  Thresholds t;
  EXPECT_EQ(likelihood_long_method(Loc(10), t), Likelihood::kLow);
  EXPECT_EQ(likelihood_long_method(Loc(45), t), Likelihood::kHigh);
  EXPECT_EQ(likelihood_long_method(Loc(14), t), Likelihood::kLow);
  EXPECT_EQ(likelihood_long_method(Loc(15), t), Likelihood::kModerate);
  EXPECT_EQ(likelihood_long_method(Loc(30), t), Likelihood::kModerate);
  EXPECT_EQ(likelihood_long_method(Loc(31), t), Likelihood::kHigh);
}

TEST(LikelihoodTest, LargeClassBands) {
  Thresholds t;
  EXPECT_EQ(likelihood_large_class(Cls(200, 15, 12), t), Likelihood::kHigh);
  EXPECT_EQ(likelihood_large_class(Cls(40, 3, 2), t), Likelihood::kLow);
  EXPECT_EQ(likelihood_large_class(Cls(200, 3, 2), t), Likelihood::kModerate);
  EXPECT_EQ(likelihood_large_class(Cls(131, 11, 10), t),
            Likelihood::kModerate);
  EXPECT_EQ(likelihood_large_class(Cls(131, 11, 11), t), Likelihood::kHigh);
  EXPECT_EQ(likelihood_large_class(Cls(69, 6, 4), t), Likelihood::kLow);
  EXPECT_EQ(likelihood_large_class(Cls(69, 7, 4), t), Likelihood::kModerate);
}

TEST(LikelihoodTest, FeatureEnvyBands) {
  Thresholds t;
  EXPECT_EQ(likelihood_feature_envy(Nfdi(0), t), Likelihood::kLow);
  EXPECT_EQ(likelihood_feature_envy(Nfdi(6), t), Likelihood::kHigh);
  EXPECT_EQ(likelihood_feature_envy(Nfdi(3), t), Likelihood::kModerate);
  EXPECT_EQ(likelihood_feature_envy(Nfdi(2), t), Likelihood::kModerate);
  EXPECT_EQ(likelihood_feature_envy(Nfdi(5), t), Likelihood::kModerate);
  EXPECT_EQ(likelihood_feature_envy(Nfdi(1), t), Likelihood::kLow);
}

TEST(ThresholdsTest, DefaultsAndValidation) {
  Thresholds t;
  EXPECT_EQ(t.lm_min, 15);
  EXPECT_EQ(t.lm_max, 30);
  EXPECT_EQ(t.lc_min, (ClassBounds{70, 7, 5}));
  EXPECT_EQ(t.lc_max, (ClassBounds{130, 10, 10}));
  EXPECT_EQ(t.fe_min, 2);
  EXPECT_EQ(t.fe_max, 5);
  EXPECT_NO_THROW(t.Validate());
  Thresholds bad = t;
  bad.lm_min = 30;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = t;
  bad.lc_min.noa = 11;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
}

TEST(LikelihoodProperty, MonotoneAndTotal) {
  Thresholds t;
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(0, 300);
  for (int i = 0; i < 5000; ++i) {
    int a = d(rng);
    int b = a + d(rng) % 40;
    EXPECT_LE(likelihood_long_method(Loc(a), t),
              likelihood_long_method(Loc(b), t));
    EXPECT_LE(likelihood_feature_envy(Nfdi(a % 20), t),
              likelihood_feature_envy(Nfdi(a % 20 + b % 5), t));
    MetricVector lo = Cls(a, a % 25, (a / 3) % 25);
    MetricVector hi = Cls(*lo.nom + b, *lo.nom + b % 7, *lo.noa + b % 5);
    hi.loc = lo.loc + b % 50;
    EXPECT_LE(likelihood_large_class(lo, t), likelihood_large_class(hi, t));
    for (Smell s : {Smell::kLongMethod, Smell::kLargeClass,
                    Smell::kFeatureEnvy}) {
      Likelihood l = LikelihoodFor(s, Cls(a, a % 20, b % 20), t);
      EXPECT_TRUE(l == Likelihood::kLow || l == Likelihood::kModerate ||
                  l == Likelihood::kHigh);
    }
  }
}

// Recount NFDI from the raw access sites with an explicit ancestor walk.
TEST(NfdiProperty, MatchesBruteForceRecount) {
  ProjectModel m = CordovaModel();
  int methods = 0;
  for (const auto& c : m.classes()) {
    std::set<std::string> mine = {c->qualified_name};
    for (const ClassEntity* a : m.Ancestors(*c)) mine.insert(a->qualified_name);
    for (const MethodEntity& me : c->methods) {
      int expected = 0;
      for (const FieldAccessSite& s : me.field_accesses) {
        if (s.internal && m.LookupClass(s.target_class) != nullptr &&
            !mine.count(s.target_class)) {
          ++expected;
        }
      }
      EXPECT_EQ(nfdi(me, m), expected) << me.owner << "#" << me.name;
      ++methods;
    }
  }
  EXPECT_GT(methods, 500);
}

TEST(LocProperty, NeverExceedsSpanExtent) {
  for (const ProjectModel& m : {OracleModel(), CordovaModel()}) {
    for (const auto& c : m.classes()) {
      EXPECT_LE(loc(*c), static_cast<int>(c->span.Extent()));
      EXPECT_GE(loc(*c), 1);
      for (const MethodEntity& me : c->methods) {
        EXPECT_LE(loc(me), static_cast<int>(me.span.Extent()));
        EXPECT_GE(loc(me), 1);
      }
    }
  }
}

TEST(AdvisorTest, DefaultHeuristic) {
  ProjectModel m = OracleModel();
  HeuristicAdvisor advisor;
  // Straight-line, one parameter.
  EXPECT_EQ(advisor.Judge(Method(m, "shop.Book", "discount"), m),
            Verdict::kNegative);
  EXPECT_EQ(advisor.Judge(Method(m, "shop.Report", "render"), m),
            Verdict::kPositive);
  EXPECT_EQ(MaxNestingDepth(Method(m, "shop.Report", "deep")), 4);
  EXPECT_EQ(advisor.Judge(Method(m, "shop.Report", "deep"), m),
            Verdict::kPositive);
  EXPECT_EQ(advisor_long_method(Method(m, "shop.Report", "grow"), m),
            Verdict::kNegative);
  EXPECT_NE(advisor.Name().find("nesting>3"), std::string::npos);
}

TEST(AdvisorTest, ForeignClassesAndElseIfChains) {
  ProjectModel m = BuildModelFromSources(
      "p", {{"A.java",
             "class A { int x; }\nclass B { int x; }\nclass C { int x; }\n"
             "class D { int x; }\n"
             "class U {\n"
             "  int four(A a, B b, C c, D d) { return a.x + b.x + c.x + d.x; }\n"
             "  int three(A a, B b, C c) { return a.x + b.x + c.x; }\n"
             "  int chain(int v) {\n"
             "    if (v == 1) { return 1; } else if (v == 2) { return 2; }\n"
             "    else if (v == 3) { return 3; } else if (v == 4) {\n"
             "      return 4; }\n"
             "    return 0;\n"
             "  }\n"
             "}\n"}});
  HeuristicAdvisor advisor;
  EXPECT_EQ(DistinctForeignClasses(Method(m, "U", "four"), m), 4);
  EXPECT_EQ(advisor.Judge(Method(m, "U", "four"), m), Verdict::kPositive);
  EXPECT_EQ(advisor.Judge(Method(m, "U", "three"), m), Verdict::kNegative);
  EXPECT_EQ(MaxNestingDepth(Method(m, "U", "chain")), 1);
  HeuristicAdvisor strict({0, 4, 3});
  EXPECT_EQ(strict.Judge(Method(m, "U", "chain"), m), Verdict::kPositive);
}

TEST(EnumNamesTest, RoundTrip) {
  for (Smell s : {Smell::kLongMethod, Smell::kLargeClass, Smell::kFeatureEnvy}) {
    EXPECT_EQ(ParseSmell(ToString(s)), s);
    EXPECT_EQ(ParseSmell(SmellCode(s)), s);
  }
  for (Likelihood l :
       {Likelihood::kLow, Likelihood::kModerate, Likelihood::kHigh}) {
    EXPECT_EQ(ParseLikelihood(ToString(l)), l);
  }
  EXPECT_EQ(ParseVerdict("POSITIVE"), Verdict::kPositive);
  EXPECT_FALSE(ParseSmell("GOD_CLASS").has_value());
}

}  // namespace
}  // namespace smellgen
