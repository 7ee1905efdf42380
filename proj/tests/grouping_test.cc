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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "smellgen/ingest.h"
#include "support/oracles.h"

namespace smellgen {
namespace {

namespace fs = std::filesystem;

using oracle::Expected;
using oracle::Matches;
using oracle::Row;

Likelihood Band(int b) { return static_cast<Likelihood>(b); }

CandidateSample Make(Smell s, Origin o, Likelihood l,
                     std::optional<Verdict> advisor) {
  return oracle::MakeCandidate(s, o, l, advisor);
}

constexpr Smell kSmells[] = {Smell::kLongMethod, Smell::kLargeClass,
                             Smell::kFeatureEnvy};
constexpr Origin kOrigins[] = {Origin::kGenerated, Origin::kOriginal};

TEST(GroupingTest, ExactlyOneRulePerCell) {
  int cells = 0;
  for (Smell s : kSmells) {
    for (Origin o : kOrigins) {
      bool takes_advisor = s == Smell::kLongMethod && o == Origin::kOriginal;
      for (int band = 0; band < 3; ++band) {
        for (int adv : takes_advisor ? std::vector<int>{0, 1}
                                     : std::vector<int>{-1}) {
          ++cells;
          std::vector<const Row*> rows = Matches(s, o, band, adv);
          ASSERT_EQ(rows.size(), 1u)
              << ToString(s) << " " << ToString(o) << " band " << band;
          std::optional<Verdict> v;
          if (adv >= 0) v = adv == 0 ? Verdict::kPositive : Verdict::kNegative;
          EXPECT_EQ(assign_group(Make(s, o, Band(band), v)),
                    Expected(*rows[0]));
        }
      }
    }
  }
  EXPECT_EQ(cells, 21);
}

TEST(GroupingTest, EveryRuleIsReachableAndDescribed) {
  std::set<std::string> fired;
  for (const Row& r : oracle::Table()) fired.insert(r.rule);
  std::set<std::string> listed(AllRuleIds().begin(), AllRuleIds().end());
  EXPECT_EQ(fired, listed);
  for (const std::string& id : AllRuleIds()) {
    EXPECT_FALSE(DescribeRule(id).empty()) << id;
  }
  EXPECT_TRUE(DescribeRule("LM.T9.Z").empty());
}

TEST(GroupingTest, RandomizedAgreementWithTable) {
  std::mt19937 rng(20260416);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> loc(0, 300);
  std::uniform_int_distribution<int> small(0, 25);
  std::uniform_int_distribution<int> nfdi(0, 12);
  Thresholds t;
  std::map<std::string, int> per_rule;
  for (int i = 0; i < 10000; ++i) {
    Smell s = kSmells[pick(rng)];
    Origin o = kOrigins[coin(rng)];
    MetricVector v;
    v.loc = loc(rng);
    if (s == Smell::kLargeClass) {
      v.nom = small(rng);
      v.noa = small(rng);
      // Bias a share of classes into the corners so both extreme bands show.
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
    CandidateSample c = Make(s, o, LikelihoodFor(s, v, t), adv);
    c.metrics = v;
    int band = oracle::Band(s, v);
    ASSERT_EQ(static_cast<int>(c.likelihood), band) << i;
    std::vector<const Row*> rows = Matches(s, o, band, adv_code);
    ASSERT_EQ(rows.size(), 1u) << i;
    GroupAssignment got = assign_group(c);
    ASSERT_EQ(got, Expected(*rows[0])) << i;
    ++per_rule[got.rule_id];

    if (got.group == Group::kAuto && got.auto_label == Verdict::kPositive) {
      if (s == Smell::kLongMethod) {
        EXPECT_GT(v.loc, 30);
      } else if (s == Smell::kFeatureEnvy) {
        EXPECT_GT(*v.nfdi, 5);
      }
    }
    if (s == Smell::kLargeClass && got.group == Group::kAuto &&
        got.auto_label == Verdict::kNegative) {
      EXPECT_LT(v.loc, 70);
      EXPECT_LT(*v.nom, 7);
      EXPECT_LT(*v.noa, 5);
    }
  }
  EXPECT_EQ(per_rule.size(), AllRuleIds().size());
}

TEST(GroupingTest, WorkedExamples) {
  Thresholds t;
  auto route = [&](Smell s, Origin o, MetricVector v,
                   std::optional<Verdict> adv) {
    CandidateSample c = Make(s, o, LikelihoodFor(s, v, t), adv);
    c.metrics = v;
    return assign_group(c);
  };
  MetricVector lm45{45, {}, {}, {}};
  EXPECT_EQ(route(Smell::kLongMethod, Origin::kGenerated, lm45, std::nullopt),
            (GroupAssignment{Group::kAuto, Verdict::kPositive, "LM.T1.A1"}));
  MetricVector lm10{10, {}, {}, {}};
  EXPECT_EQ(route(Smell::kLongMethod, Origin::kOriginal, lm10,
                  Verdict::kNegative),
            (GroupAssignment{Group::kAuto, Verdict::kNegative, "LM.T1.A2"}));
  MetricVector fe7{3, {}, {}, 7};
  EXPECT_EQ(route(Smell::kFeatureEnvy, Origin::kGenerated, fe7, std::nullopt),
            (GroupAssignment{Group::kAuto, Verdict::kPositive, "FE.T3.A1"}));
  MetricVector lc{60, 4, 3, {}};
  EXPECT_EQ(route(Smell::kLargeClass, Origin::kGenerated, lc, std::nullopt),
            (GroupAssignment{Group::kDiscard, std::nullopt, "LC.D-G1"}));
  MetricVector lm20{20, {}, {}, {}};
  EXPECT_EQ(route(Smell::kLongMethod, Origin::kOriginal, lm20,
                  Verdict::kPositive),
            (GroupAssignment{Group::kManual, std::nullopt, "LM.D-G2"}));
  // Band edges: 30 is still moderate, 15 already is.
  MetricVector lm30{30, {}, {}, {}};
  EXPECT_EQ(route(Smell::kLongMethod, Origin::kGenerated, lm30, std::nullopt)
                .rule_id,
            "LM.T1.M2");
  MetricVector lm15{15, {}, {}, {}};
  EXPECT_EQ(route(Smell::kLongMethod, Origin::kOriginal, lm15,
                  Verdict::kNegative)
                .rule_id,
            "LM.T1.M3");
}

TEST(GroupingTest, MalformedCandidatesAreRejected) {
  EXPECT_THROW(assign_group(Make(Smell::kLongMethod, Origin::kOriginal,
                                 Likelihood::kLow, std::nullopt)),
               GroupingError);
  EXPECT_THROW(assign_group(Make(Smell::kFeatureEnvy, Origin::kOriginal,
                                 Likelihood::kLow, Verdict::kNegative)),
               GroupingError);
  EXPECT_THROW(assign_group(Make(Smell::kLongMethod, Origin::kGenerated,
                                 Likelihood::kHigh, Verdict::kNegative)),
               GroupingError);
  CandidateSample no_truth =
      Make(Smell::kLargeClass, Origin::kGenerated, Likelihood::kHigh,
           std::nullopt);
  no_truth.ground_truth.reset();
  EXPECT_THROW(assign_group(no_truth), GroupingError);
}

TEST(GroupingTest, EnumNamesRoundTrip) {
  for (Origin o : kOrigins) EXPECT_EQ(ParseOrigin(ToString(o)), o);
  for (Group g : {Group::kAuto, Group::kManual, Group::kDiscard}) {
    EXPECT_EQ(ParseGroup(ToString(g)), g);
  }
  EXPECT_EQ(ToString(Group::kAuto), "A_GROUP");
  EXPECT_EQ(ParseGroup("B_GROUP"), std::nullopt);
}

// --- Original candidate pool -------------------------------------------------

ProjectModel Shop() {
  CorpusConfig c;
  c.root_dirs = {fs::path(SMELLGEN_FIXTURES) / "gen" / "shop"};
  c.project_id = "shop";
  return build_project_model(c);
}

TEST(OriginalCandidatesTest, FixtureMatchesHandCensus) {
  // Classes: Animal Book Campaign Cart Dog Marker Price Printer Product
  // Tagged User util.Texts = 12. Methods with bodies, constructors included:
  // Animal 1, Book 4, Campaign 1, Cart 2, Dog 1, Price 1, Printer 10,
  // Product 2, User 3, Texts 2 = 27.
  ProjectModel m = Shop();
  std::vector<CandidateSample> pool = collect_original_candidates(m);
  std::map<Smell, int> count;
  for (const CandidateSample& c : pool) {
    ++count[c.smell];
    EXPECT_EQ(c.origin, Origin::kOriginal);
    EXPECT_NO_THROW(assign_group(c)) << c.provenance.entity;
    EXPECT_EQ(c.advisor.has_value(), c.smell == Smell::kLongMethod);
  }
  EXPECT_EQ(count[Smell::kLargeClass], 12);
  EXPECT_EQ(count[Smell::kLongMethod], 27);
  EXPECT_EQ(count[Smell::kFeatureEnvy], 27);
}

TEST(OriginalCandidatesTest, EmptyProjectGivesEmptyPool) {
  EXPECT_TRUE(collect_original_candidates(ProjectModel()).empty());
}

TEST(OriginalCandidatesTest, CandidatesCarryMetricsAndProvenance) {
  ProjectModel m = Shop();
  for (const CandidateSample& c : collect_original_candidates(m)) {
    if (c.provenance.entity != "shop.Book#discount/1") continue;
    EXPECT_EQ(c.metrics.loc, 5);
    EXPECT_EQ(c.metrics.nfdi, 3);
    EXPECT_EQ(c.provenance.files, std::vector<std::string>{"Book.java"});
    EXPECT_EQ(c.context_sources.count("owner_class"), 1u);
    if (c.smell == Smell::kLongMethod) {
      EXPECT_EQ(c.advisor, Verdict::kNegative);
      EXPECT_EQ(c.provenance.details.at("advisor"),
                HeuristicAdvisor().Name());
      EXPECT_EQ(assign_group(c).rule_id, "LM.T1.A2");
    } else {
      EXPECT_EQ(assign_group(c).rule_id, "FE.T3.M2");
    }
  }
}

class AlwaysPositive : public Advisor {
 public:
  Verdict Judge(const MethodEntity&, const ProjectModel&) const override {
    return Verdict::kPositive;
  }
  std::string Name() const override { return "always"; }
};

TEST(OriginalCandidatesTest, AdvisorIsPluggable) {
  ProjectModel m = Shop();
  AlwaysPositive adv;
  for (const CandidateSample& c : collect_original_candidates(m, {}, &adv)) {
    if (c.smell != Smell::kLongMethod) continue;
    EXPECT_EQ(c.provenance.details.at("advisor"), "always");
    EXPECT_NE(assign_group(c).rule_id, "LM.T1.A2");
  }
}

TEST(OriginalCandidatesTest, GeneratedSamplesBecomeCandidates) {
  ProjectModel m = Shop();
  GenerationResult r = GenerateSamples(m);
  ASSERT_FALSE(r.samples.empty());
  for (const GeneratedSample& s : r.samples) {
    CandidateSample c = CandidateFromGenerated(s);
    EXPECT_EQ(c.origin, Origin::kGenerated);
    EXPECT_TRUE(c.ground_truth.has_value());
    EXPECT_FALSE(c.advisor.has_value());
    EXPECT_EQ(c.likelihood, LikelihoodFor(s.smell, s.metrics, Thresholds{}));
    EXPECT_NO_THROW(assign_group(c));
  }
}

}  // namespace
}  // namespace smellgen
