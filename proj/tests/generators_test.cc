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

#include "smellgen/generators.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <memory>
#include <set>
#include <string>

#include "smellgen/ingest.h"
#include "smellgen/java/parser.h"
#include "support/oracles.h"

namespace smellgen {
namespace {

namespace fs = std::filesystem;
using ::testing::Contains;
using ::testing::HasSubstr;
using ::testing::Not;

ProjectModel Load(const fs::path& root, const std::string& id) {
  CorpusConfig c;
  c.root_dirs = {root};
  c.project_id = id;
  return build_project_model(c);
}

const ProjectModel& Shop() {
  static const ProjectModel* m =
      new ProjectModel(Load(fs::path(SMELLGEN_FIXTURES) / "gen" / "shop", "shop"));
  return *m;
}

const ProjectModel& Cordova() {
  static const ProjectModel* m = new ProjectModel(
      Load(fs::path(SMELLGEN_CORPUS) / "cordova-android" / "src", "cordova"));
  return *m;
}

using oracle::LineCount;

MethodRef Ref(const std::string& owner, const std::string& name, int arity) {
  MethodRef r;
  r.owner = owner;
  r.name = name;
  r.arity = arity;
  return r;
}

const GeneratedSample& Sample(const GenerationResult& r,
                              const std::string& key_prefix) {
  for (const GeneratedSample& s : r.samples) {
    if (s.Key().rfind(key_prefix, 0) == 0) return s;
  }
  throw std::runtime_error("no sample " + key_prefix);
}

std::string DiscardReason(const GenerationResult& r, const std::string& key) {
  for (const Discard& d : r.discards) {
    if (d.key == key) return d.reason;
  }
  return "<not discarded>";
}

const GenerationResult& ShopResult() {
  static const GenerationResult* r = new GenerationResult(GenerateSamples(Shop()));
  return *r;
}

// --- Long method ------------------------------------------------------------

TEST(LongMethodTest, StatementCallIsReplacedByCalleeBody) {
  const GeneratedSample& s =
      Sample(ShopResult(), "LM|shop|shop.Printer#main/0|P1_STATEMENT");
  EXPECT_EQ(s.new_source,
            "public void main() {\n"
            "        int[] result = sort(data);\n"
            "        for (int i = 0; i < result.length; i++) {\n"
            "            System.out.print(result[i]);\n"
            "        }\n"
            "    }");
  EXPECT_EQ(s.ground_truth, RefactoringAction::ExtractLines({{3, 5}}));
  EXPECT_EQ(s.provenance.details.at("callee"), "shop.Printer#print_ary/1");
  EXPECT_EQ(s.provenance.entity, "shop.Printer#main/0");
  EXPECT_EQ(s.smell, Smell::kLongMethod);
}

TEST(LongMethodTest, AssignedCallKeepsTheAssignment) {
  const GeneratedSample& s =
      Sample(ShopResult(), "LM|shop|shop.Printer#main/0|P2_ASSIGNED");
  EXPECT_THAT(s.new_source, HasSubstr("int[] copy = data.clone();"));
  EXPECT_THAT(s.new_source, HasSubstr("int[] result = copy;"));
  EXPECT_EQ(s.ground_truth, RefactoringAction::ExtractLines({{2, 3}}));
}

TEST(LongMethodTest, ClashingLocalsAreRenamed) {
  const GeneratedSample& s =
      Sample(ShopResult(), "LM|shop|shop.Printer#total/0|P2_ASSIGNED");
  EXPECT_EQ(s.new_source,
            "int total() {\n"
            "        int x = 1;\n"
            "        int y = 2;\n"
            "        int x__m1 = x;\n"
            "        int y__m1 = y;\n"
            "        int s = x__m1 + y__m1;\n"
            "        return s;\n"
            "    }");
  EXPECT_EQ(s.provenance.details.at("renamed"), "x->x__m1,y->y__m1");
  EXPECT_EQ(s.ground_truth, RefactoringAction::ExtractLines({{4, 5}}));
}

TEST(LongMethodTest, NestedCallGetsATemporary) {
  const GeneratedSample& s =
      Sample(ShopResult(), "LM|shop|shop.Printer#twice/0|P3_EXPRESSION");
  EXPECT_EQ(s.new_source,
            "int twice() {\n"
            "        int k = 3;\n"
            "        int x = k;\n"
            "        int y = (k + 1);\n"
            "        int sum__ret = x + y;\n"
            "        return 2 * sum__ret;\n"
            "    }");
  EXPECT_EQ(s.provenance.details.at("temporary"), "sum__ret");
  EXPECT_EQ(s.ground_truth, RefactoringAction::ExtractLines({{3, 5}}));
}

TEST(LongMethodTest, DegenerateAndForeignCalleesAreDiscarded) {
  const GenerationResult& r = ShopResult();
  EXPECT_THAT(DiscardReason(r, "LM|shop.Printer#quiet/0|0|shop.Printer#noop/0"),
              HasSubstr("degenerate"));
  EXPECT_THAT(
      DiscardReason(r, "LM|shop.util.Texts#shout/1|0|shop.util.Texts#trim/1"),
      HasSubstr("degenerate"));
  EXPECT_THAT(DiscardReason(r, "LM|shop.User#buy/1|0|shop.Cart#add/1"),
              HasSubstr("another class"));
}

TEST(LongMethodTest, MutualRecursionYieldsNoCandidate) {
  for (const MergeCandidateLM& c : find_merge_candidates_long_method(Shop())) {
    EXPECT_NE(c.caller.name, "ping") << CandidateKey(c);
    EXPECT_NE(c.caller.name, "pong") << CandidateKey(c);
  }
}

TEST(LongMethodTest, ExtractInverseHoldsOnFixture) {
  const ProjectModel& m = Shop();
  for (const MergeCandidateLM& c : find_merge_candidates_long_method(m)) {
    Outcome o = merge_methods(c, m);
    if (!o.sample) continue;
    EXPECT_EQ(CheckExtractInverse(*o.sample, c, m), "") << CandidateKey(c);
    // A range shifted by one line must no longer invert the merge.
    GeneratedSample shifted = *o.sample;
    for (LineRange& r : shifted.ground_truth.extract_lines) {
      ++r.first;
      ++r.last;
    }
    EXPECT_NE(CheckExtractInverse(shifted, c, m), "") << CandidateKey(c);
  }
}

// --- Large class ------------------------------------------------------------

TEST(LargeClassTest, ParentIsFoldedIntoChild) {
  const GeneratedSample& s =
      Sample(ShopResult(), "LC|shop|shop.Book|P1_INHERITANCE");
  EXPECT_THAT(s.new_source, HasSubstr("public class Book {"));
  EXPECT_THAT(s.new_source, Not(HasSubstr("super();")));
  EXPECT_THAT(s.new_source, HasSubstr("protected String name;\n"
                                      "    protected double basePrice;"));
  EXPECT_EQ(s.ground_truth,
            RefactoringAction::ExtractMembers(
                {"name", "basePrice", "getName", "listPrice"}));
  EXPECT_EQ(s.provenance.details.at("absorbed"), "shop.Product");
  EXPECT_EQ(s.metrics.noa, 4);
  EXPECT_EQ(s.smell, Smell::kLargeClass);
}

TEST(LargeClassTest, UsedClassReplacesItsField) {
  const GeneratedSample& s = Sample(ShopResult(), "LC|shop|shop.User|P2_USAGE");
  EXPECT_THAT(s.new_source, Not(HasSubstr("cart")));
  EXPECT_THAT(s.new_source, HasSubstr("return size() + count;"));
  EXPECT_THAT(s.new_source, HasSubstr("        add(b);\n"
                                      "        items.add(b);\n"));
  EXPECT_EQ(s.provenance.details.at("removed_field"), "cart");
  EXPECT_EQ(s.ground_truth, RefactoringAction::ExtractMembers(
                                {"items", "count", "add", "size"}));
}

TEST(LargeClassTest, MemberCollisionExcludesPair) {
  for (const MergeCandidateLC& c : find_merge_candidates_large_class(Shop())) {
    EXPECT_FALSE(c.absorber == "shop.Dog" && c.absorbed == "shop.Animal");
  }
}

TEST(LargeClassTest, EmptyAbsorbedClassIsDegenerate) {
  EXPECT_THAT(DiscardReason(ShopResult(),
                            "LC|shop.Tagged|P1_INHERITANCE|shop.Marker"),
              HasSubstr("degenerate"));
}

TEST(LargeClassTest, MembersInverseHoldsOnFixture) {
  const ProjectModel& m = Shop();
  for (const MergeCandidateLC& c : find_merge_candidates_large_class(m)) {
    Outcome o = merge_classes(c, m);
    if (!o.sample) continue;
    EXPECT_EQ(CheckMembersInverse(*o.sample, c, m), "") << CandidateKey(c);
    GeneratedSample partial = *o.sample;
    partial.ground_truth.extract_members.pop_back();
    EXPECT_NE(CheckMembersInverse(partial, c, m), "") << CandidateKey(c);
  }
}

// --- Feature envy -----------------------------------------------------------

TEST(FeatureEnvyTest, MoveThroughFieldAddsBackReference) {
  const GeneratedSample& s =
      Sample(ShopResult(), "FE|shop|shop.Price#discount/1|P2_PROPERTY");
  EXPECT_EQ(s.ground_truth, RefactoringAction::MoveMethod("shop.Book"));
  EXPECT_EQ(s.provenance.details.at("added_field"), "book");
  EXPECT_THAT(s.context_sources.at("target_class"),
              HasSubstr("private Book book;"));
  EXPECT_THAT(s.context_sources.at("original_class"),
              Not(HasSubstr("discount")));
  EXPECT_EQ(s.smell, Smell::kFeatureEnvy);
}

TEST(FeatureEnvyTest, MoveThroughParameterSwapsParameter) {
  const GeneratedSample& s =
      Sample(ShopResult(), "FE|shop|shop.Campaign#discount/1|P3_PARAMETER");
  EXPECT_EQ(s.new_source,
            "public double discount(Book book) {\n"
            "        double base = book.price.amount;\n"
            "        double cut = book.price.amount * getRate();\n"
            "        return base - cut;\n"
            "    }");
  EXPECT_EQ(s.provenance.details.at("original_owner"), "shop.Book");
  EXPECT_EQ(s.provenance.details.at("via"), "campaign");
}

TEST(FeatureEnvyTest, MoveToParentIsVerbatimAndCarriesDoc) {
  const GeneratedSample& s =
      Sample(ShopResult(), "FE|shop|shop.Product#title/0|P1_PARENT");
  const MethodEntity* original =
      Shop().FindMethod(Ref("shop.Book", "title", 0));
  ASSERT_NE(original, nullptr);
  EXPECT_EQ(s.new_source, original->source_text);
  EXPECT_THAT(s.context_sources.at("target_class"),
              HasSubstr("    /**\n     * Shelf label for the book.\n     */\n"
                        "    public String title() {"));
  EXPECT_THAT(s.context_sources.at("original_class"),
              Not(HasSubstr("Shelf label")));
}

TEST(FeatureEnvyTest, UniqueFieldBlocksMoveToParent) {
  std::set<std::string> parent_moves;
  for (const MoveCandidateFE& c : find_move_candidates_feature_envy(Shop())) {
    if (c.pattern == MovePattern::kParent) {
      parent_moves.insert(EntityId(c.method));
    }
  }
  EXPECT_THAT(parent_moves, Not(Contains("shop.Book#tags/0")));
  EXPECT_THAT(parent_moves, Not(Contains("shop.Book#discount/1")));
  EXPECT_THAT(parent_moves, Contains("shop.Book#title/0"));
}

TEST(FeatureEnvyTest, OverrideAndForeignCallerAreDiscarded) {
  const GenerationResult& r = ShopResult();
  EXPECT_THAT(DiscardReason(r, "FE|shop.Dog#toString/0|P1_PARENT|shop.Animal"),
              HasSubstr("overrides"));
  EXPECT_THAT(DiscardReason(r, "FE|shop.Cart#add/1|P3_PARAMETER|shop.Book"),
              HasSubstr("called from another class"));
}

TEST(FeatureEnvyTest, SameArityOverloadsAreLeftAlone) {
  for (const MoveCandidateFE& c : find_move_candidates_feature_envy(Cordova())) {
    EXPECT_NE(EntityId(c.method),
              "org.apache.cordova.CoreAndroid#sendEventMessage/1");
  }
}

// --- Properties over every sample -------------------------------------------

void CheckCommon(const ProjectModel& m, const GeneratedSample& s) {
  EXPECT_THAT(oracle::WellFormednessProblems(m, s), ::testing::IsEmpty());
}

struct Tally {
  int lm = 0;
  int lc = 0;
  int fe = 0;
};

Tally CheckAllSamples(const ProjectModel& m) {
  Tally t;
  for (const MergeCandidateLM& c : find_merge_candidates_long_method(m)) {
    Outcome o = merge_methods(c, m);
    if (!o.sample) continue;
    ++t.lm;
    CheckCommon(m, *o.sample);
    EXPECT_EQ(CheckExtractInverse(*o.sample, c, m), "") << CandidateKey(c);
  }
  for (const MergeCandidateLC& c : find_merge_candidates_large_class(m)) {
    Outcome o = merge_classes(c, m);
    if (!o.sample) continue;
    ++t.lc;
    CheckCommon(m, *o.sample);
    EXPECT_EQ(CheckMembersInverse(*o.sample, c, m), "") << CandidateKey(c);
  }
  for (const MoveCandidateFE& c : find_move_candidates_feature_envy(m)) {
    Outcome o = move_method(c, m);
    if (!o.sample) continue;
    ++t.fe;
    const GeneratedSample& s = *o.sample;
    CheckCommon(m, s);
    // Moving back must restore an owner that still lacks the method.
    EXPECT_EQ(s.ground_truth.move_target, c.source_class);
    EXPECT_EQ(s.provenance.details.at("generation_target"), c.target_class);
    std::optional<ProjectModel> after =
        RebuildWithReplacedFiles(m, s.file_edits);
    const ClassEntity* src =
        after ? after->LookupClass(c.source_class) : nullptr;
    if (src == nullptr) {
      ADD_FAILURE() << "source class lost: " << CandidateKey(c);
      continue;
    }
    for (const MethodEntity& me : src->methods) {
      EXPECT_FALSE(me.name == c.method.name &&
                   me.arity() == c.method.arity)
          << CandidateKey(c);
    }
  }
  return t;
}

TEST(GeneratorPropertyTest, FixtureSamplesAreSound) {
  Tally t = CheckAllSamples(Shop());
  EXPECT_EQ(t.lm, 4);
  EXPECT_EQ(t.lc, 3);
  EXPECT_EQ(t.fe, 6);
}

TEST(GeneratorPropertyTest, CorpusSamplesAreSound) {
  Tally t = CheckAllSamples(Cordova());
  EXPECT_GT(t.lm, 0);
  EXPECT_GT(t.lc, 0);
  EXPECT_GT(t.fe, 0);
}

TEST(GeneratorPropertyTest, RunsAreDeterministic) {
  GenerationResult a = GenerateSamples(Cordova());
  GenerationResult b = GenerateSamples(Cordova());
  ASSERT_EQ(a.samples.size(), b.samples.size());
  std::set<std::string> keys;
  for (size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].Key(), b.samples[i].Key());
    EXPECT_EQ(a.samples[i].new_source, b.samples[i].new_source);
    EXPECT_EQ(a.samples[i].context_sources, b.samples[i].context_sources);
    EXPECT_EQ(a.samples[i].ground_truth, b.samples[i].ground_truth);
    keys.insert(a.samples[i].Key());
  }
  EXPECT_EQ(keys.size(), a.samples.size());
  EXPECT_EQ(a.candidates, a.samples.size() + a.discards.size());
}

TEST(GeneratorPropertyTest, CandidateLimitTakesKeyOrderPrefix) {
  GenerationConfig cfg;
  cfg.max_candidates_per_smell = 2;
  GenerationResult r = GenerateSamples(Shop(), cfg);
  EXPECT_EQ(r.candidates, 6u);
  GenerationConfig only_lc;
  only_lc.long_method = false;
  only_lc.feature_envy = false;
  for (const GeneratedSample& s : GenerateSamples(Shop(), only_lc).samples) {
    EXPECT_EQ(s.smell, Smell::kLargeClass);
  }
}

TEST(RefactoringActionTest, CheckRejectsMalformedActions) {
  EXPECT_EQ(RefactoringAction::ExtractLines({{1, 3}}).Check(3), "");
  EXPECT_NE(RefactoringAction::ExtractLines({{2, 4}}).Check(3), "");
  EXPECT_NE(RefactoringAction::ExtractLines({{3, 2}}).Check(3), "");
  EXPECT_NE(RefactoringAction::ExtractLines({}).Check(3), "");
  EXPECT_NE(RefactoringAction::ExtractMembers({}).Check(3), "");
  EXPECT_NE(RefactoringAction::MoveMethod("").Check(3), "");
  RefactoringAction mixed = RefactoringAction::MoveMethod("a.B");
  mixed.extract_members = {"x"};
  EXPECT_NE(mixed.Check(3), "");
  for (auto k : {RefactoringAction::Kind::kExtractLines,
                 RefactoringAction::Kind::kExtractMembers,
                 RefactoringAction::Kind::kMoveMethod}) {
    EXPECT_EQ(ParseActionKind(ToString(k)), k);
  }
  EXPECT_EQ(ParseActionKind("INLINE"), std::nullopt);
}

TEST(SampleKeyTest, KeyListsDetailsInOrder) {
  GeneratedSample s;
  s.smell = Smell::kFeatureEnvy;
  s.provenance.project = "p";
  s.provenance.entity = "a.B#m/0";
  s.provenance.pattern = "P2_PROPERTY";
  s.provenance.details = {{"via", "f"}, {"added_field", "b"}};
  EXPECT_EQ(s.Key(), "FE|p|a.B#m/0|P2_PROPERTY|added_field=b|via=f");
  EXPECT_EQ(EntityId(Ref("a.B", "m", 2)), "a.B#m/2");
}

}  // namespace
}  // namespace smellgen
