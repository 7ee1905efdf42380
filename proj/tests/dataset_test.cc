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

#include "smellgen/dataset.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace smellgen {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("smellgen_ds_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

SampleRecord Rec(std::string project, std::string entity, Smell smell,
                 std::optional<Verdict> label, Split split = Split::kTrain) {
  SampleRecord r;
  r.smell = smell;
  r.origin = Origin::kOriginal;
  r.group = label ? Group::kAuto : Group::kManual;
  r.label = label;
  r.split = split;
  r.code = "void " + entity + "() {\n}";
  r.metrics.loc = 2;
  r.provenance.project = std::move(project);
  r.provenance.entity = std::move(entity);
  r.provenance.pattern = "ORIGINAL";
  r.provenance.files = {"a/B.java"};
  r.provenance.spans = {{3, 4}};
  r.provenance.rule_id = "LM.T1.A2";
  if (label) r.provenance.label_source = "rule:LM.T1.A2";
  r.provenance.pipeline_version = std::string(kPipelineVersion);
  r.id = ComputeRecordId(r);
  return r;
}

std::vector<SampleRecord> ThreeRecords() {
  SampleRecord a = Rec("p", "a.B#m/0", Smell::kLongMethod, Verdict::kNegative);
  a.advisor = Verdict::kNegative;
  a.context["owner_class"] = "class B {\n  \"quoted\" \\ tab\t\n}";
  SampleRecord b = Rec("p", "a.B", Smell::kLargeClass, std::nullopt);
  b.metrics = {150, 12, 11, std::nullopt};
  b.origin = Origin::kGenerated;
  b.ground_truth = RefactoringAction::ExtractMembers({"x", "run"});
  b.provenance.details = {{"absorbed", "a.C"}};
  b.likelihood = Likelihood::kHigh;
  b.id = ComputeRecordId(b);
  SampleRecord c = Rec("p", "a.C#go/1", Smell::kFeatureEnvy, Verdict::kPositive,
                       Split::kTrain);
  c.origin = Origin::kGenerated;
  c.metrics.nfdi = 7;
  c.ground_truth = RefactoringAction::MoveMethod("a.B");
  c.code = "ünïcode ✓";
  c.id = ComputeRecordId(c);
  return {a, b, c};
}

TEST(FnvTest, KnownVectors) {
  EXPECT_EQ(Fnv1a64Hex(""), "cbf29ce484222325");
  EXPECT_EQ(Fnv1a64Hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(Fnv1a64Hex("foobar"), "85944171f73967e8");
}

TEST(RecordIdTest, StableAndSensitiveToIdentity) {
  SampleRecord a = Rec("p", "a.B#m/0", Smell::kLongMethod, Verdict::kNegative);
  SampleRecord b = a;
  b.code = "something else";
  b.label = Verdict::kPositive;
  EXPECT_EQ(ComputeRecordId(a), ComputeRecordId(b));
  b.provenance.details["via"] = "f";
  EXPECT_NE(ComputeRecordId(a), ComputeRecordId(b));
  SampleRecord c = a;
  c.provenance.spans = {{3, 5}};
  EXPECT_NE(ComputeRecordId(a), ComputeRecordId(c));
  SampleRecord d = a;
  d.smell = Smell::kFeatureEnvy;
  EXPECT_NE(ComputeRecordId(a), ComputeRecordId(d));
  EXPECT_EQ(a.id.size(), 16u);
}

TEST(RecordIdTest, MakeRecordCarriesRuleAndLabel) {
  CandidateSample c;
  c.smell = Smell::kFeatureEnvy;
  c.origin = Origin::kGenerated;
  c.entity_source = "void m() {}";
  c.metrics.loc = 1;
  c.metrics.nfdi = 6;
  c.likelihood = Likelihood::kHigh;
  c.ground_truth = RefactoringAction::MoveMethod("a.B");
  c.provenance.project = "p";
  c.provenance.entity = "a.C#m/0";
  c.provenance.pattern = "P2_PROPERTY";
  GroupAssignment g = assign_group(c);
  SampleRecord r = MakeRecord(c, g, Split::kEval);
  EXPECT_EQ(r.group, Group::kAuto);
  EXPECT_EQ(r.label, Verdict::kPositive);
  EXPECT_EQ(r.provenance.rule_id, "FE.T3.A1");
  EXPECT_EQ(r.provenance.label_source, "rule:FE.T3.A1");
  EXPECT_EQ(r.split, Split::kEval);
  EXPECT_EQ(r.id, ComputeRecordId(r));
  EXPECT_EQ(MakeRecord(c, g, Split::kEval).id, r.id);
}

TEST(RecordFileTest, RoundTripIsFieldForField) {
  TempDir dir;
  fs::path p = dir.path() / "records.jsonl";
  std::vector<SampleRecord> in = ThreeRecords();
  write_records(in, p);
  EXPECT_EQ(read_records(p), in);
  EXPECT_FALSE(fs::exists(dir.path() / "records.jsonl.tmp"));
  // Writing the same records again yields the same bytes.
  std::string first = ReadFile(p);
  write_records(read_records(p), p);
  EXPECT_EQ(ReadFile(p), first);
}

TEST(RecordFileTest, KeysComeInFixedOrder) {
  std::string line = RecordToJson(ThreeRecords()[0]).dump();
  std::vector<std::string> keys = {"\"id\"",      "\"smell\"",   "\"origin\"",
                                   "\"group\"",   "\"label\"",   "\"split\"",
                                   "\"code\"",    "\"context\"", "\"metrics\"",
                                   "\"likelihood\"", "\"advisor\"",
                                   "\"ground_truth\"", "\"provenance\""};
  size_t at = 0;
  for (const std::string& k : keys) {
    size_t next = line.find(k, at);
    ASSERT_NE(next, std::string::npos) << k;
    at = next;
  }
}

TEST(RecordFileTest, EmptyListGivesEmptyFile) {
  TempDir dir;
  fs::path p = dir.path() / "empty.jsonl";
  write_records({}, p);
  EXPECT_EQ(fs::file_size(p), 0u);
  EXPECT_TRUE(read_records(p).empty());
}

TEST(RecordFileTest, TruncatedLineNamesLineOne) {
  TempDir dir;
  fs::path p = dir.path() / "bad.jsonl";
  std::string line = RecordToJson(ThreeRecords()[0]).dump();
  std::ofstream(p) << line.substr(0, line.size() / 2) << "\n";
  try {
    read_records(p);
    FAIL() << "expected an error";
  } catch (const DatasetError& e) {
    EXPECT_THAT(e.what(), HasSubstr("bad.jsonl:1:"));
  }
}

TEST(RecordFileTest, BadFieldNamesItsLine) {
  TempDir dir;
  fs::path p = dir.path() / "bad.jsonl";
  std::vector<SampleRecord> recs = ThreeRecords();
  nlohmann::ordered_json broken = RecordToJson(recs[2]);
  broken["smell"] = "GOD_CLASS";
  std::ofstream(p) << RecordToJson(recs[0]).dump() << "\n"
                   << RecordToJson(recs[1]).dump() << "\n"
                   << broken.dump() << "\n";
  try {
    read_records(p);
    FAIL() << "expected an error";
  } catch (const DatasetError& e) {
    EXPECT_THAT(e.what(), HasSubstr(":3:"));
    EXPECT_THAT(e.what(), HasSubstr("GOD_CLASS"));
  }
  EXPECT_THROW(read_records(dir.path() / "missing.jsonl"), DatasetError);
}

TEST(CandidateFileTest, RoundTripKeepsSplitAndDropsRuleFields) {
  TempDir dir;
  fs::path p = dir.path() / "candidates.jsonl";
  CandidateSample lm;
  lm.smell = Smell::kLongMethod;
  lm.entity_source = "void m() {}";
  lm.context_sources["owner_class"] = "class B {}";
  lm.metrics.loc = 1;
  lm.metrics.nfdi = 0;
  lm.advisor = Verdict::kNegative;
  lm.provenance = {"p", "a.B#m/0", {"a/B.java"}, {{2, 2}}, "ORIGINAL",
                   {{"advisor", "heuristic"}}};
  CandidateSample fe;
  fe.smell = Smell::kFeatureEnvy;
  fe.origin = Origin::kGenerated;
  fe.entity_source = "int f() { return b.x; }";
  fe.metrics = {1, std::nullopt, std::nullopt, 6};
  fe.likelihood = Likelihood::kHigh;
  fe.ground_truth = RefactoringAction::MoveMethod("a.B");
  fe.provenance.project = "q";
  std::vector<std::pair<CandidateSample, Split>> in = {{lm, Split::kTrain},
                                                       {fe, Split::kEval}};
  write_candidates(in, p);
  EXPECT_EQ(read_candidates(p), in);
  nlohmann::json line = CandidateToJson(lm, Split::kTrain);
  EXPECT_FALSE(line.contains("id"));
  EXPECT_FALSE(line.contains("group"));
  EXPECT_FALSE(line["provenance"].contains("rule_id"));
  std::ofstream(p, std::ios::app) << "{\"smell\": 3}\n";
  try {
    read_candidates(p);
    FAIL() << "expected an error";
  } catch (const DatasetError& e) {
    EXPECT_THAT(e.what(), HasSubstr(":3:"));
  }
}

TEST(ActionJsonTest, RoundTripsAndRejectsJunk) {
  for (const RefactoringAction& a :
       {RefactoringAction::ExtractLines({{12, 25}, {30, 31}}),
        RefactoringAction::ExtractMembers({"a", "b"}),
        RefactoringAction::MoveMethod("shop.Price")}) {
    EXPECT_EQ(ActionFromJson(nlohmann::json::parse(ActionToJson(a).dump())), a);
  }
  EXPECT_THROW(ActionFromJson(nlohmann::json{{"kind", "INLINE"}}), DatasetError);
  EXPECT_THROW(
      ActionFromJson(nlohmann::json{{"kind", "EXTRACT_LINES"}, {"lines", {1}}}),
      DatasetError);
  EXPECT_THROW(ActionFromJson(nlohmann::json{{"kind", "MOVE_METHOD"}}),
               DatasetError);
}

TEST(StatsTest, DirectTally) {
  std::vector<SampleRecord> recs;
  for (int i = 0; i < 2; ++i) {
    recs.push_back(Rec("p", "P" + std::to_string(i), Smell::kLongMethod,
                       Verdict::kPositive));
  }
  for (int i = 0; i < 3; ++i) {
    recs.push_back(Rec("p", "N" + std::to_string(i), Smell::kLongMethod,
                       Verdict::kNegative));
  }
  recs.push_back(Rec("q", "U", Smell::kLargeClass, std::nullopt, Split::kEval));
  DatasetStats st = compute_stats(recs);
  EXPECT_EQ(st.Count(Smell::kLongMethod, "POSITIVE", Split::kTrain), 2);
  EXPECT_EQ(st.Count(Smell::kLongMethod, "NEGATIVE", Split::kTrain), 3);
  EXPECT_EQ(st.Count(Smell::kLargeClass, "UNLABELED", Split::kEval), 1);
  EXPECT_EQ(st.Count(Smell::kFeatureEnvy, "POSITIVE", Split::kTrain), 0);
  EXPECT_EQ(st.total, 6);
  int sum = 0;
  for (const auto& [k, n] : st.counts) sum += n;
  EXPECT_EQ(sum, st.total);
  EXPECT_THAT(FormatStats(st), HasSubstr("total 6"));
  EXPECT_EQ(StatsToJson(st)["total"], 6);
  EXPECT_EQ(compute_stats({}).total, 0);
}

std::vector<SampleRecord> Pool(int pos, int neg, Split split) {
  std::vector<SampleRecord> out;
  for (int i = 0; i < pos; ++i) {
    out.push_back(Rec("p", "pos" + std::to_string(i), Smell::kLongMethod,
                      Verdict::kPositive, split));
  }
  for (int i = 0; i < neg; ++i) {
    out.push_back(Rec("p", "neg" + std::to_string(i), Smell::kLongMethod,
                      Verdict::kNegative, split));
  }
  // Other smells are never touched.
  out.push_back(Rec("p", "fe", Smell::kFeatureEnvy, Verdict::kNegative, split));
  return out;
}

std::set<std::string> Ids(const std::vector<SampleRecord>& recs) {
  std::set<std::string> out;
  for (const SampleRecord& r : recs) out.insert(r.id);
  return out;
}

// Seeded sampler oracle: negatives sorted by id, a partial Fisher-Yates
// shuffle over raw mt19937_64 output, first `keep` survivors kept.
std::set<std::string> OracleKeep(std::vector<std::string> neg_ids, size_t keep,
                                 uint64_t seed) {
  std::sort(neg_ids.begin(), neg_ids.end());
  std::mt19937_64 g(seed);
  for (size_t i = 0; i < keep; ++i) {
    uint64_t span = neg_ids.size() - i;
    std::swap(neg_ids[i], neg_ids[i + g() % span]);
  }
  return {neg_ids.begin(), neg_ids.begin() + keep};
}

TEST(BalanceTest, DownSamplesNegativesDeterministically) {
  std::vector<SampleRecord> pool = Pool(10, 40, Split::kTrain);
  std::vector<SampleRecord> out =
      balance_negatives(pool, Smell::kLongMethod, Split::kTrain, 7);
  DatasetStats st = compute_stats(out);
  EXPECT_EQ(st.Count(Smell::kLongMethod, "POSITIVE", Split::kTrain), 10);
  EXPECT_EQ(st.Count(Smell::kLongMethod, "NEGATIVE", Split::kTrain), 10);
  EXPECT_EQ(st.Count(Smell::kFeatureEnvy, "NEGATIVE", Split::kTrain), 1);

  std::vector<std::string> neg_ids;
  for (const SampleRecord& r : pool) {
    if (r.smell == Smell::kLongMethod && r.label == Verdict::kNegative) {
      neg_ids.push_back(r.id);
    }
  }
  std::set<std::string> kept;
  for (const SampleRecord& r : out) {
    if (r.smell == Smell::kLongMethod && r.label == Verdict::kNegative) {
      kept.insert(r.id);
    }
  }
  EXPECT_EQ(kept, OracleKeep(neg_ids, 10, 7));

  // Same seed, shuffled input: same survivors, input order preserved.
  std::vector<SampleRecord> shuffled = pool;
  std::reverse(shuffled.begin(), shuffled.end());
  std::vector<SampleRecord> again =
      balance_negatives(shuffled, Smell::kLongMethod, Split::kTrain, 7);
  EXPECT_EQ(Ids(again), Ids(out));
  for (size_t i = 1; i < out.size(); ++i) {
    auto pos = [&](const std::string& id) {
      for (size_t k = 0; k < pool.size(); ++k) {
        if (pool[k].id == id) return k;
      }
      return pool.size();
    };
    EXPECT_LT(pos(out[i - 1].id), pos(out[i].id));
  }
  EXPECT_NE(Ids(balance_negatives(pool, Smell::kLongMethod, Split::kTrain, 8)),
            Ids(out));
}

TEST(BalanceTest, BalancedEvalAndShortCellsAreUntouched) {
  std::vector<SampleRecord> even = Pool(10, 10, Split::kTrain);
  EXPECT_EQ(balance_negatives(even, Smell::kLongMethod, Split::kTrain, 7), even);
  std::vector<SampleRecord> eval = Pool(10, 40, Split::kEval);
  EXPECT_EQ(balance_negatives(eval, Smell::kLongMethod, Split::kEval, 7), eval);
  std::vector<SampleRecord> few = Pool(10, 4, Split::kTrain);
  EXPECT_EQ(balance_negatives(few, Smell::kLongMethod, Split::kTrain, 7), few);
}

TEST(BalanceTest, SeededChoiceIsAUniformSubset) {
  std::vector<int> hits(20, 0);
  for (uint64_t seed = 0; seed < 4000; ++seed) {
    std::vector<size_t> pick = SeededChoice(20, 5, seed);
    ASSERT_EQ(pick.size(), 5u);
    ASSERT_TRUE(std::is_sorted(pick.begin(), pick.end()));
    ASSERT_EQ(std::set<size_t>(pick.begin(), pick.end()).size(), 5u);
    for (size_t i : pick) ++hits[i];
  }
  // Each index is expected 1000 times; allow five standard deviations.
  for (int h : hits) {
    EXPECT_NEAR(h, 1000, 5 * 27.4);
  }
  EXPECT_EQ(SeededChoice(3, 9, 1).size(), 3u);
}

TEST(MetaTest, RoundTrip) {
  DatasetMeta m;
  m.balance_seed = 7;
  m.thresholds.lm_max = 20;
  m.advisor = "heuristic";
  m.projects = {{"demo", "TRAIN"}};
  m.records = 12;
  EXPECT_EQ(MetaFromJson(nlohmann::json::parse(MetaToJson(m).dump())), m);
  DatasetMeta none;
  EXPECT_EQ(MetaFromJson(nlohmann::json::parse(MetaToJson(none).dump())), none);
  nlohmann::json bad = nlohmann::json::parse(MetaToJson(m).dump());
  bad["thresholds"]["long_method"]["min"] = 40;
  EXPECT_THROW(MetaFromJson(bad), DatasetError);
}

TEST(ValidateTest, CleanDatasetPasses) {
  std::vector<SampleRecord> recs = {
      Rec("p", "a", Smell::kLongMethod, Verdict::kNegative)};
  EXPECT_THAT(ValidateDataset(recs, {}), ::testing::IsEmpty());
}

TEST(ValidateTest, EachViolationIsReported) {
  auto one = [](SampleRecord r) {
    std::vector<std::string> v = ValidateDataset({r}, {});
    return v.empty() ? std::string() : v.front();
  };
  SampleRecord base = Rec("p", "a", Smell::kLongMethod, Verdict::kNegative);

  SampleRecord tampered = base;
  tampered.id = "0000000000000000";
  EXPECT_THAT(one(tampered), HasSubstr("id does not match"));

  SampleRecord unlabeled = base;
  unlabeled.label.reset();
  EXPECT_THAT(one(unlabeled), HasSubstr("no label"));

  SampleRecord discarded = base;
  discarded.group = Group::kDiscard;
  EXPECT_THAT(one(discarded), HasSubstr("discarded"));

  SampleRecord reviewed = base;
  reviewed.group = Group::kManual;
  EXPECT_THAT(one(reviewed), HasSubstr("annotation"));

  SampleRecord too_short = base;
  too_short.label = Verdict::kPositive;
  too_short.ground_truth = RefactoringAction::ExtractLines({{1, 2}});
  too_short.metrics.loc = 20;
  EXPECT_THAT(one(too_short), HasSubstr("band"));

  SampleRecord long_one = too_short;
  long_one.metrics.loc = 31;
  EXPECT_EQ(one(long_one), "");
  long_one.ground_truth.reset();
  EXPECT_THAT(one(long_one), HasSubstr("positive without ground truth"));
  long_one.ground_truth = RefactoringAction::MoveMethod("a.C");
  EXPECT_THAT(one(long_one), HasSubstr("kind does not fit"));
  // The code has two lines.
  long_one.ground_truth = RefactoringAction::ExtractLines({{2, 3}});
  EXPECT_THAT(one(long_one), HasSubstr("ground truth"));

  SampleRecord negative_with_action = base;
  negative_with_action.ground_truth = RefactoringAction::ExtractLines({{1, 2}});
  EXPECT_THAT(one(negative_with_action), HasSubstr("negative with a ground truth"));

  SampleRecord second = Rec("p", "b", Smell::kLongMethod, Verdict::kNegative,
                            Split::kEval);
  std::vector<std::string> v = ValidateDataset({base, second}, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_THAT(v[0], HasSubstr("both splits"));
  EXPECT_THAT(ValidateDataset({base, base}, {}).at(0), HasSubstr("duplicate"));

  SampleRecord lc = Rec("p", "C", Smell::kLargeClass, Verdict::kNegative);
  lc.metrics = {60, 6, 5, std::nullopt};  // noa at its minimum: not low
  lc.id = ComputeRecordId(lc);
  EXPECT_THAT(one(lc), HasSubstr("band"));
}

}  // namespace
}  // namespace smellgen
