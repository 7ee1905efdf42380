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

#include "smellgen/review.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "smellgen/ingest.h"

namespace smellgen {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;
using Clock = std::chrono::system_clock;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("smellgen_review_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path log() const { return path_ / "annotations.jsonl"; }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

// A manually controlled clock shared by a store and its test.
struct FakeClock {
  Clock::time_point now = Clock::time_point(std::chrono::hours(24 * 20000));
  ReviewOptions Options() {
    ReviewOptions o;
    o.clock = [this] { return now; };
    return o;
  }
};

std::string Lines(int n) {
  std::string out = "void m() {\n";
  for (int i = 2; i < n; ++i) out += "  step(" + std::to_string(i) + ");\n";
  return out + "}";
}

SampleRecord Sample(std::string entity, Smell smell, Group group,
                    std::string code = Lines(40)) {
  SampleRecord r;
  r.smell = smell;
  r.origin = Origin::kOriginal;
  r.group = group;
  r.code = std::move(code);
  r.metrics.loc = 20;
  if (smell != Smell::kLargeClass) r.metrics.nfdi = 3;
  r.likelihood = Likelihood::kModerate;
  if (smell == Smell::kLongMethod) r.advisor = Verdict::kNegative;
  r.provenance.project = "p";
  r.provenance.entity = std::move(entity);
  r.provenance.pattern = "ORIGINAL";
  r.provenance.rule_id = smell == Smell::kLongMethod   ? "LM.T1.M3"
                         : smell == Smell::kLargeClass ? "LC.T2.M2"
                                                       : "FE.T3.M2";
  if (group == Group::kAuto) {
    r.label = Verdict::kNegative;
    r.metrics.loc = 5;
    r.metrics.nfdi = 0;
    r.likelihood = Likelihood::kLow;
    r.provenance.rule_id = smell == Smell::kLongMethod ? "LM.T1.A2"
                           : smell == Smell::kLargeClass ? "LC.T2.A2"
                                                         : "FE.T3.A2";
    if (smell == Smell::kLargeClass) r.metrics = {5, 1, 1, std::nullopt};
    r.provenance.label_source = "rule:" + r.provenance.rule_id;
  }
  r.provenance.pipeline_version = std::string(kPipelineVersion);
  r.id = ComputeRecordId(r);
  return r;
}

std::map<std::string, bool> AllYes(Smell s) {
  std::map<std::string, bool> out;
  for (const ChecklistQuestion& q : ChecklistFor(s).questions) {
    if (q.kind == AnswerKind::kYesNo) out[q.id] = true;
  }
  return out;
}

Annotation Negative(const SampleRecord& r, std::string reviewer = "ana") {
  Annotation a;
  a.sample_id = r.id;
  a.reviewer_id = std::move(reviewer);
  a.verdict = Verdict::kNegative;
  a.answers = AllYes(r.smell);
  for (auto& [id, yes] : a.answers) yes = false;
  return a;
}

Annotation Positive(const SampleRecord& r, RefactoringAction act,
                    std::string reviewer = "ana") {
  Annotation a = Negative(r, std::move(reviewer));
  a.verdict = Verdict::kPositive;
  a.answers = AllYes(r.smell);
  a.action = std::move(act);
  return a;
}

// --- Checklists ---------------------------------------------------------------

TEST(ChecklistTest, ShapeAndFirstQuestions) {
  EXPECT_EQ(ChecklistFor(Smell::kLongMethod).questions.size(), 4u);
  EXPECT_EQ(ChecklistFor(Smell::kLargeClass).questions.size(), 6u);
  EXPECT_EQ(ChecklistFor(Smell::kFeatureEnvy).questions.size(), 5u);
  EXPECT_EQ(ChecklistFor(Smell::kLongMethod).questions[0].text,
            "Is the target method hard to read?");
  EXPECT_EQ(ChecklistFor(Smell::kLargeClass).questions[0].text,
            "Does the class have too many lines of code?");
  EXPECT_EQ(ChecklistFor(Smell::kFeatureEnvy).questions[0].text,
            "Does the method frequently call from another class?");
  for (Smell s : {Smell::kLongMethod, Smell::kLargeClass, Smell::kFeatureEnvy}) {
    const GuidelineChecklist& c = ChecklistFor(s);
    EXPECT_EQ(c.smell, s);
    std::set<std::string> ids;
    for (size_t i = 0; i < c.questions.size(); ++i) {
      ids.insert(c.questions[i].id);
      AnswerKind want = i + 1 == c.questions.size() ? AnswerKind::kAction
                                                    : AnswerKind::kYesNo;
      EXPECT_EQ(c.questions[i].kind, want) << c.questions[i].id;
    }
    EXPECT_EQ(ids.size(), c.questions.size());
    nlohmann::json j = nlohmann::json::parse(ChecklistToJson(c).dump());
    EXPECT_EQ(j["questions"].back()["answer_kind"], "ACTION");
  }
}

TEST(AnnotationJsonTest, RoundTrip) {
  Annotation a;
  a.sample_id = "0123456789abcdef";
  a.reviewer_id = "ana";
  a.verdict = Verdict::kPositive;
  a.answers = {{"LM.Q1", true}, {"LM.Q2", false}};
  a.action = RefactoringAction::ExtractLines({{3, 7}});
  a.timestamp = "2026-10-16T09:30:00Z";
  EXPECT_EQ(AnnotationFromJson(nlohmann::json::parse(AnnotationToJson(a).dump())),
            a);
  EXPECT_THROW(AnnotationFromJson(nlohmann::json{{"sample_id", "x"},
                                                 {"verdict", "MAYBE"}}),
               DatasetError);
  EXPECT_THROW(AnnotationFromJson(nlohmann::json{{"sample_id", "x"},
                                                 {"verdict", "POSITIVE"},
                                                 {"answers", {{"LM.Q1", 1}}}}),
               DatasetError);
  EXPECT_EQ(FormatUtc(Clock::time_point(std::chrono::seconds(86400))),
            "1970-01-02T00:00:00Z");
}

// --- Queue --------------------------------------------------------------------

std::vector<SampleRecord> QueueStore() {
  return {Sample("auto", Smell::kLongMethod, Group::kAuto),
          Sample("lm1", Smell::kLongMethod, Group::kManual),
          Sample("fe1", Smell::kFeatureEnvy, Group::kManual),
          Sample("lm2", Smell::kLongMethod, Group::kManual),
          Sample("gone", Smell::kLongMethod, Group::kDiscard)};
}

TEST(QueueTest, FifoWithSmellFilter) {
  TempDir dir;
  FakeClock clock;
  std::vector<SampleRecord> recs = QueueStore();
  ReviewStore store(recs, dir.log(), clock.Options());
  std::optional<QueueItem> first = store.queue_next("ana");
  ASSERT_TRUE(first);
  EXPECT_EQ(first->record.provenance.entity, "lm1");
  EXPECT_EQ(first->checklist, &ChecklistFor(Smell::kLongMethod));
  EXPECT_EQ(first->lease_expires, clock.now + std::chrono::minutes(30));
  std::optional<QueueItem> fe = store.queue_next("bo", Smell::kFeatureEnvy);
  ASSERT_TRUE(fe);
  EXPECT_EQ(fe->record.provenance.entity, "fe1");
  EXPECT_FALSE(store.queue_next("cy", Smell::kLargeClass));
}

TEST(QueueTest, ExhaustedQueueIsEmpty) {
  TempDir dir;
  std::vector<SampleRecord> recs = QueueStore();
  ReviewStore store(recs, dir.log());
  for (const char* e : {"lm1", "fe1", "lm2"}) {
    std::optional<QueueItem> item = store.queue_next("ana");
    ASSERT_TRUE(item);
    EXPECT_EQ(item->record.provenance.entity, e);
    ASSERT_TRUE(store.submit_annotation(Negative(item->record)).accepted);
  }
  EXPECT_FALSE(store.queue_next("ana"));
  EXPECT_FALSE(store.queue_next("bo"));
}

TEST(QueueTest, LeaseExcludesOtherReviewersUntilItExpires) {
  TempDir dir;
  FakeClock clock;
  std::vector<SampleRecord> recs = QueueStore();
  ReviewStore store(recs, dir.log(), clock.Options());
  EXPECT_EQ(store.queue_next("ana")->record.provenance.entity, "lm1");
  EXPECT_EQ(store.queue_next("bo")->record.provenance.entity, "fe1");
  EXPECT_EQ(store.lease_holder(recs[1].id), "ana");
  // Asking again returns the reviewer's own sample.
  EXPECT_EQ(store.queue_next("ana")->record.provenance.entity, "lm1");
  EXPECT_EQ(store.queue_next("cy")->record.provenance.entity, "lm2");
  EXPECT_FALSE(store.queue_next("dee"));

  // Another reviewer cannot submit for a leased sample.
  SubmitResult r = store.submit_annotation(Negative(recs[1], "bo"));
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.rejection.code, Rejection::Code::kConflict);

  clock.now += std::chrono::minutes(30);
  EXPECT_FALSE(store.lease_holder(recs[1].id));
  EXPECT_EQ(store.queue_next("dee")->record.provenance.entity, "lm1");
  EXPECT_EQ(store.lease_holder(recs[1].id), "dee");
}

TEST(QueueTest, LeaseTimeoutIsConfigurable) {
  TempDir dir;
  FakeClock clock;
  ReviewOptions o = clock.Options();
  o.lease_timeout = std::chrono::seconds(5);
  std::vector<SampleRecord> recs = QueueStore();
  ReviewStore store(recs, dir.log(), o);
  store.queue_next("ana");
  clock.now += std::chrono::seconds(4);
  EXPECT_EQ(store.queue_next("bo")->record.provenance.entity, "fe1");
  clock.now += std::chrono::seconds(1);
  EXPECT_EQ(store.queue_next("cy")->record.provenance.entity, "lm1");
}

TEST(QueueTest, UnleasedSampleMayBeSubmitted) {
  TempDir dir;
  std::vector<SampleRecord> recs = QueueStore();
  ReviewStore store(recs, dir.log());
  EXPECT_TRUE(store.submit_annotation(Negative(recs[3])).accepted);
  EXPECT_EQ(store.queue_next("ana")->record.provenance.entity, "lm1");
  EXPECT_EQ(store.queue_next("bo")->record.provenance.entity, "fe1");
  EXPECT_FALSE(store.queue_next("cy"));
}

// --- Submission checks --------------------------------------------------------

TEST(SubmitTest, LongMethodLineBounds) {
  TempDir dir;
  SampleRecord lm = Sample("lm", Smell::kLongMethod, Group::kManual);
  ASSERT_EQ(std::count(lm.code.begin(), lm.code.end(), '\n'), 39);
  EXPECT_FALSE(CheckAnnotation(
      Positive(lm, RefactoringAction::ExtractLines({{12, 25}})), lm));
  std::optional<Rejection> out = CheckAnnotation(
      Positive(lm, RefactoringAction::ExtractLines({{50, 60}})), lm);
  ASSERT_TRUE(out);
  EXPECT_EQ(out->field, "action.lines");
  EXPECT_THAT(out->reason, HasSubstr("1-40"));
  EXPECT_TRUE(CheckAnnotation(
      Positive(lm, RefactoringAction::ExtractLines({{40, 41}})), lm));
  EXPECT_FALSE(CheckAnnotation(
      Positive(lm, RefactoringAction::ExtractLines({{40, 40}})), lm));

  ReviewStore store({lm}, dir.log());
  SubmitResult bad = store.submit_annotation(
      Positive(lm, RefactoringAction::ExtractLines({{50, 60}})));
  EXPECT_FALSE(bad.accepted);
  EXPECT_EQ(bad.rejection.code, Rejection::Code::kInvalid);
  EXPECT_FALSE(fs::exists(dir.log()));
  EXPECT_TRUE(store.submit_annotation(
                       Positive(lm, RefactoringAction::ExtractLines({{12, 25}})))
                  .accepted);
}

TEST(SubmitTest, ShapeOfAnswersAndAction) {
  SampleRecord lm = Sample("lm", Smell::kLongMethod, Group::kManual);
  auto field = [&](const Annotation& a) {
    std::optional<Rejection> r = CheckAnnotation(a, lm);
    return r ? r->field : std::string("ok");
  };
  Annotation missing = Negative(lm);
  missing.answers.erase("LM.Q2");
  EXPECT_EQ(field(missing), "answers.LM.Q2");
  Annotation extra = Negative(lm);
  extra.answers["LM.Q9"] = true;
  EXPECT_EQ(field(extra), "answers.LM.Q9");
  Annotation action_answered = Negative(lm);
  action_answered.answers["LM.Q4"] = true;
  EXPECT_EQ(field(action_answered), "answers.LM.Q4");
  Annotation neg_with_action = Negative(lm);
  neg_with_action.action = RefactoringAction::ExtractLines({{2, 3}});
  EXPECT_EQ(field(neg_with_action), "action");
  Annotation pos_without = Positive(lm, RefactoringAction::ExtractLines({{2, 3}}));
  pos_without.action.reset();
  EXPECT_EQ(field(pos_without), "action");
  EXPECT_EQ(field(Positive(lm, RefactoringAction::MoveMethod("a.B"))),
            "action.kind");
  Annotation anonymous = Negative(lm);
  anonymous.reviewer_id.clear();
  EXPECT_EQ(field(anonymous), "reviewer_id");
  EXPECT_EQ(field(Negative(lm)), "ok");
}

TEST(SubmitTest, LargeClassMembersMustBeDeclared) {
  SampleRecord lc = Sample("shop.Cart", Smell::kLargeClass, Group::kManual,
                           "public class Cart {\n"
                           "    private int count, limit;\n"
                           "    void add() { count++; }\n"
                           "    class Line {}\n"
                           "}");
  EXPECT_EQ(DeclaredMembers(lc),
            (std::vector<std::string>{"count", "limit", "add", "Line"}));
  EXPECT_FALSE(CheckAnnotation(
      Positive(lc, RefactoringAction::ExtractMembers({"limit", "add"})), lc));
  std::optional<Rejection> r = CheckAnnotation(
      Positive(lc, RefactoringAction::ExtractMembers({"add", "remove"})), lc);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->field, "action.members");
  EXPECT_THAT(r->reason, HasSubstr("remove"));
}

TEST(SubmitTest, FeatureEnvyTargetFromFixtureSample) {
  // Book#discount reads price.amount twice and calls campaign.getRate(), so
  // the classes it envies are Campaign and Price.
  CorpusConfig c;
  c.root_dirs = {fs::path(SMELLGEN_FIXTURES) / "gen" / "shop"};
  c.project_id = "shop";
  ProjectModel model = build_project_model(c);
  std::optional<SampleRecord> fe;
  for (const CandidateSample& cand : collect_original_candidates(model)) {
    if (cand.smell == Smell::kFeatureEnvy &&
        cand.provenance.entity == "shop.Book#discount/1") {
      fe = MakeRecord(cand, assign_group(cand), Split::kTrain);
    }
  }
  ASSERT_TRUE(fe);
  ASSERT_EQ(fe->group, Group::kManual);
  EXPECT_EQ(CandidateTargets(*fe),
            (std::vector<std::string>{"shop.Campaign", "shop.Price"}));
  EXPECT_FALSE(
      CheckAnnotation(Positive(*fe, RefactoringAction::MoveMethod("shop.Price")),
                      *fe));
  std::optional<Rejection> own = CheckAnnotation(
      Positive(*fe, RefactoringAction::MoveMethod("shop.Book")), *fe);
  ASSERT_TRUE(own);
  EXPECT_EQ(own->field, "action.target");
}

TEST(SubmitTest, StoreLevelRejections) {
  TempDir dir;
  std::vector<SampleRecord> recs = QueueStore();
  ReviewStore store(recs, dir.log());
  Annotation ghost = Negative(recs[1]);
  ghost.sample_id = "ffffffffffffffff";
  EXPECT_EQ(store.submit_annotation(ghost).rejection.code,
            Rejection::Code::kNotFound);
  SubmitResult on_auto = store.submit_annotation(Negative(recs[0]));
  EXPECT_FALSE(on_auto.accepted);
  EXPECT_THAT(on_auto.rejection.reason, HasSubstr("review group"));
  EXPECT_FALSE(store.submit_annotation(Negative(recs[4])).accepted);

  EXPECT_TRUE(store.submit_annotation(Negative(recs[1])).accepted);
  SubmitResult again = store.submit_annotation(Negative(recs[1], "bo"));
  EXPECT_FALSE(again.accepted);
  EXPECT_EQ(again.rejection.code, Rejection::Code::kConflict);
  EXPECT_EQ(store.annotations().size(), 1u);
  EXPECT_EQ(store.annotations().at(recs[1].id).reviewer_id, "ana");
}

// --- Export and replay --------------------------------------------------------

TEST(ExportTest, AutoPlusAnnotatedMinusPending) {
  TempDir dir;
  std::vector<SampleRecord> recs;
  for (int i = 0; i < 5; ++i) {
    recs.push_back(Sample("a" + std::to_string(i), Smell::kLongMethod,
                          Group::kAuto));
  }
  for (int i = 0; i < 5; ++i) {
    recs.push_back(Sample("m" + std::to_string(i), Smell::kLongMethod,
                          Group::kManual));
  }
  recs.push_back(Sample("d", Smell::kLongMethod, Group::kDiscard));
  ReviewStore store(recs, dir.log());
  ASSERT_EQ(store.export_final().size(), 5u);
  for (const SampleRecord& r : store.export_final()) {
    EXPECT_EQ(r.group, Group::kAuto);
  }
  for (int i = 5; i < 8; ++i) {
    ASSERT_TRUE(store.submit_annotation(Negative(recs[i])).accepted);
  }
  std::vector<SampleRecord> out = store.export_final();
  EXPECT_EQ(out.size(), 8u);
  for (const SampleRecord& r : out) {
    ASSERT_TRUE(r.label.has_value()) << r.provenance.entity;
  }
  ReviewStats st = store.stats();
  EXPECT_EQ(st.auto_labeled[Smell::kLongMethod], 5);
  EXPECT_EQ(st.annotated[Smell::kLongMethod], 3);
  EXPECT_EQ(st.pending[Smell::kLongMethod], 2);
  EXPECT_EQ(st.exportable, 8);
}

TEST(ExportTest, ReviewerVerdictAndProvenanceReachTheDataset) {
  TempDir dir;
  FakeClock clock;
  SampleRecord lm = Sample("lm", Smell::kLongMethod, Group::kManual);
  SampleRecord fe = Sample("fe", Smell::kFeatureEnvy, Group::kManual);
  fe.provenance.details["candidate_targets"] = "a.B,a.C";
  fe.id = ComputeRecordId(fe);
  ReviewStore store({lm, fe}, dir.log(), clock.Options());
  ASSERT_TRUE(store.submit_annotation(Negative(lm, "ana")).accepted);
  ASSERT_TRUE(store
                  .submit_annotation(
                      Positive(fe, RefactoringAction::MoveMethod("a.C"), "bo"))
                  .accepted);
  std::vector<SampleRecord> out = store.export_final();
  ASSERT_EQ(out.size(), 2u);
  std::string stamp = FormatUtc(clock.now);
  EXPECT_EQ(out[0].label, Verdict::kNegative);
  EXPECT_EQ(out[0].provenance.label_source, "annotation:ana@" + stamp);
  EXPECT_EQ(out[0].group, Group::kManual);
  EXPECT_EQ(out[0].id, lm.id);
  EXPECT_EQ(out[1].label, Verdict::kPositive);
  EXPECT_EQ(out[1].ground_truth, RefactoringAction::MoveMethod("a.C"));
  EXPECT_EQ(out[1].provenance.label_source, "annotation:bo@" + stamp);
  EXPECT_THAT(ValidateDataset(out, {}), ::testing::IsEmpty());
}

TEST(ReplayTest, LogReconstructsLabeledState) {
  TempDir dir;
  FakeClock clock;
  std::vector<SampleRecord> recs = QueueStore();
  std::string prefix;
  {
    ReviewStore store(recs, dir.log(), clock.Options());
    ASSERT_TRUE(store.submit_annotation(Negative(recs[3])).accepted);
    prefix = ReadFile(dir.log());
    clock.now += std::chrono::seconds(90);
    ASSERT_TRUE(
        store
            .submit_annotation(Positive(
                recs[1], RefactoringAction::ExtractLines({{2, 9}, {20, 22}})))
            .accepted);
    // Rejected submissions leave no trace.
    EXPECT_FALSE(store.submit_annotation(Negative(recs[1])).accepted);
    std::string log = ReadFile(dir.log());
    EXPECT_EQ(log.substr(0, prefix.size()), prefix);
    EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 2);

    ReviewStore reopened(recs, dir.log(), clock.Options());
    EXPECT_EQ(reopened.annotations(), store.annotations());
    EXPECT_EQ(reopened.export_final(), store.export_final());
    EXPECT_EQ(ReplayLog(recs, dir.log()), store.annotations());
  }
  EXPECT_TRUE(ReplayLog(recs, dir.path() / "absent.jsonl").empty());
}

TEST(ReplayTest, BadLogLinesAreNamed) {
  TempDir dir;
  std::vector<SampleRecord> recs = QueueStore();
  std::string good = AnnotationToJson(Negative(recs[1])).dump();
  std::ofstream(dir.log()) << good << "\n" << good << "\n";
  try {
    ReplayLog(recs, dir.log());
    FAIL() << "duplicate accepted";
  } catch (const ReviewError& e) {
    EXPECT_THAT(e.what(), HasSubstr("annotations.jsonl:2:"));
    EXPECT_THAT(e.what(), HasSubstr("already annotated"));
  }
  std::ofstream(dir.log()) << "{not json\n";
  EXPECT_THROW(ReviewStore(recs, dir.log()), ReviewError);
}

// --- Concurrency --------------------------------------------------------------

TEST(ConcurrencyTest, ReviewersNeverShareALeasedSample) {
  TempDir dir;
  std::vector<SampleRecord> recs;
  for (int i = 0; i < 120; ++i) {
    Smell s = i % 2 ? Smell::kLongMethod : Smell::kFeatureEnvy;
    recs.push_back(Sample("s" + std::to_string(i), s, Group::kManual));
  }
  ReviewStore store(recs, dir.log());
  std::mutex mu;
  std::map<std::string, std::string> served;  // sample -> reviewer
  std::atomic<int> clashes{0};
  std::atomic<int> rejected{0};
  std::vector<std::thread> workers;
  for (int w = 0; w < 6; ++w) {
    workers.emplace_back([&, w] {
      std::string me = "r" + std::to_string(w);
      while (std::optional<QueueItem> item = store.queue_next(me)) {
        {
          std::lock_guard lock(mu);
          auto [it, fresh] = served.emplace(item->record.id, me);
          if (!fresh && it->second != me) ++clashes;
        }
        if (!store.submit_annotation(Negative(item->record, me)).accepted) {
          ++rejected;
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  EXPECT_EQ(clashes.load(), 0);
  EXPECT_EQ(rejected.load(), 0);
  EXPECT_EQ(served.size(), recs.size());
  EXPECT_EQ(store.annotations().size(), recs.size());
  EXPECT_EQ(ReplayLog(recs, dir.log()), store.annotations());
}

}  // namespace
}  // namespace smellgen
