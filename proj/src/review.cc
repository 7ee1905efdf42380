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

#include <time.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "smellgen/java/parser.h"

namespace smellgen {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string_view ToString(AnswerKind k) {
  return k == AnswerKind::kYesNo ? "YES_NO" : "ACTION";
}

namespace {

GuidelineChecklist Make(Smell smell, const char* prefix,
                        std::vector<const char*> texts) {
  GuidelineChecklist c;
  c.smell = smell;
  for (size_t i = 0; i < texts.size(); ++i) {
    ChecklistQuestion q;
    q.id = fmt::format("{}.Q{}", prefix, i + 1);
    q.text = texts[i];
    q.kind = i + 1 == texts.size() ? AnswerKind::kAction : AnswerKind::kYesNo;
    c.questions.push_back(std::move(q));
  }
  return c;
}

}  // namespace

const GuidelineChecklist& ChecklistFor(Smell smell) {
  static const GuidelineChecklist lm = Make(
      Smell::kLongMethod, "LM",
      {"Is the target method hard to read?",
       "Is the target method accessing too many attributes or other methods "
       "that may reduce the maintainability?",
       "Does the target method have multiple functions or too many "
       "parameters, which may reduce the reusability?",
       "If the target method is a long method, which lines should be "
       "extracted from this method?"});
  static const GuidelineChecklist lc = Make(
      Smell::kLargeClass, "LC",
      {"Does the class have too many lines of code?",
       "Does the class have too many fields?",
       "Does the class have too many complex methods?",
       "Does the class have class extraction opportunities that may reduce "
       "the reusability of the target class?",
       "Does the class have too many responsibilities, which may reduce the "
       "maintainability of the target class?",
       "If the target class is a large class, which method should be "
       "extracted from the target class?"});
  static const GuidelineChecklist fe = Make(
      Smell::kFeatureEnvy, "FE",
      {"Does the method frequently call from another class?",
       "Does the method frequently access another class?",
       "Does the method rarely use attributes in its own class?",
       "Does the method seem more cohesive with another class semantically?",
       "If the target method is identified as feature envy, which class "
       "should it be moved to?"});
  switch (smell) {
    case Smell::kLongMethod:
      return lm;
    case Smell::kLargeClass:
      return lc;
    case Smell::kFeatureEnvy:
      return fe;
  }
  return lm;
}

ojson ChecklistToJson(const GuidelineChecklist& c) {
  ojson j;
  j["smell"] = std::string(ToString(c.smell));
  ojson qs = ojson::array();
  for (const ChecklistQuestion& q : c.questions) {
    ojson qj;
    qj["id"] = q.id;
    qj["text"] = q.text;
    qj["answer_kind"] = std::string(ToString(q.kind));
    qs.push_back(std::move(qj));
  }
  j["questions"] = std::move(qs);
  return j;
}

// --- Annotations --------------------------------------------------------------

ojson AnnotationToJson(const Annotation& a) {
  ojson j;
  j["sample_id"] = a.sample_id;
  j["reviewer_id"] = a.reviewer_id;
  j["verdict"] = std::string(ToString(a.verdict));
  ojson answers = ojson::object();
  for (const auto& [id, yes] : a.answers) answers[id] = yes;
  j["answers"] = std::move(answers);
  j["action"] = a.action ? ActionToJson(*a.action) : ojson(nullptr);
  j["timestamp"] = a.timestamp;
  return j;
}

namespace {

std::string StringField(const json& j, const char* key, bool required) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) throw DatasetError(fmt::format("missing field '{}'", key));
    return "";
  }
  if (!it->is_string()) {
    throw DatasetError(fmt::format("field '{}' must be a string", key));
  }
  return it->get<std::string>();
}

}  // namespace

Annotation AnnotationFromJson(const json& j) {
  if (!j.is_object()) throw DatasetError("annotation must be an object");
  Annotation a;
  a.sample_id = StringField(j, "sample_id", true);
  a.reviewer_id = StringField(j, "reviewer_id", false);
  std::string verdict = StringField(j, "verdict", true);
  std::optional<Verdict> v = ParseVerdict(verdict);
  if (!v) throw DatasetError("unknown verdict '" + verdict + "'");
  a.verdict = *v;
  auto answers = j.find("answers");
  if (answers != j.end() && !answers->is_null()) {
    if (!answers->is_object()) throw DatasetError("'answers' must be an object");
    for (auto it = answers->begin(); it != answers->end(); ++it) {
      if (!it.value().is_boolean()) {
        throw DatasetError("answer '" + it.key() + "' must be true or false");
      }
      a.answers[it.key()] = it.value().get<bool>();
    }
  }
  auto action = j.find("action");
  if (action != j.end() && !action->is_null()) {
    a.action = ActionFromJson(*action);
  }
  a.timestamp = StringField(j, "timestamp", false);
  return a;
}

std::string FormatUtc(std::chrono::system_clock::time_point t) {
  std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string AnnotationLabelSource(const Annotation& a) {
  return "annotation:" + a.reviewer_id + "@" + a.timestamp;
}

// --- Checking -----------------------------------------------------------------

std::vector<std::string> CandidateTargets(const SampleRecord& sample) {
  std::vector<std::string> out;
  auto it = sample.provenance.details.find("candidate_targets");
  if (it == sample.provenance.details.end()) return out;
  std::istringstream in(it->second);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (!name.empty()) out.push_back(name);
  }
  return out;
}

std::vector<std::string> DeclaredMembers(const SampleRecord& sample) {
  std::vector<std::string> out;
  java::ParseOutcome parsed = java::ParseClassMembers(sample.code);
  if (!parsed.ok()) return out;
  for (const java::Member& top : parsed.source->members()) {
    if (top.kind != java::MemberKind::kClass || !top.nested) continue;
    for (const java::Member& m : top.nested->members) {
      switch (m.kind) {
        case java::MemberKind::kField:
          for (const java::VarDeclarator& v : m.field->vars) {
            out.push_back(v.name);
          }
          break;
        case java::MemberKind::kMethod:
          out.push_back(m.method->name);
          break;
        case java::MemberKind::kClass:
          if (m.nested && !m.nested->name.empty()) {
            out.push_back(m.nested->name);
          }
          break;
        case java::MemberKind::kInitializer:
          break;
      }
    }
    break;
  }
  return out;
}

namespace {

const char* ActionField(RefactoringAction::Kind k) {
  switch (k) {
    case RefactoringAction::Kind::kExtractLines:
      return "action.lines";
    case RefactoringAction::Kind::kExtractMembers:
      return "action.members";
    case RefactoringAction::Kind::kMoveMethod:
      return "action.target";
  }
  return "action";
}

bool Contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::optional<Rejection> CheckAnnotation(const Annotation& a,
                                         const SampleRecord& sample) {
  if (a.reviewer_id.empty()) {
    return Rejection{"reviewer_id", "reviewer id is required"};
  }
  const GuidelineChecklist& list = ChecklistFor(sample.smell);
  for (const ChecklistQuestion& q : list.questions) {
    if (q.kind == AnswerKind::kYesNo && !a.answers.count(q.id)) {
      return Rejection{"answers." + q.id, "missing answer"};
    }
  }
  for (const auto& [id, answer] : a.answers) {
    auto q = std::find_if(list.questions.begin(), list.questions.end(),
                          [&](const ChecklistQuestion& x) { return x.id == id; });
    if (q == list.questions.end()) {
      return Rejection{"answers." + id, "not a question of this checklist"};
    }
    if (q->kind != AnswerKind::kYesNo) {
      return Rejection{"answers." + id, "answered through the action"};
    }
  }

  if (a.verdict == Verdict::kNegative) {
    if (a.action) {
      return Rejection{"action", "a negative verdict takes no action"};
    }
    return std::nullopt;
  }
  if (!a.action) {
    return Rejection{"action", "a positive verdict needs a refactoring action"};
  }
  const RefactoringAction& act = *a.action;
  RefactoringAction::Kind want = ActionKindFor(sample.smell);
  if (act.kind != want) {
    return Rejection{"action.kind", fmt::format("{} needs {}, got {}",
                                                ToString(sample.smell),
                                                ToString(want),
                                                ToString(act.kind))};
  }
  int lines = SourceLineCount(sample.code);
  if (std::string problem = act.Check(lines); !problem.empty()) {
    return Rejection{ActionField(act.kind), problem};
  }
  switch (act.kind) {
    case RefactoringAction::Kind::kExtractLines:
      break;  // bounds already checked
    case RefactoringAction::Kind::kExtractMembers: {
      std::vector<std::string> declared = DeclaredMembers(sample);
      for (const std::string& name : act.extract_members) {
        if (!Contains(declared, name)) {
          return Rejection{"action.members",
                           "'" + name + "' is not declared in the class"};
        }
      }
      break;
    }
    case RefactoringAction::Kind::kMoveMethod: {
      std::vector<std::string> targets = CandidateTargets(sample);
      if (!Contains(targets, act.move_target)) {
        return Rejection{
            "action.target",
            fmt::format("'{}' is not among the candidate classes [{}]",
                        act.move_target, fmt::join(targets, ", "))};
      }
      break;
    }
  }
  return std::nullopt;
}

// --- Log replay and merge -----------------------------------------------------

namespace {

std::optional<Rejection> CheckAgainstStore(
    const Annotation& a,
    const std::unordered_map<std::string, size_t>& index,
    const std::vector<SampleRecord>& records,
    const std::map<std::string, Annotation>& done) {
  auto it = index.find(a.sample_id);
  if (it == index.end()) {
    return Rejection{"sample_id", "no such sample", Rejection::Code::kNotFound};
  }
  const SampleRecord& r = records[it->second];
  if (r.group != Group::kManual) {
    return Rejection{"sample_id", "sample is not in the review group"};
  }
  if (done.count(a.sample_id)) {
    return Rejection{"sample_id", "sample already annotated",
                     Rejection::Code::kConflict};
  }
  return CheckAnnotation(a, r);
}

std::unordered_map<std::string, size_t> IndexOf(
    const std::vector<SampleRecord>& records) {
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < records.size(); ++i) index.emplace(records[i].id, i);
  return index;
}

}  // namespace

std::map<std::string, Annotation> ReplayLog(
    const std::vector<SampleRecord>& records, const fs::path& log_path) {
  std::map<std::string, Annotation> done;
  if (!fs::exists(log_path)) return done;
  std::unordered_map<std::string, size_t> index = IndexOf(records);
  std::ifstream in(log_path);
  if (!in) throw ReviewError("cannot read " + log_path.string());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    Annotation a;
    try {
      a = AnnotationFromJson(json::parse(line));
    } catch (const std::exception& e) {
      throw ReviewError(fmt::format("{}:{}: {}", log_path.string(), n, e.what()));
    }
    if (std::optional<Rejection> bad = CheckAgainstStore(a, index, records, done)) {
      throw ReviewError(fmt::format("{}:{}: {}: {}", log_path.string(), n,
                                    bad->field, bad->reason));
    }
    std::string id = a.sample_id;
    done.emplace(std::move(id), std::move(a));
  }
  return done;
}

std::vector<SampleRecord> MergeAnnotations(
    const std::vector<SampleRecord>& records,
    const std::map<std::string, Annotation>& annotations) {
  std::vector<SampleRecord> out;
  for (const SampleRecord& r : records) {
    if (r.group == Group::kAuto) {
      out.push_back(r);
      continue;
    }
    if (r.group != Group::kManual) continue;
    auto it = annotations.find(r.id);
    if (it == annotations.end()) continue;
    const Annotation& a = it->second;
    SampleRecord labeled = r;
    labeled.label = a.verdict;
    labeled.ground_truth =
        a.verdict == Verdict::kPositive ? a.action : std::nullopt;
    labeled.provenance.label_source = AnnotationLabelSource(a);
    out.push_back(std::move(labeled));
  }
  return out;
}

// --- Store --------------------------------------------------------------------

ReviewStore::ReviewStore(std::vector<SampleRecord> records, fs::path log_path,
                         ReviewOptions options)
    : records_(std::move(records)),
      index_(IndexOf(records_)),
      log_path_(std::move(log_path)),
      options_(std::move(options)) {
  annotations_ = ReplayLog(records_, log_path_);
  spdlog::info("review store: {} records, {} annotations replayed",
               records_.size(), annotations_.size());
}

bool ReviewStore::LiveLease(const std::string& id,
                            std::chrono::system_clock::time_point now,
                            const Lease** out) const {
  auto it = leases_.find(id);
  if (it == leases_.end() || it->second.expires <= now) return false;
  if (out != nullptr) *out = &it->second;
  return true;
}

std::optional<QueueItem> ReviewStore::queue_next(const std::string& reviewer_id,
                                                 std::optional<Smell> smell) {
  std::unique_lock lock(mu_);
  auto now = options_.clock();
  std::optional<size_t> pick;
  for (size_t i = 0; i < records_.size(); ++i) {
    const SampleRecord& r = records_[i];
    if (r.group != Group::kManual || annotations_.count(r.id)) continue;
    if (smell && r.smell != *smell) continue;
    const Lease* held = nullptr;
    if (LiveLease(r.id, now, &held)) {
      if (held->reviewer != reviewer_id) continue;
      pick = i;  // the reviewer's own unfinished sample comes first
      break;
    }
    if (!pick) pick = i;
  }
  if (!pick) return std::nullopt;
  const SampleRecord& r = records_[*pick];
  // One lease per reviewer: taking a new sample releases the old one.
  for (auto it = leases_.begin(); it != leases_.end();) {
    if (it->second.reviewer == reviewer_id && it->first != r.id) {
      it = leases_.erase(it);
    } else {
      ++it;
    }
  }
  Lease& lease = leases_[r.id];
  lease.reviewer = reviewer_id;
  lease.expires = now + options_.lease_timeout;
  return QueueItem{r, &ChecklistFor(r.smell), lease.expires};
}

SubmitResult ReviewStore::submit_annotation(Annotation a) {
  std::unique_lock lock(mu_);
  SubmitResult result;
  auto now = options_.clock();
  a.timestamp = FormatUtc(now);
  if (std::optional<Rejection> bad =
          CheckAgainstStore(a, index_, records_, annotations_)) {
    result.rejection = *bad;
    return result;
  }
  const Lease* held = nullptr;
  if (LiveLease(a.sample_id, now, &held) && held->reviewer != a.reviewer_id) {
    result.rejection = {"sample_id", "sample is leased to another reviewer",
                        Rejection::Code::kConflict};
    return result;
  }

  {
    std::ofstream out(log_path_, std::ios::app | std::ios::binary);
    out << AnnotationToJson(a).dump() << '\n';
    out.flush();
    if (!out) {
      result.rejection = {"", "cannot append to " + log_path_.string()};
      return result;
    }
  }
  leases_.erase(a.sample_id);
  result.accepted = true;
  result.stored = a;
  std::string id = a.sample_id;
  annotations_.emplace(std::move(id), std::move(a));
  return result;
}

std::vector<SampleRecord> ReviewStore::export_final() const {
  std::shared_lock lock(mu_);
  return MergeAnnotations(records_, annotations_);
}

ReviewStats ReviewStore::stats() const {
  std::shared_lock lock(mu_);
  auto now = options_.clock();
  ReviewStats s;
  for (Smell smell : {Smell::kLongMethod, Smell::kLargeClass,
                      Smell::kFeatureEnvy}) {
    s.pending[smell] = 0;
    s.leased[smell] = 0;
    s.annotated[smell] = 0;
    s.auto_labeled[smell] = 0;
  }
  for (const SampleRecord& r : records_) {
    if (r.group == Group::kAuto) {
      ++s.auto_labeled[r.smell];
      ++s.exportable;
    } else if (r.group == Group::kManual) {
      if (annotations_.count(r.id)) {
        ++s.annotated[r.smell];
        ++s.exportable;
      } else {
        ++s.pending[r.smell];
        if (LiveLease(r.id, now, nullptr)) ++s.leased[r.smell];
      }
    }
  }
  return s;
}

std::map<std::string, Annotation> ReviewStore::annotations() const {
  std::shared_lock lock(mu_);
  return annotations_;
}

std::optional<std::string> ReviewStore::lease_holder(
    const std::string& sample_id) const {
  std::shared_lock lock(mu_);
  const Lease* held = nullptr;
  if (!LiveLease(sample_id, options_.clock(), &held)) return std::nullopt;
  return held->reviewer;
}

ojson ReviewStatsToJson(const ReviewStats& s) {
  ojson j;
  auto per_smell = [](const std::map<Smell, int>& m) {
    ojson o = ojson::object();
    for (const auto& [smell, n] : m) o[std::string(ToString(smell))] = n;
    return o;
  };
  j["pending"] = per_smell(s.pending);
  j["leased"] = per_smell(s.leased);
  j["annotated"] = per_smell(s.annotated);
  j["auto_labeled"] = per_smell(s.auto_labeled);
  j["exportable"] = s.exportable;
  return j;
}

}  // namespace smellgen
