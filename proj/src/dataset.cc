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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace smellgen {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

std::string Fnv1a64Hex(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

std::string ComputeRecordId(const SampleRecord& r) {
  const RecordProvenance& p = r.provenance;
  std::string key;
  auto field = [&key](std::string_view s) {
    key.append(s);
    key.push_back('\x1f');
  };
  field(p.project);
  field(SmellCode(r.smell));
  field(ToString(r.origin));
  field(p.entity);
  field(p.pattern);
  for (const auto& [k, v] : p.details) field(k + "=" + v);
  key.push_back('\x1e');
  for (const std::string& f : p.files) field(f);
  key.push_back('\x1e');
  for (const LineSpan& s : p.spans) {
    field(std::to_string(s.start_line) + "-" + std::to_string(s.end_line));
  }
  return Fnv1a64Hex(key);
}

SampleRecord MakeRecord(const CandidateSample& c, const GroupAssignment& g,
                        Split split) {
  SampleRecord r;
  r.smell = c.smell;
  r.origin = c.origin;
  r.group = g.group;
  r.label = g.auto_label;
  r.split = split;
  r.code = c.entity_source;
  r.context = c.context_sources;
  r.metrics = c.metrics;
  r.likelihood = c.likelihood;
  r.advisor = c.advisor;
  r.ground_truth = c.ground_truth;
  r.provenance.project = c.provenance.project;
  r.provenance.entity = c.provenance.entity;
  r.provenance.pattern = c.provenance.pattern;
  r.provenance.files = c.provenance.files;
  r.provenance.spans = c.provenance.spans;
  r.provenance.details = c.provenance.details;
  r.provenance.rule_id = g.rule_id;
  if (g.auto_label) r.provenance.label_source = "rule:" + g.rule_id;
  r.provenance.pipeline_version = std::string(kPipelineVersion);
  r.id = ComputeRecordId(r);
  return r;
}

// --- JSON ---------------------------------------------------------------------

namespace {

template <typename T>
ojson Opt(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

ojson OptName(const std::optional<Verdict>& v) {
  return v ? ojson(std::string(ToString(*v))) : ojson(nullptr);
}

const json& Need(const json& j, const char* key) {
  if (!j.is_object()) throw DatasetError("expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DatasetError(std::string("missing field '") + key + "'");
  return *it;
}

std::string NeedString(const json& j, const char* key) {
  const json& v = Need(j, key);
  if (!v.is_string()) {
    throw DatasetError(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

template <typename E, typename Parse>
E NeedEnum(const json& j, const char* key, Parse parse) {
  std::string s = NeedString(j, key);
  std::optional<E> e = parse(s);
  if (!e) {
    throw DatasetError(std::string("field '") + key + "' has unknown value '" +
                       s + "'");
  }
  return *e;
}

std::optional<Verdict> OptVerdict(const json& j, const char* key) {
  const json& v = Need(j, key);
  if (v.is_null()) return std::nullopt;
  return NeedEnum<Verdict>(j, key, ParseVerdict);
}

std::optional<int> OptInt(const json& j, const char* key) {
  const json& v = Need(j, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_integer()) {
    throw DatasetError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::map<std::string, std::string> StringMap(const json& j, const char* key) {
  const json& v = Need(j, key);
  if (!v.is_object()) {
    throw DatasetError(std::string("field '") + key + "' must be an object");
  }
  std::map<std::string, std::string> out;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!it.value().is_string()) {
      throw DatasetError(std::string("field '") + key + "." + it.key() +
                         "' must be a string");
    }
    out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

ojson SpanJson(const LineSpan& s) { return ojson::array({s.start_line, s.end_line}); }

LineSpan SpanFrom(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() ||
      !j[1].is_number_unsigned()) {
    throw DatasetError("span must be [first, last]");
  }
  return {j[0].get<uint32_t>(), j[1].get<uint32_t>()};
}

}  // namespace

ojson ActionToJson(const RefactoringAction& a) {
  ojson j;
  j["kind"] = std::string(ToString(a.kind));
  switch (a.kind) {
    case RefactoringAction::Kind::kExtractLines: {
      ojson lines = ojson::array();
      for (const LineRange& r : a.extract_lines) {
        lines.push_back(ojson::array({r.first, r.last}));
      }
      j["lines"] = std::move(lines);
      break;
    }
    case RefactoringAction::Kind::kExtractMembers:
      j["members"] = a.extract_members;
      break;
    case RefactoringAction::Kind::kMoveMethod:
      j["target"] = a.move_target;
      break;
  }
  return j;
}

RefactoringAction ActionFromJson(const json& j) {
  auto kind = NeedEnum<RefactoringAction::Kind>(j, "kind", ParseActionKind);
  switch (kind) {
    case RefactoringAction::Kind::kExtractLines: {
      const json& lines = Need(j, "lines");
      if (!lines.is_array()) throw DatasetError("'lines' must be an array");
      std::vector<LineRange> out;
      for (const json& l : lines) {
        if (!l.is_array() || l.size() != 2 || !l[0].is_number_integer() ||
            !l[1].is_number_integer()) {
          throw DatasetError("each line range must be [first, last]");
        }
        out.push_back({l[0].get<int>(), l[1].get<int>()});
      }
      return RefactoringAction::ExtractLines(std::move(out));
    }
    case RefactoringAction::Kind::kExtractMembers: {
      const json& m = Need(j, "members");
      if (!m.is_array()) throw DatasetError("'members' must be an array");
      std::vector<std::string> out;
      for (const json& n : m) {
        if (!n.is_string()) throw DatasetError("member names must be strings");
        out.push_back(n.get<std::string>());
      }
      return RefactoringAction::ExtractMembers(std::move(out));
    }
    case RefactoringAction::Kind::kMoveMethod:
      return RefactoringAction::MoveMethod(NeedString(j, "target"));
  }
  throw DatasetError("unknown action kind");
}

ojson RecordToJson(const SampleRecord& r) {
  ojson j;
  j["id"] = r.id;
  j["smell"] = std::string(ToString(r.smell));
  j["origin"] = std::string(ToString(r.origin));
  j["group"] = std::string(ToString(r.group));
  j["label"] = OptName(r.label);
  j["split"] = std::string(ToString(r.split));
  j["code"] = r.code;
  j["context"] = r.context;
  ojson m;
  m["loc"] = r.metrics.loc;
  m["nom"] = Opt(r.metrics.nom);
  m["noa"] = Opt(r.metrics.noa);
  m["nfdi"] = Opt(r.metrics.nfdi);
  j["metrics"] = std::move(m);
  j["likelihood"] = std::string(ToString(r.likelihood));
  j["advisor"] = OptName(r.advisor);
  j["ground_truth"] = r.ground_truth ? ActionToJson(*r.ground_truth) : ojson(nullptr);
  const RecordProvenance& p = r.provenance;
  ojson pj;
  pj["project"] = p.project;
  pj["entity"] = p.entity;
  pj["pattern"] = p.pattern;
  pj["files"] = p.files;
  ojson spans = ojson::array();
  for (const LineSpan& s : p.spans) spans.push_back(SpanJson(s));
  pj["spans"] = std::move(spans);
  pj["details"] = p.details;
  pj["rule_id"] = p.rule_id;
  pj["label_source"] = p.label_source;
  pj["pipeline_version"] = p.pipeline_version;
  j["provenance"] = std::move(pj);
  return j;
}

SampleRecord RecordFromJson(const json& j) {
  SampleRecord r;
  r.id = NeedString(j, "id");
  r.smell = NeedEnum<Smell>(j, "smell", ParseSmell);
  r.origin = NeedEnum<Origin>(j, "origin", ParseOrigin);
  r.group = NeedEnum<Group>(j, "group", ParseGroup);
  r.label = OptVerdict(j, "label");
  r.split = NeedEnum<Split>(j, "split", ParseSplit);
  r.code = NeedString(j, "code");
  r.context = StringMap(j, "context");
  const json& m = Need(j, "metrics");
  std::optional<int> loc = OptInt(m, "loc");
  if (!loc) throw DatasetError("field 'loc' must be an integer");
  r.metrics.loc = *loc;
  r.metrics.nom = OptInt(m, "nom");
  r.metrics.noa = OptInt(m, "noa");
  r.metrics.nfdi = OptInt(m, "nfdi");
  r.likelihood = NeedEnum<Likelihood>(j, "likelihood", ParseLikelihood);
  r.advisor = OptVerdict(j, "advisor");
  const json& gt = Need(j, "ground_truth");
  if (!gt.is_null()) r.ground_truth = ActionFromJson(gt);
  const json& pj = Need(j, "provenance");
  RecordProvenance& p = r.provenance;
  p.project = NeedString(pj, "project");
  p.entity = NeedString(pj, "entity");
  p.pattern = NeedString(pj, "pattern");
  const json& files = Need(pj, "files");
  if (!files.is_array()) throw DatasetError("'files' must be an array");
  for (const json& f : files) {
    if (!f.is_string()) throw DatasetError("file names must be strings");
    p.files.push_back(f.get<std::string>());
  }
  const json& spans = Need(pj, "spans");
  if (!spans.is_array()) throw DatasetError("'spans' must be an array");
  for (const json& s : spans) p.spans.push_back(SpanFrom(s));
  p.details = StringMap(pj, "details");
  p.rule_id = NeedString(pj, "rule_id");
  p.label_source = NeedString(pj, "label_source");
  p.pipeline_version = NeedString(pj, "pipeline_version");
  return r;
}

ojson CandidateToJson(const CandidateSample& c, Split split) {
  ojson j = RecordToJson(MakeRecord(c, {Group::kManual, std::nullopt, ""}, split));
  j.erase("id");
  j.erase("group");
  j.erase("label");
  j["provenance"].erase("rule_id");
  j["provenance"].erase("label_source");
  return j;
}

std::pair<CandidateSample, Split> CandidateFromJson(const json& j) {
  if (!j.is_object()) throw DatasetError("candidate must be an object");
  json full = j;
  full["id"] = "";
  full["group"] = std::string(ToString(Group::kManual));
  full["label"] = nullptr;
  if (full.contains("provenance") && full["provenance"].is_object()) {
    full["provenance"]["rule_id"] = "";
    full["provenance"]["label_source"] = "";
  }
  SampleRecord r = RecordFromJson(full);
  CandidateSample c;
  c.smell = r.smell;
  c.origin = r.origin;
  c.entity_source = std::move(r.code);
  c.context_sources = std::move(r.context);
  c.metrics = r.metrics;
  c.likelihood = r.likelihood;
  c.advisor = r.advisor;
  c.ground_truth = std::move(r.ground_truth);
  c.provenance.project = std::move(r.provenance.project);
  c.provenance.entity = std::move(r.provenance.entity);
  c.provenance.files = std::move(r.provenance.files);
  c.provenance.spans = std::move(r.provenance.spans);
  c.provenance.pattern = std::move(r.provenance.pattern);
  c.provenance.details = std::move(r.provenance.details);
  return {std::move(c), r.split};
}

// --- Files --------------------------------------------------------------------

void WriteFileAtomic(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DatasetError("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw DatasetError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw DatasetError("cannot replace " + path.string() + ": " + ec.message());
  }
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_records(const std::vector<SampleRecord>& records,
                   const fs::path& path) {
  std::string text;
  for (const SampleRecord& r : records) {
    text += RecordToJson(r).dump();
    text += '\n';
  }
  WriteFileAtomic(path, text);
}

std::vector<SampleRecord> read_records(const fs::path& path) {
  std::string text = ReadFile(path);
  std::vector<SampleRecord> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(RecordFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw DatasetError(fmt::format("{}:{}: malformed record: {}",
                                     path.string(), n, e.what()));
    } catch (const DatasetError& e) {
      throw DatasetError(fmt::format("{}:{}: {}", path.string(), n, e.what()));
    }
  }
  return out;
}

void write_candidates(
    const std::vector<std::pair<CandidateSample, Split>>& candidates,
    const fs::path& path) {
  std::string text;
  for (const auto& [c, split] : candidates) {
    text += CandidateToJson(c, split).dump();
    text += '\n';
  }
  WriteFileAtomic(path, text);
}

std::vector<std::pair<CandidateSample, Split>> read_candidates(
    const fs::path& path) {
  std::string text = ReadFile(path);
  std::vector<std::pair<CandidateSample, Split>> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(CandidateFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw DatasetError(fmt::format("{}:{}: malformed candidate: {}",
                                     path.string(), n, e.what()));
    } catch (const DatasetError& e) {
      throw DatasetError(fmt::format("{}:{}: {}", path.string(), n, e.what()));
    }
  }
  return out;
}

// --- Statistics ---------------------------------------------------------------

namespace {

std::string LabelKey(const std::optional<Verdict>& v) {
  return v ? std::string(ToString(*v)) : "UNLABELED";
}

constexpr Smell kSmells[] = {Smell::kLongMethod, Smell::kLargeClass,
                             Smell::kFeatureEnvy};

}  // namespace

int DatasetStats::Count(Smell s, std::string_view label, Split split) const {
  auto it = counts.find({s, std::string(label), split});
  return it == counts.end() ? 0 : it->second;
}

DatasetStats compute_stats(const std::vector<SampleRecord>& records) {
  DatasetStats st;
  for (const SampleRecord& r : records) {
    ++st.counts[{r.smell, LabelKey(r.label), r.split}];
    ++st.groups[{r.smell, r.group}];
    ++st.total;
  }
  return st;
}

std::string FormatStats(const DatasetStats& st) {
  std::string out = fmt::format("{:<14} {:<6} {:>9} {:>9} {:>10}\n", "smell",
                                "split", "positive", "negative", "unlabeled");
  for (Smell s : kSmells) {
    for (Split sp : {Split::kTrain, Split::kEval}) {
      out += fmt::format("{:<14} {:<6} {:>9} {:>9} {:>10}\n", ToString(s),
                         ToString(sp), st.Count(s, "POSITIVE", sp),
                         st.Count(s, "NEGATIVE", sp),
                         st.Count(s, "UNLABELED", sp));
    }
  }
  out += fmt::format("total {}\n", st.total);
  return out;
}

ojson StatsToJson(const DatasetStats& st) {
  ojson cells = ojson::array();
  for (const auto& [key, n] : st.counts) {
    const auto& [smell, label, split] = key;
    ojson c;
    c["smell"] = std::string(ToString(smell));
    c["label"] = label;
    c["split"] = std::string(ToString(split));
    c["count"] = n;
    cells.push_back(std::move(c));
  }
  ojson groups = ojson::array();
  for (const auto& [key, n] : st.groups) {
    ojson g;
    g["smell"] = std::string(ToString(key.first));
    g["group"] = std::string(ToString(key.second));
    g["count"] = n;
    groups.push_back(std::move(g));
  }
  ojson j;
  j["cells"] = std::move(cells);
  j["groups"] = std::move(groups);
  j["total"] = st.total;
  return j;
}

// --- Balancing ----------------------------------------------------------------

std::vector<size_t> SeededChoice(size_t n, size_t keep, uint64_t seed) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  keep = std::min(keep, n);
  // The engine's raw output is specified exactly by the standard; the
  // distributions are not, so the draw is done by hand for portability.
  for (size_t i = 0; i < keep; ++i) {
    size_t j = i + static_cast<size_t>(rng() % (n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<SampleRecord> balance_negatives(std::vector<SampleRecord> records,
                                            Smell smell, Split split,
                                            uint64_t seed) {
  if (split == Split::kEval) return records;
  size_t positives = 0;
  std::vector<size_t> negatives;
  for (size_t i = 0; i < records.size(); ++i) {
    const SampleRecord& r = records[i];
    if (r.smell != smell || r.split != split || !r.label) continue;
    if (*r.label == Verdict::kPositive) {
      ++positives;
    } else {
      negatives.push_back(i);
    }
  }
  if (negatives.size() < positives) {
    spdlog::warn("{} {}: {} negatives for {} positives, not balancing",
                 ToString(smell), ToString(split), negatives.size(), positives);
    return records;
  }
  // Draw over negatives in id order so the choice does not depend on how
  // the input happened to be ordered.
  std::sort(negatives.begin(), negatives.end(), [&](size_t a, size_t b) {
    return records[a].id < records[b].id;
  });
  std::vector<bool> drop(records.size(), false);
  for (size_t i : negatives) drop[i] = true;
  for (size_t k : SeededChoice(negatives.size(), positives, seed)) {
    drop[negatives[k]] = false;
  }
  std::vector<SampleRecord> out;
  out.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    if (!drop[i]) out.push_back(std::move(records[i]));
  }
  return out;
}

// --- Metadata -----------------------------------------------------------------

ojson ThresholdsToJson(const Thresholds& t) {
  auto bounds = [](const ClassBounds& b) {
    ojson j;
    j["loc"] = b.loc;
    j["nom"] = b.nom;
    j["noa"] = b.noa;
    return j;
  };
  ojson j;
  j["long_method"] = {{"min", t.lm_min}, {"max", t.lm_max}};
  j["large_class"] = {{"min", bounds(t.lc_min)}, {"max", bounds(t.lc_max)}};
  j["feature_envy"] = {{"min", t.fe_min}, {"max", t.fe_max}};
  return j;
}

Thresholds ThresholdsFromJson(const json& j) {
  auto num = [](const json& o, const char* k) {
    std::optional<int> v = OptInt(o, k);
    if (!v) throw DatasetError(std::string("threshold '") + k + "' missing");
    return *v;
  };
  auto bounds = [&](const json& o) {
    return ClassBounds{num(o, "loc"), num(o, "nom"), num(o, "noa")};
  };
  Thresholds t;
  const json& lm = Need(j, "long_method");
  t.lm_min = num(lm, "min");
  t.lm_max = num(lm, "max");
  const json& lc = Need(j, "large_class");
  t.lc_min = bounds(Need(lc, "min"));
  t.lc_max = bounds(Need(lc, "max"));
  const json& fe = Need(j, "feature_envy");
  t.fe_min = num(fe, "min");
  t.fe_max = num(fe, "max");
  try {
    t.Validate();
  } catch (const std::invalid_argument& e) {
    throw DatasetError(e.what());
  }
  return t;
}

ojson MetaToJson(const DatasetMeta& m) {
  ojson j;
  j["pipeline_version"] = m.pipeline_version;
  j["balance_seed"] = Opt(m.balance_seed);
  j["thresholds"] = ThresholdsToJson(m.thresholds);
  j["advisor"] = m.advisor;
  j["loc_definition"] = m.loc_definition;
  j["projects"] = m.projects;
  j["records"] = m.records;
  return j;
}

DatasetMeta MetaFromJson(const json& j) {
  DatasetMeta m;
  m.pipeline_version = NeedString(j, "pipeline_version");
  const json& seed = Need(j, "balance_seed");
  if (!seed.is_null()) {
    if (!seed.is_number_unsigned()) {
      throw DatasetError("'balance_seed' must be a non-negative integer");
    }
    m.balance_seed = seed.get<uint64_t>();
  }
  m.thresholds = ThresholdsFromJson(Need(j, "thresholds"));
  m.advisor = NeedString(j, "advisor");
  m.loc_definition = NeedString(j, "loc_definition");
  m.projects = StringMap(j, "projects");
  std::optional<int> n = OptInt(j, "records");
  m.records = n.value_or(0);
  return m;
}

// --- Validation ---------------------------------------------------------------

std::vector<SampleRecord> ExportDataset(std::vector<SampleRecord> records,
                                        const fs::path& dir, DatasetMeta meta) {
  if (meta.balance_seed) {
    for (Smell s : {Smell::kLongMethod, Smell::kLargeClass,
                    Smell::kFeatureEnvy}) {
      records = balance_negatives(std::move(records), s, Split::kTrain,
                                  *meta.balance_seed);
    }
  }
  for (const SampleRecord& r : records) {
    meta.projects[r.provenance.project] = std::string(ToString(r.split));
  }
  meta.records = static_cast<int>(records.size());
  write_records(records, dir / "dataset.jsonl");
  WriteFileAtomic(dir / "meta.json", MetaToJson(meta).dump(2) + "\n");
  return records;
}

std::vector<std::string> ValidateDataset(const std::vector<SampleRecord>& records,
                                         const Thresholds& t) {
  std::vector<std::string> bad;
  std::set<std::string> ids;
  std::map<std::string, Split> project_split;
  for (const SampleRecord& r : records) {
    const std::string who = r.id + " (" + r.provenance.entity + ")";
    if (!ids.insert(r.id).second) bad.push_back(who + ": duplicate id");
    if (ComputeRecordId(r) != r.id) bad.push_back(who + ": id does not match content");
    if (r.group == Group::kDiscard) bad.push_back(who + ": discarded record exported");
    if (!r.label) {
      bad.push_back(who + ": no label");
    } else if (r.group == Group::kAuto) {
      if (r.provenance.label_source != "rule:" + r.provenance.rule_id) {
        bad.push_back(who + ": auto label not explained by its rule");
      }
    } else if (r.provenance.label_source.rfind("annotation:", 0) != 0) {
      bad.push_back(who + ": reviewed label without annotation reference");
    }
    if (r.provenance.rule_id.empty()) bad.push_back(who + ": no rule id");
    if (r.label == Verdict::kPositive) {
      if (!r.ground_truth) {
        bad.push_back(who + ": positive without ground truth");
      } else if (r.ground_truth->kind != ActionKindFor(r.smell)) {
        bad.push_back(who + ": ground truth kind does not fit the smell");
      } else if (std::string why = r.ground_truth->Check(SourceLineCount(r.code));
                 !why.empty()) {
        bad.push_back(who + ": ground truth " + why);
      }
    } else if (r.label == Verdict::kNegative && r.ground_truth) {
      bad.push_back(who + ": negative with a ground truth");
    }
    auto [it, fresh] = project_split.emplace(r.provenance.project, r.split);
    if (!fresh && it->second != r.split) {
      bad.push_back(who + ": project " + r.provenance.project +
                    " appears in both splits");
    }
    if (r.group != Group::kAuto || !r.label) continue;
    const MetricVector& m = r.metrics;
    bool pos = *r.label == Verdict::kPositive;
    bool ok = true;
    switch (r.smell) {
      case Smell::kLongMethod:
        ok = pos ? m.loc > t.lm_max : m.loc < t.lm_min;
        break;
      case Smell::kFeatureEnvy:
        ok = m.nfdi && (pos ? *m.nfdi > t.fe_max : *m.nfdi < t.fe_min);
        break;
      case Smell::kLargeClass:
        ok = m.nom && m.noa &&
             (pos ? m.loc > t.lc_max.loc && *m.nom > t.lc_max.nom &&
                        *m.noa > t.lc_max.noa
                  : m.loc < t.lc_min.loc && *m.nom < t.lc_min.nom &&
                        *m.noa < t.lc_min.noa);
        break;
    }
    if (!ok) bad.push_back(who + ": auto label outside its metric band");
  }
  return bad;
}

}  // namespace smellgen
