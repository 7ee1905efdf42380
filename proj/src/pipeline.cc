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

#include "smellgen/pipeline.h"

#include <fmt/format.h>
#include <spdlog/spdlog.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "smellgen/grouping.h"
#include "smellgen/review.h"

namespace smellgen {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// --- Configuration ------------------------------------------------------------

void PipelineConfig::Validate() const {
  if (corpora.empty()) throw ConfigError("no corpus configured");
  std::set<std::string> seen;
  for (const CorpusConfig& c : corpora) {
    if (c.project_id.empty()) throw ConfigError("corpus without a project id");
    if (!seen.insert(c.project_id).second) {
      throw ConfigError("project '" + c.project_id + "' configured twice");
    }
    if (c.root_dirs.empty()) {
      throw ConfigError("project '" + c.project_id + "' has no roots");
    }
  }
  try {
    thresholds.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (balance && !seed) {
    throw ConfigError("balance is enabled but no seed is set");
  }
  if (review.lease_minutes <= 0) {
    throw ConfigError("review.lease_minutes must be positive");
  }
}

namespace {

// Wraps yaml-cpp access so every error names the file position.
class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void Fail(const YAML::Node& at, const std::string& what) const {
    YAML::Mark m = at.Mark();
    if (m.is_null()) throw ConfigError(fmt::format("{}: {}", source_, what));
    throw ConfigError(
        fmt::format("{}:{}:{}: {}", source_, m.line + 1, m.column + 1, what));
  }

  void ExpectMap(const YAML::Node& n, const std::string& name,
                 std::initializer_list<const char*> keys) const {
    if (!n.IsMap()) Fail(n, "'" + name + "' must be a mapping");
    for (const auto& kv : n) {
      std::string key = kv.first.as<std::string>();
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) Fail(kv.first, "unknown key '" + key + "' in " + name);
    }
  }

  template <typename T>
  void Get(const YAML::Node& parent, const char* key, T* out) const {
    YAML::Node n = parent[key];
    if (!n) return;
    try {
      *out = n.as<T>();
    } catch (const YAML::Exception&) {
      Fail(n, fmt::format("'{}' has the wrong type", key));
    }
  }

 private:
  std::string source_;
};

void ReadBounds(const Reader& rd, const YAML::Node& n, const std::string& name,
                ClassBounds* b) {
  rd.ExpectMap(n, name, {"loc", "nom", "noa"});
  rd.Get(n, "loc", &b->loc);
  rd.Get(n, "nom", &b->nom);
  rd.Get(n, "noa", &b->noa);
}

void ReadThresholds(const Reader& rd, const YAML::Node& n, Thresholds* t) {
  rd.ExpectMap(n, "thresholds", {"long_method", "large_class", "feature_envy"});
  if (YAML::Node lm = n["long_method"]) {
    rd.ExpectMap(lm, "long_method", {"min", "max"});
    rd.Get(lm, "min", &t->lm_min);
    rd.Get(lm, "max", &t->lm_max);
  }
  if (YAML::Node fe = n["feature_envy"]) {
    rd.ExpectMap(fe, "feature_envy", {"min", "max"});
    rd.Get(fe, "min", &t->fe_min);
    rd.Get(fe, "max", &t->fe_max);
  }
  if (YAML::Node lc = n["large_class"]) {
    rd.ExpectMap(lc, "large_class", {"min", "max"});
    if (lc["min"]) ReadBounds(rd, lc["min"], "large_class.min", &t->lc_min);
    if (lc["max"]) ReadBounds(rd, lc["max"], "large_class.max", &t->lc_max);
  }
}

CorpusConfig ReadCorpus(const Reader& rd, const YAML::Node& n,
                        const fs::path& base) {
  rd.ExpectMap(n, "corpus entry", {"project", "roots", "exclude", "split"});
  CorpusConfig c;
  rd.Get(n, "project", &c.project_id);
  std::vector<std::string> roots;
  rd.Get(n, "roots", &roots);
  if (roots.empty()) rd.Fail(n, "corpus entry needs at least one root");
  for (const std::string& r : roots) {
    fs::path p(r);
    c.root_dirs.push_back((p.is_absolute() ? p : base / p).lexically_normal());
  }
  rd.Get(n, "exclude", &c.exclude_globs);
  std::string split = "TRAIN";
  rd.Get(n, "split", &split);
  std::optional<Split> s = ParseSplit(split);
  if (!s) rd.Fail(n["split"], "split must be TRAIN or EVAL");
  c.role = *s;
  if (c.project_id.empty()) rd.Fail(n, "corpus entry needs a project");
  return c;
}

}  // namespace

PipelineConfig ParseConfig(const std::string& yaml_text, const fs::path& base,
                           const std::string& source_name) {
  Reader rd(source_name);
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("{}:{}:{}: {}", source_name, e.mark.line + 1,
                                  e.mark.column + 1, e.msg));
  }
  PipelineConfig cfg;
  if (root.IsNull()) throw ConfigError(source_name + ": empty config");
  rd.ExpectMap(root, "config",
               {"work_dir", "seed", "balance", "thresholds", "generation",
                "review", "corpora"});
  std::string work;
  rd.Get(root, "work_dir", &work);
  if (!work.empty()) {
    fs::path p(work);
    cfg.work_dir = (p.is_absolute() ? p : base / p).lexically_normal();
  } else {
    cfg.work_dir = (base / cfg.work_dir).lexically_normal();
  }
  if (root["seed"]) {
    uint64_t seed = 0;
    rd.Get(root, "seed", &seed);
    cfg.seed = seed;
  }
  rd.Get(root, "balance", &cfg.balance);
  if (YAML::Node t = root["thresholds"]) ReadThresholds(rd, t, &cfg.thresholds);
  if (YAML::Node g = root["generation"]) {
    rd.ExpectMap(g, "generation",
                 {"long_method", "large_class", "feature_envy",
                  "max_candidates_per_smell"});
    rd.Get(g, "long_method", &cfg.generation.long_method);
    rd.Get(g, "large_class", &cfg.generation.large_class);
    rd.Get(g, "feature_envy", &cfg.generation.feature_envy);
    rd.Get(g, "max_candidates_per_smell",
           &cfg.generation.max_candidates_per_smell);
  }
  if (YAML::Node r = root["review"]) {
    rd.ExpectMap(r, "review", {"host", "port", "lease_minutes"});
    rd.Get(r, "host", &cfg.review.host);
    rd.Get(r, "port", &cfg.review.port);
    rd.Get(r, "lease_minutes", &cfg.review.lease_minutes);
  }
  YAML::Node corpora = root["corpora"];
  if (!corpora) rd.Fail(root, "missing 'corpora'");
  if (!corpora.IsSequence()) rd.Fail(corpora, "'corpora' must be a list");
  for (const YAML::Node& c : corpora) {
    cfg.corpora.push_back(ReadCorpus(rd, c, base));
  }
  try {
    cfg.Validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  return cfg;
}

PipelineConfig LoadConfig(const fs::path& path) {
  if (!fs::exists(path)) throw MissingInputError(path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::path base = fs::absolute(path).parent_path();
  return ParseConfig(ss.str(), base, path.string());
}

// --- Stages -------------------------------------------------------------------

fs::path WorkPaths::Sources(const std::string& project) const {
  return root / "sources" / (project + ".jsonl");
}

fs::path WorkPaths::Model(const std::string& project) const {
  return root / "model" / (project + ".json");
}

namespace {

void Require(const fs::path& p) {
  if (!fs::exists(p)) throw MissingInputError(p);
}

}  // namespace

IngestSummary RunIngest(const PipelineConfig& config) {
  WorkPaths work{config.work_dir};
  IngestSummary sum;
  for (const CorpusConfig& corpus : config.corpora) {
    for (const fs::path& root : corpus.root_dirs) Require(root);
    std::vector<SourceFile> sources = CollectSources(corpus);
    std::string snapshot;
    for (const SourceFile& f : sources) {
      ojson line;
      line["path"] = f.path;
      line["text"] = f.text;
      snapshot += line.dump();
      snapshot += '\n';
    }
    WriteFileAtomic(work.Sources(corpus.project_id), snapshot);
    IngestReport report;
    ProjectModel model =
        BuildModelFromSources(corpus.project_id, sources, &report);
    WriteFileAtomic(work.Model(corpus.project_id), DumpModel(model));
    for (const SkippedFile& s : report.skipped) {
      spdlog::warn("{}: skipped {}: {}", corpus.project_id, s.path,
                   s.error.message);
    }
    spdlog::info("{}: {} files, {} classes, {} skipped", corpus.project_id,
                 sources.size(), model.classes().size(), report.skipped.size());
    ++sum.projects;
    sum.files += static_cast<int>(sources.size());
    sum.classes += static_cast<int>(model.classes().size());
    sum.skipped_files += static_cast<int>(report.skipped.size());
  }
  return sum;
}

ProjectModel LoadSnapshot(const WorkPaths& work, const CorpusConfig& corpus) {
  fs::path path = work.Sources(corpus.project_id);
  Require(path);
  std::istringstream in(ReadFile(path));
  std::vector<SourceFile> sources;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      sources.push_back({j.at("path").get<std::string>(),
                         j.at("text").get<std::string>()});
    } catch (const json::exception& e) {
      throw DatasetError(
          fmt::format("{}:{}: bad snapshot line: {}", path.string(), n, e.what()));
    }
  }
  return BuildModelFromSources(corpus.project_id, std::move(sources));
}

GenerateSummary RunGenerate(const PipelineConfig& config) {
  WorkPaths work{config.work_dir};
  std::vector<std::pair<CandidateSample, Split>> pool;
  GenerateSummary sum;
  ojson report = ojson::object();
  for (const CorpusConfig& corpus : config.corpora) {
    ProjectModel model = LoadSnapshot(work, corpus);
    GenerationResult gen = GenerateSamples(model, config.generation);
    for (const GeneratedSample& s : gen.samples) {
      pool.emplace_back(CandidateFromGenerated(s, config.thresholds), corpus.role);
    }
    std::vector<CandidateSample> originals =
        collect_original_candidates(model, config.thresholds);
    for (CandidateSample& c : originals) {
      pool.emplace_back(std::move(c), corpus.role);
    }
    ojson pr;
    pr["attempted"] = gen.candidates;
    pr["generated"] = gen.samples.size();
    pr["originals"] = originals.size();
    ojson discards = ojson::array();
    for (const Discard& d : gen.discards) {
      discards.push_back({{"key", d.key}, {"reason", d.reason}});
    }
    pr["discards"] = std::move(discards);
    report[corpus.project_id] = std::move(pr);
    spdlog::info("{}: {} generated from {} attempts, {} discarded, {} originals",
                 corpus.project_id, gen.samples.size(), gen.candidates,
                 gen.discards.size(), originals.size());
    sum.generated += static_cast<int>(gen.samples.size());
    sum.originals += static_cast<int>(originals.size());
    sum.discarded += static_cast<int>(gen.discards.size());
    sum.attempted += gen.candidates;
  }
  write_candidates(pool, work.Candidates());
  WriteFileAtomic(work.GenerationReport(), report.dump(2) + "\n");
  return sum;
}

GroupSummary RunGroup(const PipelineConfig& config) {
  WorkPaths work{config.work_dir};
  Require(work.Candidates());
  std::vector<std::pair<CandidateSample, Split>> pool =
      read_candidates(work.Candidates());
  std::vector<SampleRecord> store;
  store.reserve(pool.size());
  GroupSummary sum;
  for (auto& [c, split] : pool) {
    // Thresholds may differ from the ones in force at generation time.
    c.likelihood = LikelihoodFor(c.smell, c.metrics, config.thresholds);
    GroupAssignment g = assign_group(c);
    switch (g.group) {
      case Group::kAuto:
        ++sum.auto_group;
        if (g.auto_label == Verdict::kPositive) ++sum.auto_positive[c.smell];
        break;
      case Group::kManual:
        ++sum.manual_group;
        ++sum.manual[c.smell];
        break;
      case Group::kDiscard:
        ++sum.discarded;
        break;
    }
    store.push_back(MakeRecord(c, g, split));
  }
  write_records(store, work.Store());
  spdlog::info("grouped {} candidates: {} auto, {} review, {} discarded",
               store.size(), sum.auto_group, sum.manual_group, sum.discarded);
  return sum;
}

ExportSummary RunExport(const PipelineConfig& config) {
  WorkPaths work{config.work_dir};
  Require(work.Store());
  std::vector<SampleRecord> store = read_records(work.Store());
  std::map<std::string, Annotation> annotations = ReplayLog(store, work.Log());
  DatasetMeta meta;
  if (config.balance) meta.balance_seed = config.seed;
  meta.thresholds = config.thresholds;
  meta.advisor = HeuristicAdvisor().Name();
  std::vector<SampleRecord> written = ExportDataset(
      MergeAnnotations(store, annotations), work.DatasetDir(), meta);
  ExportSummary sum;
  sum.records = static_cast<int>(written.size());
  sum.stats = compute_stats(written);
  spdlog::info("exported {} records ({} reviewed) to {}", written.size(),
               annotations.size(), work.Dataset().string());
  return sum;
}

ValidationReport ValidateDatasetDir(const fs::path& dir) {
  fs::path data = dir / "dataset.jsonl";
  fs::path meta_path = dir / "meta.json";
  Require(data);
  Require(meta_path);
  DatasetMeta meta;
  try {
    meta = MetaFromJson(json::parse(ReadFile(meta_path)));
  } catch (const json::exception& e) {
    throw DatasetError(meta_path.string() + ": " + e.what());
  } catch (const DatasetError& e) {
    throw DatasetError(meta_path.string() + ": " + e.what());
  }
  std::vector<SampleRecord> records = read_records(data);
  ValidationReport report;
  report.violations = ValidateDataset(records, meta.thresholds);
  report.recount = compute_stats(records);
  if (meta.records != report.recount.total) {
    report.violations.push_back(fmt::format(
        "meta.json counts {} records, dataset has {}", meta.records,
        report.recount.total));
  }
  for (const SampleRecord& r : records) {
    auto it = meta.projects.find(r.provenance.project);
    if (it == meta.projects.end() || it->second != ToString(r.split)) {
      report.violations.push_back(
          fmt::format("{}: project {} split {} not recorded in meta.json",
                      r.id, r.provenance.project, ToString(r.split)));
      break;
    }
  }
  return report;
}

}  // namespace smellgen
