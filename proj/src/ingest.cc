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

#include "smellgen/ingest.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ingest_internal.h"

namespace smellgen {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string_view ToString(Split s) {
  return s == Split::kTrain ? "TRAIN" : "EVAL";
}

std::optional<Split> ParseSplit(std::string_view s) {
  if (s == "TRAIN") return Split::kTrain;
  if (s == "EVAL") return Split::kEval;
  return std::nullopt;
}

namespace {

bool GlobMatchAt(std::string_view p, std::string_view s) {
  while (!p.empty()) {
    if (p.starts_with("**")) {
      std::string_view rest = p.substr(2);
      // "**/" may also match zero directories.
      if (rest.starts_with("/") && GlobMatchAt(rest.substr(1), s)) return true;
      for (size_t i = 0; i <= s.size(); ++i) {
        if (GlobMatchAt(rest, s.substr(i))) return true;
      }
      return false;
    }
    if (p[0] == '*') {
      std::string_view rest = p.substr(1);
      for (size_t i = 0; i <= s.size(); ++i) {
        if (GlobMatchAt(rest, s.substr(i))) return true;
        if (i < s.size() && s[i] == '/') break;
      }
      return false;
    }
    if (s.empty()) return false;
    if (p[0] == '?') {
      if (s[0] == '/') return false;
    } else if (p[0] != s[0]) {
      return false;
    }
    p.remove_prefix(1);
    s.remove_prefix(1);
  }
  return s.empty();
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using ParsedMap = std::map<std::string, std::shared_ptr<const java::ParsedSource>>;

ProjectModel Assemble(std::string project_id,
                      std::map<std::string, std::string> files,
                      ParsedMap parsed, IngestReport* report) {
  std::vector<std::shared_ptr<ClassEntity>> classes;
  std::set<std::string> seen;
  for (const auto& [path, src] : parsed) {
    for (ClassEntity& c : ExtractClasses(src, path)) {
      if (!seen.insert(c.qualified_name).second) {
        spdlog::warn("{}: duplicate class {} ignored", path, c.qualified_name);
        if (report != nullptr) report->duplicate_classes.push_back(c.qualified_name);
        continue;
      }
      classes.push_back(std::make_shared<ClassEntity>(std::move(c)));
    }
  }
  std::stable_sort(classes.begin(), classes.end(),
                   [](const auto& a, const auto& b) {
                     if (a->file != b->file) return a->file < b->file;
                     return a->begin < b->begin;
                   });
  std::vector<std::shared_ptr<const ClassEntity>> frozen(classes.begin(),
                                                         classes.end());
  ProjectModel model(std::move(project_id), std::move(frozen),
                     std::move(files), std::move(parsed));
  ResolveModel(model, classes);
  return model;
}

ordered_json TypeJson(const TypeName& t) {
  ordered_json j;
  j["written"] = t.written;
  j["dims"] = t.dims;
  j["internal"] = t.internal;
  if (t.internal) j["resolved"] = t.resolved;
  return j;
}

ordered_json SpanJson(const LineSpan& s) {
  return ordered_json::array({s.start_line, s.end_line});
}

}  // namespace

bool GlobMatch(std::string_view pattern, std::string_view path) {
  return GlobMatchAt(pattern, path);
}

std::vector<SourceFile> CollectSources(const CorpusConfig& config) {
  std::vector<SourceFile> out;
  std::set<std::string> seen;
  for (const fs::path& root : config.root_dirs) {
    if (!fs::is_directory(root)) {
      throw IngestError("corpus root does not exist: " + root.string());
    }
    std::vector<fs::path> found;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ".java") {
        found.push_back(entry.path());
      }
    }
    for (const fs::path& p : found) {
      std::string rel = fs::relative(p, root).generic_string();
      if (config.root_dirs.size() > 1) {
        rel = root.filename().generic_string() + "/" + rel;
      }
      bool excluded = false;
      for (const std::string& g : config.exclude_globs) {
        if (GlobMatch(g, rel)) excluded = true;
      }
      if (excluded || !seen.insert(rel).second) continue;
      out.push_back({rel, ReadFile(p)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SourceFile& a, const SourceFile& b) {
              return a.path < b.path;
            });
  return out;
}

ProjectModel BuildModelFromSources(std::string project_id,
                                   std::vector<SourceFile> sources,
                                   IngestReport* report) {
  std::map<std::string, std::string> files;
  ParsedMap parsed;
  for (SourceFile& f : sources) {
    java::ParseOutcome r = java::ParseCompilationUnit(f.path, f.text);
    if (!r.ok()) {
      spdlog::warn("{}:{}: skipped", f.path, r.error->ToString());
      if (report != nullptr) report->skipped.push_back({f.path, *r.error});
      continue;
    }
    parsed[f.path] = r.source;
    files[f.path] = std::move(f.text);
  }
  return Assemble(std::move(project_id), std::move(files), std::move(parsed),
                  report);
}

ProjectModel build_project_model(const CorpusConfig& config,
                                 IngestReport* report) {
  if (config.root_dirs.empty()) {
    throw IngestError("project " + config.project_id + " has no root_dirs");
  }
  IngestReport local;
  IngestReport* rep = report != nullptr ? report : &local;
  std::vector<SourceFile> sources = CollectSources(config);
  size_t total = sources.size();
  ProjectModel model =
      BuildModelFromSources(config.project_id, std::move(sources), rep);
  if (model.files().empty()) {
    throw IngestError("project " + config.project_id + ": none of " +
                      std::to_string(total) + " Java files parsed");
  }
  return model;
}

std::optional<ProjectModel> RebuildWithReplacedFiles(
    const ProjectModel& base, const std::map<std::string, std::string>& edits,
    std::string* error) {
  std::map<std::string, std::string> files = base.files();
  ParsedMap parsed = base.sources();
  for (const auto& [path, text] : edits) {
    java::ParseOutcome r = java::ParseCompilationUnit(path, text);
    if (!r.ok()) {
      if (error != nullptr) *error = path + ":" + r.error->ToString();
      return std::nullopt;
    }
    parsed[path] = r.source;
    files[path] = text;
  }
  for (const auto& [path, text] : files) {
    if (parsed.count(path)) continue;
    java::ParseOutcome r = java::ParseCompilationUnit(path, text);
    if (r.ok()) parsed[path] = r.source;
  }
  try {
    return Assemble(base.project_id(), std::move(files), std::move(parsed),
                    nullptr);
  } catch (const MalformedCorpusError& e) {
    if (error != nullptr) *error = e.what();
    return std::nullopt;
  }
}

std::string DumpModel(const ProjectModel& model) {
  ordered_json root;
  root["project_id"] = model.project_id();
  ordered_json files = ordered_json::array();
  for (const auto& [path, text] : model.files()) {
    ordered_json f;
    f["path"] = path;
    f["bytes"] = text.size();
    files.push_back(std::move(f));
  }
  root["files"] = std::move(files);
  ordered_json classes = ordered_json::array();
  for (const auto& cp : model.classes()) {
    const ClassEntity& c = *cp;
    ordered_json jc;
    jc["qualified_name"] = c.qualified_name;
    jc["file"] = c.file;
    jc["span"] = SpanJson(c.span);
    jc["kind"] = ToString(c.kind);
    if (!c.enclosing.empty()) jc["enclosing"] = c.enclosing;
    jc["anonymous"] = c.is_anonymous;
    jc["local"] = c.is_local;
    jc["superclass"] = c.superclass ? TypeJson(*c.superclass) : ordered_json();
    ordered_json ifaces = ordered_json::array();
    for (const TypeName& t : c.interfaces) ifaces.push_back(TypeJson(t));
    jc["interfaces"] = std::move(ifaces);
    ordered_json fields = ordered_json::array();
    for (const FieldEntity& f : c.fields) {
      ordered_json jf;
      jf["name"] = f.name;
      jf["declared_type"] = TypeJson(f.declared_type);
      jf["static"] = f.is_static;
      jf["span"] = SpanJson(f.span);
      fields.push_back(std::move(jf));
    }
    jc["fields"] = std::move(fields);
    ordered_json methods = ordered_json::array();
    for (const MethodEntity& m : c.methods) {
      ordered_json jm;
      jm["name"] = m.name;
      jm["constructor"] = m.is_constructor;
      jm["static"] = m.is_static;
      jm["span"] = SpanJson(m.span);
      ordered_json params = ordered_json::array();
      for (const ParamEntity& p : m.parameters) {
        ordered_json jp;
        jp["name"] = p.name;
        jp["type"] = TypeJson(p.type);
        params.push_back(std::move(jp));
      }
      jm["parameters"] = std::move(params);
      if (!m.is_constructor) jm["return_type"] = TypeJson(m.return_type);
      ordered_json stmts = ordered_json::array();
      for (const Statement& s : m.body_statements) {
        stmts.push_back(ordered_json::array(
            {s.kind, s.span.start_line, s.span.end_line, s.depth, s.parent}));
      }
      jm["statements"] = std::move(stmts);
      ordered_json inv = ordered_json::array();
      for (const InvocationSite& s : m.invocations) {
        ordered_json ji;
        ji["statement"] = s.statement_index;
        ji["line"] = s.line;
        ji["callee"] = s.callee.name + "/" + std::to_string(s.callee.arity);
        ji["owner"] = s.callee.internal ? s.callee.owner : "";
        ji["pattern"] = ToString(s.pattern);
        ji["arguments"] = s.argument_texts;
        inv.push_back(std::move(ji));
      }
      jm["invocations"] = std::move(inv);
      ordered_json acc = ordered_json::array();
      for (const FieldAccessSite& s : m.field_accesses) {
        acc.push_back(ordered_json::array({s.statement_index, s.target_class,
                                           s.member_name, ToString(s.kind)}));
      }
      jm["field_accesses"] = std::move(acc);
      methods.push_back(std::move(jm));
    }
    jc["methods"] = std::move(methods);
    classes.push_back(std::move(jc));
  }
  root["classes"] = std::move(classes);
  return root.dump(1) + "\n";
}

}  // namespace smellgen
