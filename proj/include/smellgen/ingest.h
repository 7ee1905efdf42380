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

#ifndef SMELLGEN_INGEST_H_
#define SMELLGEN_INGEST_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smellgen/java/parser.h"
#include "smellgen/program_model.h"

namespace smellgen {

enum class Split { kTrain, kEval };

std::string_view ToString(Split s);
std::optional<Split> ParseSplit(std::string_view s);

struct CorpusConfig {
  std::vector<std::filesystem::path> root_dirs;
  std::string project_id;
  std::vector<std::string> exclude_globs;
  Split role = Split::kTrain;
};

struct SourceFile {
  std::string path;  // corpus-relative, '/'-separated
  std::string text;
};

struct SkippedFile {
  std::string path;
  java::SyntaxError error;
};

struct IngestReport {
  std::vector<SkippedFile> skipped;
  // Classes dropped because an earlier file already defined the same
  // qualified name.
  std::vector<std::string> duplicate_classes;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedFile {
  std::vector<ClassEntity> classes;
  std::optional<java::SyntaxError> error;
};

// Extracts one entity per class declaration in the file (top-level, nested,
// local and anonymous) with members, spans and statement lists. Types,
// callees and access targets are left unresolved.
ParsedFile parse_file(std::string_view source, std::string_view path);

// Matches '/'-separated paths; '*' and '?' stay within one segment, '**'
// spans segments.
bool GlobMatch(std::string_view pattern, std::string_view path);

// Collects *.java files under the roots, sorted by relative path.
// Throws IngestError when a root does not exist.
std::vector<SourceFile> CollectSources(const CorpusConfig& config);

// Throws IngestError when no file parses.
ProjectModel build_project_model(const CorpusConfig& config,
                                 IngestReport* report = nullptr);

ProjectModel BuildModelFromSources(std::string project_id,
                                   std::vector<SourceFile> sources,
                                   IngestReport* report = nullptr);

// Re-ingests `base` with some file texts replaced. Returns absent and fills
// `error` when a replacement does not parse.
std::optional<ProjectModel> RebuildWithReplacedFiles(
    const ProjectModel& base, const std::map<std::string, std::string>& edits,
    std::string* error = nullptr);

// Deterministic JSON dump of the resolved model (entities and sites, without
// file texts).
std::string DumpModel(const ProjectModel& model);

// Whether a simple type name is visible in the given file without being a
// project class: java.lang, single-type imports, wildcard imports (assumed to
// cover it), type parameters in scope.
bool IsExternallyVisibleType(const java::CompilationUnit& unit,
                             std::string_view simple_name);

}  // namespace smellgen

#endif  // SMELLGEN_INGEST_H_
