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

// Text and model helpers shared by the three generators.

#ifndef SMELLGEN_GEN_COMMON_H_
#define SMELLGEN_GEN_COMMON_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smellgen/generators.h"
#include "smellgen/java/ast.h"
#include "smellgen/program_model.h"

namespace smellgen::gen {

struct TextEdit {
  uint32_t begin = 0;
  uint32_t end = 0;
  std::string text;
};

// Applies edits given in any order. Returns absent when two edits overlap
// (insertions at the same offset are kept in the order given).
std::optional<std::string> ApplyEdits(std::string_view text,
                                      std::vector<TextEdit> edits);

uint32_t LineStart(std::string_view text, uint32_t off);
// Offset just past the line's '\n', or the end of text.
uint32_t NextLineStart(std::string_view text, uint32_t off);
uint32_t LineOf(std::string_view text, uint32_t off);
// Leading whitespace of the line containing `off`.
std::string IndentAt(std::string_view text, uint32_t off);
// Only whitespace between the line start and `off`.
bool StartsLine(std::string_view text, uint32_t off);
// Only whitespace between `off` and the end of its line.
bool EndsLine(std::string_view text, uint32_t off);
int CountLines(std::string_view text);

// Moves a chunk whose first line has already lost its indentation. Later
// lines beginning with `from` get `to` instead; other lines are left alone.
std::string Reindent(std::string_view chunk, std::string_view from,
                     std::string_view to);

// Range that removes whole lines [begin, end) when the span occupies them
// alone, otherwise just the span.
TextEdit DeleteLines(std::string_view text, uint32_t begin, uint32_t end);
// True when the line starting at `start` holds only whitespace.
bool IsBlankLine(std::string_view text, uint32_t start);
// Start of a /** comment separated from `begin` only by whitespace, or
// `begin` itself when there is none.
uint32_t LeadingDocBegin(std::string_view text, uint32_t begin);
// Like DeleteLines for a whole member, also swallowing one blank line after
// it when a blank line precedes it, so no double gap is left behind.
TextEdit DeleteMember(std::string_view text, uint32_t begin, uint32_t end);

bool IsAtomicExpr(const java::Expr& e);
bool HasSideEffects(const java::Expr& e);
bool IsStatementExpression(const java::Expr& e);
bool ContainsTextBlock(std::string_view text);

std::set<std::string> IdentifiersIn(std::string_view text);

// The class and every class declared inside its text, same file.
std::vector<const ClassEntity*> ClassesWithin(const ProjectModel& model,
                                              const ClassEntity& cls);
// Names left unresolved anywhere inside the class text.
std::set<std::string> UnresolvedNames(const ProjectModel& model,
                                      const ClassEntity& cls);

// NameRefs of every method inside the class text, keyed by offset.
std::map<uint32_t, const NameRef*> RefsByOffset(const ProjectModel& model,
                                                const ClassEntity& cls);

const MethodEntity* FindMethodByName(const ClassEntity& cls,
                                     std::string_view name, int arity);

// Method references only carry name and arity, so two overloads with the
// same arity cannot be told apart. Generators leave such methods alone.
bool HasSameArityOverload(const ClassEntity& cls, const MethodEntity& m);

// Indentation for a new member of the class.
std::string MemberIndent(std::string_view text, const java::ClassDecl& decl);
// Offset where a member appended at the end of the class body goes: the
// start of the closing brace's line, or the brace itself when it shares a
// line with other text.
uint32_t MemberInsertPoint(std::string_view text, const java::ClassDecl& decl);

std::string LowerCamel(std::string_view simple_name);
std::string CanonicalName(std::string_view qualified);

// Imports of `from` that `to` lacks and that would not clash with an import
// or a project class visible in `to`, as ready-to-insert lines.
struct ImportPlan {
  std::string text;  // lines to insert
  uint32_t offset = 0;
  bool conflict = false;
};
ImportPlan PlanImports(const ProjectModel& model,
                       const java::ParsedSource& from,
                       const java::ParsedSource& to,
                       const std::vector<std::string>& extra);

// Rebuilds the project with whole-file replacements and checks that no
// class listed in `allowed` gained unresolved names. Returns the rebuilt
// model, or absent with `reason` set.
std::optional<ProjectModel> RebuildAndSweep(
    const ProjectModel& model, const std::map<std::string, std::string>& files,
    const std::map<std::string, std::set<std::string>>& allowed,
    std::string* reason);

// Token texts of a snippet joined by single spaces.
std::string TokenString(std::string_view text);

// Text of the slice of `source` lines [first, last] (1-based).
std::string LinesOf(std::string_view source, int first, int last);

}  // namespace smellgen::gen

#endif  // SMELLGEN_GEN_COMMON_H_
