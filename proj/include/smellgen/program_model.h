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

#ifndef SMELLGEN_PROGRAM_MODEL_H_
#define SMELLGEN_PROGRAM_MODEL_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smellgen/java/ast.h"
#include "smellgen/java/parser.h"

namespace smellgen {

// 1-based inclusive line range.
struct LineSpan {
  uint32_t start_line = 0;
  uint32_t end_line = 0;

  uint32_t Extent() const { return end_line - start_line + 1; }
  bool Covers(const LineSpan& o) const {
    return start_line <= o.start_line && o.end_line <= end_line;
  }
  bool operator==(const LineSpan&) const = default;
};

// A type as written in a declaration, tagged internal when it names a class
// of the same project.
struct TypeName {
  std::string written;   // dotted base name without type arguments
  int dims = 0;
  bool internal = false;
  std::string resolved;  // qualified class name when internal

  bool IsInternalClass() const { return internal && dims == 0; }
};

struct FieldEntity {
  std::string name;
  TypeName declared_type;
  std::string owner;
  bool is_static = false;
  LineSpan span;
};

struct ParamEntity {
  std::string name;
  TypeName type;
  bool varargs = false;
};

enum class InvocationPattern { kStatementCall, kAssignedReturn, kExpressionCall };

std::string_view ToString(InvocationPattern p);

struct MethodRef {
  std::string owner;  // empty when unresolved
  std::string name;
  int arity = 0;
  bool internal = false;

  bool operator==(const MethodRef&) const = default;
  auto operator<=>(const MethodRef&) const = default;
};

struct InvocationSite {
  int statement_index = 0;
  MethodRef callee;
  InvocationPattern pattern = InvocationPattern::kExpressionCall;
  std::vector<std::string> argument_texts;
  uint32_t line = 0;
  const java::Expr* call = nullptr;
  // Innermost statement containing the call, at any nesting depth.
  const java::Stmt* host = nullptr;
  // The host sits directly in a statement list (block or switch group) and
  // the call is evaluated exactly once before the host completes: not under
  // a lambda, a conditional branch, or the right operand of && / ||.
  bool unconditional = false;
  // Call appears inside a lambda body.
  bool in_lambda = false;
};

enum class AccessKind { kFieldRead, kFieldWrite, kMethodCallOnForeign };

std::string_view ToString(AccessKind k);

struct FieldAccessSite {
  int statement_index = 0;
  std::string target_class;  // qualified when internal
  bool internal = false;
  std::string member_name;
  AccessKind kind = AccessKind::kFieldRead;
  uint32_t line = 0;
  // Access spelled through a receiver expression (x.f) rather than through
  // the implicit or explicit `this`.
  bool qualified = false;
  uint32_t begin = 0;  // file offset of the member name
};

// How one identifier occurrence in a method body resolves.
enum class BindingKind {
  kLocalDecl,   // declaration of a local, lambda parameter, catch parameter
  kLocal,       // use of a local
  kParam,       // use of a method parameter
  kField,       // field of the owner hierarchy or an enclosing class
  kMethod,      // unqualified or this-qualified method call
  kThis,        // unqualified `this`
  kSuper,       // unqualified `super`
  kType,        // project class used as a type or qualifier
  kExternal,    // visible through java.lang, an import, or a type parameter
  kUnresolved,  // nothing in scope, in the project, or imported defines it
};

std::string_view ToString(BindingKind k);

struct NameRef {
  uint32_t begin = 0;  // file offset of the identifier token
  uint32_t end = 0;
  std::string name;
  BindingKind kind = BindingKind::kUnresolved;
  // kField / kMethod: class declaring the member.
  std::string declaring_class;
  // kField / kMethod reached through explicit `this.`; `this_begin` is the
  // offset of that `this` token.
  bool via_this = false;
  uint32_t this_begin = 0;
  // kField / kMethod resolved through an enclosing class rather than the
  // owner's hierarchy.
  bool via_enclosing = false;
  // The name is written as an assignment or ++/-- target.
  bool written = false;
  int arity = -1;  // kMethod
  // kExternal naming a type parameter of the class or method.
  bool type_param = false;
  // Identifier sits inside a method header (annotation, return type,
  // parameter, throws clause) rather than the body.
  bool in_header = false;
};

struct Statement {
  std::string kind;
  LineSpan span;
  uint32_t begin = 0;
  uint32_t end = 0;
  int depth = 0;
  int parent = -1;
};

struct MethodEntity {
  std::string name;
  std::string owner;
  std::vector<ParamEntity> parameters;
  TypeName return_type;
  LineSpan span;
  uint32_t begin = 0;  // file offsets of source_text
  uint32_t end = 0;
  std::vector<Statement> body_statements;
  std::vector<InvocationSite> invocations;
  std::vector<FieldAccessSite> field_accesses;
  std::vector<NameRef> names;
  std::string source_text;
  bool is_constructor = false;
  bool is_static = false;
  bool has_body = false;
  const java::MethodDecl* decl = nullptr;

  int arity() const { return static_cast<int>(parameters.size()); }
  MethodRef Ref() const { return {owner, name, arity(), true}; }
};

enum class ClassKind { kClass, kInterface, kEnum, kRecord, kAnnotation };

std::string_view ToString(ClassKind k);

struct ClassEntity {
  std::string qualified_name;
  std::string simple_name;
  std::string package;
  std::string file;
  LineSpan span;
  uint32_t begin = 0;
  uint32_t end = 0;
  ClassKind kind = ClassKind::kClass;
  std::optional<TypeName> superclass;
  std::vector<TypeName> interfaces;
  std::vector<FieldEntity> fields;
  std::vector<MethodEntity> methods;
  // Enum constants are members but not attributes.
  std::vector<std::string> enum_constants;
  std::string source_text;
  std::string enclosing;  // qualified name of the enclosing class, if nested
  bool is_anonymous = false;
  bool is_local = false;
  bool is_abstract = false;
  bool is_static = false;
  std::vector<std::string> type_params;
  // For local and anonymous classes declared inside a method body: the file
  // offsets of that method, whose locals the class may capture.
  uint32_t host_method_begin = 0;
  uint32_t host_method_end = 0;
  const java::ClassDecl* decl = nullptr;
  std::shared_ptr<const java::ParsedSource> source;

  // Named, non-local classes and enums/records: eligible as original
  // candidates and, for kClass, as generator inputs.
  bool IsCandidateEligible() const;
};

class MalformedCorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProjectModel {
 public:
  ProjectModel() = default;
  ProjectModel(
      std::string project_id,
      std::vector<std::shared_ptr<const ClassEntity>> classes,
      std::map<std::string, std::string> files,
      std::map<std::string, std::shared_ptr<const java::ParsedSource>>
          sources = {});

  const std::string& project_id() const { return project_id_; }
  const std::vector<std::shared_ptr<const ClassEntity>>& classes() const {
    return classes_;
  }
  const std::map<std::string, std::string>& files() const { return files_; }
  const std::map<std::string, size_t>& class_index() const {
    return class_index_;
  }
  // Parsed form of every ingested file, keyed like files().
  const std::map<std::string, std::shared_ptr<const java::ParsedSource>>&
  sources() const {
    return sources_;
  }

  // Exact, case-sensitive match on the qualified name ("p.Outer$Inner").
  const ClassEntity* LookupClass(std::string_view qualified_name) const;
  // Also accepts the dotted canonical spelling ("p.Outer.Inner").
  const ClassEntity* LookupCanonical(std::string_view dotted_name) const;

  // Internal superclasses and super-interfaces, nearest first.
  // Throws MalformedCorpusError on an inheritance cycle.
  std::vector<const ClassEntity*> Ancestors(const ClassEntity& cls) const;
  bool IsAncestor(const ClassEntity& cls, std::string_view qualified) const;
  const ClassEntity* InternalSuperclass(const ClassEntity& cls) const;

  // Fields of `cls` whose names are not declared by any internal ancestor.
  std::set<std::string> UniqueFieldsOf(const ClassEntity& cls) const;

  const MethodEntity* FindMethod(const MethodRef& ref) const;
  // Classes nested (directly) in `cls`.
  std::vector<const ClassEntity*> NestedClasses(const ClassEntity& cls) const;

  size_t MethodCount() const;

 private:
  std::string project_id_;
  std::vector<std::shared_ptr<const ClassEntity>> classes_;
  std::map<std::string, std::string> files_;
  std::map<std::string, std::shared_ptr<const java::ParsedSource>> sources_;
  std::map<std::string, size_t> class_index_;
  std::map<std::string, size_t> canonical_index_;
};

// Returns the class with that name, or absent.
const ClassEntity* lookup_class(const ProjectModel& model,
                                std::string_view name);
std::set<std::string> unique_fields_of(const ProjectModel& model,
                                       const ClassEntity& cls);

}  // namespace smellgen

#endif  // SMELLGEN_PROGRAM_MODEL_H_
