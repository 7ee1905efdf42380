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

#include "smellgen/program_model.h"

#include <algorithm>
#include <deque>

namespace smellgen {

std::string_view ToString(InvocationPattern p) {
  switch (p) {
    case InvocationPattern::kStatementCall:
      return "STATEMENT_CALL";
    case InvocationPattern::kAssignedReturn:
      return "ASSIGNED_RETURN";
    case InvocationPattern::kExpressionCall:
      return "EXPRESSION_CALL";
  }
  return "?";
}

std::string_view ToString(AccessKind k) {
  switch (k) {
    case AccessKind::kFieldRead:
      return "FIELD_READ";
    case AccessKind::kFieldWrite:
      return "FIELD_WRITE";
    case AccessKind::kMethodCallOnForeign:
      return "METHOD_CALL_ON_FOREIGN";
  }
  return "?";
}

std::string_view ToString(BindingKind k) {
  switch (k) {
    case BindingKind::kLocalDecl:
      return "local_decl";
    case BindingKind::kLocal:
      return "local";
    case BindingKind::kParam:
      return "param";
    case BindingKind::kField:
      return "field";
    case BindingKind::kMethod:
      return "method";
    case BindingKind::kThis:
      return "this";
    case BindingKind::kSuper:
      return "super";
    case BindingKind::kType:
      return "type";
    case BindingKind::kExternal:
      return "external";
    case BindingKind::kUnresolved:
      return "unresolved";
  }
  return "?";
}

std::string_view ToString(ClassKind k) {
  switch (k) {
    case ClassKind::kClass:
      return "class";
    case ClassKind::kInterface:
      return "interface";
    case ClassKind::kEnum:
      return "enum";
    case ClassKind::kRecord:
      return "record";
    case ClassKind::kAnnotation:
      return "annotation";
  }
  return "?";
}

bool ClassEntity::IsCandidateEligible() const {
  return !is_anonymous && !is_local && kind != ClassKind::kInterface &&
         kind != ClassKind::kAnnotation;
}

namespace {

std::string Canonical(std::string_view qualified) {
  std::string out(qualified);
  std::replace(out.begin(), out.end(), '$', '.');
  return out;
}

}  // namespace

ProjectModel::ProjectModel(
    std::string project_id,
    std::vector<std::shared_ptr<const ClassEntity>> classes,
    std::map<std::string, std::string> files,
    std::map<std::string, std::shared_ptr<const java::ParsedSource>> sources)
    : project_id_(std::move(project_id)),
      classes_(std::move(classes)),
      files_(std::move(files)),
      sources_(std::move(sources)) {
  for (size_t i = 0; i < classes_.size(); ++i) {
    const ClassEntity& c = *classes_[i];
    if (!class_index_.emplace(c.qualified_name, i).second) {
      throw MalformedCorpusError("duplicate class " + c.qualified_name);
    }
    if (!c.is_anonymous && !c.is_local) {
      canonical_index_.emplace(Canonical(c.qualified_name), i);
    }
  }
}

const ClassEntity* ProjectModel::LookupClass(
    std::string_view qualified_name) const {
  auto it = class_index_.find(std::string(qualified_name));
  return it == class_index_.end() ? nullptr : classes_[it->second].get();
}

const ClassEntity* ProjectModel::LookupCanonical(
    std::string_view dotted_name) const {
  auto it = canonical_index_.find(std::string(dotted_name));
  return it == canonical_index_.end() ? nullptr : classes_[it->second].get();
}

std::vector<const ClassEntity*> ProjectModel::Ancestors(
    const ClassEntity& cls) const {
  // Breadth-first over internal supertypes. Reaching `cls` again, or any
  // class twice along the superclass chain, means the corpus is malformed.
  std::vector<const ClassEntity*> out;
  std::set<std::string> seen;
  std::deque<const ClassEntity*> work{&cls};
  while (!work.empty()) {
    const ClassEntity* c = work.front();
    work.pop_front();
    std::vector<const TypeName*> supers;
    if (c->superclass) supers.push_back(&*c->superclass);
    for (const TypeName& t : c->interfaces) supers.push_back(&t);
    for (const TypeName* t : supers) {
      if (!t->internal) continue;
      const ClassEntity* s = LookupClass(t->resolved);
      if (s == nullptr) continue;
      if (s == &cls) {
        throw MalformedCorpusError("inheritance cycle through " +
                                   cls.qualified_name);
      }
      if (!seen.insert(s->qualified_name).second) continue;
      out.push_back(s);
      work.push_back(s);
    }
    if (out.size() > classes_.size()) {
      throw MalformedCorpusError("inheritance cycle above " +
                                 cls.qualified_name);
    }
  }
  // A cycle not passing through `cls` still loops forever for its members;
  // walking the superclass chain catches it.
  std::set<const ClassEntity*> chain{&cls};
  for (const ClassEntity* c = InternalSuperclass(cls); c != nullptr;
       c = InternalSuperclass(*c)) {
    if (!chain.insert(c).second) {
      throw MalformedCorpusError("inheritance cycle above " +
                                 cls.qualified_name);
    }
  }
  return out;
}

bool ProjectModel::IsAncestor(const ClassEntity& cls,
                              std::string_view qualified) const {
  for (const ClassEntity* a : Ancestors(cls)) {
    if (a->qualified_name == qualified) return true;
  }
  return false;
}

const ClassEntity* ProjectModel::InternalSuperclass(
    const ClassEntity& cls) const {
  if (!cls.superclass || !cls.superclass->internal) return nullptr;
  const ClassEntity* s = LookupClass(cls.superclass->resolved);
  if (s == nullptr || s->kind == ClassKind::kInterface) return nullptr;
  return s;
}

std::set<std::string> ProjectModel::UniqueFieldsOf(
    const ClassEntity& cls) const {
  std::set<std::string> inherited;
  for (const ClassEntity* a : Ancestors(cls)) {
    for (const FieldEntity& f : a->fields) inherited.insert(f.name);
  }
  std::set<std::string> out;
  for (const FieldEntity& f : cls.fields) {
    if (!inherited.count(f.name)) out.insert(f.name);
  }
  return out;
}

const MethodEntity* ProjectModel::FindMethod(const MethodRef& ref) const {
  const ClassEntity* c = LookupClass(ref.owner);
  if (c == nullptr) return nullptr;
  for (const MethodEntity& m : c->methods) {
    if (m.name == ref.name && m.arity() == ref.arity) return &m;
  }
  return nullptr;
}

std::vector<const ClassEntity*> ProjectModel::NestedClasses(
    const ClassEntity& cls) const {
  std::vector<const ClassEntity*> out;
  for (const auto& c : classes_) {
    if (c->enclosing == cls.qualified_name) out.push_back(c.get());
  }
  return out;
}

size_t ProjectModel::MethodCount() const {
  size_t n = 0;
  for (const auto& c : classes_) n += c->methods.size();
  return n;
}

const ClassEntity* lookup_class(const ProjectModel& model,
                                std::string_view name) {
  return model.LookupClass(name);
}

std::set<std::string> unique_fields_of(const ProjectModel& model,
                                       const ClassEntity& cls) {
  return model.UniqueFieldsOf(cls);
}

}  // namespace smellgen
