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

// Structural extraction: one ClassEntity per class declaration, with fields,
// methods and statement lists, before any name resolution.

#include <map>
#include <string>

#include "ingest_internal.h"
#include "smellgen/ingest.h"
#include "smellgen/java/visit.h"

namespace smellgen {

namespace {

using java::ClassDecl;
using java::Expr;
using java::ExprKind;
using java::MemberKind;
using java::ParsedSource;
using java::Stmt;
using java::StmtKind;

LineSpan SpanOf(const java::SourceRange& r) {
  return {r.first_line, r.last_line};
}

TypeName Unresolved(const java::TypeRef& t, int extra_dims = 0) {
  TypeName n;
  n.written = t.name;
  n.dims = t.dims + extra_dims;
  return n;
}

ClassKind KindOf(java::ClassKind k) {
  switch (k) {
    case java::ClassKind::kClass:
      return ClassKind::kClass;
    case java::ClassKind::kInterface:
      return ClassKind::kInterface;
    case java::ClassKind::kEnum:
      return ClassKind::kEnum;
    case java::ClassKind::kRecord:
      return ClassKind::kRecord;
    case java::ClassKind::kAnnotation:
      return ClassKind::kAnnotation;
  }
  return ClassKind::kClass;
}

std::vector<const Stmt*> Expand(const java::StmtPtr& s) {
  if (!s) return {};
  if (s->kind == StmtKind::kBlock) {
    std::vector<const Stmt*> out;
    for (const auto& c : s->stmts) out.push_back(c.get());
    return out;
  }
  return {s.get()};
}

// Statements one level below `s`: the contents of its blocks and bodies.
std::vector<const Stmt*> Children(const Stmt& s) {
  std::vector<const Stmt*> out;
  auto add = [&out](const java::StmtPtr& p) {
    for (const Stmt* c : Expand(p)) out.push_back(c);
  };
  switch (s.kind) {
    case StmtKind::kBlock:
      for (const auto& c : s.stmts) out.push_back(c.get());
      break;
    case StmtKind::kIf:
      add(s.body);
      add(s.else_body);
      break;
    case StmtKind::kFor:
    case StmtKind::kForEach:
    case StmtKind::kWhile:
    case StmtKind::kDo:
    case StmtKind::kSynchronized:
    case StmtKind::kLabeled:
      add(s.body);
      break;
    case StmtKind::kTry:
      add(s.body);
      for (const auto& c : s.catches) add(c.block);
      add(s.finally_block);
      break;
    case StmtKind::kSwitch:
      for (const auto& c : s.cases) {
        for (const auto& b : c.body) add(b);
      }
      break;
    default:
      break;
  }
  return out;
}

class Extractor {
 public:
  Extractor(std::shared_ptr<const ParsedSource> src, std::string path)
      : src_(std::move(src)), path_(std::move(path)) {}

  std::vector<ClassEntity> Run() {
    const java::CompilationUnit& unit = src_->unit();
    for (const auto& type : unit.types) {
      std::string qname =
          unit.package.empty() ? type->name : unit.package + "." + type->name;
      AddClass(*type, qname, type->name, "", nullptr);
    }
    return std::move(out_);
  }

 private:
  struct HostMethod {
    uint32_t begin = 0;
    uint32_t end = 0;
  };

  void AddClass(const ClassDecl& decl, const std::string& qname,
                const std::string& simple, const std::string& enclosing,
                const HostMethod* host, const java::TypeRef* anon_super = nullptr,
                bool local = false) {
    ClassEntity c;
    c.qualified_name = qname;
    c.simple_name = simple;
    c.package = src_->unit().package;
    c.file = path_;
    c.span = SpanOf(decl.range);
    c.begin = decl.range.begin;
    c.end = decl.range.end;
    c.kind = KindOf(decl.kind);
    c.source_text = std::string(src_->Slice(decl.range));
    c.enclosing = enclosing;
    c.is_anonymous = decl.anonymous;
    c.is_local = local;
    c.is_abstract = decl.IsAbstract();
    c.is_static = java::HasModifier(decl.modifiers, "static") ||
                  (!enclosing.empty() && c.kind != ClassKind::kClass);
    c.type_params = decl.type_params;
    c.decl = &decl;
    c.source = src_;
    if (host != nullptr) {
      c.host_method_begin = host->begin;
      c.host_method_end = host->end;
    }

    if (anon_super != nullptr) {
      c.superclass = Unresolved(*anon_super);
    } else if (decl.kind == java::ClassKind::kInterface) {
      for (const auto& t : decl.extends) c.interfaces.push_back(Unresolved(t));
    } else if (!decl.extends.empty()) {
      c.superclass = Unresolved(decl.extends.front());
    }
    for (const auto& t : decl.implements) c.interfaces.push_back(Unresolved(t));

    for (const auto& p : decl.record_components) {
      FieldEntity f;
      f.name = p.name;
      f.declared_type = Unresolved(p.type, p.varargs ? 1 : 0);
      f.owner = qname;
      f.span = SpanOf(p.range);
      c.fields.push_back(std::move(f));
    }
    for (const auto& e : decl.enum_constants) c.enum_constants.push_back(e.name);
    for (const auto& m : decl.members) {
      if (m.kind == MemberKind::kField) {
        for (const auto& v : m.field->vars) {
          FieldEntity f;
          f.name = v.name;
          f.declared_type = Unresolved(m.field->type, v.extra_dims);
          f.owner = qname;
          f.is_static = java::HasModifier(m.field->modifiers, "static") ||
                        c.kind == ClassKind::kInterface ||
                        c.kind == ClassKind::kAnnotation;
          f.span = SpanOf(m.field->range);
          c.fields.push_back(std::move(f));
        }
      } else if (m.kind == MemberKind::kMethod) {
        c.methods.push_back(MakeMethod(*m.method, qname, c.kind));
      }
    }
    out_.push_back(std::move(c));

    // Nested declarations in source order.
    std::map<const ClassDecl*, const java::TypeRef*> anon_types;
    const HostMethod* current_host = nullptr;
    java::AstVisitor v;
    v.expr = [&](const Expr& e) {
      if (e.kind == ExprKind::kNew && e.body) anon_types[e.body.get()] = &e.type;
      return true;
    };
    v.cls = [&](const ClassDecl& d) {
      if (d.anonymous) {
        auto it = anon_types.find(&d);
        java::TypeRef enum_type;
        enum_type.name = simple;
        AddClass(d, qname + "$" + std::to_string(++anon_counter_[qname]), "",
                 qname, current_host,
                 it != anon_types.end() ? it->second : &enum_type);
      } else if (current_host != nullptr) {
        std::string key = qname + "$" + d.name;
        AddClass(d, qname + "$" + std::to_string(++local_counter_[key]) + d.name,
                 d.name, qname, current_host, nullptr, true);
      } else {
        AddClass(d, qname + "$" + d.name, d.name, qname, nullptr);
      }
    };
    for (const auto& e : decl.enum_constants) {
      for (const auto& a : e.args) java::Visit(*a, v);
      if (e.body) v.cls(*e.body);
    }
    for (const auto& m : decl.members) {
      switch (m.kind) {
        case MemberKind::kField:
          for (const auto& d : m.field->vars) {
            if (d.init) java::Visit(*d.init, v);
          }
          break;
        case MemberKind::kMethod:
          if (m.method->body) {
            HostMethod h{m.method->range.begin, m.method->range.end};
            current_host = &h;
            java::Visit(*m.method->body, v);
            current_host = nullptr;
          }
          break;
        case MemberKind::kInitializer: {
          HostMethod h{m.initializer->range.begin, m.initializer->range.end};
          current_host = &h;
          java::Visit(*m.initializer->block, v);
          current_host = nullptr;
          break;
        }
        case MemberKind::kClass:
          v.cls(*m.nested);
          break;
      }
    }
  }

  MethodEntity MakeMethod(const java::MethodDecl& d, const std::string& owner,
                          ClassKind owner_kind) {
    MethodEntity m;
    m.name = d.name;
    m.owner = owner;
    for (const auto& p : d.params) {
      ParamEntity pe;
      pe.name = p.name;
      pe.type = Unresolved(p.type, p.varargs ? 1 : 0);
      pe.varargs = p.varargs;
      m.parameters.push_back(std::move(pe));
    }
    if (!d.is_constructor) m.return_type = Unresolved(d.return_type);
    m.span = SpanOf(d.range);
    m.begin = d.range.begin;
    m.end = d.range.end;
    m.source_text = std::string(src_->Slice(d.range));
    m.is_constructor = d.is_constructor;
    m.is_static = d.IsStatic();
    m.has_body = d.body != nullptr;
    (void)owner_kind;
    m.decl = &d;
    if (d.body) m.body_statements = BuildStatements(*d.body);
    return m;
  }

  std::vector<Statement> BuildStatements(const Stmt& body) {
    std::vector<Statement> out;
    auto push = [&](const Stmt& s, int depth, int parent) {
      Statement st;
      st.kind = std::string(StmtKindName(s.kind));
      st.span = SpanOf(s.range);
      st.begin = s.range.begin;
      st.end = s.range.end;
      st.depth = depth;
      st.parent = parent;
      out.push_back(std::move(st));
      return static_cast<int>(out.size()) - 1;
    };
    for (const auto& top : body.stmts) {
      int idx = push(*top, 0, -1);
      for (const Stmt* c : Children(*top)) push(*c, 1, idx);
    }
    return out;
  }

  std::shared_ptr<const ParsedSource> src_;
  std::string path_;
  std::vector<ClassEntity> out_;
  std::map<std::string, int> anon_counter_;
  std::map<std::string, int> local_counter_;
};

}  // namespace

std::string_view StmtKindName(StmtKind k) {
  switch (k) {
    case StmtKind::kBlock:
      return "block";
    case StmtKind::kLocalVar:
      return "local_var";
    case StmtKind::kLocalClass:
      return "local_class";
    case StmtKind::kExpression:
      return "expression";
    case StmtKind::kExplicitCtorCall:
      return "constructor_call";
    case StmtKind::kIf:
      return "if";
    case StmtKind::kFor:
      return "for";
    case StmtKind::kForEach:
      return "foreach";
    case StmtKind::kWhile:
      return "while";
    case StmtKind::kDo:
      return "do";
    case StmtKind::kTry:
      return "try";
    case StmtKind::kSwitch:
      return "switch";
    case StmtKind::kReturn:
      return "return";
    case StmtKind::kBreak:
      return "break";
    case StmtKind::kContinue:
      return "continue";
    case StmtKind::kThrow:
      return "throw";
    case StmtKind::kSynchronized:
      return "synchronized";
    case StmtKind::kLabeled:
      return "labeled";
    case StmtKind::kYield:
      return "yield";
    case StmtKind::kAssert:
      return "assert";
    case StmtKind::kEmpty:
      return "empty";
  }
  return "?";
}

std::vector<ClassEntity> ExtractClasses(
    const std::shared_ptr<const java::ParsedSource>& src,
    const std::string& path) {
  return Extractor(src, path).Run();
}

ParsedFile parse_file(std::string_view source, std::string_view path) {
  ParsedFile out;
  java::ParseOutcome parsed =
      java::ParseCompilationUnit(std::string(path), std::string(source));
  if (!parsed.ok()) {
    out.error = parsed.error;
    return out;
  }
  out.classes = ExtractClasses(parsed.source, std::string(path));
  return out;
}

}  // namespace smellgen
