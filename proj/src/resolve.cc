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

// Best-effort static resolution over the extracted entities: declared types,
// then a scope-aware walk of every method body that binds identifiers and
// records invocation and field-access sites.

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "ingest_internal.h"
#include "smellgen/ingest.h"

namespace smellgen {

namespace {

using java::Expr;
using java::ExprKind;
using java::Stmt;
using java::StmtKind;

const std::set<std::string_view>& JavaLangTypes() {
  static const std::set<std::string_view> kTypes = {
      "AbstractMethodError", "Appendable", "ArithmeticException",
      "ArrayIndexOutOfBoundsException", "ArrayStoreException",
      "AssertionError", "AutoCloseable", "Boolean", "Byte", "CharSequence",
      "Character", "Class", "ClassCastException", "ClassLoader",
      "ClassNotFoundException", "CloneNotSupportedException", "Cloneable",
      "Comparable", "Deprecated", "Double", "Enum",
      "EnumConstantNotPresentException", "Error", "Exception",
      "ExceptionInInitializerError", "Float", "FunctionalInterface",
      "IllegalAccessException", "IllegalArgumentException",
      "IllegalMonitorStateException", "IllegalStateException",
      "IllegalThreadStateException", "IncompatibleClassChangeError",
      "IndexOutOfBoundsException", "InheritableThreadLocal",
      "InstantiationException", "Integer", "InternalError",
      "InterruptedException", "Iterable", "LinkageError", "Long",
      "MatchException", "Math", "Module", "NegativeArraySizeException",
      "NoClassDefFoundError", "NoSuchFieldError", "NoSuchFieldException",
      "NoSuchMethodError", "NoSuchMethodException", "NullPointerException",
      "Number", "NumberFormatException", "Object", "OutOfMemoryError",
      "Override", "Package", "Process", "ProcessBuilder", "Readable",
      "Record", "ReflectiveOperationException", "Runnable", "Runtime",
      "RuntimeException", "SafeVarargs", "SecurityException",
      "SecurityManager", "Short", "StackOverflowError", "StackTraceElement",
      "StrictMath", "String", "StringBuffer", "StringBuilder",
      "StringIndexOutOfBoundsException", "SuppressWarnings", "System",
      "Thread", "ThreadDeath", "ThreadGroup", "ThreadLocal", "Throwable",
      "TypeNotPresentException", "UnsatisfiedLinkError",
      "UnsupportedOperationException", "VerifyError", "VirtualMachineError",
      "Void",
  };
  return kTypes;
}

bool StartsLower(std::string_view s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s[0]));
}

bool Contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

enum class TypeKind { kInternal, kTypeParam, kVisible, kUnknown };

struct TypeLookup {
  TypeKind kind = TypeKind::kUnknown;
  const ClassEntity* cls = nullptr;
};

struct FieldHit {
  const ClassEntity* declaring = nullptr;
  const FieldEntity* field = nullptr;  // null for enum constants

  explicit operator bool() const { return declaring != nullptr; }
};

struct MethodHit {
  const ClassEntity* declaring = nullptr;
  const MethodEntity* method = nullptr;  // null when the match is ambiguous

  explicit operator bool() const { return declaring != nullptr; }
};

class Resolver {
 public:
  explicit Resolver(const ProjectModel& model) : model_(model) {
    for (const auto& c : model.classes()) {
      children_[c->enclosing].push_back(c.get());
      if (c->enclosing.empty()) top_by_file_[c->file].push_back(c.get());
    }
  }

  const ProjectModel& model() const { return model_; }

  const ClassEntity* Enclosing(const ClassEntity& c) const {
    return c.enclosing.empty() ? nullptr : model_.LookupClass(c.enclosing);
  }

  void ClearCache() { supers_.clear(); }

  // Internal supertypes, nearest first, tolerant of cycles.
  const std::vector<const ClassEntity*>& Supers(const ClassEntity& c) const {
    auto it = supers_.find(&c);
    if (it != supers_.end()) return it->second;
    std::vector<const ClassEntity*> out;
    std::set<const ClassEntity*> seen{&c};
    std::deque<const ClassEntity*> work{&c};
    while (!work.empty()) {
      const ClassEntity* k = work.front();
      work.pop_front();
      std::vector<const TypeName*> sup;
      if (k->superclass) sup.push_back(&*k->superclass);
      for (const TypeName& t : k->interfaces) sup.push_back(&t);
      for (const TypeName* t : sup) {
        if (!t->internal) continue;
        const ClassEntity* s = model_.LookupClass(t->resolved);
        if (s == nullptr || !seen.insert(s).second) continue;
        out.push_back(s);
        work.push_back(s);
      }
    }
    return supers_.emplace(&c, std::move(out)).first->second;
  }

  bool IsSelfOrSuper(const ClassEntity& c, std::string_view q) const {
    if (c.qualified_name == q) return true;
    for (const ClassEntity* s : Supers(c)) {
      if (s->qualified_name == q) return true;
    }
    return false;
  }

  const ClassEntity* NestedNamed(const ClassEntity& c, std::string_view name,
                                 bool inherited) const {
    auto it = children_.find(c.qualified_name);
    if (it != children_.end()) {
      for (const ClassEntity* k : it->second) {
        if (!k->is_anonymous && k->simple_name == name) return k;
      }
    }
    if (inherited) {
      for (const ClassEntity* s : Supers(c)) {
        if (const ClassEntity* k = NestedNamed(*s, name, false)) return k;
      }
    }
    return nullptr;
  }

  TypeLookup ResolveSimple(std::string_view s, const ClassEntity& ctx,
                           const std::vector<std::string>* method_tparams,
                           bool inherited) const {
    if (method_tparams != nullptr && Contains(*method_tparams, s)) {
      return {TypeKind::kTypeParam, nullptr};
    }
    for (const ClassEntity* c = &ctx; c != nullptr; c = Enclosing(*c)) {
      if (Contains(c->type_params, s)) return {TypeKind::kTypeParam, nullptr};
      if (!c->is_anonymous && c->simple_name == s) {
        return {TypeKind::kInternal, c};
      }
      if (const ClassEntity* k = NestedNamed(*c, s, inherited)) {
        return {TypeKind::kInternal, k};
      }
    }
    auto top = top_by_file_.find(ctx.file);
    if (top != top_by_file_.end()) {
      for (const ClassEntity* c : top->second) {
        if (c->simple_name == s) return {TypeKind::kInternal, c};
      }
    }
    const java::CompilationUnit& unit = ctx.source->unit();
    for (const auto& imp : unit.imports) {
      if (imp.is_static || imp.wildcard || imp.SimpleName() != s) continue;
      if (const ClassEntity* c = model_.LookupCanonical(imp.name)) {
        return {TypeKind::kInternal, c};
      }
      return {TypeKind::kVisible, nullptr};
    }
    std::string in_package =
        unit.package.empty() ? std::string(s) : unit.package + "." + std::string(s);
    if (const ClassEntity* c = model_.LookupCanonical(in_package)) {
      return {TypeKind::kInternal, c};
    }
    for (const auto& imp : unit.imports) {
      if (imp.is_static || !imp.wildcard) continue;
      if (const ClassEntity* c =
              model_.LookupCanonical(imp.name + "." + std::string(s))) {
        return {TypeKind::kInternal, c};
      }
    }
    if (IsExternallyVisibleType(unit, s)) return {TypeKind::kVisible, nullptr};
    return {TypeKind::kUnknown, nullptr};
  }

  TypeLookup ResolveType(std::string_view written, const ClassEntity& ctx,
                         const std::vector<std::string>* method_tparams,
                         bool inherited = true) const {
    size_t dot = written.find('.');
    if (dot == std::string_view::npos) {
      return ResolveSimple(written, ctx, method_tparams, inherited);
    }
    TypeLookup first =
        ResolveSimple(written.substr(0, dot), ctx, method_tparams, inherited);
    if (first.kind == TypeKind::kInternal) {
      const ClassEntity* cur = first.cls;
      std::string_view rest = written.substr(dot + 1);
      while (cur != nullptr && !rest.empty()) {
        size_t d = rest.find('.');
        std::string_view seg = rest.substr(0, d);
        cur = NestedNamed(*cur, seg, inherited);
        rest = d == std::string_view::npos ? std::string_view() : rest.substr(d + 1);
      }
      if (cur != nullptr) return {TypeKind::kInternal, cur};
      return {TypeKind::kVisible, nullptr};
    }
    if (const ClassEntity* c = model_.LookupCanonical(written)) {
      return {TypeKind::kInternal, c};
    }
    if (first.kind == TypeKind::kVisible || StartsLower(written)) {
      return {TypeKind::kVisible, nullptr};
    }
    return {TypeKind::kUnknown, nullptr};
  }

  FieldHit FindFieldIn(const ClassEntity& c, std::string_view name) const {
    for (const FieldEntity& f : c.fields) {
      if (f.name == name) return {&c, &f};
    }
    if (Contains(c.enum_constants, name)) return {&c, nullptr};
    return {};
  }

  FieldHit FindField(const ClassEntity& c, std::string_view name,
                     bool skip_self = false) const {
    if (!skip_self) {
      if (FieldHit h = FindFieldIn(c, name)) return h;
    }
    for (const ClassEntity* s : Supers(c)) {
      if (FieldHit h = FindFieldIn(*s, name)) return h;
    }
    return {};
  }

  MethodHit FindMethodIn(const ClassEntity& c, std::string_view name,
                         int arity) const {
    std::vector<const MethodEntity*> exact, variadic;
    for (const MethodEntity& m : c.methods) {
      if (m.is_constructor || m.name != name) continue;
      if (m.arity() == arity) {
        exact.push_back(&m);
      } else if (!m.parameters.empty() && m.parameters.back().varargs &&
                 arity >= m.arity() - 1) {
        variadic.push_back(&m);
      }
    }
    const auto& pick = exact.empty() ? variadic : exact;
    if (pick.empty()) return {};
    return {&c, pick.size() == 1 ? pick.front() : nullptr};
  }

  MethodHit FindMethod(const ClassEntity& c, std::string_view name, int arity,
                       bool skip_self = false) const {
    if (!skip_self) {
      if (MethodHit h = FindMethodIn(c, name, arity)) return h;
    }
    for (const ClassEntity* s : Supers(c)) {
      if (MethodHit h = FindMethodIn(*s, name, arity)) return h;
    }
    return {};
  }

  // Any method with that name, for method references.
  const ClassEntity* FindMethodByName(const ClassEntity& c,
                                      std::string_view name) const {
    auto has = [&](const ClassEntity& k) {
      for (const MethodEntity& m : k.methods) {
        if (!m.is_constructor && m.name == name) return true;
      }
      return false;
    };
    if (has(c)) return &c;
    for (const ClassEntity* s : Supers(c)) {
      if (has(*s)) return s;
    }
    return nullptr;
  }

  void ResolveTypeName(TypeName* t, const ClassEntity& ctx,
                       const std::vector<std::string>* method_tparams,
                       bool inherited = true) const {
    TypeLookup l = ResolveType(t->written, ctx, method_tparams, inherited);
    t->internal = l.kind == TypeKind::kInternal;
    t->resolved = t->internal ? l.cls->qualified_name : std::string();
  }

 private:
  const ProjectModel& model_;
  std::map<std::string, std::vector<const ClassEntity*>> children_;
  std::map<std::string, std::vector<const ClassEntity*>> top_by_file_;
  mutable std::map<const ClassEntity*, std::vector<const ClassEntity*>> supers_;
};

struct ExprInfo {
  std::string cls;  // internal class of the value (or named type)
  int dims = 0;
  bool is_type = false;

  static ExprInfo Of(const TypeName& t) {
    ExprInfo e;
    if (t.internal) e.cls = t.resolved;
    e.dims = t.dims;
    return e;
  }
  static ExprInfo Class(const std::string& q, bool type = false) {
    ExprInfo e;
    e.cls = q;
    e.is_type = type;
    return e;
  }
};

enum class Role { kNone, kStatementRoot, kAssignedValue };

struct Ctx {
  bool conditional = false;
  bool write = false;
  bool qualifier = false;
  Role role = Role::kNone;
};

Ctx Sub(const Ctx& c) {
  Ctx s;
  s.conditional = c.conditional;
  return s;
}

bool NameChain(const Expr& e, std::string* out, const Expr** root) {
  if (e.kind == ExprKind::kName) {
    *out = e.name;
    *root = &e;
    return true;
  }
  if (e.kind == ExprKind::kFieldAccess && e.target) {
    std::string prefix;
    if (!NameChain(*e.target, &prefix, root)) return false;
    *out = prefix + "." + e.name;
    return true;
  }
  return false;
}

class BodyAnalyzer {
 public:
  BodyAnalyzer(const Resolver& r, const ClassEntity& cls, MethodEntity* m)
      : r_(r),
        cls_(cls),
        m_(*m),
        src_(*cls.source),
        unit_(src_.unit()),
        tparams_(m->decl->type_params) {
    for (const auto& imp : unit_.imports) {
      if (!imp.is_static) continue;
      if (imp.wildcard) {
        static_wildcards_.push_back(imp.name);
      } else {
        static_singles_[imp.SimpleName()] =
            imp.name.substr(0, imp.name.rfind('.'));
      }
    }
  }

  void Run() {
    const java::MethodDecl& d = *m_.decl;
    header_ = true;
    uint32_t header_end = d.body ? d.body->range.begin : m_.end;
    Annotations(m_.begin, header_end);
    if (!d.is_constructor) RecordType(d.return_type);
    for (const auto& p : d.params) RecordType(p.type);
    for (const auto& t : d.throws) RecordType(t);
    header_ = false;

    PushScope();
    for (size_t i = 0; i < d.params.size(); ++i) {
      Declare(d.params[i].name, m_.parameters[i].type, true, nullptr);
    }
    if (d.body) {
      Annotations(d.body->range.begin, d.body->range.end);
      PushScope();
      for (const auto& s : d.body->stmts) VisitStmt(*s, true);
      PopScope();
    }
    PopScope();

    std::stable_sort(m_.names.begin(), m_.names.end(),
                     [](const NameRef& a, const NameRef& b) {
                       return a.begin < b.begin;
                     });
    std::stable_sort(m_.invocations.begin(), m_.invocations.end(),
                     [](const InvocationSite& a, const InvocationSite& b) {
                       return a.call->name_range.begin <
                              b.call->name_range.begin;
                     });
    std::stable_sort(m_.field_accesses.begin(), m_.field_accesses.end(),
                     [](const FieldAccessSite& a, const FieldAccessSite& b) {
                       return a.begin < b.begin;
                     });
  }

 private:
  struct Local {
    TypeName type;
    bool param = false;
  };

  void PushScope() { scopes_.emplace_back(); }
  void PopScope() { scopes_.pop_back(); }

  const Local* FindLocal(const std::string& n) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(n);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  void Declare(const std::string& name, const TypeName& type, bool param,
               const java::SourceRange* name_range) {
    if (name.empty() || scopes_.empty()) return;
    scopes_.back()[name] = Local{type, param};
    if (name_range != nullptr && !param) {
      NameRef ref;
      ref.begin = name_range->begin;
      ref.end = name_range->end;
      ref.name = name;
      ref.kind = BindingKind::kLocalDecl;
      m_.names.push_back(std::move(ref));
    }
  }

  NameRef& AddRef(uint32_t begin, uint32_t end, const std::string& name,
                  BindingKind kind) {
    NameRef ref;
    ref.begin = begin;
    ref.end = end;
    ref.name = name;
    ref.kind = kind;
    ref.in_header = header_;
    m_.names.push_back(std::move(ref));
    return m_.names.back();
  }

  int StatementIndexAt(uint32_t offset) const {
    int best = -1;
    int best_depth = -1;
    for (size_t i = 0; i < m_.body_statements.size(); ++i) {
      const Statement& s = m_.body_statements[i];
      if (s.begin <= offset && offset < s.end && s.depth > best_depth) {
        best = static_cast<int>(i);
        best_depth = s.depth;
      }
    }
    return best < 0 ? 0 : best;
  }

  void AddAccess(const std::string& target, const std::string& member,
                 AccessKind kind, bool qualified, const java::SourceRange& at) {
    FieldAccessSite s;
    s.statement_index = StatementIndexAt(at.begin);
    s.target_class = target;
    s.internal = true;
    s.member_name = member;
    s.kind = kind;
    s.line = at.first_line;
    s.qualified = qualified;
    s.begin = at.begin;
    m_.field_accesses.push_back(std::move(s));
  }

  bool IsForeign(const std::string& q) const {
    return !r_.IsSelfOrSuper(cls_, q);
  }

  // ---- types -------------------------------------------------------------

  void RecordTypeName(const std::string& name, uint32_t begin, uint32_t end) {
    TypeLookup l = r_.ResolveType(name, cls_, &tparams_);
    std::string first = name.substr(0, name.find('.'));
    switch (l.kind) {
      case TypeKind::kInternal:
        AddRef(begin, end, first, BindingKind::kType).declaring_class =
            l.cls->qualified_name;
        break;
      case TypeKind::kTypeParam:
        AddRef(begin, end, first, BindingKind::kExternal).type_param = true;
        break;
      case TypeKind::kVisible:
        AddRef(begin, end, first, BindingKind::kExternal);
        break;
      case TypeKind::kUnknown:
        AddRef(begin, end, first, BindingKind::kUnresolved);
        break;
    }
  }

  void RecordType(const java::TypeRef& t) {
    for (const auto& a : t.type_args) RecordType(a);
    if (t.primitive || t.name.empty() || t.name == "var" || t.name == "?" ||
        t.name == "void") {
      return;
    }
    std::string first = t.name.substr(0, t.name.find('.'));
    std::string_view text = src_.Slice(t.range);
    size_t at = 0;
    if (!text.starts_with(first)) {
      at = text.find(first);
      if (at == std::string_view::npos) at = 0;
    }
    uint32_t begin = t.range.begin + static_cast<uint32_t>(at);
    RecordTypeName(t.name, begin, begin + static_cast<uint32_t>(first.size()));
  }

  TypeName Resolved(const java::TypeRef& t, int extra_dims = 0) const {
    TypeName n;
    n.written = t.name;
    n.dims = t.dims + extra_dims;
    r_.ResolveTypeName(&n, cls_, &tparams_);
    return n;
  }

  void Annotations(uint32_t begin, uint32_t end) {
    const auto& toks = src_.tokens();
    auto it = std::lower_bound(
        toks.begin(), toks.end(), begin,
        [](const java::Token& t, uint32_t b) { return t.begin < b; });
    for (; it != toks.end() && it->begin < end; ++it) {
      if (!it->Is("@") || !(it + 1)->IsIdent()) continue;
      auto n = it + 1;
      std::string name(n->text);
      auto k = n + 1;
      while (k->Is(".") && (k + 1)->IsIdent()) {
        name += "." + std::string((k + 1)->text);
        k += 2;
      }
      RecordTypeName(name, n->begin, n->end);
    }
  }

  // ---- captured locals ---------------------------------------------------

  const MethodEntity* HostMethodOf(const ClassEntity& c) const {
    if (c.host_method_begin == 0 && c.host_method_end == 0) return nullptr;
    const ClassEntity* e = r_.Enclosing(c);
    if (e == nullptr) return nullptr;
    for (const MethodEntity& m : e->methods) {
      if (m.begin == c.host_method_begin) return &m;
    }
    return nullptr;
  }

  bool Captured(const std::string& n) const {
    for (const ClassEntity* c = &cls_; c != nullptr; c = r_.Enclosing(*c)) {
      const MethodEntity* host = HostMethodOf(*c);
      if (host == nullptr) {
        if (c->host_method_begin == 0) break;
        continue;
      }
      for (const ParamEntity& p : host->parameters) {
        if (p.name == n) return true;
      }
      for (const NameRef& r : host->names) {
        if (r.kind == BindingKind::kLocalDecl && r.name == n &&
            r.begin < c->begin) {
          return true;
        }
      }
    }
    return false;
  }

  // ---- statements --------------------------------------------------------

  void VisitBody(const java::StmtPtr& s) {
    if (s) VisitStmt(*s, false);
  }

  void VisitCases(const std::vector<java::SwitchCase>& cases) {
    PushScope();
    for (const auto& c : cases) {
      for (const auto& b : c.body) VisitStmt(*b, !c.arrow);
    }
    PopScope();
  }

  void VisitStmt(const Stmt& s, bool in_list) {
    const Stmt* saved_host = host_;
    bool saved_hoist = hoist_;
    host_ = &s;
    hoist_ = false;
    switch (s.kind) {
      case StmtKind::kBlock:
        PushScope();
        for (const auto& c : s.stmts) VisitStmt(*c, true);
        PopScope();
        break;
      case StmtKind::kLocalVar: {
        RecordType(s.var_type);
        bool first = true;
        for (const auto& d : s.vars) {
          ExprInfo init;
          if (d.init) {
            hoist_ = in_list && first;
            Ctx c;
            c.role = Role::kAssignedValue;
            init = VisitExpr(*d.init, c);
            hoist_ = false;
          }
          TypeName t;
          if (s.var_type.name == "var") {
            t.internal = !init.cls.empty();
            t.resolved = init.cls;
            t.dims = init.dims;
          } else {
            t = Resolved(s.var_type, d.extra_dims);
          }
          Declare(d.name, t, false, &d.name_range);
          first = false;
        }
        break;
      }
      case StmtKind::kLocalClass:
        break;
      case StmtKind::kExpression: {
        hoist_ = in_list;
        Ctx c;
        c.role = Role::kStatementRoot;
        VisitExpr(*s.expr, c);
        break;
      }
      case StmtKind::kExplicitCtorCall:
        if (s.expr) VisitExpr(*s.expr, {});
        for (const auto& a : s.updates) VisitExpr(*a, {});
        break;
      case StmtKind::kIf:
        hoist_ = in_list;
        VisitExpr(*s.expr, {});
        hoist_ = false;
        VisitBody(s.body);
        VisitBody(s.else_body);
        break;
      case StmtKind::kFor:
        PushScope();
        for (const auto& i : s.stmts) VisitStmt(*i, false);
        if (s.expr) VisitExpr(*s.expr, {});
        for (const auto& u : s.updates) VisitExpr(*u, {});
        VisitBody(s.body);
        PopScope();
        break;
      case StmtKind::kForEach: {
        PushScope();
        hoist_ = in_list;
        ExprInfo it = VisitExpr(*s.expr, {});
        hoist_ = false;
        RecordType(s.var_type);
        if (!s.vars.empty()) {
          TypeName t;
          if (s.var_type.name == "var") {
            t.internal = !it.cls.empty() && it.dims == 1;
            t.resolved = t.internal ? it.cls : std::string();
          } else {
            t = Resolved(s.var_type, s.vars[0].extra_dims);
          }
          Declare(s.vars[0].name, t, false, &s.vars[0].name_range);
        }
        VisitBody(s.body);
        PopScope();
        break;
      }
      case StmtKind::kWhile:
        VisitExpr(*s.expr, {});
        VisitBody(s.body);
        break;
      case StmtKind::kDo:
        VisitBody(s.body);
        VisitExpr(*s.expr, {});
        break;
      case StmtKind::kTry:
        PushScope();
        for (const auto& r : s.stmts) VisitStmt(*r, false);
        VisitBody(s.body);
        PopScope();
        for (const auto& c : s.catches) {
          PushScope();
          RecordType(c.param.type);
          for (size_t i = 1; i < c.alternatives.size(); ++i) {
            RecordType(c.alternatives[i]);
          }
          TypeName t;
          if (c.alternatives.size() <= 1) t = Resolved(c.param.type);
          Declare(c.param.name, t, false, &c.param.name_range);
          VisitBody(c.block);
          PopScope();
        }
        VisitBody(s.finally_block);
        break;
      case StmtKind::kSwitch:
        hoist_ = in_list;
        VisitExpr(*s.expr, {});
        hoist_ = false;
        VisitCases(s.cases);
        break;
      case StmtKind::kReturn:
      case StmtKind::kThrow:
      case StmtKind::kYield:
        if (s.expr) {
          hoist_ = in_list;
          VisitExpr(*s.expr, {});
        }
        break;
      case StmtKind::kSynchronized:
        hoist_ = in_list;
        VisitExpr(*s.expr, {});
        hoist_ = false;
        VisitBody(s.body);
        break;
      case StmtKind::kLabeled:
        VisitBody(s.body);
        break;
      case StmtKind::kAssert: {
        Ctx c;
        c.conditional = true;
        VisitExpr(*s.expr, c);
        if (s.expr2) VisitExpr(*s.expr2, c);
        break;
      }
      case StmtKind::kBreak:
      case StmtKind::kContinue:
      case StmtKind::kEmpty:
        break;
    }
    host_ = saved_host;
    hoist_ = saved_hoist;
  }

  // ---- expressions -------------------------------------------------------

  ExprInfo VisitExpr(const Expr& e, const Ctx& ctx) {
    switch (e.kind) {
      case ExprKind::kName:
        return VisitName(e, ctx);
      case ExprKind::kFieldAccess:
        return VisitFieldAccess(e, ctx);
      case ExprKind::kMethodCall:
        return VisitCall(e, ctx);
      case ExprKind::kNew: {
        if (e.target) VisitExpr(*e.target, Sub(ctx));
        RecordType(e.type);
        for (const auto& a : e.operands) VisitExpr(*a, Sub(ctx));
        return ExprInfo::Of(Resolved(e.type));
      }
      case ExprKind::kNewArray: {
        RecordType(e.type);
        for (const auto& a : e.operands) VisitExpr(*a, Sub(ctx));
        if (e.target) VisitExpr(*e.target, Sub(ctx));
        return ExprInfo::Of(Resolved(e.type));
      }
      case ExprKind::kArrayInit:
        for (const auto& a : e.operands) VisitExpr(*a, Sub(ctx));
        return {};
      case ExprKind::kArrayAccess: {
        ExprInfo t = VisitExpr(*e.target, Sub(ctx));
        for (const auto& a : e.operands) VisitExpr(*a, Sub(ctx));
        if (t.dims > 0) {
          --t.dims;
          return t;
        }
        return {};
      }
      case ExprKind::kAssign: {
        Ctx lhs = Sub(ctx);
        lhs.write = true;
        ExprInfo t = VisitExpr(*e.operands[0], lhs);
        Ctx rhs = Sub(ctx);
        if (e.op == "=" && ctx.role == Role::kStatementRoot) {
          rhs.role = Role::kAssignedValue;
        }
        VisitExpr(*e.operands[1], rhs);
        return t;
      }
      case ExprKind::kBinary: {
        VisitExpr(*e.operands[0], Sub(ctx));
        Ctx r = Sub(ctx);
        if (e.op == "&&" || e.op == "||") r.conditional = true;
        VisitExpr(*e.operands[1], r);
        return {};
      }
      case ExprKind::kUnary:
      case ExprKind::kPostfix: {
        Ctx c = Sub(ctx);
        c.write = e.op == "++" || e.op == "--";
        ExprInfo t = VisitExpr(*e.target, c);
        return e.op == "!" ? ExprInfo{} : t;
      }
      case ExprKind::kConditional: {
        VisitExpr(*e.operands[0], Sub(ctx));
        Ctx b = Sub(ctx);
        b.conditional = true;
        ExprInfo x = VisitExpr(*e.operands[1], b);
        ExprInfo y = VisitExpr(*e.operands[2], b);
        return x.cls.empty() ? y : x;
      }
      case ExprKind::kCast:
        RecordType(e.type);
        VisitExpr(*e.target, Sub(ctx));
        return ExprInfo::Of(Resolved(e.type));
      case ExprKind::kInstanceOf: {
        VisitExpr(*e.target, Sub(ctx));
        RecordType(e.type);
        if (!e.pattern_name.empty()) {
          std::string_view text = src_.text();
          size_t at = text.find(e.pattern_name, e.type.range.end);
          java::SourceRange r;
          if (at != std::string_view::npos && at < e.range.end) {
            r.begin = static_cast<uint32_t>(at);
            r.end = r.begin + static_cast<uint32_t>(e.pattern_name.size());
            r.first_line = r.last_line = e.range.last_line;
            Declare(e.pattern_name, Resolved(e.type), false, &r);
          } else {
            Declare(e.pattern_name, Resolved(e.type), false, nullptr);
          }
        }
        return {};
      }
      case ExprKind::kLambda:
        VisitLambda(e);
        return {};
      case ExprKind::kMethodRef:
        if (e.target) {
          if (e.target->kind == ExprKind::kThis && !e.target->target) {
            NameRef& ref = AddRef(e.name_range.begin, e.name_range.end, e.name,
                                  BindingKind::kMethod);
            ref.via_this = true;
            ref.this_begin = e.target->range.begin;
            if (const ClassEntity* d = r_.FindMethodByName(cls_, e.name)) {
              ref.declaring_class = d->qualified_name;
            } else {
              ref.kind = BindingKind::kUnresolved;
            }
          } else if (e.target->kind == ExprKind::kSuper && !e.target->target) {
            AddRef(e.target->range.begin, e.target->range.end, "super",
                   BindingKind::kSuper);
          } else {
            Ctx q = Sub(ctx);
            q.qualifier = true;
            VisitExpr(*e.target, q);
          }
        } else {
          RecordType(e.type);
        }
        return {};
      case ExprKind::kLiteral:
        return {};
      case ExprKind::kThis:
        if (e.target) {
          Ctx q = Sub(ctx);
          q.qualifier = true;
          ExprInfo t = VisitExpr(*e.target, q);
          t.is_type = false;
          return t;
        }
        AddRef(e.range.begin, e.range.end, "this", BindingKind::kThis);
        return ExprInfo::Class(cls_.qualified_name);
      case ExprKind::kSuper:
        AddRef(e.range.begin, e.range.end, "super", BindingKind::kSuper);
        return {};
      case ExprKind::kClassLit:
        RecordType(e.type);
        return {};
      case ExprKind::kParens: {
        Ctx c = Sub(ctx);
        c.write = ctx.write;
        return VisitExpr(*e.target, c);
      }
      case ExprKind::kSwitch: {
        VisitExpr(*e.switch_stmt->expr, Sub(ctx));
        bool saved = hoist_;
        hoist_ = false;
        VisitCases(e.switch_stmt->cases);
        hoist_ = saved;
        return {};
      }
    }
    return {};
  }

  void VisitLambda(const Expr& e) {
    PushScope();
    for (const auto& p : e.lambda_params) {
      TypeName t;
      if (!p.type.name.empty()) {
        RecordType(p.type);
        t = Resolved(p.type);
      }
      Declare(p.name, t, false, &p.name_range);
    }
    ++lambda_depth_;
    bool saved = hoist_;
    hoist_ = false;
    if (e.lambda_body) {
      VisitStmt(*e.lambda_body, false);
    } else if (e.target) {
      Ctx c;
      c.conditional = true;
      VisitExpr(*e.target, c);
    }
    hoist_ = saved;
    --lambda_depth_;
    PopScope();
  }

  ExprInfo FieldInfo(const FieldHit& h) const {
    if (h.field == nullptr) return ExprInfo::Class(h.declaring->qualified_name);
    return ExprInfo::Of(h.field->declared_type);
  }

  AccessKind FieldKind(const Ctx& ctx) const {
    return ctx.write ? AccessKind::kFieldWrite : AccessKind::kFieldRead;
  }

  ExprInfo VisitName(const Expr& e, const Ctx& ctx) {
    const std::string& n = e.name;
    const java::SourceRange& at = e.name_range;
    if (const Local* l = FindLocal(n)) {
      AddRef(at.begin, at.end, n, l->param ? BindingKind::kParam
                                           : BindingKind::kLocal)
          .written = ctx.write;
      return ExprInfo::Of(l->type);
    }
    if (FieldHit h = r_.FindField(cls_, n)) {
      NameRef& ref = AddRef(at.begin, at.end, n, BindingKind::kField);
      ref.declaring_class = h.declaring->qualified_name;
      ref.written = ctx.write;
      AddAccess(h.declaring->qualified_name, n, FieldKind(ctx), false, at);
      return FieldInfo(h);
    }
    if (Captured(n)) {
      AddRef(at.begin, at.end, n, BindingKind::kLocal).written = ctx.write;
      return {};
    }
    for (const ClassEntity* c = r_.Enclosing(cls_); c != nullptr;
         c = r_.Enclosing(*c)) {
      if (FieldHit h = r_.FindField(*c, n)) {
        NameRef& ref = AddRef(at.begin, at.end, n, BindingKind::kField);
        ref.declaring_class = h.declaring->qualified_name;
        ref.via_enclosing = true;
        ref.written = ctx.write;
        AddAccess(h.declaring->qualified_name, n, FieldKind(ctx), false, at);
        return FieldInfo(h);
      }
    }
    auto single = static_singles_.find(n);
    if (single != static_singles_.end()) {
      if (const ClassEntity* c = r_.model().LookupCanonical(single->second)) {
        if (FieldHit h = r_.FindField(*c, n)) {
          NameRef& ref = AddRef(at.begin, at.end, n, BindingKind::kField);
          ref.declaring_class = h.declaring->qualified_name;
          AddAccess(h.declaring->qualified_name, n, FieldKind(ctx), false, at);
          return FieldInfo(h);
        }
      }
      AddRef(at.begin, at.end, n, BindingKind::kExternal);
      return {};
    }
    TypeLookup t = r_.ResolveType(n, cls_, &tparams_);
    switch (t.kind) {
      case TypeKind::kInternal:
        AddRef(at.begin, at.end, n, BindingKind::kType).declaring_class =
            t.cls->qualified_name;
        return ExprInfo::Class(t.cls->qualified_name, true);
      case TypeKind::kTypeParam:
        AddRef(at.begin, at.end, n, BindingKind::kExternal).type_param = true;
        return {};
      case TypeKind::kVisible:
        AddRef(at.begin, at.end, n, BindingKind::kExternal);
        return {};
      case TypeKind::kUnknown:
        break;
    }
    if (!static_wildcards_.empty() || (ctx.qualifier && StartsLower(n))) {
      AddRef(at.begin, at.end, n, BindingKind::kExternal);
      return {};
    }
    AddRef(at.begin, at.end, n, BindingKind::kUnresolved).written = ctx.write;
    return {};
  }

  // The root of a dotted chain that names no variable or member.
  bool FreeRoot(const Expr& root) const {
    return FindLocal(root.name) == nullptr && !r_.FindField(cls_, root.name) &&
           !Captured(root.name);
  }

  ExprInfo MemberOf(const ExprInfo& ti, const Expr& e, const Ctx& ctx) {
    if (ti.cls.empty() || ti.dims > 0) return {};
    const ClassEntity* c = r_.model().LookupClass(ti.cls);
    if (c == nullptr) return {};
    if (ti.is_type) {
      if (const ClassEntity* n = r_.NestedNamed(*c, e.name, true)) {
        return ExprInfo::Class(n->qualified_name, true);
      }
    }
    if (FieldHit h = r_.FindField(*c, e.name)) {
      AddAccess(ti.cls, e.name, FieldKind(ctx), true, e.name_range);
      return FieldInfo(h);
    }
    return {};
  }

  ExprInfo VisitFieldAccess(const Expr& e, const Ctx& ctx) {
    const Expr& t = *e.target;
    std::string chain;
    const Expr* root = nullptr;
    if (NameChain(t, &chain, &root) && FreeRoot(*root)) {
      if (const ClassEntity* c =
              r_.model().LookupCanonical(chain + "." + e.name)) {
        return ExprInfo::Class(c->qualified_name, true);
      }
      if (const ClassEntity* c = r_.model().LookupCanonical(chain)) {
        return MemberOf(ExprInfo::Class(c->qualified_name, true), e, ctx);
      }
    }
    if (t.kind == ExprKind::kThis && !t.target) {
      if (FieldHit h = r_.FindField(cls_, e.name)) {
        NameRef& r = AddRef(e.name_range.begin, e.name_range.end, e.name,
                            BindingKind::kField);
        r.declaring_class = h.declaring->qualified_name;
        r.via_this = true;
        r.this_begin = t.range.begin;
        r.written = ctx.write;
        AddAccess(h.declaring->qualified_name, e.name, FieldKind(ctx), false,
                  e.name_range);
        return FieldInfo(h);
      }
      NameRef& r = AddRef(e.name_range.begin, e.name_range.end, e.name,
                          BindingKind::kUnresolved);
      r.via_this = true;
      r.this_begin = t.range.begin;
      return {};
    }
    if (t.kind == ExprKind::kSuper && !t.target) {
      AddRef(t.range.begin, t.range.end, "super", BindingKind::kSuper);
      if (FieldHit h = r_.FindField(cls_, e.name, true)) {
        AddAccess(h.declaring->qualified_name, e.name, FieldKind(ctx), false,
                  e.name_range);
        return FieldInfo(h);
      }
      return {};
    }
    Ctx q = Sub(ctx);
    q.qualifier = true;
    ExprInfo ti = VisitExpr(t, q);
    return MemberOf(ti, e, ctx);
  }

  ExprInfo VisitCall(const Expr& e, const Ctx& ctx) {
    InvocationSite site;
    site.callee.name = e.name;
    site.callee.arity = static_cast<int>(e.operands.size());
    const MethodEntity* resolved = nullptr;
    const java::SourceRange& at = e.name_range;
    auto bind = [&](const MethodHit& h) {
      if (h.method != nullptr) {
        site.callee.owner = h.declaring->qualified_name;
        site.callee.internal = true;
        // A varargs target is keyed by its declared arity, not the call's.
        site.callee.arity = h.method->arity();
        resolved = h.method;
      }
    };

    const Expr* t = e.target.get();
    bool via_this = t != nullptr && t->kind == ExprKind::kThis && !t->target;
    if (t == nullptr || via_this) {
      if (MethodHit h = r_.FindMethod(cls_, e.name, site.callee.arity)) {
        NameRef& ref = AddRef(at.begin, at.end, e.name, BindingKind::kMethod);
        ref.declaring_class = h.declaring->qualified_name;
        ref.arity = site.callee.arity;
        ref.via_this = via_this;
        if (via_this) ref.this_begin = t->range.begin;
        bind(h);
      } else {
        bool found = false;
        if (!via_this) {
          for (const ClassEntity* c = r_.Enclosing(cls_); c != nullptr;
               c = r_.Enclosing(*c)) {
            if (MethodHit h2 = r_.FindMethod(*c, e.name, site.callee.arity)) {
              NameRef& ref =
                  AddRef(at.begin, at.end, e.name, BindingKind::kMethod);
              ref.declaring_class = h2.declaring->qualified_name;
              ref.arity = site.callee.arity;
              ref.via_enclosing = true;
              bind(h2);
              if (IsForeign(h2.declaring->qualified_name)) {
                AddAccess(h2.declaring->qualified_name, e.name,
                          AccessKind::kMethodCallOnForeign, false, at);
              }
              found = true;
              break;
            }
          }
        }
        if (!found) {
          auto single = static_singles_.find(e.name);
          const ClassEntity* holder =
              single == static_singles_.end()
                  ? nullptr
                  : r_.model().LookupCanonical(single->second);
          MethodHit h3;
          if (holder != nullptr) {
            h3 = r_.FindMethod(*holder, e.name, site.callee.arity);
          }
          if (h3) {
            NameRef& ref =
                AddRef(at.begin, at.end, e.name, BindingKind::kMethod);
            ref.declaring_class = h3.declaring->qualified_name;
            ref.arity = site.callee.arity;
            bind(h3);
            if (IsForeign(h3.declaring->qualified_name)) {
              AddAccess(h3.declaring->qualified_name, e.name,
                        AccessKind::kMethodCallOnForeign, false, at);
            }
          } else if (single != static_singles_.end() ||
                     (!via_this && !static_wildcards_.empty())) {
            AddRef(at.begin, at.end, e.name, BindingKind::kExternal);
          } else {
            NameRef& ref =
                AddRef(at.begin, at.end, e.name, BindingKind::kUnresolved);
            ref.arity = site.callee.arity;
            ref.via_this = via_this;
            if (via_this) ref.this_begin = t->range.begin;
          }
        }
      }
    } else if (t->kind == ExprKind::kSuper && !t->target) {
      AddRef(t->range.begin, t->range.end, "super", BindingKind::kSuper);
      bind(r_.FindMethod(cls_, e.name, site.callee.arity, true));
    } else {
      Ctx q = Sub(ctx);
      q.qualifier = true;
      ExprInfo ti = VisitExpr(*t, q);
      if (!ti.cls.empty() && ti.dims == 0) {
        if (const ClassEntity* c = r_.model().LookupClass(ti.cls)) {
          if (MethodHit h = r_.FindMethod(*c, e.name, site.callee.arity)) {
            bind(h);
            if (IsForeign(ti.cls)) {
              AddAccess(ti.cls, e.name, AccessKind::kMethodCallOnForeign, true,
                        at);
            }
          }
        }
      }
    }

    for (const auto& a : e.operands) {
      VisitExpr(*a, Sub(ctx));
      site.argument_texts.emplace_back(src_.Slice(a->range));
    }

    site.statement_index = StatementIndexAt(at.begin);
    switch (ctx.role) {
      case Role::kStatementRoot:
        site.pattern = InvocationPattern::kStatementCall;
        break;
      case Role::kAssignedValue:
        site.pattern = InvocationPattern::kAssignedReturn;
        break;
      case Role::kNone:
        site.pattern = InvocationPattern::kExpressionCall;
        break;
    }
    site.line = at.first_line;
    site.call = &e;
    site.host = host_;
    site.in_lambda = lambda_depth_ > 0;
    site.unconditional = hoist_ && !ctx.conditional && lambda_depth_ == 0;
    m_.invocations.push_back(std::move(site));

    return resolved != nullptr ? ExprInfo::Of(resolved->return_type)
                               : ExprInfo{};
  }

  const Resolver& r_;
  const ClassEntity& cls_;
  MethodEntity& m_;
  const java::ParsedSource& src_;
  const java::CompilationUnit& unit_;
  const std::vector<std::string>& tparams_;
  std::map<std::string, std::string> static_singles_;
  std::vector<std::string> static_wildcards_;
  std::vector<std::map<std::string, Local>> scopes_;
  const Stmt* host_ = nullptr;
  bool hoist_ = false;
  bool header_ = false;
  int lambda_depth_ = 0;
};

}  // namespace

bool IsExternallyVisibleType(const java::CompilationUnit& unit,
                             std::string_view simple_name) {
  if (JavaLangTypes().count(simple_name)) return true;
  for (const auto& imp : unit.imports) {
    if (imp.is_static) continue;
    if (!imp.wildcard && imp.SimpleName() == simple_name) return true;
  }
  for (const auto& imp : unit.imports) {
    if (!imp.is_static && imp.wildcard && !StartsLower(simple_name)) {
      return true;
    }
  }
  return false;
}

void ResolveModel(const ProjectModel& model,
                  const std::vector<std::shared_ptr<ClassEntity>>& classes) {
  Resolver r(model);
  // Supertypes first, without inherited member types, so that later lookups
  // can walk the hierarchy.
  for (const auto& c : classes) {
    if (c->superclass) r.ResolveTypeName(&*c->superclass, *c, nullptr, false);
    for (TypeName& t : c->interfaces) r.ResolveTypeName(&t, *c, nullptr, false);
  }
  r.ClearCache();
  for (const auto& c : classes) {
    for (FieldEntity& f : c->fields) {
      r.ResolveTypeName(&f.declared_type, *c, nullptr);
    }
    for (MethodEntity& m : c->methods) {
      const auto* tp = &m.decl->type_params;
      for (ParamEntity& p : m.parameters) r.ResolveTypeName(&p.type, *c, tp);
      if (!m.is_constructor) r.ResolveTypeName(&m.return_type, *c, tp);
    }
  }
  for (const auto& c : classes) {
    for (MethodEntity& m : c->methods) {
      m.names.clear();
      m.invocations.clear();
      m.field_accesses.clear();
      BodyAnalyzer(r, *c, &m).Run();
    }
  }
}

}  // namespace smellgen
