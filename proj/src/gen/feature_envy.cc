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

// Feature Envy samples: move a method into a related class.

#include <algorithm>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gen/common.h"
#include "smellgen/java/lexer.h"
#include "smellgen/java/parser.h"
#include "smellgen/java/visit.h"

namespace smellgen {

using gen::TextEdit;
using java::Expr;
using java::ExprKind;

namespace {

bool Movable(const ClassEntity& c) {
  return c.kind == ClassKind::kClass && c.IsCandidateEligible() &&
         c.type_params.empty();
}

bool Encloses(const ProjectModel& model, const ClassEntity& outer,
              const ClassEntity& inner) {
  for (const ClassEntity* c = &inner; c != nullptr && !c->enclosing.empty();) {
    if (c->enclosing == outer.qualified_name) return true;
    c = model.LookupClass(c->enclosing);
  }
  return false;
}

const ClassEntity* TargetOf(const ProjectModel& model, const TypeName& t,
                            const ClassEntity& source) {
  if (!t.IsInternalClass()) return nullptr;
  const ClassEntity* c = model.LookupClass(t.resolved);
  if (c == nullptr || c == &source || !Movable(*c)) return nullptr;
  if (Encloses(model, *c, source) || Encloses(model, source, *c)) {
    return nullptr;
  }
  return c;
}

bool HasOverrideAnnotation(const MethodEntity& m, const ClassEntity& owner) {
  const auto& toks = owner.source->tokens();
  for (size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].begin < m.begin) continue;
    if (toks[i].begin >= m.decl->name_range.begin) break;
    if (toks[i].Is("@") && toks[i + 1].IsIdent("Override")) return true;
  }
  return false;
}

// Members a class can see through its own declarations and ancestors.
std::set<std::string> VisibleFieldNames(const ProjectModel& model,
                                        const ClassEntity& c) {
  std::set<std::string> out;
  for (const FieldEntity& f : c.fields) out.insert(f.name);
  for (const ClassEntity* a : model.Ancestors(c)) {
    for (const FieldEntity& f : a->fields) out.insert(f.name);
  }
  return out;
}

bool HierarchyHasMethod(const ProjectModel& model, const ClassEntity& c,
                        const std::string& name, int arity) {
  if (gen::FindMethodByName(c, name, arity)) return true;
  for (const ClassEntity* a : model.Ancestors(c)) {
    if (gen::FindMethodByName(*a, name, arity)) return true;
  }
  return false;
}

bool InSourceHierarchy(const ProjectModel& model, const ClassEntity& s,
                       const std::string& declaring) {
  return declaring == s.qualified_name || model.IsAncestor(s, declaring);
}

std::string TypeTextFor(const ClassEntity& s) {
  return s.enclosing.empty() ? s.simple_name : gen::CanonicalName(s.qualified_name);
}

std::string FreshName(std::string base, const std::set<std::string>& taken) {
  std::string name = base;
  for (int k = 2; taken.count(name); ++k) name = base + std::to_string(k);
  return name;
}

struct MovePlan {
  const ClassEntity* source = nullptr;
  const ClassEntity* target = nullptr;
  const MethodEntity* method = nullptr;
  std::vector<TextEdit> method_edits;  // relative to method->begin
  std::vector<TextEdit> source_edits;  // file offsets in source file
  uint32_t doc_begin = 0;              // method start including its doc
  std::string new_field;               // property moves
  std::string reason;
};

// Common refusals for every pattern.
std::string Screen(const MoveCandidateFE& c, const ProjectModel& model,
                   const MethodEntity& m, const ClassEntity& s,
                   const ClassEntity& t) {
  if (Encloses(model, s, t) || Encloses(model, t, s)) {
    return "source and target are nested in one another";
  }
  if (HasOverrideAnnotation(m, s)) return "method is annotated @Override";
  for (const ClassEntity* a : model.Ancestors(s)) {
    if (gen::FindMethodByName(*a, m.name, m.arity())) {
      return "method overrides an inherited method";
    }
  }
  for (const auto& other : model.classes()) {
    if (other.get() != &s && model.IsAncestor(*other, s.qualified_name) &&
        gen::FindMethodByName(*other, m.name, m.arity())) {
      return "method is overridden in a subclass";
    }
  }
  if (c.pattern != MovePattern::kParent &&
      HierarchyHasMethod(model, t, m.name, m.arity())) {
    return "target already has " + m.name + "/" + std::to_string(m.arity());
  }
  if (c.pattern == MovePattern::kParent &&
      gen::FindMethodByName(t, m.name, m.arity())) {
    return "target already has " + m.name + "/" + std::to_string(m.arity());
  }
  // Callers must all be sibling methods of the source calling through
  // an implicit or explicit `this`.
  for (const auto& cls : model.classes()) {
    for (const MethodEntity& caller : cls->methods) {
      for (const InvocationSite& site : caller.invocations) {
        if (site.callee != m.Ref()) continue;
        if (cls.get() != &s) return "method is called from another class";
        if (&caller == &m) return "method is recursive";
        const Expr* tg = site.call->target.get();
        if (tg != nullptr && !(tg->kind == ExprKind::kThis && !tg->target)) {
          return "method is called through a receiver";
        }
        if (site.call->has_explicit_type_args) {
          return "call passes explicit type arguments";
        }
      }
    }
  }
  for (const NameRef& r : m.names) {
    if (r.kind == BindingKind::kSuper) return "method uses super";
    if (r.kind == BindingKind::kUnresolved) {
      return "method uses unresolved name " + r.name;
    }
    if (r.via_enclosing) return "method uses an enclosing instance";
  }
  // Nested class bodies inside the method see `this` differently.
  for (const ClassEntity* n : gen::ClassesWithin(model, s)) {
    if (n->begin < m.begin || n->end > m.end) continue;
    for (const MethodEntity& nm : n->methods) {
      for (const NameRef& r : nm.names) {
        if ((r.kind == BindingKind::kField || r.kind == BindingKind::kMethod) &&
            InSourceHierarchy(model, s, r.declaring_class)) {
          return "nested class uses source members";
        }
        if (r.kind == BindingKind::kLocal && r.name == c.via) {
          return "nested class captures " + c.via;
        }
      }
    }
  }
  return "";
}

// Rewrites the method body for property and parameter moves. `is_handle`
// recognizes the expression standing for the target instance; source
// members are routed through `route`.
void RewriteBody(MovePlan* p, const ProjectModel& model,
                 const std::function<bool(const Expr&)>& is_handle,
                 const std::set<uint32_t>& handle_refs,
                 const std::string& route, const std::string& dropped_param) {
  const MethodEntity& m = *p->method;
  const ClassEntity& s = *p->source;
  uint32_t base = m.begin;
  std::set<uint32_t> consumed;
  java::AstVisitor v;
  v.expr = [&](const Expr& e) {
    bool member = (e.kind == ExprKind::kFieldAccess ||
                   e.kind == ExprKind::kMethodCall) &&
                  e.target && is_handle(*e.target);
    if (member) {
      p->method_edits.push_back(
          {e.target->range.begin - base, e.name_range.begin - base, ""});
      consumed.insert(e.target->range.begin);
      return true;
    }
    if (is_handle(e) && !consumed.count(e.range.begin)) {
      p->method_edits.push_back(
          {e.range.begin - base, e.range.end - base, "this"});
      return false;
    }
    return true;
  };
  v.cls = [](const java::ClassDecl&) {};
  java::Visit(*m.decl->body, v);

  std::set<std::string> target_fields = VisibleFieldNames(model, *p->target);
  for (const NameRef& r : m.names) {
    if (r.in_header || handle_refs.count(r.begin)) continue;
    switch (r.kind) {
      case BindingKind::kField:
      case BindingKind::kMethod:
        if (!InSourceHierarchy(model, s, r.declaring_class)) break;
        if (r.via_this) {
          p->method_edits.push_back(
              {r.this_begin - base, r.this_begin - base + 4, route});
        } else {
          p->method_edits.push_back(
              {r.begin - base, r.begin - base, route + "."});
        }
        break;
      case BindingKind::kThis:
        p->method_edits.push_back({r.begin - base, r.end - base, route});
        break;
      case BindingKind::kLocalDecl:
        if (target_fields.count(r.name)) {
          p->reason = "local " + r.name + " shadows a target field";
        }
        break;
      default:
        break;
    }
  }
  for (const ParamEntity& pe : m.parameters) {
    if (pe.name != dropped_param && target_fields.count(pe.name)) {
      p->reason = "parameter " + pe.name + " shadows a target field";
    }
  }
}

std::set<std::string> TakenNames(const ProjectModel& model,
                                 const MethodEntity& m, const ClassEntity& t) {
  std::set<std::string> taken = gen::IdentifiersIn(m.source_text);
  for (const std::string& n : VisibleFieldNames(model, t)) taken.insert(n);
  for (const MethodEntity& tm : t.methods) {
    for (const ParamEntity& pe : tm.parameters) taken.insert(pe.name);
  }
  return taken;
}

MovePlan PlanMove(const MoveCandidateFE& c, const ProjectModel& model) {
  MovePlan p;
  p.source = model.LookupClass(c.source_class);
  p.target = model.LookupClass(c.target_class);
  p.method = model.FindMethod(c.method);
  if (p.source == nullptr || p.target == nullptr || p.method == nullptr) {
    p.reason = "entity not in model";
    return p;
  }
  const MethodEntity& m = *p.method;
  const ClassEntity& s = *p.source;
  const ClassEntity& t = *p.target;
  p.reason = Screen(c, model, m, s, t);
  if (!p.reason.empty()) return p;
  std::string_view stext = s.source->text();
  p.doc_begin = gen::LeadingDocBegin(stext, m.begin);
  if (!gen::StartsLine(stext, p.doc_begin)) p.doc_begin = m.begin;
  p.source_edits.push_back(gen::DeleteMember(stext, p.doc_begin, m.end));

  switch (c.pattern) {
    case MovePattern::kParent: {
      for (const NameRef& r : m.names) {
        if (r.kind == BindingKind::kField &&
            r.declaring_class == s.qualified_name &&
            !VisibleFieldNames(model, t).count(r.name)) {
          p.reason = "method uses field " + r.name + " the parent lacks";
          return p;
        }
        if (r.kind == BindingKind::kMethod &&
            r.declaring_class == s.qualified_name &&
            !HierarchyHasMethod(model, t, r.name, r.arity)) {
          p.reason = "method calls " + r.name + " the parent lacks";
          return p;
        }
      }
      if (java::HasModifier(m.decl->modifiers, "private")) {
        p.reason = "private method would be invisible from the source";
        return p;
      }
      return p;
    }
    case MovePattern::kProperty: {
      std::set<uint32_t> handle_refs;
      for (const NameRef& r : m.names) {
        if (r.kind == BindingKind::kField && r.name == c.via &&
            r.declaring_class == s.qualified_name) {
          if (r.written) {
            p.reason = "method assigns " + c.via;
            return p;
          }
          handle_refs.insert(r.begin);
        }
      }
      auto is_handle = [&](const Expr& e) {
        if (e.kind == ExprKind::kName) return handle_refs.count(e.name_range.begin) > 0;
        return e.kind == ExprKind::kFieldAccess && e.target &&
               e.target->kind == ExprKind::kThis && !e.target->target &&
               handle_refs.count(e.name_range.begin) > 0;
      };
      p.new_field = FreshName(gen::LowerCamel(s.simple_name), TakenNames(model, m, t));
      RewriteBody(&p, model, is_handle, handle_refs, p.new_field, "");
      if (!p.reason.empty()) return p;
      // Sibling calls now go through the field.
      for (const MethodEntity& caller : s.methods) {
        for (const InvocationSite& site : caller.invocations) {
          if (site.callee != m.Ref()) continue;
          for (const NameRef& r : caller.names) {
            if ((r.kind == BindingKind::kLocalDecl ||
                 r.kind == BindingKind::kParam) &&
                r.name == c.via) {
              p.reason = "caller shadows " + c.via;
              return p;
            }
          }
          for (const ParamEntity& pe : caller.parameters) {
            if (pe.name == c.via) {
              p.reason = "caller shadows " + c.via;
              return p;
            }
          }
          if (caller.is_static) {
            p.reason = "static caller cannot reach " + c.via;
            return p;
          }
          const Expr& call = *site.call;
          if (call.target) {
            p.source_edits.push_back(
                {call.target->range.begin, call.target->range.end, c.via});
          } else {
            p.source_edits.push_back(
                {call.name_range.begin, call.name_range.begin, c.via + "."});
          }
        }
      }
      return p;
    }
    case MovePattern::kParameter: {
      const java::Param& param = m.decl->params.at(c.param_index);
      std::set<uint32_t> handle_refs;
      for (const NameRef& r : m.names) {
        if (r.kind == BindingKind::kParam && r.name == c.via && !r.in_header) {
          if (r.written) {
            p.reason = "method assigns parameter " + c.via;
            return p;
          }
          handle_refs.insert(r.begin);
        }
      }
      auto is_handle = [&](const Expr& e) {
        return e.kind == ExprKind::kName &&
               handle_refs.count(e.name_range.begin) > 0;
      };
      std::string route =
          FreshName(gen::LowerCamel(s.simple_name), TakenNames(model, m, t));
      RewriteBody(&p, model, is_handle, handle_refs, route, c.via);
      if (!p.reason.empty()) return p;
      if (param.varargs) {
        p.reason = "target parameter is varargs";
        return p;
      }
      p.method_edits.push_back({param.range.begin - m.begin,
                                param.range.end - m.begin,
                                TypeTextFor(s) + " " + route});
      for (const MethodEntity& caller : s.methods) {
        for (const InvocationSite& site : caller.invocations) {
          if (site.callee != m.Ref()) continue;
          if (caller.is_static) {
            p.reason = "static caller has no instance to pass";
            return p;
          }
          const Expr& call = *site.call;
          const Expr& handle = *call.operands.at(c.param_index);
          std::string_view h = stext.substr(
              handle.range.begin, handle.range.end - handle.range.begin);
          std::string text = gen::IsAtomicExpr(handle)
                                 ? std::string(h)
                                 : "(" + std::string(h) + ")";
          text += "." + m.name + "(";
          for (size_t i = 0; i < call.operands.size(); ++i) {
            if (i) text += ", ";
            const Expr& a = *call.operands[i];
            text += static_cast<int>(i) == c.param_index
                        ? std::string("this")
                        : std::string(stext.substr(a.range.begin,
                                                   a.range.end - a.range.begin));
          }
          text += ")";
          p.source_edits.push_back({call.range.begin, call.range.end, text});
        }
      }
      return p;
    }
  }
  return p;
}

}  // namespace

std::string CandidateKey(const MoveCandidateFE& c) {
  return "FE|" + EntityId(c.method) + "|" + std::string(ToString(c.pattern)) +
         "|" + c.target_class;
}

std::vector<MoveCandidateFE> find_move_candidates_feature_envy(
    const ProjectModel& model) {
  std::vector<MoveCandidateFE> out;
  for (const auto& cp : model.classes()) {
    const ClassEntity& s = *cp;
    if (!Movable(s)) continue;
    std::set<std::string> unique = model.UniqueFieldsOf(s);
    const ClassEntity* parent = model.InternalSuperclass(s);
    if (parent != nullptr && !Movable(*parent)) parent = nullptr;
    for (const MethodEntity& m : s.methods) {
      if (m.is_constructor || m.is_static || !m.has_body) continue;
      if (gen::HasSameArityOverload(s, m)) continue;

      if (parent != nullptr) {
        bool uses_unique = false;
        for (const NameRef& r : m.names) {
          if (r.kind == BindingKind::kField &&
              r.declaring_class == s.qualified_name && unique.count(r.name)) {
            uses_unique = true;
          }
        }
        if (!uses_unique) {
          out.push_back({m.Ref(), s.qualified_name, parent->qualified_name,
                         MovePattern::kParent, "", -1});
        }
      }

      std::set<std::string> seen;
      for (const NameRef& r : m.names) {
        if (r.kind != BindingKind::kField ||
            r.declaring_class != s.qualified_name) {
          continue;
        }
        for (const FieldEntity& f : s.fields) {
          if (f.name != r.name || f.is_static) continue;
          const ClassEntity* t = TargetOf(model, f.declared_type, s);
          if (t != nullptr && seen.insert(t->qualified_name).second) {
            out.push_back({m.Ref(), s.qualified_name, t->qualified_name,
                           MovePattern::kProperty, f.name, -1});
          }
        }
      }

      for (size_t i = 0; i < m.parameters.size(); ++i) {
        const ClassEntity* t = TargetOf(model, m.parameters[i].type, s);
        if (t == nullptr) continue;
        out.push_back({m.Ref(), s.qualified_name, t->qualified_name,
                       MovePattern::kParameter, m.parameters[i].name,
                       static_cast<int>(i)});
        break;
      }
    }
  }
  return out;
}

Outcome move_method(const MoveCandidateFE& c, const ProjectModel& model) {
  Outcome out;
  MovePlan p = PlanMove(c, model);
  if (!p.reason.empty()) {
    out.discard_reason = p.reason;
    return out;
  }
  const ClassEntity& s = *p.source;
  const ClassEntity& t = *p.target;
  const MethodEntity& m = *p.method;
  std::string_view stext = s.source->text();
  std::string_view ttext = t.source->text();

  std::optional<std::string> moved =
      gen::ApplyEdits(m.source_text, p.method_edits);
  if (!moved) {
    out.discard_reason = "overlapping method edits";
    return out;
  }
  std::string indent = gen::MemberIndent(ttext, *t.decl);
  *moved = std::string(stext.substr(p.doc_begin, m.begin - p.doc_begin)) +
           *moved;
  std::string body = gen::ContainsTextBlock(*moved)
                         ? *moved
                         : gen::Reindent(*moved, gen::IndentAt(stext, m.begin),
                                         indent);
  std::vector<TextEdit> tedits;
  uint32_t at = gen::MemberInsertPoint(ttext, *t.decl);
  std::string block =
      gen::StartsLine(ttext, t.decl->body_range.end - 1) ? "" : "\n";
  bool gap_above = at > 0 && gen::StartsLine(ttext, at) &&
                   gen::IsBlankLine(ttext, gen::LineStart(ttext, at - 1));
  if (!gap_above) block += "\n";
  block += indent + body + "\n";
  tedits.push_back({at, at, block});
  if (!p.new_field.empty()) {
    uint32_t open = t.decl->body_range.begin + 1;
    uint32_t where = gen::EndsLine(ttext, open) ? gen::NextLineStart(ttext, open)
                                                : open;
    std::string line = indent + "private " + TypeTextFor(s) + " " +
                       p.new_field + ";\n";
    if (where == open) line = "\n" + line;
    tedits.push_back({where, where, line});
  }
  if (s.file != t.file) {
    std::vector<std::string> extra;
    if (!s.package.empty() && s.package != t.package) {
      extra.push_back(s.package + ".*");
    }
    if (!s.enclosing.empty()) extra.push_back(gen::CanonicalName(s.qualified_name));
    gen::ImportPlan imports = gen::PlanImports(model, *s.source, *t.source, extra);
    if (imports.conflict) {
      out.discard_reason = "import conflict";
      return out;
    }
    if (!imports.text.empty()) {
      tedits.push_back({imports.offset, imports.offset, imports.text});
    }
  }

  std::map<std::string, std::string> files;
  if (s.file == t.file) {
    std::vector<TextEdit> all = p.source_edits;
    all.insert(all.end(), tedits.begin(), tedits.end());
    std::optional<std::string> text = gen::ApplyEdits(stext, all);
    if (!text) {
      out.discard_reason = "overlapping edits";
      return out;
    }
    files[s.file] = std::move(*text);
  } else {
    std::optional<std::string> st = gen::ApplyEdits(stext, p.source_edits);
    std::optional<std::string> tt = gen::ApplyEdits(ttext, tedits);
    if (!st || !tt) {
      out.discard_reason = "overlapping edits";
      return out;
    }
    files[s.file] = std::move(*st);
    files[t.file] = std::move(*tt);
  }

  std::string reason;
  std::optional<ProjectModel> rebuilt = gen::RebuildAndSweep(
      model, files,
      {{s.qualified_name, gen::UnresolvedNames(model, s)},
       {t.qualified_name, gen::UnresolvedNames(model, t)}},
      &reason);
  if (!rebuilt) {
    out.discard_reason = reason;
    return out;
  }
  const ClassEntity* new_t = rebuilt->LookupClass(t.qualified_name);
  const ClassEntity* new_s = rebuilt->LookupClass(s.qualified_name);
  const MethodEntity* placed = gen::FindMethodByName(*new_t, m.name, m.arity());
  if (placed == nullptr) {
    out.discard_reason = "moved method not found in target";
    return out;
  }
  if (!java::ParseClassMembers(placed->source_text).ok()) {
    out.discard_reason = "moved method does not re-parse";
    return out;
  }

  GeneratedSample sample;
  sample.smell = Smell::kFeatureEnvy;
  sample.new_source = placed->source_text;
  sample.context_sources["target_class"] = new_t->source_text;
  sample.context_sources["original_class"] = new_s->source_text;
  sample.ground_truth = RefactoringAction::MoveMethod(s.qualified_name);
  sample.metrics = MethodMetrics(*placed, *rebuilt);
  sample.provenance.project = model.project_id();
  sample.provenance.entity = EntityId(placed->Ref());
  sample.provenance.files = {s.file};
  if (t.file != s.file) sample.provenance.files.push_back(t.file);
  sample.provenance.spans = {m.span, t.span};
  sample.provenance.pattern = std::string(ToString(c.pattern));
  sample.provenance.details["original_owner"] = s.qualified_name;
  std::vector<std::string> targets = ForeignClasses(*placed, *rebuilt);
  if (std::find(targets.begin(), targets.end(), s.qualified_name) ==
      targets.end()) {
    targets.push_back(s.qualified_name);
    std::sort(targets.begin(), targets.end());
  }
  sample.provenance.details["candidate_targets"] = fmt::format("{}", fmt::join(targets, ","));
  sample.provenance.details["generation_target"] = t.qualified_name;
  sample.provenance.details["original_entity"] = EntityId(m.Ref());
  if (!c.via.empty()) sample.provenance.details["via"] = c.via;
  if (!p.new_field.empty()) sample.provenance.details["added_field"] = p.new_field;
  sample.file_edits = std::move(files);
  out.sample = std::move(sample);
  return out;
}

}  // namespace smellgen
