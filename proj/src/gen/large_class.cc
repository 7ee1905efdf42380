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

// Large Class samples: fold a parent or a field's class into one class.

#include <algorithm>

#include "gen/common.h"
#include "smellgen/java/lexer.h"
#include "smellgen/java/parser.h"
#include "smellgen/java/visit.h"

namespace smellgen {

using gen::TextEdit;
using java::Expr;
using java::ExprKind;
using java::Member;
using java::MemberKind;
using java::Stmt;
using java::StmtKind;

namespace {

// Field, method (any arity) and nested type names a class declares.
std::set<std::string> DeclaredNames(const ClassEntity& c) {
  std::set<std::string> out;
  for (const FieldEntity& f : c.fields) out.insert(f.name);
  for (const MethodEntity& m : c.methods) {
    if (!m.is_constructor) out.insert(m.name);
  }
  for (const std::string& e : c.enum_constants) out.insert(e);
  for (const Member& m : c.decl->members) {
    if (m.kind == MemberKind::kClass) out.insert(m.nested->name);
  }
  return out;
}

bool Collides(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const std::string& n : a) {
    if (b.count(n)) return true;
  }
  return false;
}

bool Encloses(const ProjectModel& model, const ClassEntity& outer,
              const ClassEntity& inner) {
  for (const ClassEntity* c = &inner; c != nullptr && !c->enclosing.empty();) {
    if (c->enclosing == outer.qualified_name) return true;
    c = model.LookupClass(c->enclosing);
  }
  return false;
}

bool Mergeable(const ClassEntity& c) {
  return c.kind == ClassKind::kClass && c.IsCandidateEligible() &&
         c.type_params.empty();
}

std::string Slice(std::string_view text, const java::SourceRange& r) {
  return std::string(text.substr(r.begin, r.end - r.begin));
}

struct CopiedMembers {
  std::string block;
  std::vector<std::string> names;
  std::string reason;
};

CopiedMembers CopyMembers(const ClassEntity& from, const ClassEntity& into) {
  CopiedMembers out;
  std::string_view src = from.source->text();
  std::string_view dst = into.source->text();
  std::string indent = gen::MemberIndent(dst, *into.decl);
  std::vector<std::string> texts;
  uint32_t prev_end = 0;
  auto add_name = [&out](const std::string& n) {
    if (std::find(out.names.begin(), out.names.end(), n) == out.names.end()) {
      out.names.push_back(n);
    }
  };
  for (const Member& m : from.decl->members) {
    switch (m.kind) {
      case MemberKind::kInitializer:
        continue;
      case MemberKind::kMethod:
        if (m.method->is_constructor) continue;
        if (!m.method->body && !into.is_abstract) {
          out.reason = "absorbed class has abstract method " + m.method->name;
          return out;
        }
        add_name(m.method->name);
        break;
      case MemberKind::kField:
        for (const auto& v : m.field->vars) add_name(v.name);
        break;
      case MemberKind::kClass:
        if (m.nested->anonymous || m.nested->name.empty()) continue;
        add_name(m.nested->name);
        break;
    }
    const java::SourceRange& r = m.range();
    uint32_t begin = gen::LeadingDocBegin(src, r.begin);
    if (!gen::StartsLine(src, begin)) begin = r.begin;
    // Members that sat on adjacent lines stay together.
    bool tight = !texts.empty() && prev_end <= begin &&
                 gen::LineOf(src, begin) == gen::LineOf(src, prev_end) + 1;
    prev_end = r.end;
    std::string text(src.substr(begin, r.end - begin));
    if (!gen::ContainsTextBlock(text)) {
      text = gen::Reindent(text, gen::IndentAt(src, r.begin), indent);
    }
    texts.push_back((tight ? "" : "\n") + indent + text + "\n");
  }
  if (texts.empty()) {
    out.reason = "degenerate: absorbed class has no members to copy";
    return out;
  }
  uint32_t at = gen::MemberInsertPoint(dst, *into.decl);
  if (!gen::StartsLine(dst, at)) {
    out.block = "\n";
  } else if (at > 0 && gen::IsBlankLine(dst, gen::LineStart(dst, at - 1))) {
    texts.front().erase(0, 1);  // a gap is already there
  }
  for (const std::string& t : texts) out.block += t;
  return out;
}

}  // namespace

std::string CandidateKey(const MergeCandidateLC& c) {
  return "LC|" + c.absorber + "|" + std::string(ToString(c.pattern)) + "|" +
         c.absorbed + (c.field.empty() ? "" : "|" + c.field);
}

std::vector<MergeCandidateLC> find_merge_candidates_large_class(
    const ProjectModel& model) {
  std::vector<MergeCandidateLC> out;
  for (const auto& cp : model.classes()) {
    const ClassEntity& a = *cp;
    if (!Mergeable(a)) continue;
    std::set<std::string> own = DeclaredNames(a);

    if (const ClassEntity* parent = model.InternalSuperclass(a)) {
      if (Mergeable(*parent) && !Collides(own, DeclaredNames(*parent))) {
        out.push_back({a.qualified_name, parent->qualified_name,
                       ClassMergePattern::kInheritance, ""});
      }
    }

    std::set<std::string> visible = own;
    for (const ClassEntity* anc : model.Ancestors(a)) {
      for (const std::string& n : DeclaredNames(*anc)) visible.insert(n);
    }
    std::map<std::string, std::vector<const FieldEntity*>> by_type;
    for (const FieldEntity& f : a.fields) {
      if (!f.is_static && f.declared_type.IsInternalClass()) {
        by_type[f.declared_type.resolved].push_back(&f);
      }
    }
    for (const FieldEntity& f : a.fields) {
      if (f.is_static || !f.declared_type.IsInternalClass()) continue;
      const auto& same = by_type[f.declared_type.resolved];
      if (same.size() != 1) continue;
      const ClassEntity* b = model.LookupClass(f.declared_type.resolved);
      if (b == nullptr || b == &a || !Mergeable(*b)) continue;
      if (model.IsAncestor(a, b->qualified_name) ||
          model.IsAncestor(*b, a.qualified_name) || Encloses(model, a, *b) ||
          Encloses(model, *b, a)) {
        continue;
      }
      if (Collides(visible, DeclaredNames(*b))) continue;
      out.push_back({a.qualified_name, b->qualified_name,
                     ClassMergePattern::kUsage, f.name});
    }
  }
  return out;
}

namespace {

// Header rewrite for inheritance merges: the child takes the parent's
// superclass and the union of both implements lists.
TextEdit RewriteHeader(const ClassEntity& child, const ClassEntity& parent) {
  std::string_view ct = child.source->text();
  std::string_view pt = parent.source->text();
  const java::ClassDecl& cd = *child.decl;
  const java::ClassDecl& pd = *parent.decl;
  std::vector<std::string> impl;
  std::set<std::string> seen;
  for (const auto& t : cd.implements) {
    impl.push_back(Slice(ct, t.range));
    seen.insert(t.SimpleName());
  }
  for (const auto& t : pd.implements) {
    if (seen.insert(t.SimpleName()).second) impl.push_back(Slice(pt, t.range));
  }
  std::string text;
  if (pd.extends_clause.end > pd.extends_clause.begin) {
    text += " " + Slice(pt, pd.extends_clause);
  }
  if (!impl.empty()) {
    text += " implements ";
    for (size_t i = 0; i < impl.size(); ++i) {
      text += (i ? ", " : "") + impl[i];
    }
  }
  uint32_t begin = cd.extends_clause.begin;
  while (begin > 0 && (ct[begin - 1] == ' ' || ct[begin - 1] == '\t' ||
                       ct[begin - 1] == '\n' || ct[begin - 1] == '\r')) {
    --begin;
  }
  uint32_t end = cd.implements_clause.end > cd.implements_clause.begin
                     ? std::max(cd.implements_clause.end, cd.extends_clause.end)
                     : cd.extends_clause.end;
  return {begin, end, text};
}

struct Rewrites {
  std::vector<TextEdit> edits;
  std::string reason;
};

Rewrites InheritanceRewrites(const ClassEntity& child,
                             const ClassEntity& parent,
                             const ProjectModel& model) {
  Rewrites r;
  std::string_view text = child.source->text();
  for (const Member& m : parent.decl->members) {
    if (m.kind == MemberKind::kField && !m.field->vars.empty() &&
        java::HasModifier(m.field->modifiers, "final") &&
        !java::HasModifier(m.field->modifiers, "static")) {
      for (const auto& v : m.field->vars) {
        if (!v.init) {
          r.reason = "parent has blank final field " + v.name;
          return r;
        }
      }
    }
    if (m.kind == MemberKind::kMethod && m.method->is_constructor &&
        m.method->body) {
      const auto& stmts = m.method->body->stmts;
      if (!stmts.empty() && stmts.front()->kind == StmtKind::kExplicitCtorCall &&
          stmts.front()->ctor_is_super && !stmts.front()->updates.empty()) {
        r.reason = "parent constructor passes arguments to its superclass";
        return r;
      }
    }
  }
  r.edits.push_back(RewriteHeader(child, parent));

  // Child constructors lose their super(...) calls.
  for (const Member& m : child.decl->members) {
    if (m.kind != MemberKind::kMethod || !m.method->is_constructor ||
        !m.method->body) {
      continue;
    }
    const auto& stmts = m.method->body->stmts;
    if (!stmts.empty() && stmts.front()->kind == StmtKind::kExplicitCtorCall &&
        stmts.front()->ctor_is_super) {
      r.edits.push_back(gen::DeleteLines(text, stmts.front()->range.begin,
                                         stmts.front()->range.end));
    }
  }

  // `super.x` where the parent declares x now means `this.x`.
  std::set<std::string> parent_names = DeclaredNames(parent);
  std::vector<std::pair<uint32_t, uint32_t>> nested;
  for (const ClassEntity* n : gen::ClassesWithin(model, child)) {
    if (n != &child) nested.emplace_back(n->begin, n->end);
  }
  const auto& toks = child.source->tokens();
  for (size_t i = 0; i + 2 < toks.size(); ++i) {
    const java::Token& t = toks[i];
    if (!t.Is("super") || t.begin < child.decl->body_range.begin ||
        t.end > child.decl->body_range.end) {
      continue;
    }
    bool in_nested = std::any_of(nested.begin(), nested.end(), [&](auto& n) {
      return t.begin >= n.first && t.end <= n.second;
    });
    if (in_nested) continue;
    if (toks[i + 1].Is("(")) continue;  // constructor call, handled above
    if (toks[i + 1].Is("::")) {
      r.reason = "child uses a super method reference";
      return r;
    }
    if (toks[i + 1].Is(".") && toks[i + 2].IsIdent() &&
        parent_names.count(std::string(toks[i + 2].text))) {
      r.edits.push_back({t.begin, t.end, "this"});
    }
  }
  return r;
}

bool IsThisAccess(const Expr& e, const std::string& field) {
  return e.kind == ExprKind::kFieldAccess && e.name == field && e.target &&
         e.target->kind == ExprKind::kThis;
}

Rewrites UsageRewrites(const ClassEntity& owner, const ClassEntity& absorbed,
                       const std::string& field, const ProjectModel& model) {
  Rewrites r;
  std::string_view text = owner.source->text();
  std::map<uint32_t, const NameRef*> refs = gen::RefsByOffset(model, owner);
  std::set<std::string> absorbed_names = DeclaredNames(absorbed);

  // The field declaration goes away.
  bool found = false;
  for (const Member& m : owner.decl->members) {
    if (m.kind != MemberKind::kField) continue;
    for (const auto& v : m.field->vars) {
      if (v.name != field) continue;
      if (m.field->vars.size() != 1) {
        r.reason = "field shares its declaration with other fields";
        return r;
      }
      r.edits.push_back(
          gen::DeleteLines(text, m.field->range.begin, m.field->range.end));
      found = true;
    }
  }
  if (!found) {
    r.reason = "field declaration not found";
    return r;
  }

  auto is_field_name = [&](const Expr& e) {
    if (e.kind != ExprKind::kName || e.name != field) return false;
    auto it = refs.find(e.name_range.begin);
    if (it == refs.end()) return true;  // field initializers carry no refs
    return it->second->kind == BindingKind::kField &&
           it->second->declaring_class == owner.qualified_name;
  };
  auto is_field = [&](const Expr& e) {
    return is_field_name(e) || IsThisAccess(e, field);
  };
  // Locals visible where a rewritten access lands.
  auto method_at = [&](uint32_t off) -> const MethodEntity* {
    for (const ClassEntity* c : gen::ClassesWithin(model, owner)) {
      for (const MethodEntity& m : c->methods) {
        if (m.begin <= off && off < m.end) return &m;
      }
    }
    return nullptr;
  };
  std::set<uint32_t> consumed;

  java::AstVisitor v;
  v.stmt = [&](const Stmt& s) {
    if (s.kind == StmtKind::kExpression && s.expr &&
        s.expr->kind == ExprKind::kAssign && s.expr->op == "=" &&
        is_field(*s.expr->operands[0])) {
      r.edits.push_back(gen::DeleteLines(text, s.range.begin, s.range.end));
      return false;
    }
    return true;
  };
  v.expr = [&](const Expr& e) {
    bool member = (e.kind == ExprKind::kFieldAccess ||
                   e.kind == ExprKind::kMethodCall) &&
                  e.target && is_field(*e.target);
    if (member) {
      if (const MethodEntity* m = method_at(e.name_range.begin)) {
        for (const NameRef& n : m->names) {
          if ((n.kind == BindingKind::kLocalDecl ||
               n.kind == BindingKind::kParam) &&
              n.name == e.name) {
            r.reason = "local " + e.name + " shadows an absorbed member";
          }
        }
        for (const ParamEntity& p : m->parameters) {
          if (p.name == e.name) {
            r.reason = "parameter " + e.name + " shadows an absorbed member";
          }
        }
        const ClassEntity* host = model.LookupClass(m->owner);
        if (host != &owner && host != nullptr &&
            DeclaredNames(*host).count(e.name)) {
          r.reason = "nested class member " + e.name + " shadows";
        }
      }
      if (!absorbed_names.count(e.name)) {
        r.reason = "access to " + e.name + " not declared by absorbed class";
      }
      r.edits.push_back({e.target->range.begin, e.name_range.begin, ""});
      consumed.insert(e.target->range.begin);
      return true;
    }
    if (is_field(e) && !consumed.count(e.range.begin)) {
      r.reason = "field " + field + " used other than as a qualifier";
      return false;
    }
    return true;
  };
  v.cls = [&](const java::ClassDecl& d) { java::VisitClassBody(d, v); };
  java::VisitClassBody(*owner.decl, v);
  return r;
}

std::vector<std::string> MemberKeys(const java::ClassDecl& d) {
  std::vector<std::string> out;
  for (const Member& m : d.members) {
    switch (m.kind) {
      case MemberKind::kField:
        for (const auto& v : m.field->vars) out.push_back("field:" + v.name);
        break;
      case MemberKind::kMethod:
        out.push_back(std::string(m.method->is_constructor ? "ctor:" : "method:") +
                      m.method->name + "/" +
                      std::to_string(m.method->params.size()));
        break;
      case MemberKind::kClass:
        out.push_back("class:" + m.nested->name);
        break;
      case MemberKind::kInitializer:
        out.push_back("init");
        break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string KeyName(const std::string& key) {
  std::string n = key.substr(key.find(':') + 1);
  return n.substr(0, n.find('/'));
}

}  // namespace

Outcome merge_classes(const MergeCandidateLC& c, const ProjectModel& model) {
  Outcome out;
  const ClassEntity* a = model.LookupClass(c.absorber);
  const ClassEntity* b = model.LookupClass(c.absorbed);
  if (a == nullptr || b == nullptr) {
    out.discard_reason = "class not in model";
    return out;
  }
  bool inherit = c.pattern == ClassMergePattern::kInheritance;
  if (inherit && !(a->decl->extends_clause.end > a->decl->extends_clause.begin)) {
    out.discard_reason = "absorber has no extends clause";
    return out;
  }
  CopiedMembers copied = CopyMembers(*b, *a);
  if (!copied.reason.empty()) {
    out.discard_reason = copied.reason;
    return out;
  }
  Rewrites rw = inherit ? InheritanceRewrites(*a, *b, model)
                        : UsageRewrites(*a, *b, c.field, model);
  if (!rw.reason.empty()) {
    out.discard_reason = rw.reason;
    return out;
  }
  std::string_view text = a->source->text();
  std::vector<TextEdit> edits = std::move(rw.edits);
  edits.push_back({gen::MemberInsertPoint(text, *a->decl),
                   gen::MemberInsertPoint(text, *a->decl), copied.block});
  if (a->file != b->file) {
    std::vector<std::string> extra;
    if (a->package != b->package && !b->package.empty()) {
      extra.push_back(b->package + ".*");
    }
    gen::ImportPlan imports = gen::PlanImports(model, *b->source, *a->source, extra);
    if (imports.conflict) {
      out.discard_reason = "import conflict";
      return out;
    }
    if (!imports.text.empty()) {
      edits.push_back({imports.offset, imports.offset, imports.text});
    }
  }
  std::optional<std::string> new_text = gen::ApplyEdits(text, edits);
  if (!new_text) {
    out.discard_reason = "overlapping edits";
    return out;
  }
  std::set<std::string> allowed = gen::UnresolvedNames(model, *a);
  if (inherit) {
    for (const std::string& n : gen::UnresolvedNames(model, *b)) {
      allowed.insert(n);
    }
  }
  std::string reason;
  std::optional<ProjectModel> rebuilt = gen::RebuildAndSweep(
      model, {{a->file, *new_text}}, {{a->qualified_name, allowed}}, &reason);
  if (!rebuilt) {
    out.discard_reason = reason;
    return out;
  }
  const ClassEntity* merged = rebuilt->LookupClass(a->qualified_name);
  if (!java::ParseClassMembers(merged->source_text).ok()) {
    out.discard_reason = "merged class does not re-parse";
    return out;
  }

  GeneratedSample s;
  s.smell = Smell::kLargeClass;
  s.new_source = merged->source_text;
  s.ground_truth = RefactoringAction::ExtractMembers(copied.names);
  s.metrics = ClassMetrics(*merged);
  s.provenance.project = model.project_id();
  s.provenance.entity = a->qualified_name;
  s.provenance.files = {a->file};
  if (b->file != a->file) s.provenance.files.push_back(b->file);
  s.provenance.spans = {a->span, b->span};
  s.provenance.pattern = std::string(ToString(c.pattern));
  s.provenance.details["absorbed"] = b->qualified_name;
  if (!inherit) s.provenance.details["removed_field"] = c.field;
  s.file_edits[a->file] = std::move(*new_text);
  out.sample = std::move(s);
  return out;
}

std::string CheckMembersInverse(const GeneratedSample& s,
                                const MergeCandidateLC& c,
                                const ProjectModel& original) {
  if (s.ground_truth.kind != RefactoringAction::Kind::kExtractMembers) {
    return "not an extract-members action";
  }
  const ClassEntity* a = original.LookupClass(c.absorber);
  if (a == nullptr) return "absorber not in model";
  java::ParseOutcome parsed = java::ParseClassMembers(s.new_source);
  if (!parsed.ok() || parsed.source->members().size() != 1 ||
      parsed.source->members()[0].kind != MemberKind::kClass) {
    return "merged source is not a single class";
  }
  std::set<std::string> listed(s.ground_truth.extract_members.begin(),
                               s.ground_truth.extract_members.end());
  std::vector<std::string> rest;
  for (const std::string& k : MemberKeys(*parsed.source->members()[0].nested)) {
    if (!listed.count(KeyName(k))) rest.push_back(k);
  }
  std::vector<std::string> want;
  for (const std::string& k : MemberKeys(*a->decl)) {
    if (c.pattern == ClassMergePattern::kUsage && k == "field:" + c.field) {
      continue;
    }
    want.push_back(k);
  }
  if (rest != want) {
    std::string got_s, want_s;
    for (const auto& k : rest) got_s += k + " ";
    for (const auto& k : want) want_s += k + " ";
    return "remaining members [" + got_s + "] differ from original [" +
           want_s + "]";
  }
  return "";
}

}  // namespace smellgen
