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

// Long Method samples: inline one internal call into its caller.

#include <algorithm>
#include <deque>
#include <regex>

#include "gen/common.h"
#include "smellgen/java/lexer.h"
#include "smellgen/java/parser.h"
#include "smellgen/java/visit.h"

namespace smellgen {

using gen::TextEdit;
using java::Expr;
using java::ExprKind;
using java::Stmt;
using java::StmtKind;

namespace {

using CallGraph = std::map<MethodRef, std::set<MethodRef>>;

CallGraph BuildCallGraph(const ProjectModel& model) {
  CallGraph g;
  for (const auto& c : model.classes()) {
    for (const MethodEntity& m : c->methods) {
      auto& out = g[m.Ref()];
      for (const InvocationSite& s : m.invocations) {
        if (s.callee.internal) out.insert(s.callee);
      }
    }
  }
  return g;
}

bool Reaches(const CallGraph& g, const MethodRef& from, const MethodRef& to) {
  std::set<MethodRef> seen = {from};
  std::deque<MethodRef> queue = {from};
  while (!queue.empty()) {
    MethodRef at = queue.front();
    queue.pop_front();
    if (at == to) return true;
    auto it = g.find(at);
    if (it == g.end()) continue;
    for (const MethodRef& n : it->second) {
      if (seen.insert(n).second) queue.push_back(n);
    }
  }
  return false;
}

// Returns inside lambdas and class bodies belong to those, not the method.
int CountReturns(const Stmt& body) {
  int n = 0;
  java::AstVisitor v;
  v.stmt = [&n](const Stmt& s) {
    if (s.kind == StmtKind::kReturn) ++n;
    return true;
  };
  v.expr = [](const Expr& e) { return e.kind != ExprKind::kLambda; };
  java::Visit(body, v);
  return n;
}

bool HasInlinableReturnShape(const MethodEntity& m) {
  if (m.decl == nullptr || !m.decl->body) return false;
  const auto& stmts = m.decl->body->stmts;
  int returns = CountReturns(*m.decl->body);
  if (returns == 0) return true;
  return returns == 1 && !stmts.empty() &&
         stmts.back()->kind == StmtKind::kReturn;
}

int MethodIndex(const ClassEntity& c, const MethodEntity& m) {
  return static_cast<int>(&m - c.methods.data());
}

std::string ArgText(std::string_view file, const Expr& arg) {
  std::string t(file.substr(arg.range.begin, arg.range.end - arg.range.begin));
  return gen::IsAtomicExpr(arg) ? t : "(" + t + ")";
}

InlinePattern PatternOf(InvocationPattern p) {
  switch (p) {
    case InvocationPattern::kStatementCall:
      return InlinePattern::kStatement;
    case InvocationPattern::kAssignedReturn:
      return InlinePattern::kAssigned;
    case InvocationPattern::kExpressionCall:
      return InlinePattern::kExpression;
  }
  return InlinePattern::kExpression;
}

// Everything merge_methods needs to know about one candidate, or a reason
// it cannot be merged.
struct InlinePlan {
  const ClassEntity* owner = nullptr;
  const MethodEntity* caller = nullptr;
  const MethodEntity* callee = nullptr;
  const InvocationSite* site = nullptr;
  std::vector<const Stmt*> body;  // callee statements without the return
  const Stmt* ret = nullptr;      // trailing return, if any
  std::map<std::string, std::string> args;  // parameter -> argument text
  std::map<std::string, std::string> renames;
  std::string reason;
};

InlinePlan Plan(const MergeCandidateLM& c, const ProjectModel& model) {
  InlinePlan p;
  p.caller = model.FindMethod(c.caller);
  p.callee = model.FindMethod(c.callee);
  if (p.caller == nullptr || p.callee == nullptr) {
    p.reason = "caller or callee not in model";
    return p;
  }
  if (c.site_index < 0 ||
      c.site_index >= static_cast<int>(p.caller->invocations.size())) {
    p.reason = "site index out of range";
    return p;
  }
  p.site = &p.caller->invocations[c.site_index];
  p.owner = model.LookupClass(p.caller->owner);
  const MethodEntity& callee = *p.callee;
  const InvocationSite& site = *p.site;
  if (callee.owner != p.caller->owner) {
    p.reason = "callee declared in another class";
    return p;
  }
  if (!site.unconditional || site.host == nullptr) {
    p.reason = "call is not evaluated exactly once by its statement";
    return p;
  }
  const Expr* target = site.call->target.get();
  if (target != nullptr) {
    bool this_receiver = target->kind == ExprKind::kThis && !target->target;
    bool class_receiver = target->kind == ExprKind::kName &&
                          target->name == p.owner->simple_name &&
                          callee.is_static;
    if (!this_receiver && !class_receiver) {
      p.reason = "call has an explicit receiver";
      return p;
    }
  }
  if (!callee.parameters.empty() && callee.parameters.back().varargs) {
    p.reason = "callee is varargs";
    return p;
  }
  if (!callee.decl->type_params.empty()) {
    p.reason = "callee is generic";
    return p;
  }
  if (site.call->operands.size() != callee.parameters.size()) {
    p.reason = "argument count differs from parameter count";
    return p;
  }
  std::string_view file = p.owner->source->text();
  if (site.host->kind == StmtKind::kExplicitCtorCall) {
    p.reason = "host is a constructor call";
    return p;
  }
  if (!gen::StartsLine(file, site.host->range.begin)) {
    p.reason = "host statement shares its line";
    return p;
  }

  for (const auto& s : callee.decl->body->stmts) {
    if (s->kind == StmtKind::kLocalClass) {
      p.reason = "callee declares a local class";
      return p;
    }
    p.body.push_back(s.get());
  }
  if (!p.body.empty() && p.body.back()->kind == StmtKind::kReturn) {
    p.ret = p.body.back();
    p.body.pop_back();
  }
  bool value = p.ret != nullptr && p.ret->expr != nullptr;
  if (c.pattern == InlinePattern::kStatement) {
    bool keeps_tail = value && gen::IsStatementExpression(*p.ret->expr);
    if (value && !keeps_tail && gen::HasSideEffects(*p.ret->expr)) {
      p.reason = "discarded return value has side effects";
      return p;
    }
    if (p.body.empty() && !keeps_tail) {
      p.reason = "degenerate: nothing to inline";
      return p;
    }
  } else {
    if (!value) {
      p.reason = "callee has no trailing return value";
      return p;
    }
    if (p.body.empty()) {
      p.reason = "degenerate: callee is a single return";
      return p;
    }
  }

  // Parameters.
  std::map<std::string, int> uses;
  for (const NameRef& r : callee.names) {
    if (r.kind != BindingKind::kParam || r.in_header) continue;
    if (r.written) {
      p.reason = "callee assigns parameter " + r.name;
      return p;
    }
    ++uses[r.name];
  }
  std::set<std::string> caller_idents = gen::IdentifiersIn(p.caller->source_text);
  for (size_t i = 0; i < callee.parameters.size(); ++i) {
    const Expr& arg = *site.call->operands[i];
    const std::string& name = callee.parameters[i].name;
    if (gen::HasSideEffects(arg) && uses[name] != 1) {
      p.reason = "argument with side effects for parameter " + name +
                 " used " + std::to_string(uses[name]) + " times";
      return p;
    }
    p.args[name] = ArgText(file, arg);
    for (const std::string& id : gen::IdentifiersIn(p.args[name])) {
      caller_idents.insert(id);
    }
  }

  // Callee locals that could clash with anything the caller or the
  // arguments name get a fresh suffix.
  std::set<std::string> taken = caller_idents;
  for (const std::string& id : gen::IdentifiersIn(callee.source_text)) {
    taken.insert(id);
  }
  for (const NameRef& r : callee.names) {
    if (r.kind != BindingKind::kLocalDecl || r.in_header) continue;
    if (!caller_idents.count(r.name) || p.renames.count(r.name)) continue;
    for (int k = 1;; ++k) {
      std::string fresh = r.name + "__m" + std::to_string(k);
      if (!taken.count(fresh)) {
        p.renames[r.name] = fresh;
        taken.insert(fresh);
        break;
      }
    }
  }

  // An unqualified field of the callee must not fall under a caller local.
  std::set<std::string> caller_locals;
  for (const NameRef& r : p.caller->names) {
    if (r.kind == BindingKind::kLocalDecl) caller_locals.insert(r.name);
  }
  for (const ParamEntity& pe : p.caller->parameters) {
    caller_locals.insert(pe.name);
  }
  for (const NameRef& r : callee.names) {
    if (r.kind == BindingKind::kField && !r.via_this &&
        caller_locals.count(r.name)) {
      p.reason = "callee field " + r.name + " is shadowed in the caller";
      return p;
    }
  }

  // Nested classes inside the callee see parameters and locals as
  // captured names, which textual substitution cannot reach safely.
  for (const ClassEntity* n : gen::ClassesWithin(model, *p.owner)) {
    if (n->begin < callee.begin || n->end > callee.end) continue;
    for (const MethodEntity& m : n->methods) {
      for (const NameRef& r : m.names) {
        if (r.kind == BindingKind::kLocal &&
            (p.args.count(r.name) || p.renames.count(r.name))) {
          p.reason = "nested class captures " + r.name;
          return p;
        }
      }
    }
  }
  return p;
}

// Callee text in [begin, end) with parameters replaced by arguments and,
// when `rename` is set, clashing locals renamed.
std::string Substitute(const InlinePlan& p, uint32_t begin, uint32_t end,
                       bool rename) {
  std::string_view file = p.owner->source->text();
  std::vector<TextEdit> edits;
  for (const NameRef& r : p.callee->names) {
    if (r.begin < begin || r.end > end || r.in_header) continue;
    if (r.kind == BindingKind::kParam) {
      edits.push_back({r.begin - begin, r.end - begin, p.args.at(r.name)});
    } else if (rename && (r.kind == BindingKind::kLocalDecl ||
                          r.kind == BindingKind::kLocal)) {
      auto it = p.renames.find(r.name);
      if (it != p.renames.end()) {
        edits.push_back({r.begin - begin, r.end - begin, it->second});
      }
    }
  }
  return *gen::ApplyEdits(file.substr(begin, end - begin), std::move(edits));
}

std::string Joined(const std::map<std::string, std::string>& m) {
  std::string out;
  for (const auto& [k, v] : m) {
    out += (out.empty() ? "" : ",") + k + "->" + v;
  }
  return out;
}

}  // namespace

std::string EntityId(const MethodRef& m) {
  return m.owner + "#" + m.name + "/" + std::to_string(m.arity);
}

std::string CandidateKey(const MergeCandidateLM& c) {
  return "LM|" + EntityId(c.caller) + "|" + std::to_string(c.site_index) +
         "|" + EntityId(c.callee);
}

std::vector<MergeCandidateLM> find_merge_candidates_long_method(
    const ProjectModel& model) {
  CallGraph graph = BuildCallGraph(model);
  std::vector<MergeCandidateLM> out;
  for (const auto& c : model.classes()) {
    if (c->kind != ClassKind::kClass || !c->IsCandidateEligible()) continue;
    for (const MethodEntity& m : c->methods) {
      if (!m.has_body || gen::HasSameArityOverload(*c, m)) continue;
      for (size_t i = 0; i < m.invocations.size(); ++i) {
        const InvocationSite& s = m.invocations[i];
        if (!s.callee.internal) continue;
        const MethodEntity* callee = model.FindMethod(s.callee);
        if (callee == nullptr || !callee->has_body || callee->is_constructor) {
          continue;
        }
        const ClassEntity* callee_owner = model.LookupClass(callee->owner);
        if (callee_owner == nullptr ||
            gen::HasSameArityOverload(*callee_owner, *callee)) {
          continue;
        }
        if (Reaches(graph, callee->Ref(), m.Ref())) continue;
        if (!HasInlinableReturnShape(*callee)) continue;
        MergeCandidateLM cand;
        cand.caller = m.Ref();
        cand.callee = callee->Ref();
        cand.site_index = static_cast<int>(i);
        cand.site = s;
        cand.pattern = PatternOf(s.pattern);
        out.push_back(std::move(cand));
      }
    }
  }
  return out;
}

Outcome merge_methods(const MergeCandidateLM& c, const ProjectModel& model) {
  Outcome out;
  InlinePlan p = Plan(c, model);
  if (!p.reason.empty()) {
    out.discard_reason = p.reason;
    return out;
  }
  const ClassEntity& owner = *p.owner;
  const Stmt& host = *p.site->host;
  std::string_view file = owner.source->text();
  std::string host_indent = gen::IndentAt(file, host.range.begin);

  std::string chunk;
  if (!p.body.empty()) {
    uint32_t b = p.body.front()->range.begin;
    uint32_t e = p.body.back()->range.end;
    std::string text = Substitute(p, b, e, true);
    chunk = gen::ContainsTextBlock(text)
                ? text
                : gen::Reindent(text, gen::IndentAt(file, b), host_indent);
  }
  auto append_line = [&](const std::string& line) {
    chunk += (chunk.empty() ? "" : "\n" + host_indent) + line;
  };

  std::vector<TextEdit> edits;
  std::string temp;
  int extracted = 0;
  if (c.pattern == InlinePattern::kStatement) {
    if (p.ret != nullptr && p.ret->expr != nullptr) {
      append_line(Substitute(p, p.ret->expr->range.begin,
                             p.ret->expr->range.end, true) +
                  ";");
    }
    extracted = gen::CountLines(chunk);
    edits.push_back({host.range.begin, host.range.end, chunk});
  } else {
    extracted = gen::CountLines(chunk);
    std::string value =
        Substitute(p, p.ret->expr->range.begin, p.ret->expr->range.end, true);
    std::string replacement = value;
    if (c.pattern == InlinePattern::kExpression) {
      std::set<std::string> taken = gen::IdentifiersIn(p.caller->source_text);
      for (const auto& [k, v] : p.renames) taken.insert(v);
      temp = p.callee->name + "__ret";
      for (int k = 2; taken.count(temp); ++k) {
        temp = p.callee->name + "__ret" + std::to_string(k);
      }
      const auto& rt = p.callee->decl->return_type.range;
      append_line(std::string(file.substr(rt.begin, rt.end - rt.begin)) +
                  " " + temp + " = " + value + ";");
      // The temporary holds exactly the callee's result, so it belongs to
      // the block an extraction would lift out.
      extracted = gen::CountLines(chunk);
      replacement = temp;
    }
    edits.push_back({host.range.begin, host.range.begin,
                     chunk + "\n" + host_indent});
    edits.push_back(
        {p.site->call->range.begin, p.site->call->range.end, replacement});
  }
  if (extracted == 0) {
    out.discard_reason = "degenerate: nothing to extract";
    return out;
  }
  std::optional<std::string> new_text = gen::ApplyEdits(file, edits);
  if (!new_text) {
    out.discard_reason = "overlapping edits";
    return out;
  }

  std::string reason;
  std::optional<ProjectModel> rebuilt = gen::RebuildAndSweep(
      model, {{owner.file, *new_text}},
      {{owner.qualified_name, gen::UnresolvedNames(model, owner)}}, &reason);
  if (!rebuilt) {
    out.discard_reason = reason;
    return out;
  }
  const ClassEntity* new_owner = rebuilt->LookupClass(owner.qualified_name);
  const MethodEntity& merged =
      new_owner->methods.at(MethodIndex(owner, *p.caller));
  if (!java::ParseClassMembers(merged.source_text).ok()) {
    out.discard_reason = "merged method does not re-parse";
    return out;
  }

  int first = static_cast<int>(gen::LineOf(file, host.range.begin) -
                               merged.span.start_line + 1);
  GeneratedSample s;
  s.smell = Smell::kLongMethod;
  s.new_source = merged.source_text;
  s.ground_truth =
      RefactoringAction::ExtractLines({{first, first + extracted - 1}});
  std::string bad = s.ground_truth.Check(gen::CountLines(s.new_source));
  if (!bad.empty()) {
    out.discard_reason = "ground truth: " + bad;
    return out;
  }
  s.metrics = MethodMetrics(merged, *rebuilt);
  s.provenance.project = model.project_id();
  s.provenance.entity = EntityId(c.caller);
  s.provenance.files = {owner.file};
  s.provenance.spans = {p.caller->span, p.callee->span};
  s.provenance.pattern = std::string(ToString(c.pattern));
  s.provenance.details["callee"] = EntityId(c.callee);
  s.provenance.details["site_line"] = std::to_string(p.site->line);
  s.provenance.details["site_index"] = std::to_string(c.site_index);
  if (!p.renames.empty()) s.provenance.details["renamed"] = Joined(p.renames);
  if (!temp.empty()) s.provenance.details["temporary"] = temp;
  s.file_edits[owner.file] = std::move(*new_text);
  out.sample = std::move(s);
  return out;
}

namespace {

std::string StripRenameSuffixes(const std::string& tokens) {
  static const std::regex kSuffix("__m[0-9]+\\b");
  return std::regex_replace(tokens, kSuffix, "");
}

// Token string of one callee statement with parameter tokens swapped for
// argument tokens, built from the token stream rather than text edits.
std::string SubstitutedTokens(const MethodEntity& callee,
                              const java::ParsedSource& src,
                              const java::SourceRange& range,
                              const std::map<std::string, std::string>& args) {
  std::map<uint32_t, const NameRef*> params;
  for (const NameRef& r : callee.names) {
    if (r.kind == BindingKind::kParam && !r.in_header) params[r.begin] = &r;
  }
  std::string out;
  for (const java::Token& t : src.tokens()) {
    if (t.begin < range.begin || t.end > range.end) continue;
    if (t.kind == java::TokenKind::kEnd) break;
    if (!out.empty()) out.push_back(' ');
    auto it = params.find(t.begin);
    if (it != params.end()) {
      out += gen::TokenString(args.at(it->second->name));
    } else {
      out.append(t.text);
    }
  }
  return out;
}

}  // namespace

std::string CheckExtractInverse(const GeneratedSample& s,
                                const MergeCandidateLM& c,
                                const ProjectModel& original) {
  if (s.ground_truth.kind != RefactoringAction::Kind::kExtractLines) {
    return "not an extract-lines action";
  }
  InlinePlan p = Plan(c, original);
  if (!p.reason.empty()) return "candidate no longer plans: " + p.reason;
  const java::ParsedSource& src = *p.owner->source;

  std::string extracted_text;
  std::vector<bool> drop(gen::CountLines(s.new_source) + 2, false);
  for (const LineRange& r : s.ground_truth.extract_lines) {
    extracted_text += gen::LinesOf(s.new_source, r.first, r.last);
    for (int l = r.first; l <= r.last; ++l) drop[l] = true;
  }
  java::ParseOutcome parsed = java::ParseBlockStatements(extracted_text);
  if (!parsed.ok()) return "extracted lines are not statements";
  std::vector<std::string> got;
  for (const auto& st : parsed.source->statements()) {
    got.push_back(
        StripRenameSuffixes(gen::TokenString(parsed.source->Slice(st->range))));
  }
  std::vector<std::string> want;
  for (const Stmt* st : p.body) {
    want.push_back(SubstitutedTokens(*p.callee, src, st->range, p.args));
  }
  if (c.pattern == InlinePattern::kStatement && p.ret != nullptr &&
      p.ret->expr != nullptr && gen::IsStatementExpression(*p.ret->expr)) {
    want.push_back(
        SubstitutedTokens(*p.callee, src, p.ret->expr->range, p.args) + " ;");
  }
  if (c.pattern == InlinePattern::kExpression && p.ret != nullptr &&
      p.ret->expr != nullptr) {
    auto temp = s.provenance.details.find("temporary");
    if (temp == s.provenance.details.end()) return "temporary not recorded";
    want.push_back(gen::TokenString(src.Slice(p.callee->decl->return_type.range)) +
                   " " + temp->second + " = " +
                   SubstitutedTokens(*p.callee, src, p.ret->expr->range, p.args) +
                   " ;");
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got != want) return "extracted statements differ from callee body";

  // What is left of the caller must match the original everywhere outside
  // the host statement.
  std::string residual;
  for (int l = 1; l <= gen::CountLines(s.new_source); ++l) {
    if (!drop[l]) residual += gen::LinesOf(s.new_source, l, l);
  }
  std::vector<java::Token> a = java::Tokenize(p.caller->source_text);
  std::vector<java::Token> b = java::Tokenize(residual);
  a.pop_back();
  b.pop_back();
  uint32_t host_b = p.site->host->range.begin - p.caller->begin;
  uint32_t host_e = p.site->host->range.end - p.caller->begin;
  size_t before = 0;
  while (before < a.size() && a[before].end <= host_b) ++before;
  size_t after = 0;
  while (after < a.size() - before &&
         a[a.size() - 1 - after].begin >= host_e) {
    ++after;
  }
  if (b.size() < before + after) {
    return "residual caller differs outside the call site";
  }
  for (size_t k = 0; k < before; ++k) {
    if (a[k].text != b[k].text) {
      return "residual caller differs outside the call site";
    }
  }
  for (size_t k = 1; k <= after; ++k) {
    if (a[a.size() - k].text != b[b.size() - k].text) {
      return "residual caller differs outside the call site";
    }
  }
  return "";
}

}  // namespace smellgen
