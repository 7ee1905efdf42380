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

#include "gen/common.h"

#include <algorithm>
#include <cctype>

#include "smellgen/ingest.h"
#include "smellgen/java/lexer.h"

namespace smellgen::gen {

using java::Expr;
using java::ExprKind;

std::optional<std::string> ApplyEdits(std::string_view text,
                                      std::vector<TextEdit> edits) {
  std::stable_sort(edits.begin(), edits.end(),
                   [](const TextEdit& a, const TextEdit& b) {
                     return a.begin < b.begin;
                   });
  std::string out;
  out.reserve(text.size());
  uint32_t at = 0;
  for (const TextEdit& e : edits) {
    if (e.begin < at || e.end < e.begin || e.end > text.size()) {
      return std::nullopt;
    }
    out.append(text.substr(at, e.begin - at));
    out.append(e.text);
    at = e.end;
  }
  out.append(text.substr(at));
  return out;
}

uint32_t LineStart(std::string_view text, uint32_t off) {
  while (off > 0 && text[off - 1] != '\n') --off;
  return off;
}

uint32_t NextLineStart(std::string_view text, uint32_t off) {
  while (off < text.size() && text[off] != '\n') ++off;
  return off < text.size() ? off + 1 : off;
}

uint32_t LineOf(std::string_view text, uint32_t off) {
  return 1 + static_cast<uint32_t>(
                 std::count(text.begin(), text.begin() + off, '\n'));
}

std::string IndentAt(std::string_view text, uint32_t off) {
  uint32_t b = LineStart(text, off);
  uint32_t e = b;
  while (e < text.size() && (text[e] == ' ' || text[e] == '\t')) ++e;
  return std::string(text.substr(b, e - b));
}

bool StartsLine(std::string_view text, uint32_t off) {
  for (uint32_t i = LineStart(text, off); i < off; ++i) {
    if (text[i] != ' ' && text[i] != '\t') return false;
  }
  return true;
}

bool EndsLine(std::string_view text, uint32_t off) {
  for (uint32_t i = off; i < text.size() && text[i] != '\n'; ++i) {
    if (text[i] != ' ' && text[i] != '\t' && text[i] != '\r') return false;
  }
  return true;
}

int CountLines(std::string_view text) {
  if (text.empty()) return 0;
  int n = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  return text.back() == '\n' ? n : n + 1;
}

std::string Reindent(std::string_view chunk, std::string_view from,
                     std::string_view to) {
  std::string out;
  size_t pos = 0;
  bool first = true;
  while (pos <= chunk.size()) {
    size_t nl = chunk.find('\n', pos);
    std::string_view line = chunk.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!first) {
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
        line = {};
      } else if (line.substr(0, from.size()) == from) {
        out.append(to);
        line.remove_prefix(from.size());
      }
    }
    out.append(line);
    if (nl == std::string_view::npos) break;
    out.push_back('\n');
    pos = nl + 1;
    first = false;
  }
  return out;
}

TextEdit DeleteLines(std::string_view text, uint32_t begin, uint32_t end) {
  if (StartsLine(text, begin) && EndsLine(text, end)) {
    return {LineStart(text, begin), NextLineStart(text, end), ""};
  }
  return {begin, end, ""};
}

bool IsBlankLine(std::string_view text, uint32_t start) {
  for (uint32_t i = start; i < text.size() && text[i] != '\n'; ++i) {
    if (text[i] != ' ' && text[i] != '\t' && text[i] != '\r') return false;
  }
  return start < text.size();
}

uint32_t LeadingDocBegin(std::string_view text, uint32_t begin) {
  uint32_t i = begin;
  while (i > 0 && std::isspace(static_cast<unsigned char>(text[i - 1]))) --i;
  if (i < 2 || text.substr(i - 2, 2) != "*/") return begin;
  size_t open = text.rfind("/*", i - 2);
  if (open == std::string_view::npos || open + 3 > i - 2 ||
      text.substr(open, 3) != "/**") {
    return begin;
  }
  return static_cast<uint32_t>(open);
}

TextEdit DeleteMember(std::string_view text, uint32_t begin, uint32_t end) {
  TextEdit e = DeleteLines(text, begin, end);
  if (e.begin == begin) return e;  // shares a line with other text
  if (e.begin == 0 || e.end >= text.size()) return e;
  uint32_t prev = LineStart(text, e.begin - 1);
  if (!IsBlankLine(text, prev)) return e;
  if (IsBlankLine(text, e.end)) {
    e.end = NextLineStart(text, e.end);
  } else {
    // Last member: drop the gap above the closing brace instead.
    uint32_t i = e.end;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i < text.size() && text[i] == '}') e.begin = prev;
  }
  return e;
}

bool IsAtomicExpr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kName:
    case ExprKind::kLiteral:
    case ExprKind::kThis:
    case ExprKind::kFieldAccess:
    case ExprKind::kMethodCall:
    case ExprKind::kArrayAccess:
    case ExprKind::kParens:
    case ExprKind::kClassLit:
      return true;
    default:
      return false;
  }
}

bool HasSideEffects(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kMethodCall:
    case ExprKind::kNew:
    case ExprKind::kAssign:
    case ExprKind::kPostfix:
    case ExprKind::kSwitch:
      return true;
    case ExprKind::kUnary:
      if (e.op == "++" || e.op == "--") return true;
      break;
    case ExprKind::kLambda:
      return false;
    default:
      break;
  }
  if (e.target && HasSideEffects(*e.target)) return true;
  for (const auto& o : e.operands) {
    if (o && HasSideEffects(*o)) return true;
  }
  return false;
}

bool IsStatementExpression(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kAssign:
    case ExprKind::kMethodCall:
    case ExprKind::kNew:
    case ExprKind::kPostfix:
      return true;
    case ExprKind::kUnary:
      return e.op == "++" || e.op == "--";
    default:
      return false;
  }
}

bool ContainsTextBlock(std::string_view text) {
  return text.find("\"\"\"") != std::string_view::npos;
}

std::set<std::string> IdentifiersIn(std::string_view text) {
  std::set<std::string> out;
  try {
    for (const java::Token& t : java::Tokenize(text)) {
      if (t.IsIdent()) out.emplace(t.text);
    }
  } catch (const java::LexError&) {
  }
  return out;
}

std::vector<const ClassEntity*> ClassesWithin(const ProjectModel& model,
                                              const ClassEntity& cls) {
  std::vector<const ClassEntity*> out;
  for (const auto& c : model.classes()) {
    if (c->file == cls.file && c->begin >= cls.begin && c->end <= cls.end) {
      out.push_back(c.get());
    }
  }
  return out;
}

std::set<std::string> UnresolvedNames(const ProjectModel& model,
                                      const ClassEntity& cls) {
  std::set<std::string> out;
  for (const ClassEntity* c : ClassesWithin(model, cls)) {
    for (const MethodEntity& m : c->methods) {
      for (const NameRef& r : m.names) {
        if (r.kind == BindingKind::kUnresolved) out.insert(r.name);
      }
    }
  }
  return out;
}

std::map<uint32_t, const NameRef*> RefsByOffset(const ProjectModel& model,
                                                const ClassEntity& cls) {
  std::map<uint32_t, const NameRef*> out;
  for (const ClassEntity* c : ClassesWithin(model, cls)) {
    for (const MethodEntity& m : c->methods) {
      for (const NameRef& r : m.names) out.emplace(r.begin, &r);
    }
  }
  return out;
}

const MethodEntity* FindMethodByName(const ClassEntity& cls,
                                     std::string_view name, int arity) {
  for (const MethodEntity& m : cls.methods) {
    if (!m.is_constructor && m.name == name && m.arity() == arity) return &m;
  }
  return nullptr;
}

bool HasSameArityOverload(const ClassEntity& cls, const MethodEntity& m) {
  for (const MethodEntity& o : cls.methods) {
    if (&o != &m && !o.is_constructor && o.name == m.name &&
        o.arity() == m.arity()) {
      return true;
    }
  }
  return false;
}

std::string MemberIndent(std::string_view text, const java::ClassDecl& decl) {
  for (const java::Member& m : decl.members) {
    if (StartsLine(text, m.range().begin)) {
      return IndentAt(text, m.range().begin);
    }
  }
  return IndentAt(text, decl.body_range.end - 1) + "    ";
}

uint32_t MemberInsertPoint(std::string_view text,
                           const java::ClassDecl& decl) {
  uint32_t brace = decl.body_range.end - 1;
  return StartsLine(text, brace) ? LineStart(text, brace) : brace;
}

std::string LowerCamel(std::string_view simple_name) {
  std::string out(simple_name);
  size_t upper = 0;
  while (upper < out.size() && std::isupper(static_cast<unsigned char>(out[upper]))) {
    ++upper;
  }
  // "URLParser" -> "urlParser", "Book" -> "book", "URL" -> "url".
  size_t n = upper > 1 && upper < out.size() ? upper - 1 : upper;
  for (size_t i = 0; i < n; ++i) {
    out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
  }
  if (out.empty() || java::IsJavaKeyword(out)) out += "Ref";
  return out;
}

std::string CanonicalName(std::string_view qualified) {
  std::string out(qualified);
  std::replace(out.begin(), out.end(), '$', '.');
  return out;
}

namespace {

std::string ImportLine(const java::ImportDecl& d) {
  return std::string("import ") + (d.is_static ? "static " : "") + d.name +
         (d.wildcard ? ".*" : "") + ";";
}

}  // namespace

ImportPlan PlanImports(const ProjectModel& model,
                       const java::ParsedSource& from,
                       const java::ParsedSource& to,
                       const std::vector<std::string>& extra) {
  ImportPlan plan;
  const java::CompilationUnit& tu = to.unit();
  std::set<std::string> present;
  std::map<std::string, std::string> single;  // simple name -> qualified
  for (const auto& d : tu.imports) {
    present.insert(ImportLine(d));
    if (!d.wildcard) single[d.SimpleName()] = d.name;
  }
  std::set<std::string> local_types;
  for (const auto& t : tu.types) local_types.insert(t->name);
  for (const auto& c : model.classes()) {
    if (c->package == tu.package && c->enclosing.empty()) {
      local_types.insert(c->simple_name);
    }
  }

  std::vector<std::string> lines;
  auto want = [&](const std::string& line, const std::string& name,
                  bool wildcard, bool is_static) {
    if (present.count(line)) return;
    if (!wildcard && !is_static) {
      std::string simple = name.substr(name.rfind('.') + 1);
      auto it = single.find(simple);
      if (it != single.end() && it->second != name) {
        plan.conflict = true;
        return;
      }
      std::string pkg = name.substr(0, name.rfind('.'));
      if (local_types.count(simple) && pkg != tu.package) {
        plan.conflict = true;
        return;
      }
      single[simple] = name;
    }
    present.insert(line);
    lines.push_back(line);
  };
  for (const auto& d : from.unit().imports) {
    want(ImportLine(d), d.name, d.wildcard, d.is_static);
  }
  for (const std::string& e : extra) {
    bool wildcard = e.size() > 2 && e.substr(e.size() - 2) == ".*";
    std::string name = wildcard ? e.substr(0, e.size() - 2) : e;
    if (!wildcard && name.substr(0, name.rfind('.')) == tu.package) continue;
    if (wildcard && name == tu.package) continue;
    want("import " + e + ";", name, wildcard, false);
  }
  if (lines.empty()) return plan;

  std::string_view text = to.text();
  std::string block;
  for (const std::string& l : lines) block += l + "\n";
  if (!tu.imports.empty()) {
    plan.offset = NextLineStart(text, tu.imports.back().range.end);
    plan.text = block;
    return plan;
  }
  const auto& toks = to.tokens();
  for (size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].Is("package")) {
      while (i < toks.size() && !toks[i].Is(";")) ++i;
      if (i < toks.size()) {
        plan.offset = NextLineStart(text, toks[i].end);
        plan.text = "\n" + block;
        return plan;
      }
      break;
    }
    if (toks[i].IsIdent() || toks[i].kind == java::TokenKind::kKeyword) break;
  }
  plan.offset = 0;
  plan.text = block + "\n";
  return plan;
}

std::optional<ProjectModel> RebuildAndSweep(
    const ProjectModel& model, const std::map<std::string, std::string>& files,
    const std::map<std::string, std::set<std::string>>& allowed,
    std::string* reason) {
  std::string error;
  std::optional<ProjectModel> rebuilt =
      RebuildWithReplacedFiles(model, files, &error);
  if (!rebuilt) {
    *reason = "rewritten file does not parse: " + error;
    return std::nullopt;
  }
  for (const auto& [qname, ok] : allowed) {
    const ClassEntity* c = rebuilt->LookupClass(qname);
    if (c == nullptr) {
      *reason = "class " + qname + " missing after rebuild";
      return std::nullopt;
    }
    std::string fresh;
    for (const std::string& n : UnresolvedNames(*rebuilt, *c)) {
      if (!ok.count(n)) fresh += (fresh.empty() ? "" : ", ") + n;
    }
    if (!fresh.empty()) {
      *reason = "symbol sweep: unresolved " + fresh + " in " + qname;
      return std::nullopt;
    }
  }
  return rebuilt;
}

std::string TokenString(std::string_view text) {
  std::string out;
  for (const java::Token& t : java::Tokenize(text)) {
    if (t.kind == java::TokenKind::kEnd) break;
    if (!out.empty()) out.push_back(' ');
    out.append(t.text);
  }
  return out;
}

std::string LinesOf(std::string_view source, int first, int last) {
  std::string out;
  int line = 1;
  size_t pos = 0;
  while (pos <= source.size() && line <= last) {
    size_t nl = source.find('\n', pos);
    size_t end = nl == std::string_view::npos ? source.size() : nl;
    if (line >= first) {
      out.append(source.substr(pos, end - pos));
      out.push_back('\n');
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
    ++line;
  }
  return out;
}

}  // namespace smellgen::gen
