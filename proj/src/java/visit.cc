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

#include "smellgen/java/visit.h"

namespace smellgen::java {

namespace {

void VisitOpt(const StmtPtr& s, const AstVisitor& v) {
  if (s) Visit(*s, v);
}

void VisitOpt(const ExprPtr& e, const AstVisitor& v) {
  if (e) Visit(*e, v);
}

}  // namespace

void Visit(const Expr& e, const AstVisitor& v) {
  if (v.expr && !v.expr(e)) return;
  VisitOpt(e.target, v);
  for (const ExprPtr& o : e.operands) VisitOpt(o, v);
  if (e.body && v.cls) v.cls(*e.body);
  VisitOpt(e.lambda_body, v);
  VisitOpt(e.switch_stmt, v);
}

void Visit(const Stmt& s, const AstVisitor& v) {
  if (v.stmt && !v.stmt(s)) return;
  switch (s.kind) {
    case StmtKind::kLocalClass:
      if (s.local_class && v.cls) v.cls(*s.local_class);
      return;
    case StmtKind::kSwitch:
      VisitOpt(s.expr, v);
      for (const SwitchCase& c : s.cases) {
        for (const ExprPtr& l : c.labels) VisitOpt(l, v);
        for (const StmtPtr& b : c.body) VisitOpt(b, v);
      }
      return;
    case StmtKind::kTry:
      for (const StmtPtr& r : s.stmts) VisitOpt(r, v);
      VisitOpt(s.body, v);
      for (const CatchClause& c : s.catches) VisitOpt(c.block, v);
      VisitOpt(s.finally_block, v);
      return;
    case StmtKind::kFor:
      for (const StmtPtr& i : s.stmts) VisitOpt(i, v);
      VisitOpt(s.expr, v);
      for (const ExprPtr& u : s.updates) VisitOpt(u, v);
      VisitOpt(s.body, v);
      return;
    default:
      break;
  }
  for (const VarDeclarator& d : s.vars) VisitOpt(d.init, v);
  VisitOpt(s.expr, v);
  VisitOpt(s.expr2, v);
  for (const ExprPtr& u : s.updates) VisitOpt(u, v);
  for (const StmtPtr& c : s.stmts) VisitOpt(c, v);
  VisitOpt(s.body, v);
  VisitOpt(s.else_body, v);
  VisitOpt(s.finally_block, v);
}

void VisitClassBody(const ClassDecl& decl, const AstVisitor& v) {
  for (const EnumConstant& c : decl.enum_constants) {
    for (const ExprPtr& a : c.args) VisitOpt(a, v);
    if (c.body && v.cls) v.cls(*c.body);
  }
  for (const Member& m : decl.members) {
    switch (m.kind) {
      case MemberKind::kField:
        for (const VarDeclarator& d : m.field->vars) VisitOpt(d.init, v);
        break;
      case MemberKind::kMethod:
        VisitOpt(m.method->body, v);
        VisitOpt(m.method->default_value, v);
        break;
      case MemberKind::kInitializer:
        VisitOpt(m.initializer->block, v);
        break;
      case MemberKind::kClass:
        if (v.cls) v.cls(*m.nested);
        break;
    }
  }
}

}  // namespace smellgen::java
