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

#ifndef SMELLGEN_JAVA_VISIT_H_
#define SMELLGEN_JAVA_VISIT_H_

#include <functional>

#include "smellgen/java/ast.h"

namespace smellgen::java {

// Pre-order traversal callbacks. Returning false from `expr` or `stmt` skips
// the node's children. Class bodies (anonymous, local) are never entered;
// they are reported through `cls` instead.
struct AstVisitor {
  std::function<bool(const Expr&)> expr;
  std::function<bool(const Stmt&)> stmt;
  std::function<void(const ClassDecl&)> cls;
};

void Visit(const Stmt& stmt, const AstVisitor& v);
void Visit(const Expr& expr, const AstVisitor& v);

// Member bodies of a class: field initializers, method bodies, initializer
// blocks and enum constant arguments. Nested member classes and enum
// constant bodies go to `v.cls`.
void VisitClassBody(const ClassDecl& decl, const AstVisitor& v);

}  // namespace smellgen::java

#endif  // SMELLGEN_JAVA_VISIT_H_
