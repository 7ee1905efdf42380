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

#include "smellgen/java/ast.h"

#include <algorithm>

namespace smellgen::java {

bool HasModifier(const std::vector<std::string>& modifiers,
                 const std::string& m) {
  return std::find(modifiers.begin(), modifiers.end(), m) != modifiers.end();
}

bool MethodDecl::IsStatic() const { return HasModifier(modifiers, "static"); }

bool MethodDecl::IsAbstract() const {
  return body == nullptr && !HasModifier(modifiers, "native");
}

const SourceRange& Member::range() const {
  switch (kind) {
    case MemberKind::kField:
      return field->range;
    case MemberKind::kMethod:
      return method->range;
    case MemberKind::kInitializer:
      return initializer->range;
    case MemberKind::kClass:
      break;
  }
  return nested->range;
}

bool ClassDecl::IsAbstract() const {
  return kind == ClassKind::kInterface || HasModifier(modifiers, "abstract");
}

}  // namespace smellgen::java
