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

#ifndef SMELLGEN_SRC_INGEST_INTERNAL_H_
#define SMELLGEN_SRC_INGEST_INTERNAL_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "smellgen/java/ast.h"
#include "smellgen/java/parser.h"
#include "smellgen/program_model.h"

namespace smellgen {

std::string_view StmtKindName(java::StmtKind k);

std::vector<ClassEntity> ExtractClasses(
    const std::shared_ptr<const java::ParsedSource>& src,
    const std::string& path);

// Resolves declared types, then analyses every method body. `model` must
// index exactly the entities in `classes`; they are updated in place.
void ResolveModel(const ProjectModel& model,
                  const std::vector<std::shared_ptr<ClassEntity>>& classes);

}  // namespace smellgen

#endif  // SMELLGEN_SRC_INGEST_INTERNAL_H_
