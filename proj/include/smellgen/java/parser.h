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

#ifndef SMELLGEN_JAVA_PARSER_H_
#define SMELLGEN_JAVA_PARSER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smellgen/java/ast.h"
#include "smellgen/java/lexer.h"

namespace smellgen::java {

struct SyntaxError {
  std::string message;
  uint32_t line = 0;
  uint32_t column = 0;

  std::string ToString() const;
};

class ParseException : public std::runtime_error {
 public:
  explicit ParseException(SyntaxError error);
  const SyntaxError& error() const { return error_; }

 private:
  SyntaxError error_;
};

// Owns a source buffer together with its tokens and syntax tree. Tokens and
// tree ranges point into `text`, so instances are pinned in memory and only
// handed out through shared_ptr.
class ParsedSource {
 public:
  enum class Shape { kCompilationUnit, kMembers, kStatements };

  ParsedSource(const ParsedSource&) = delete;
  ParsedSource& operator=(const ParsedSource&) = delete;

  const std::string& path() const { return path_; }
  const std::string& text() const { return text_; }
  Shape shape() const { return shape_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const CompilationUnit& unit() const { return unit_; }
  // Populated for Shape::kMembers.
  const std::vector<Member>& members() const { return members_; }
  // Populated for Shape::kStatements.
  const std::vector<StmtPtr>& statements() const { return statements_; }

  std::string_view Slice(const SourceRange& r) const {
    return std::string_view(text_).substr(r.begin, r.end - r.begin);
  }

  // Throws ParseException.
  static std::shared_ptr<const ParsedSource> Parse(std::string path,
                                                   std::string text,
                                                   Shape shape);

 private:
  ParsedSource(std::string path, std::string text, Shape shape);

  std::string path_;
  std::string text_;
  Shape shape_;
  std::vector<Token> tokens_;
  CompilationUnit unit_;
  std::vector<Member> members_;
  std::vector<StmtPtr> statements_;
};

struct ParseOutcome {
  std::shared_ptr<const ParsedSource> source;
  std::optional<SyntaxError> error;

  bool ok() const { return source != nullptr; }
};

ParseOutcome ParseCompilationUnit(std::string path, std::string text);
// Parses a sequence of class-body declarations, e.g. one method's text.
ParseOutcome ParseClassMembers(std::string text);
// Parses a sequence of block statements.
ParseOutcome ParseBlockStatements(std::string text);

}  // namespace smellgen::java

#endif  // SMELLGEN_JAVA_PARSER_H_
