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

#ifndef SMELLGEN_JAVA_LEXER_H_
#define SMELLGEN_JAVA_LEXER_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smellgen::java {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kIntLiteral,
  kFloatLiteral,
  kCharLiteral,
  kStringLiteral,
  kTextBlock,
  kOperator,
  kEnd,
};

// A token borrows its text from the source buffer it was lexed from.
// Every '>' is emitted on its own so that nested generic closers never
// need splitting; the parser glues adjacent '>' tokens back into shift
// and comparison operators.
struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string_view text;
  uint32_t begin = 0;  // byte offset
  uint32_t end = 0;    // byte offset, exclusive
  uint32_t line = 1;   // 1-based line of the first character
  uint32_t end_line = 1;
  uint32_t column = 1;

  bool Is(std::string_view s) const {
    return (kind == TokenKind::kOperator || kind == TokenKind::kKeyword) &&
           text == s;
  }
  bool IsIdent() const { return kind == TokenKind::kIdentifier; }
  bool IsIdent(std::string_view s) const { return IsIdent() && text == s; }
  bool IsLiteral() const {
    return kind == TokenKind::kIntLiteral || kind == TokenKind::kFloatLiteral ||
           kind == TokenKind::kCharLiteral ||
           kind == TokenKind::kStringLiteral || kind == TokenKind::kTextBlock;
  }
};

class LexError : public std::runtime_error {
 public:
  LexError(const std::string& message, uint32_t line, uint32_t column);
  uint32_t line() const { return line_; }
  uint32_t column() const { return column_; }

 private:
  uint32_t line_;
  uint32_t column_;
};

bool IsJavaKeyword(std::string_view word);

// Tokenizes a Java source buffer. Comments and whitespace are dropped. The
// result always ends with a kEnd token positioned at the end of input.
// Throws LexError on unterminated literals or comments and stray characters.
std::vector<Token> Tokenize(std::string_view source);

// Lines (1-based) that carry at least one token. Multi-line tokens (text
// blocks) mark every line they span.
std::vector<uint32_t> TokenBearingLines(const std::vector<Token>& tokens);

}  // namespace smellgen::java

#endif  // SMELLGEN_JAVA_LEXER_H_
