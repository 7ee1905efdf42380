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

#include "smellgen/java/lexer.h"

#include <algorithm>
#include <array>
#include <set>

namespace smellgen::java {

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
    "true",       "false",        "null",
};

// Longest first within each leading character; '>' is deliberately absent
// from every multi-character operator. "--" precedes "->" so that "x-->0"
// lexes the way javac does.
constexpr std::array<std::string_view, 32> kOperators = {
    "<<=", "...", "--", "->", "::", "++", "&&", "||", "==", "!=", "<=",
    "<<",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "(",  ")",
    "{",   "}",   "[",  "]",  ";",  ",",  ".",  "@",  "=",  "<",
};

constexpr std::string_view kSingleOperators = ">!~?:+-*/&|^%";

bool IsIdentStart(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}

bool IsIdentPart(unsigned char c) {
  return IsIdentStart(c) || (c >= '0' && c <= '9');
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool IsHexDigit(char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipTrivia();
      if (pos_ >= src_.size()) break;
      out.push_back(Next());
    }
    Token end;
    end.kind = TokenKind::kEnd;
    end.begin = end.end = static_cast<uint32_t>(src_.size());
    end.line = end.end_line = line_;
    end.column = Column();
    out.push_back(end);
    return out;
  }

 private:
  char Peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  uint32_t Column() const {
    return static_cast<uint32_t>(pos_ - line_start_ + 1);
  }

  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw LexError(what, line_, Column());
  }

  void SkipTrivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        Advance();
      } else if (c == '/' && Peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else if (c == '/' && Peek(1) == '*') {
        Advance();
        Advance();
        while (true) {
          if (pos_ >= src_.size()) Fail("unterminated block comment");
          if (src_[pos_] == '*' && Peek(1) == '/') {
            Advance();
            Advance();
            break;
          }
          Advance();
        }
      } else {
        break;
      }
    }
  }

  Token Next() {
    Token tok;
    tok.begin = static_cast<uint32_t>(pos_);
    tok.line = line_;
    tok.column = Column();
    unsigned char c = static_cast<unsigned char>(src_[pos_]);

    if (IsIdentStart(c)) {
      while (pos_ < src_.size() &&
             IsIdentPart(static_cast<unsigned char>(src_[pos_]))) {
        Advance();
      }
      tok.kind = TokenKind::kIdentifier;
    } else if (IsDigit(c) || (c == '.' && IsDigit(Peek(1)))) {
      tok.kind = LexNumber();
    } else if (c == '"') {
      if (Peek(1) == '"' && Peek(2) == '"') {
        LexTextBlock();
        tok.kind = TokenKind::kTextBlock;
      } else {
        LexQuoted('"');
        tok.kind = TokenKind::kStringLiteral;
      }
    } else if (c == '\'') {
      LexQuoted('\'');
      tok.kind = TokenKind::kCharLiteral;
    } else {
      tok.kind = TokenKind::kOperator;
      std::string_view rest = src_.substr(pos_);
      size_t len = 0;
      for (std::string_view op : kOperators) {
        if (rest.starts_with(op)) {
          len = op.size();
          break;
        }
      }
      if (len == 0 && kSingleOperators.find(static_cast<char>(c)) !=
                          std::string_view::npos) {
        len = 1;
      }
      if (len == 0) {
        Fail(std::string("unexpected character '") + static_cast<char>(c) +
             "'");
      }
      for (size_t i = 0; i < len; ++i) Advance();
    }

    tok.end = static_cast<uint32_t>(pos_);
    tok.end_line = line_;
    if (tok.end > tok.begin && src_[tok.end - 1] == '\n') --tok.end_line;
    tok.text = src_.substr(tok.begin, tok.end - tok.begin);
    if (tok.kind == TokenKind::kIdentifier && IsJavaKeyword(tok.text)) {
      tok.kind = TokenKind::kKeyword;
    }
    return tok;
  }

  void SkipDigits(bool hex) {
    while (pos_ < src_.size() &&
           ((hex ? IsHexDigit(src_[pos_]) : IsDigit(src_[pos_])) ||
            src_[pos_] == '_')) {
      Advance();
    }
  }

  TokenKind LexNumber() {
    bool is_float = false;
    if (Peek() == '0' && (Peek(1) == 'x' || Peek(1) == 'X')) {
      Advance();
      Advance();
      SkipDigits(true);
      if (Peek() == '.') {
        is_float = true;
        Advance();
        SkipDigits(true);
      }
      if (Peek() == 'p' || Peek() == 'P') {
        is_float = true;
        Advance();
        if (Peek() == '+' || Peek() == '-') Advance();
        SkipDigits(false);
      }
    } else if (Peek() == '0' && (Peek(1) == 'b' || Peek(1) == 'B')) {
      Advance();
      Advance();
      SkipDigits(false);
    } else {
      SkipDigits(false);
      if (Peek() == '.' && IsDigit(Peek(1))) {
        is_float = true;
        Advance();
        SkipDigits(false);
      } else if (Peek() == '.' && Peek(1) != '.' &&
                 (!IsIdentStart(static_cast<unsigned char>(Peek(1))) ||
                  (std::string_view("fFdD").find(Peek(1)) !=
                       std::string_view::npos &&
                   !IsIdentPart(static_cast<unsigned char>(Peek(2)))))) {
        // "1." is a complete double literal.
        is_float = true;
        Advance();
      }
      if (Peek() == 'e' || Peek() == 'E') {
        is_float = true;
        Advance();
        if (Peek() == '+' || Peek() == '-') Advance();
        SkipDigits(false);
      }
    }
    char suffix = Peek();
    if (suffix == 'l' || suffix == 'L') {
      Advance();
    } else if (suffix == 'f' || suffix == 'F' || suffix == 'd' ||
               suffix == 'D') {
      is_float = true;
      Advance();
    }
    return is_float ? TokenKind::kFloatLiteral : TokenKind::kIntLiteral;
  }

  void LexQuoted(char quote) {
    Advance();
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        Fail(quote == '"' ? "unterminated string literal"
                          : "unterminated character literal");
      }
      char c = src_[pos_];
      if (c == '\\') {
        Advance();
        if (pos_ >= src_.size()) Fail("unterminated escape");
        Advance();
        continue;
      }
      Advance();
      if (c == quote) break;
    }
  }

  void LexTextBlock() {
    Advance();
    Advance();
    Advance();
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] != ' ' && src_[pos_] != '\t' && src_[pos_] != '\r') {
        Fail("text block opening delimiter must end the line");
      }
      Advance();
    }
    while (true) {
      if (pos_ >= src_.size()) Fail("unterminated text block");
      if (src_[pos_] == '\\') {
        Advance();
        if (pos_ < src_.size()) Advance();
        continue;
      }
      if (src_[pos_] == '"' && Peek(1) == '"' && Peek(2) == '"') {
        Advance();
        Advance();
        Advance();
        break;
      }
      Advance();
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  size_t line_start_ = 0;
  uint32_t line_ = 1;
};

}  // namespace

LexError::LexError(const std::string& message, uint32_t line, uint32_t column)
    : std::runtime_error(message), line_(line), column_(column) {}

bool IsJavaKeyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) !=
         kKeywords.end();
}

std::vector<Token> Tokenize(std::string_view source) {
  return Lexer(source).Run();
}

std::vector<uint32_t> TokenBearingLines(const std::vector<Token>& tokens) {
  std::set<uint32_t> lines;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kEnd) continue;
    for (uint32_t l = t.line; l <= t.end_line; ++l) lines.insert(l);
  }
  return {lines.begin(), lines.end()};
}

}  // namespace smellgen::java
