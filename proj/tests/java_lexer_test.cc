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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <string>
#include <vector>

namespace smellgen::java {
namespace {

using ::testing::ElementsAre;

std::vector<std::string> Texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) {
    if (t.kind != TokenKind::kEnd) out.emplace_back(t.text);
  }
  return out;
}

TEST(LexerTest, SplitsSimpleDeclaration) {
  auto tokens = Tokenize("int x = 42;");
  EXPECT_THAT(Texts(tokens), ElementsAre("int", "x", "=", "42", ";"));
  EXPECT_EQ(tokens[0].kind, TokenKind::kKeyword);
  EXPECT_EQ(tokens[1].kind, TokenKind::kIdentifier);
  EXPECT_EQ(tokens[3].kind, TokenKind::kIntLiteral);
  EXPECT_EQ(tokens.back().kind, TokenKind::kEnd);
}

TEST(LexerTest, DropsCommentsAndTracksLines) {
  auto tokens = Tokenize("a // tail\n/* block\n spans */ b\n/** doc */\nc");
  EXPECT_THAT(Texts(tokens), ElementsAre("a", "b", "c"));
  EXPECT_EQ(tokens[0].line, 1u);
  EXPECT_EQ(tokens[1].line, 3u);
  EXPECT_EQ(tokens[2].line, 5u);
  EXPECT_EQ(tokens[1].column, 11u);
}

TEST(LexerTest, EmitsEveryClosingAngleSeparately) {
  auto tokens = Tokenize("Map<String, List<Integer>> m; x >>>= 2;");
  EXPECT_THAT(Texts(tokens),
              ElementsAre("Map", "<", "String", ",", "List", "<", "Integer",
                          ">", ">", "m", ";", "x", ">", ">", ">", "=", "2",
                          ";"));
}

TEST(LexerTest, RecognizesLiterals) {
  auto tokens = Tokenize(
      "0x1F 1_000L 3.5e-2f .5 'a' '\\n' \"s\\\"q\" 0b101 1e10 07");
  std::vector<TokenKind> kinds;
  for (const Token& t : tokens) kinds.push_back(t.kind);
  EXPECT_THAT(kinds,
              ElementsAre(TokenKind::kIntLiteral, TokenKind::kIntLiteral,
                          TokenKind::kFloatLiteral, TokenKind::kFloatLiteral,
                          TokenKind::kCharLiteral, TokenKind::kCharLiteral,
                          TokenKind::kStringLiteral, TokenKind::kIntLiteral,
                          TokenKind::kFloatLiteral, TokenKind::kIntLiteral,
                          TokenKind::kEnd));
}

TEST(LexerTest, TextBlockSpansLines) {
  auto tokens = Tokenize("s = \"\"\"\n  one\n  two\n  \"\"\";\n");
  ASSERT_EQ(tokens.size(), 5u);
  EXPECT_EQ(tokens[2].kind, TokenKind::kTextBlock);
  EXPECT_EQ(tokens[2].line, 1u);
  EXPECT_EQ(tokens[2].end_line, 4u);
  EXPECT_THAT(TokenBearingLines(tokens), ElementsAre(1u, 2u, 3u, 4u));
}

TEST(LexerTest, TokenBearingLinesSkipBlankAndCommentLines) {
  auto tokens = Tokenize("void f() {\n  // note\n\n  g();\n}\n");
  EXPECT_THAT(TokenBearingLines(tokens), ElementsAre(1u, 4u, 5u));
}

TEST(LexerTest, ContextualKeywordsAreIdentifiers) {
  auto tokens = Tokenize("var record yield sealed permits");
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    EXPECT_EQ(tokens[i].kind, TokenKind::kIdentifier) << tokens[i].text;
  }
  EXPECT_TRUE(IsJavaKeyword("class"));
  EXPECT_TRUE(IsJavaKeyword("goto"));
  EXPECT_FALSE(IsJavaKeyword("record"));
}

TEST(LexerTest, UnicodeIdentifiers) {
  auto tokens = Tokenize("int d\xC3\xA9j\xC3\xA0 = 1;");
  EXPECT_THAT(Texts(tokens), ElementsAre("int", "d\xC3\xA9j\xC3\xA0", "=", "1",
                                         ";"));
}

TEST(LexerTest, ReportsUnterminatedConstructs) {
  EXPECT_THROW(Tokenize("a /* never closed"), LexError);
  EXPECT_THROW(Tokenize("s = \"open"), LexError);
  EXPECT_THROW(Tokenize("s = \"\"\"\nnever closed"), LexError);
  try {
    Tokenize("ok;\n  #");
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(LexerTest, EmptyInputYieldsOnlyEnd) {
  auto tokens = Tokenize("");
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].kind, TokenKind::kEnd);
  EXPECT_TRUE(TokenBearingLines(tokens).empty());
}

}  // namespace
}  // namespace smellgen::java
