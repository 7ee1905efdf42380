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

#include "smellgen/java/parser.h"

#include <algorithm>
#include <array>
#include <utility>

namespace smellgen::java {

namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 11> kModifierKeywords = {
    "public",    "protected", "private",      "static",
    "abstract",  "final",     "native",       "synchronized",
    "transient", "volatile",  "strictfp"};

bool IsPrimitive(const Token& t) {
  return t.kind == TokenKind::kKeyword &&
         std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), t.text) !=
             kPrimitiveTypes.end();
}

bool IsModifierKeyword(const Token& t) {
  return t.kind == TokenKind::kKeyword &&
         std::find(kModifierKeywords.begin(), kModifierKeywords.end(),
                   t.text) != kModifierKeywords.end();
}

struct BinaryOp {
  std::string text;
  int precedence = -1;
  size_t tokens = 0;
};

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

  void ParseCompilationUnit(CompilationUnit* unit) {
    // Package annotations are legal in package-info.java.
    size_t save = pos_;
    std::vector<std::string> mods;
    ParseModifiers(&mods);
    if (Cur().Is("package")) {
      Advance();
      unit->package = ParseQualifiedName();
      Expect(";");
    } else {
      pos_ = save;
    }
    while (Cur().Is("import")) {
      ImportDecl imp;
      uint32_t begin = Cur().begin;
      uint32_t line = Cur().line;
      Advance();
      if (Cur().Is("static")) {
        imp.is_static = true;
        Advance();
      }
      imp.name = ExpectIdent();
      while (Cur().Is(".")) {
        Advance();
        if (Cur().Is("*")) {
          Advance();
          imp.wildcard = true;
          break;
        }
        imp.name += ".";
        imp.name += ExpectIdent();
      }
      Expect(";");
      imp.range = RangeFrom(begin, line);
      unit->imports.push_back(std::move(imp));
    }
    while (Cur().kind != TokenKind::kEnd) {
      if (Cur().Is(";")) {
        Advance();
        continue;
      }
      if (Cur().IsIdent("module") || Cur().IsIdent("open")) {
        Fail("module declarations are not supported");
      }
      unit->types.push_back(ParseTypeDeclaration());
    }
  }

  void ParseMembersOnly(std::vector<Member>* members) {
    while (Cur().kind != TokenKind::kEnd) {
      if (Cur().Is(";")) {
        Advance();
        continue;
      }
      members->push_back(ParseMember(""));
    }
  }

  void ParseStatementsOnly(std::vector<StmtPtr>* stmts) {
    while (Cur().kind != TokenKind::kEnd) stmts->push_back(ParseBlockStatement());
  }

 private:
  // ---- token plumbing ------------------------------------------------------

  const Token& Cur() const { return toks_[pos_]; }
  const Token& Peek(size_t ahead) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  void Advance() {
    if (Cur().kind == TokenKind::kEnd) return;
    last_end_ = Cur().end;
    last_line_ = Cur().end_line;
    ++pos_;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    const Token& t = Cur();
    std::string where = t.kind == TokenKind::kEnd
                            ? "end of input"
                            : "'" + std::string(t.text) + "'";
    throw ParseException({message + " at " + where, t.line, t.column});
  }

  void Expect(std::string_view s) {
    if (!Cur().Is(s)) Fail("expected '" + std::string(s) + "'");
    Advance();
  }

  bool Accept(std::string_view s) {
    if (Cur().Is(s)) {
      Advance();
      return true;
    }
    return false;
  }

  std::string ExpectIdent() {
    if (!Cur().IsIdent()) Fail("expected identifier");
    std::string s(Cur().text);
    Advance();
    return s;
  }

  SourceRange RangeFrom(uint32_t begin, uint32_t first_line) const {
    return SourceRange{begin, last_end_, first_line, last_line_};
  }

  SourceRange TokenRange(const Token& t) const {
    return SourceRange{t.begin, t.end, t.line, t.end_line};
  }

  bool Adjacent(size_t a, size_t b) const {
    return Peek(a).end == Peek(b).begin;
  }

  size_t MatchingClose(size_t open_index) const {
    std::string_view open = toks_[open_index].text;
    std::string_view close = open == "(" ? ")" : open == "[" ? "]" : "}";
    int depth = 0;
    for (size_t i = open_index; i < toks_.size(); ++i) {
      if (toks_[i].kind == TokenKind::kEnd) break;
      if (toks_[i].Is(open)) ++depth;
      if (toks_[i].Is(close) && --depth == 0) return i;
    }
    return toks_.size() - 1;
  }

  void SkipBalanced() {
    size_t close = MatchingClose(pos_);
    if (toks_[close].kind == TokenKind::kEnd) Fail("unbalanced brackets");
    while (pos_ <= close) Advance();
  }

  std::string ParseQualifiedName() {
    std::string name = ExpectIdent();
    while (Cur().Is(".") && Peek(1).IsIdent()) {
      Advance();
      name += ".";
      name += ExpectIdent();
    }
    return name;
  }

  // ---- modifiers and annotations ------------------------------------------

  void ParseAnnotation() {
    Expect("@");
    ParseQualifiedName();
    if (Cur().Is("(")) SkipBalanced();
  }

  bool AtAnnotation() const {
    return Cur().Is("@") && !Peek(1).Is("interface");
  }

  bool AtSealedModifier() const {
    if (Cur().IsIdent("sealed")) {
      const Token& n = Peek(1);
      return n.kind == TokenKind::kKeyword || n.IsIdent("record") ||
             n.IsIdent("non") || n.Is("@");
    }
    return Cur().IsIdent("non") && Peek(1).Is("-") &&
           Peek(2).IsIdent("sealed") && Adjacent(0, 1) && Adjacent(1, 2);
  }

  void ParseModifiers(std::vector<std::string>* mods,
                      bool allow_default = false) {
    while (true) {
      if (AtAnnotation()) {
        ParseAnnotation();
      } else if (IsModifierKeyword(Cur()) &&
                 !(Cur().Is("synchronized") && Peek(1).Is("("))) {
        mods->emplace_back(Cur().text);
        Advance();
      } else if (allow_default && Cur().Is("default") && !Peek(1).Is(":") &&
                 !Peek(1).Is("->")) {
        mods->emplace_back("default");
        Advance();
      } else if (AtSealedModifier()) {
        if (Cur().IsIdent("non")) {
          Advance();
          Advance();
          mods->emplace_back("non-sealed");
        } else {
          mods->emplace_back("sealed");
        }
        Advance();
      } else {
        return;
      }
    }
  }

  // ---- types ---------------------------------------------------------------

  std::vector<std::string> ParseTypeParameters() {
    std::vector<std::string> names;
    Expect("<");
    while (true) {
      while (AtAnnotation()) ParseAnnotation();
      names.push_back(ExpectIdent());
      if (Accept("extends")) {
        ParseType();
        while (Accept("&")) ParseType();
      }
      if (Accept(",")) continue;
      break;
    }
    Expect(">");
    return names;
  }

  void ParseTypeArguments(std::vector<TypeRef>* args) {
    Expect("<");
    if (Accept(">")) return;  // diamond
    while (true) {
      while (AtAnnotation()) ParseAnnotation();
      if (Cur().Is("?")) {
        TypeRef wildcard;
        wildcard.range = TokenRange(Cur());
        wildcard.name = "?";
        Advance();
        if (Accept("extends") || Accept("super")) {
          wildcard.type_args.push_back(ParseType());
        }
        args->push_back(std::move(wildcard));
      } else {
        args->push_back(ParseType());
      }
      if (Accept(",")) continue;
      break;
    }
    Expect(">");
  }

  void ParseDims(TypeRef* type) {
    while (true) {
      size_t save = pos_;
      while (AtAnnotation()) ParseAnnotation();
      if (Cur().Is("[") && Peek(1).Is("]")) {
        Advance();
        Advance();
        ++type->dims;
      } else {
        pos_ = save;
        return;
      }
    }
  }

  TypeRef ParseType(bool allow_dims = true) {
    while (AtAnnotation()) ParseAnnotation();
    TypeRef type;
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    if (IsPrimitive(Cur()) || Cur().Is("void")) {
      type.primitive = true;
      type.name = std::string(Cur().text);
      Advance();
    } else {
      type.name = ExpectIdent();
      if (Cur().Is("<")) ParseTypeArguments(&type.type_args);
      while (Cur().Is(".") && (Peek(1).IsIdent() || Peek(1).Is("@"))) {
        Advance();
        while (AtAnnotation()) ParseAnnotation();
        type.name += ".";
        type.name += ExpectIdent();
        if (Cur().Is("<")) {
          type.type_args.clear();
          ParseTypeArguments(&type.type_args);
        }
      }
    }
    if (allow_dims) ParseDims(&type);
    type.range = RangeFrom(begin, line);
    return type;
  }

  std::vector<TypeRef> ParseTypeList() {
    std::vector<TypeRef> list;
    list.push_back(ParseType());
    while (Accept(",")) list.push_back(ParseType());
    return list;
  }

  // Speculatively parses a type. Restores the position and returns false if
  // the tokens do not form one.
  bool TryParseType(TypeRef* out) {
    if (!(Cur().IsIdent() || IsPrimitive(Cur()) || AtAnnotation())) {
      return false;
    }
    size_t save = pos_;
    uint32_t save_end = last_end_, save_line = last_line_;
    try {
      *out = ParseType();
      return true;
    } catch (const ParseException&) {
      pos_ = save;
      last_end_ = save_end;
      last_line_ = save_line;
      return false;
    }
  }

  // ---- declarations ----------------------------------------------------------

  bool AtRecordDecl() const {
    return Cur().IsIdent("record") && Peek(1).IsIdent() &&
           (Peek(2).Is("(") || Peek(2).Is("<"));
  }

  bool AtTypeDeclKeyword() const {
    return Cur().Is("class") || Cur().Is("interface") || Cur().Is("enum") ||
           (Cur().Is("@") && Peek(1).Is("interface")) || AtRecordDecl();
  }

  ClassDeclPtr ParseTypeDeclaration() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    std::vector<std::string> mods;
    ParseModifiers(&mods);
    if (!AtTypeDeclKeyword()) Fail("expected type declaration");
    return ParseTypeDeclRest(std::move(mods), begin, line);
  }

  ClassDeclPtr ParseTypeDeclRest(std::vector<std::string> mods,
                                 uint32_t begin, uint32_t line) {
    auto decl = std::make_unique<ClassDecl>();
    decl->modifiers = std::move(mods);
    if (Accept("class")) {
      decl->kind = ClassKind::kClass;
    } else if (Accept("interface")) {
      decl->kind = ClassKind::kInterface;
    } else if (Accept("enum")) {
      decl->kind = ClassKind::kEnum;
    } else if (Cur().Is("@")) {
      Advance();
      Expect("interface");
      decl->kind = ClassKind::kAnnotation;
    } else {
      Advance();  // record
      decl->kind = ClassKind::kRecord;
    }
    decl->name_range = TokenRange(Cur());
    decl->name = ExpectIdent();
    if (Cur().Is("<")) decl->type_params = ParseTypeParameters();
    if (decl->kind == ClassKind::kRecord) {
      Expect("(");
      if (!Cur().Is(")")) {
        while (true) {
          decl->record_components.push_back(ParseFormalParam());
          if (!Accept(",")) break;
        }
      }
      Expect(")");
    }
    if (Cur().Is("extends")) {
      uint32_t b = Cur().begin;
      uint32_t l = Cur().line;
      Advance();
      decl->extends = ParseTypeList();
      decl->extends_clause = RangeFrom(b, l);
    }
    if (Cur().Is("implements")) {
      uint32_t b = Cur().begin;
      uint32_t l = Cur().line;
      Advance();
      decl->implements = ParseTypeList();
      decl->implements_clause = RangeFrom(b, l);
    }
    if (Cur().IsIdent("permits")) {
      Advance();
      ParseTypeList();
    }
    ParseClassBody(decl.get());
    decl->range = RangeFrom(begin, line);
    return decl;
  }

  void ParseClassBody(ClassDecl* decl) {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    Expect("{");
    if (decl->kind == ClassKind::kEnum) ParseEnumConstants(decl);
    while (!Cur().Is("}")) {
      if (Cur().kind == TokenKind::kEnd) Fail("unterminated class body");
      if (Accept(";")) continue;
      decl->members.push_back(ParseMember(decl->name));
    }
    Expect("}");
    decl->body_range = RangeFrom(begin, line);
  }

  void ParseEnumConstants(ClassDecl* decl) {
    while (Cur().IsIdent() || AtAnnotation()) {
      EnumConstant c;
      uint32_t begin = Cur().begin;
      uint32_t line = Cur().line;
      while (AtAnnotation()) ParseAnnotation();
      c.name = ExpectIdent();
      if (Cur().Is("(")) c.args = ParseArguments();
      if (Cur().Is("{")) {
        c.body = std::make_unique<ClassDecl>();
        c.body->anonymous = true;
        uint32_t b = Cur().begin;
        uint32_t l = Cur().line;
        ParseClassBody(c.body.get());
        c.body->range = RangeFrom(b, l);
      }
      c.range = RangeFrom(begin, line);
      decl->enum_constants.push_back(std::move(c));
      if (!Accept(",")) break;
    }
    if (Accept(";")) decl->enum_has_semicolon = true;
  }

  Param ParseFormalParam() {
    Param p;
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    ParseModifiers(&p.modifiers);
    p.type = ParseType();
    while (AtAnnotation()) ParseAnnotation();
    if (Accept("...")) {
      p.varargs = true;
      ++p.type.dims;
    }
    p.name_range = TokenRange(Cur());
    if (Cur().Is("this")) {
      Advance();
      p.name = "this";
    } else {
      p.name = ExpectIdent();
      // Receiver parameter of an inner class constructor: Outer.this
      if (Cur().Is(".") && Peek(1).Is("this")) {
        Advance();
        Advance();
        p.name = "this";
      }
    }
    ParseDims(&p.type);
    p.range = RangeFrom(begin, line);
    return p;
  }

  std::vector<Param> ParseFormalParams() {
    std::vector<Param> params;
    Expect("(");
    if (!Cur().Is(")")) {
      while (true) {
        params.push_back(ParseFormalParam());
        if (!Accept(",")) break;
      }
    }
    Expect(")");
    return params;
  }

  Member ParseMember(const std::string& class_name) {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    Member m;

    if (Cur().Is("{") || (Cur().Is("static") && Peek(1).Is("{"))) {
      m.kind = MemberKind::kInitializer;
      m.initializer = std::make_unique<Initializer>();
      m.initializer->is_static = Accept("static");
      m.initializer->block = ParseBlock();
      m.initializer->range = RangeFrom(begin, line);
      return m;
    }

    std::vector<std::string> mods;
    ParseModifiers(&mods, /*allow_default=*/true);

    if (AtTypeDeclKeyword()) {
      m.kind = MemberKind::kClass;
      m.nested = ParseTypeDeclRest(std::move(mods), begin, line);
      return m;
    }

    std::vector<std::string> type_params;
    if (Cur().Is("<")) type_params = ParseTypeParameters();

    // Constructor (including compact record constructors).
    if (Cur().IsIdent() && (Peek(1).Is("(") || Peek(1).Is("{")) &&
        (class_name.empty() || Cur().text == class_name)) {
      if (class_name.empty() && Peek(1).Is("{")) Fail("unexpected '{'");
      auto method = std::make_unique<MethodDecl>();
      method->modifiers = std::move(mods);
      method->type_params = std::move(type_params);
      method->is_constructor = true;
      method->name_range = TokenRange(Cur());
      method->name = ExpectIdent();
      if (Cur().Is("(")) method->params = ParseFormalParams();
      ParseMethodRest(method.get());
      method->range = RangeFrom(begin, line);
      m.kind = MemberKind::kMethod;
      m.method = std::move(method);
      return m;
    }

    TypeRef type = ParseType();
    if (!Cur().IsIdent()) Fail("expected member name");
    if (Peek(1).Is("(")) {
      auto method = std::make_unique<MethodDecl>();
      method->modifiers = std::move(mods);
      method->type_params = std::move(type_params);
      method->return_type = std::move(type);
      method->name_range = TokenRange(Cur());
      method->name = ExpectIdent();
      method->params = ParseFormalParams();
      ParseDims(&method->return_type);
      ParseMethodRest(method.get());
      method->range = RangeFrom(begin, line);
      m.kind = MemberKind::kMethod;
      m.method = std::move(method);
      return m;
    }

    if (!type_params.empty()) Fail("type parameters on a field");
    if (type.name == "void") Fail("field of type void");
    auto field = std::make_unique<FieldDecl>();
    field->modifiers = std::move(mods);
    field->type = std::move(type);
    ParseDeclarators(&field->vars);
    Expect(";");
    field->range = RangeFrom(begin, line);
    m.kind = MemberKind::kField;
    m.field = std::move(field);
    return m;
  }

  void ParseMethodRest(MethodDecl* method) {
    if (Accept("throws")) method->throws = ParseTypeList();
    if (Cur().Is("{")) {
      method->body = ParseBlock();
    } else if (Accept("default")) {
      method->default_value = Cur().Is("{") ? ParseArrayInit() : ParseTernary();
      Expect(";");
    } else {
      Expect(";");
    }
  }

  void ParseDeclarators(std::vector<VarDeclarator>* out) {
    while (true) {
      VarDeclarator v;
      uint32_t begin = Cur().begin;
      uint32_t line = Cur().line;
      v.name_range = TokenRange(Cur());
      v.name = ExpectIdent();
      while (Cur().Is("[") && Peek(1).Is("]")) {
        Advance();
        Advance();
        ++v.extra_dims;
      }
      if (Accept("=")) {
        v.init = Cur().Is("{") ? ParseArrayInit() : ParseExpression();
      }
      v.range = RangeFrom(begin, line);
      out->push_back(std::move(v));
      if (!Accept(",")) break;
    }
  }

  // ---- statements -----------------------------------------------------------

  StmtPtr NewStmt(StmtKind kind) {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    return s;
  }

  StmtPtr ParseBlock() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    Expect("{");
    auto block = NewStmt(StmtKind::kBlock);
    while (!Cur().Is("}")) {
      if (Cur().kind == TokenKind::kEnd) Fail("unterminated block");
      block->stmts.push_back(ParseBlockStatement());
    }
    Expect("}");
    block->range = RangeFrom(begin, line);
    return block;
  }

  bool AtLocalVarDecl(size_t* end_of_type = nullptr) {
    size_t save = pos_;
    uint32_t save_end = last_end_, save_line = last_line_;
    TypeRef type;
    bool ok = false;
    if (TryParseType(&type) && Cur().IsIdent()) {
      const Token& after = Peek(1);
      ok = after.Is("=") || after.Is(";") || after.Is(",") ||
           after.Is("[") || after.Is(":");
    }
    if (end_of_type != nullptr) *end_of_type = pos_;
    pos_ = save;
    last_end_ = save_end;
    last_line_ = save_line;
    return ok;
  }

  StmtPtr ParseLocalVarRest(std::vector<std::string> mods, uint32_t begin,
                            uint32_t line, bool expect_semicolon = true) {
    auto s = NewStmt(StmtKind::kLocalVar);
    s->modifiers = std::move(mods);
    s->var_type = ParseType();
    ParseDeclarators(&s->vars);
    if (expect_semicolon) Expect(";");
    s->range = RangeFrom(begin, line);
    return s;
  }

  bool AtYieldStatement() const {
    if (!Cur().IsIdent("yield")) return false;
    const Token& n = Peek(1);
    return !(n.Is("=") || n.Is(".") || n.Is("[") || n.Is("++") ||
             n.Is("--") || n.Is("+=") || n.Is("-=") || n.Is("*=") ||
             n.Is("/=") || n.Is(";") || n.Is("->") || n.Is("::"));
  }

  StmtPtr ParseBlockStatement() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;

    if (AtAnnotation() || Cur().Is("final") || Cur().Is("abstract") ||
        (Cur().Is("static") && !Peek(1).Is(".")) || AtSealedModifier() ||
        AtTypeDeclKeyword()) {
      std::vector<std::string> mods;
      ParseModifiers(&mods);
      if (AtTypeDeclKeyword()) {
        auto s = NewStmt(StmtKind::kLocalClass);
        s->local_class = ParseTypeDeclRest(std::move(mods), begin, line);
        s->range = RangeFrom(begin, line);
        return s;
      }
      return ParseLocalVarRest(std::move(mods), begin, line);
    }
    if (AtYieldStatement()) {
      Advance();
      auto s = NewStmt(StmtKind::kYield);
      s->expr = ParseExpression();
      Expect(";");
      s->range = RangeFrom(begin, line);
      return s;
    }
    if (Cur().IsIdent() && Peek(1).Is(":")) {
      auto s = NewStmt(StmtKind::kLabeled);
      s->label = ExpectIdent();
      Expect(":");
      s->body = ParseStatement();
      s->range = RangeFrom(begin, line);
      return s;
    }
    if ((Cur().IsIdent() || IsPrimitive(Cur())) && AtLocalVarDecl()) {
      return ParseLocalVarRest({}, begin, line);
    }
    return ParseStatement();
  }

  ExprPtr ParseParenExpr() {
    Expect("(");
    ExprPtr e = ParseExpression();
    Expect(")");
    return e;
  }

  StmtPtr ParseStatement() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    const Token& t = Cur();
    StmtPtr s;

    if (t.Is("{")) return ParseBlock();
    if (t.Is(";")) {
      Advance();
      s = NewStmt(StmtKind::kEmpty);
    } else if (t.Is("if")) {
      Advance();
      s = NewStmt(StmtKind::kIf);
      s->expr = ParseParenExpr();
      s->body = ParseStatement();
      if (Accept("else")) s->else_body = ParseStatement();
    } else if (t.Is("while")) {
      Advance();
      s = NewStmt(StmtKind::kWhile);
      s->expr = ParseParenExpr();
      s->body = ParseStatement();
    } else if (t.Is("do")) {
      Advance();
      s = NewStmt(StmtKind::kDo);
      s->body = ParseStatement();
      Expect("while");
      s->expr = ParseParenExpr();
      Expect(";");
    } else if (t.Is("for")) {
      s = ParseFor();
    } else if (t.Is("try")) {
      s = ParseTry();
    } else if (t.Is("switch")) {
      Advance();
      s = NewStmt(StmtKind::kSwitch);
      s->expr = ParseParenExpr();
      ParseSwitchBody(&s->cases);
    } else if (t.Is("return")) {
      Advance();
      s = NewStmt(StmtKind::kReturn);
      if (!Cur().Is(";")) s->expr = ParseExpression();
      Expect(";");
    } else if (t.Is("break") || t.Is("continue")) {
      s = NewStmt(t.Is("break") ? StmtKind::kBreak : StmtKind::kContinue);
      Advance();
      if (Cur().IsIdent()) s->label = ExpectIdent();
      Expect(";");
    } else if (t.Is("throw")) {
      Advance();
      s = NewStmt(StmtKind::kThrow);
      s->expr = ParseExpression();
      Expect(";");
    } else if (t.Is("synchronized")) {
      Advance();
      s = NewStmt(StmtKind::kSynchronized);
      s->expr = ParseParenExpr();
      s->body = ParseBlock();
    } else if (t.Is("assert")) {
      Advance();
      s = NewStmt(StmtKind::kAssert);
      s->expr = ParseExpression();
      if (Accept(":")) s->expr2 = ParseExpression();
      Expect(";");
    } else if ((t.Is("this") || t.Is("super")) && Peek(1).Is("(")) {
      s = NewStmt(StmtKind::kExplicitCtorCall);
      s->ctor_is_super = t.Is("super");
      Advance();
      s->updates = ParseArguments();
      Expect(";");
    } else if (t.Is("else") || t.Is("case") || t.Is("catch") ||
               t.Is("finally")) {
      Fail("unexpected keyword");
    } else {
      s = NewStmt(StmtKind::kExpression);
      s->expr = ParseExpression();
      CheckStatementExpression(*s->expr);
      Expect(";");
    }
    s->range = RangeFrom(begin, line);
    return s;
  }

  void CheckStatementExpression(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kAssign:
      case ExprKind::kPostfix:
      case ExprKind::kMethodCall:
      case ExprKind::kNew:
        return;
      case ExprKind::kUnary:
        if (e.op == "++" || e.op == "--") return;
        break;
      default:
        break;
    }
    throw ParseException({"not a statement", e.range.first_line, 0});
  }

  StmtPtr ParseFor() {
    Expect("for");
    Expect("(");
    // Enhanced for.
    {
      size_t save = pos_;
      uint32_t save_end = last_end_, save_line = last_line_;
      uint32_t begin = Cur().begin;
      uint32_t line = Cur().line;
      std::vector<std::string> mods;
      ParseModifiers(&mods);
      TypeRef type;
      if (TryParseType(&type) && Cur().IsIdent() && Peek(1).Is(":")) {
        auto s = NewStmt(StmtKind::kForEach);
        s->modifiers = std::move(mods);
        s->var_type = std::move(type);
        VarDeclarator v;
        v.name_range = TokenRange(Cur());
        v.name = ExpectIdent();
        v.range = v.name_range;
        s->vars.push_back(std::move(v));
        Expect(":");
        s->expr = ParseExpression();
        Expect(")");
        s->body = ParseStatement();
        (void)begin;
        (void)line;
        return s;
      }
      pos_ = save;
      last_end_ = save_end;
      last_line_ = save_line;
    }
    auto s = NewStmt(StmtKind::kFor);
    if (!Cur().Is(";")) {
      uint32_t begin = Cur().begin;
      uint32_t line = Cur().line;
      if (AtAnnotation() || Cur().Is("final")) {
        std::vector<std::string> mods;
        ParseModifiers(&mods);
        s->stmts.push_back(ParseLocalVarRest(std::move(mods), begin, line,
                                             /*expect_semicolon=*/false));
      } else if ((Cur().IsIdent() || IsPrimitive(Cur())) && AtLocalVarDecl()) {
        s->stmts.push_back(
            ParseLocalVarRest({}, begin, line, /*expect_semicolon=*/false));
      } else {
        while (true) {
          uint32_t b = Cur().begin;
          uint32_t l = Cur().line;
          auto es = NewStmt(StmtKind::kExpression);
          es->expr = ParseExpression();
          CheckStatementExpression(*es->expr);
          es->range = RangeFrom(b, l);
          s->stmts.push_back(std::move(es));
          if (!Accept(",")) break;
        }
      }
    }
    Expect(";");
    if (!Cur().Is(";")) s->expr = ParseExpression();
    Expect(";");
    if (!Cur().Is(")")) {
      while (true) {
        s->updates.push_back(ParseExpression());
        CheckStatementExpression(*s->updates.back());
        if (!Accept(",")) break;
      }
    }
    Expect(")");
    s->body = ParseStatement();
    return s;
  }

  StmtPtr ParseTry() {
    Expect("try");
    auto s = NewStmt(StmtKind::kTry);
    if (Accept("(")) {
      while (!Cur().Is(")")) {
        uint32_t begin = Cur().begin;
        uint32_t line = Cur().line;
        std::vector<std::string> mods;
        ParseModifiers(&mods);
        if (!mods.empty() || AtLocalVarDecl()) {
          s->stmts.push_back(ParseLocalVarRest(std::move(mods), begin, line,
                                               /*expect_semicolon=*/false));
        } else {
          auto es = NewStmt(StmtKind::kExpression);
          es->expr = ParseExpression();
          es->range = RangeFrom(begin, line);
          s->stmts.push_back(std::move(es));
        }
        if (!Accept(";")) break;
      }
      Expect(")");
    }
    s->body = ParseBlock();
    while (Cur().Is("catch")) {
      CatchClause c;
      uint32_t begin = Cur().begin;
      uint32_t line = Cur().line;
      Advance();
      Expect("(");
      uint32_t pbegin = Cur().begin;
      uint32_t pline = Cur().line;
      ParseModifiers(&c.param.modifiers);
      c.param.type = ParseType();
      c.alternatives.push_back(c.param.type);
      while (Accept("|")) c.alternatives.push_back(ParseType());
      c.param.name_range = TokenRange(Cur());
      c.param.name = ExpectIdent();
      c.param.range = RangeFrom(pbegin, pline);
      Expect(")");
      c.block = ParseBlock();
      c.range = RangeFrom(begin, line);
      s->catches.push_back(std::move(c));
    }
    if (Accept("finally")) s->finally_block = ParseBlock();
    if (s->catches.empty() && !s->finally_block && s->stmts.empty()) {
      Fail("try without catch or finally");
    }
    return s;
  }

  void ParseSwitchBody(std::vector<SwitchCase>* cases) {
    Expect("{");
    while (!Cur().Is("}")) {
      if (Cur().kind == TokenKind::kEnd) Fail("unterminated switch");
      SwitchCase c;
      uint32_t begin = Cur().begin;
      uint32_t line = Cur().line;
      if (Accept("default")) {
        c.is_default = true;
      } else {
        Expect("case");
        while (true) {
          if (Accept("default")) {
            c.is_default = true;
          } else {
            c.labels.push_back(ParseCaseLabel());
          }
          if (!Accept(",")) break;
        }
        if (Cur().IsIdent("when")) {
          Advance();
          c.labels.push_back(ParseExpression());
        }
      }
      if (Accept("->")) {
        c.arrow = true;
        if (Cur().Is("{")) {
          c.body.push_back(ParseBlock());
        } else if (Cur().Is("throw")) {
          c.body.push_back(ParseStatement());
        } else {
          uint32_t b = Cur().begin;
          uint32_t l = Cur().line;
          auto es = NewStmt(StmtKind::kExpression);
          es->expr = ParseExpression();
          Expect(";");
          es->range = RangeFrom(b, l);
          c.body.push_back(std::move(es));
        }
      } else {
        Expect(":");
        while (!Cur().Is("case") && !Cur().Is("default") && !Cur().Is("}")) {
          if (Cur().kind == TokenKind::kEnd) Fail("unterminated switch");
          c.body.push_back(ParseBlockStatement());
        }
        // "default" can also open a nested statement only via a label; a bare
        // "default" here always starts the next case.
      }
      c.range = RangeFrom(begin, line);
      cases->push_back(std::move(c));
    }
    Expect("}");
  }

  ExprPtr ParseCaseLabel() {
    // Type pattern: case Foo f ->
    size_t save = pos_;
    uint32_t save_end = last_end_, save_line = last_line_;
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    TypeRef type;
    if (TryParseType(&type) && Cur().IsIdent() && !Cur().IsIdent("when")) {
      auto e = NewExpr(ExprKind::kInstanceOf);
      e->type = std::move(type);
      e->pattern_name = ExpectIdent();
      e->range = RangeFrom(begin, line);
      return e;
    }
    pos_ = save;
    last_end_ = save_end;
    last_line_ = save_line;
    bool saved = no_lambda_;
    no_lambda_ = true;
    ExprPtr e = ParseTernary();
    no_lambda_ = saved;
    return e;
  }

  // ---- expressions ----------------------------------------------------------

  ExprPtr NewExpr(ExprKind kind) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    return e;
  }

  std::vector<ExprPtr> ParseArguments() {
    std::vector<ExprPtr> args;
    Expect("(");
    if (!Cur().Is(")")) {
      while (true) {
        args.push_back(ParseExpression());
        if (!Accept(",")) break;
      }
    }
    Expect(")");
    return args;
  }

  bool AtLambda() const {
    if (no_lambda_) return false;
    if (Cur().IsIdent() && Peek(1).Is("->")) return true;
    if (Cur().Is("(")) {
      size_t close = MatchingClose(pos_);
      return close + 1 < toks_.size() && toks_[close + 1].Is("->");
    }
    return false;
  }

  ExprPtr ParseLambda() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    auto e = NewExpr(ExprKind::kLambda);
    if (Cur().IsIdent()) {
      Param p;
      p.range = p.name_range = TokenRange(Cur());
      p.name = ExpectIdent();
      e->lambda_params.push_back(std::move(p));
    } else {
      Expect("(");
      if (!Cur().Is(")")) {
        bool inferred = Cur().IsIdent() && (Peek(1).Is(",") || Peek(1).Is(")"));
        while (true) {
          if (inferred) {
            Param p;
            p.range = p.name_range = TokenRange(Cur());
            p.name = ExpectIdent();
            e->lambda_params.push_back(std::move(p));
          } else {
            e->lambda_params.push_back(ParseFormalParam());
          }
          if (!Accept(",")) break;
        }
      }
      Expect(")");
    }
    Expect("->");
    if (Cur().Is("{")) {
      e->lambda_body = ParseBlock();
    } else {
      e->target = ParseExpression();
    }
    e->range = RangeFrom(begin, line);
    return e;
  }

  // Assignment operators are spelled with split '>' tokens for the shifts.
  size_t AssignOpTokens(std::string* op) const {
    const Token& t = Cur();
    if (t.Is("=") || t.Is("+=") || t.Is("-=") || t.Is("*=") || t.Is("/=") ||
        t.Is("%=") || t.Is("&=") || t.Is("|=") || t.Is("^=") ||
        t.Is("<<=")) {
      *op = std::string(t.text);
      return 1;
    }
    if (t.Is(">") && Peek(1).Is(">") && Adjacent(0, 1)) {
      if (Peek(2).Is("=") && Adjacent(1, 2)) {
        *op = ">>=";
        return 3;
      }
      if (Peek(2).Is(">") && Adjacent(1, 2) && Peek(3).Is("=") &&
          Adjacent(2, 3)) {
        *op = ">>>=";
        return 4;
      }
    }
    return 0;
  }

  static bool IsAssignable(const Expr& e) {
    if (e.kind == ExprKind::kParens) return IsAssignable(*e.target);
    return e.kind == ExprKind::kName || e.kind == ExprKind::kFieldAccess ||
           e.kind == ExprKind::kArrayAccess;
  }

  ExprPtr ParseExpression() {
    if (AtLambda()) return ParseLambda();
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    ExprPtr lhs = ParseTernary();
    std::string op;
    size_t n = AssignOpTokens(&op);
    if (n == 0) return lhs;
    if (!IsAssignable(*lhs)) Fail("invalid assignment target");
    for (size_t i = 0; i < n; ++i) Advance();
    auto e = NewExpr(ExprKind::kAssign);
    e->op = op;
    e->operands.push_back(std::move(lhs));
    e->operands.push_back(Cur().Is("{") ? ParseArrayInit() : ParseExpression());
    e->range = RangeFrom(begin, line);
    return e;
  }

  ExprPtr ParseTernary() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    ExprPtr cond = ParseBinary(0);
    if (!Cur().Is("?")) return cond;
    Advance();
    auto e = NewExpr(ExprKind::kConditional);
    e->operands.push_back(std::move(cond));
    bool saved = no_lambda_;
    no_lambda_ = false;
    e->operands.push_back(ParseExpression());
    no_lambda_ = saved;
    Expect(":");
    e->operands.push_back(AtLambda() ? ParseLambda() : ParseTernary());
    e->range = RangeFrom(begin, line);
    return e;
  }

  BinaryOp PeekBinaryOp() const {
    const Token& t = Cur();
    if (t.kind != TokenKind::kOperator && !t.Is("instanceof")) return {};
    std::string_view s = t.text;
    if (s == ">") {
      if (Peek(1).Is(">") && Adjacent(0, 1)) {
        if (Peek(2).Is(">") && Adjacent(1, 2)) {
          if (Peek(3).Is("=") && Adjacent(2, 3)) return {};
          return {">>>", 8, 3};
        }
        if (Peek(2).Is("=") && Adjacent(1, 2)) return {};
        return {">>", 8, 2};
      }
      if (Peek(1).Is("=") && Adjacent(0, 1)) return {">=", 7, 2};
      return {">", 7, 1};
    }
    static const std::pair<std::string_view, int> kTable[] = {
        {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},
        {"==", 6}, {"!=", 6}, {"<", 7},  {"<=", 7}, {"instanceof", 7},
        {"<<", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10},
        {"%", 10},
    };
    for (const auto& [op, prec] : kTable) {
      if (s == op) return {std::string(op), prec, 1};
    }
    return {};
  }

  ExprPtr ParseBinary(int min_prec) {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    ExprPtr lhs = ParseUnary();
    while (true) {
      BinaryOp op = PeekBinaryOp();
      if (op.precedence < 0 || op.precedence < min_prec) break;
      for (size_t i = 0; i < op.tokens; ++i) Advance();
      if (op.text == "instanceof") {
        auto e = NewExpr(ExprKind::kInstanceOf);
        e->target = std::move(lhs);
        std::vector<std::string> mods;
        ParseModifiers(&mods);
        e->type = ParseType();
        if (Cur().Is("(")) SkipBalanced();  // record deconstruction pattern
        if (Cur().IsIdent() && !Cur().IsIdent("when")) {
          e->pattern_name = ExpectIdent();
        }
        e->range = RangeFrom(begin, line);
        lhs = std::move(e);
        continue;
      }
      ExprPtr rhs = ParseBinary(op.precedence + 1);
      auto e = NewExpr(ExprKind::kBinary);
      e->op = op.text;
      e->operands.push_back(std::move(lhs));
      e->operands.push_back(std::move(rhs));
      e->range = RangeFrom(begin, line);
      lhs = std::move(e);
    }
    return lhs;
  }

  bool CastFollows(const Token& t) const {
    if (t.IsIdent() || t.IsLiteral()) return true;
    return t.Is("(") || t.Is("this") || t.Is("super") || t.Is("new") ||
           t.Is("!") || t.Is("~") || t.Is("true") || t.Is("false") ||
           t.Is("null") || t.Is("switch") || IsPrimitive(t);
  }

  ExprPtr ParseUnary() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    const Token& t = Cur();
    if (t.Is("+") || t.Is("-") || t.Is("++") || t.Is("--") || t.Is("!") ||
        t.Is("~")) {
      auto e = NewExpr(ExprKind::kUnary);
      e->op = std::string(t.text);
      Advance();
      e->target = ParseUnary();
      if ((e->op == "++" || e->op == "--") && !IsAssignable(*e->target)) {
        Fail("invalid increment target");
      }
      e->range = RangeFrom(begin, line);
      return e;
    }
    if (t.Is("(") && !AtLambda()) {
      if (ExprPtr cast = TryParseCast()) return cast;
    }
    return ParsePostfix();
  }

  ExprPtr TryParseCast() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    size_t save = pos_;
    uint32_t save_end = last_end_, save_line = last_line_;
    Advance();  // (
    bool primitive = IsPrimitive(Cur());
    TypeRef type;
    if (TryParseType(&type)) {
      while (Accept("&")) {
        TypeRef extra;
        if (!TryParseType(&extra)) break;
      }
      bool primitive_cast = primitive && type.dims == 0;
      if (Cur().Is(")") && (primitive_cast || CastFollows(Peek(1)))) {
        Advance();
        auto e = NewExpr(ExprKind::kCast);
        e->type = std::move(type);
        e->target = AtLambda() ? ParseLambda() : ParseUnary();
        e->range = RangeFrom(begin, line);
        return e;
      }
    }
    pos_ = save;
    last_end_ = save_end;
    last_line_ = save_line;
    return nullptr;
  }

  ExprPtr ParsePostfix() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    ExprPtr e = ParsePrimary();
    while (true) {
      if (Cur().Is(".")) {
        Advance();
        e = ParseSelector(std::move(e), begin, line);
      } else if (Cur().Is("[")) {
        if (Peek(1).Is("]")) {
          e = ParseArrayTypeSuffix(std::move(e), begin, line);
        } else {
          Advance();
          auto a = NewExpr(ExprKind::kArrayAccess);
          a->target = std::move(e);
          a->operands.push_back(ParseExpression());
          Expect("]");
          a->range = RangeFrom(begin, line);
          e = std::move(a);
        }
      } else if (Cur().Is("::")) {
        Advance();
        auto r = NewExpr(ExprKind::kMethodRef);
        r->target = std::move(e);
        if (Cur().Is("<")) {
          std::vector<TypeRef> ignored;
          ParseTypeArguments(&ignored);
        }
        r->name_range = TokenRange(Cur());
        if (Accept("new")) {
          r->name = "new";
        } else {
          r->name = ExpectIdent();
        }
        r->range = RangeFrom(begin, line);
        e = std::move(r);
      } else if (Cur().Is("++") || Cur().Is("--")) {
        if (!IsAssignable(*e)) Fail("invalid increment target");
        auto p = NewExpr(ExprKind::kPostfix);
        p->op = std::string(Cur().text);
        Advance();
        p->target = std::move(e);
        p->range = RangeFrom(begin, line);
        e = std::move(p);
      } else {
        return e;
      }
    }
  }

  // Turns a name chain into a type for Foo[].class / Foo[]::new.
  static bool NameChain(const Expr& e, std::string* out) {
    if (e.kind == ExprKind::kName) {
      *out = e.name;
      return true;
    }
    if (e.kind == ExprKind::kFieldAccess && e.target) {
      std::string prefix;
      if (!NameChain(*e.target, &prefix)) return false;
      *out = prefix + "." + e.name;
      return true;
    }
    return false;
  }

  ExprPtr ParseArrayTypeSuffix(ExprPtr base, uint32_t begin, uint32_t line) {
    TypeRef type;
    if (base->kind == ExprKind::kClassLit) {
      type = std::move(base->type);
    } else if (!NameChain(*base, &type.name)) {
      Fail("unexpected '['");
    }
    while (Cur().Is("[") && Peek(1).Is("]")) {
      Advance();
      Advance();
      ++type.dims;
    }
    type.range = RangeFrom(begin, line);
    if (Accept("::")) {
      auto r = NewExpr(ExprKind::kMethodRef);
      r->type = std::move(type);
      r->name_range = TokenRange(Cur());
      if (Accept("new")) {
        r->name = "new";
      } else {
        r->name = ExpectIdent();
      }
      r->range = RangeFrom(begin, line);
      return r;
    }
    Expect(".");
    Expect("class");
    auto c = NewExpr(ExprKind::kClassLit);
    c->type = std::move(type);
    c->range = RangeFrom(begin, line);
    return c;
  }

  ExprPtr ParseSelector(ExprPtr target, uint32_t begin, uint32_t line) {
    if (Cur().Is("new")) {
      ExprPtr creator = ParseCreator();
      creator->target = std::move(target);
      creator->range = RangeFrom(begin, line);
      return creator;
    }
    if (Cur().Is("this") || Cur().Is("super")) {
      auto e = NewExpr(Cur().Is("this") ? ExprKind::kThis : ExprKind::kSuper);
      Advance();
      e->target = std::move(target);
      e->range = RangeFrom(begin, line);
      if (e->kind == ExprKind::kSuper && !Cur().Is(".") && !Cur().Is("::")) {
        Fail("expected member access after 'super'");
      }
      return e;
    }
    if (Cur().Is("class")) {
      Advance();
      auto c = NewExpr(ExprKind::kClassLit);
      if (!NameChain(*target, &c->type.name)) Fail("invalid class literal");
      c->type.range = target->range;
      c->range = RangeFrom(begin, line);
      return c;
    }
    bool explicit_args = false;
    if (Cur().Is("<")) {
      std::vector<TypeRef> ignored;
      ParseTypeArguments(&ignored);
      explicit_args = true;
    }
    SourceRange name_range = TokenRange(Cur());
    std::string name = ExpectIdent();
    if (Cur().Is("(")) {
      auto call = NewExpr(ExprKind::kMethodCall);
      call->target = std::move(target);
      call->name = std::move(name);
      call->name_range = name_range;
      call->has_explicit_type_args = explicit_args;
      call->operands = ParseArguments();
      call->range = RangeFrom(begin, line);
      return call;
    }
    if (explicit_args) Fail("expected '('");
    auto fa = NewExpr(ExprKind::kFieldAccess);
    fa->target = std::move(target);
    fa->name = std::move(name);
    fa->name_range = name_range;
    fa->range = RangeFrom(begin, line);
    return fa;
  }

  ExprPtr ParseArrayInit() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    Expect("{");
    auto e = NewExpr(ExprKind::kArrayInit);
    while (!Cur().Is("}")) {
      e->operands.push_back(Cur().Is("{") ? ParseArrayInit()
                                          : ParseExpression());
      if (!Accept(",")) break;
    }
    Expect("}");
    e->range = RangeFrom(begin, line);
    return e;
  }

  ExprPtr ParseCreator() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    Expect("new");
    if (Cur().Is("<")) {
      std::vector<TypeRef> ignored;
      ParseTypeArguments(&ignored);
    }
    TypeRef type = ParseType(/*allow_dims=*/false);
    if (Cur().Is("[") || (Cur().Is("@"))) {
      auto e = NewExpr(ExprKind::kNewArray);
      while (AtAnnotation()) ParseAnnotation();
      while (Cur().Is("[") && !Peek(1).Is("]")) {
        Advance();
        e->operands.push_back(ParseExpression());
        Expect("]");
        ++type.dims;
      }
      while (Cur().Is("[") && Peek(1).Is("]")) {
        Advance();
        Advance();
        ++type.dims;
      }
      if (e->operands.empty()) {
        if (!Cur().Is("{")) Fail("array creation needs dimensions or init");
        e->target = ParseArrayInit();
      }
      if (type.dims == 0) Fail("expected '['");
      e->type = std::move(type);
      e->range = RangeFrom(begin, line);
      return e;
    }
    auto e = NewExpr(ExprKind::kNew);
    e->type = std::move(type);
    e->operands = ParseArguments();
    if (Cur().Is("{")) {
      e->body = std::make_unique<ClassDecl>();
      e->body->anonymous = true;
      uint32_t b = Cur().begin;
      uint32_t l = Cur().line;
      ParseClassBody(e->body.get());
      e->body->range = RangeFrom(b, l);
    }
    e->range = RangeFrom(begin, line);
    return e;
  }

  ExprPtr ParsePrimary() {
    uint32_t begin = Cur().begin;
    uint32_t line = Cur().line;
    const Token& t = Cur();

    if (t.IsLiteral() || t.Is("true") || t.Is("false") || t.Is("null")) {
      auto e = NewExpr(ExprKind::kLiteral);
      e->name = std::string(t.text);
      Advance();
      e->range = RangeFrom(begin, line);
      return e;
    }
    if (t.Is("this")) {
      Advance();
      auto e = NewExpr(ExprKind::kThis);
      e->range = RangeFrom(begin, line);
      return e;
    }
    if (t.Is("super")) {
      Advance();
      if (!Cur().Is(".") && !Cur().Is("::")) {
        Fail("expected member access after 'super'");
      }
      auto e = NewExpr(ExprKind::kSuper);
      e->range = RangeFrom(begin, line);
      return e;
    }
    if (t.Is("new")) return ParseCreator();
    if (t.Is("(")) {
      if (AtLambda()) return ParseLambda();
      Advance();
      auto e = NewExpr(ExprKind::kParens);
      bool saved = no_lambda_;
      no_lambda_ = false;
      e->target = ParseExpression();
      no_lambda_ = saved;
      Expect(")");
      e->range = RangeFrom(begin, line);
      return e;
    }
    if (t.Is("switch")) {
      Advance();
      auto e = NewExpr(ExprKind::kSwitch);
      e->switch_stmt = NewStmt(StmtKind::kSwitch);
      e->switch_stmt->expr = ParseParenExpr();
      bool saved = no_lambda_;
      no_lambda_ = false;
      ParseSwitchBody(&e->switch_stmt->cases);
      no_lambda_ = saved;
      e->range = RangeFrom(begin, line);
      e->switch_stmt->range = e->range;
      return e;
    }
    if (IsPrimitive(t) || t.Is("void")) {
      TypeRef type = ParseType();
      if (Accept("::")) {
        auto r = NewExpr(ExprKind::kMethodRef);
        r->type = std::move(type);
        r->name_range = TokenRange(Cur());
        Expect("new");
        r->name = "new";
        r->range = RangeFrom(begin, line);
        return r;
      }
      Expect(".");
      Expect("class");
      auto c = NewExpr(ExprKind::kClassLit);
      c->type = std::move(type);
      c->range = RangeFrom(begin, line);
      return c;
    }
    if (t.IsIdent()) {
      if (AtLambda()) return ParseLambda();
      if (Peek(1).Is("<")) {
        // Generic type method reference, e.g. List<String>::size.
        size_t save = pos_;
        uint32_t save_end = last_end_, save_line = last_line_;
        TypeRef type;
        if (TryParseType(&type) && Cur().Is("::")) {
          Advance();
          auto r = NewExpr(ExprKind::kMethodRef);
          r->type = std::move(type);
          r->name_range = TokenRange(Cur());
          if (Accept("new")) {
            r->name = "new";
          } else {
            r->name = ExpectIdent();
          }
          r->range = RangeFrom(begin, line);
          return r;
        }
        pos_ = save;
        last_end_ = save_end;
        last_line_ = save_line;
      }
      SourceRange name_range = TokenRange(t);
      std::string name = ExpectIdent();
      if (Cur().Is("(")) {
        auto call = NewExpr(ExprKind::kMethodCall);
        call->name = std::move(name);
        call->name_range = name_range;
        call->operands = ParseArguments();
        call->range = RangeFrom(begin, line);
        return call;
      }
      auto e = NewExpr(ExprKind::kName);
      e->name = std::move(name);
      e->name_range = name_range;
      e->range = RangeFrom(begin, line);
      return e;
    }
    Fail("expected expression");
  }

  const std::vector<Token>& toks_;
  size_t pos_ = 0;
  uint32_t last_end_ = 0;
  uint32_t last_line_ = 1;
  bool no_lambda_ = false;
};

}  // namespace

std::string SyntaxError::ToString() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

ParseException::ParseException(SyntaxError error)
    : std::runtime_error(error.ToString()), error_(std::move(error)) {}

ParsedSource::ParsedSource(std::string path, std::string text, Shape shape)
    : path_(std::move(path)), text_(std::move(text)), shape_(shape) {}

std::shared_ptr<const ParsedSource> ParsedSource::Parse(std::string path,
                                                        std::string text,
                                                        Shape shape) {
  std::shared_ptr<ParsedSource> src(
      new ParsedSource(std::move(path), std::move(text), shape));
  try {
    src->tokens_ = Tokenize(src->text_);
  } catch (const LexError& e) {
    throw ParseException({e.what(), e.line(), e.column()});
  }
  Parser parser(src->tokens_);
  switch (shape) {
    case Shape::kCompilationUnit:
      parser.ParseCompilationUnit(&src->unit_);
      break;
    case Shape::kMembers:
      parser.ParseMembersOnly(&src->members_);
      break;
    case Shape::kStatements:
      parser.ParseStatementsOnly(&src->statements_);
      break;
  }
  return src;
}

namespace {

ParseOutcome TryParse(std::string path, std::string text,
                      ParsedSource::Shape shape) {
  ParseOutcome out;
  try {
    out.source = ParsedSource::Parse(std::move(path), std::move(text), shape);
  } catch (const ParseException& e) {
    out.error = e.error();
  }
  return out;
}

}  // namespace

ParseOutcome ParseCompilationUnit(std::string path, std::string text) {
  return TryParse(std::move(path), std::move(text),
                  ParsedSource::Shape::kCompilationUnit);
}

ParseOutcome ParseClassMembers(std::string text) {
  return TryParse("<members>", std::move(text), ParsedSource::Shape::kMembers);
}

ParseOutcome ParseBlockStatements(std::string text) {
  return TryParse("<statements>", std::move(text),
                  ParsedSource::Shape::kStatements);
}

}  // namespace smellgen::java
