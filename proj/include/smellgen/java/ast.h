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

#ifndef SMELLGEN_JAVA_AST_H_
#define SMELLGEN_JAVA_AST_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace smellgen::java {

// Half-open byte range into the source buffer plus the 1-based lines of its
// first and last characters.
struct SourceRange {
  uint32_t begin = 0;
  uint32_t end = 0;
  uint32_t first_line = 0;
  uint32_t last_line = 0;

  bool Contains(const SourceRange& other) const {
    return begin <= other.begin && other.end <= end;
  }
};

struct TypeRef {
  SourceRange range;
  // Dotted name without type arguments, e.g. "java.util.Map.Entry".
  std::string name;
  int dims = 0;
  bool primitive = false;
  std::vector<TypeRef> type_args;

  std::string SimpleName() const {
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
  }
};

struct Expr;
struct Stmt;
struct ClassDecl;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;
using ClassDeclPtr = std::unique_ptr<ClassDecl>;

struct Param {
  SourceRange range;
  SourceRange name_range;
  std::vector<std::string> modifiers;
  TypeRef type;  // empty name for untyped lambda parameters
  std::string name;
  bool varargs = false;
};

enum class ExprKind {
  kName,          // name
  kFieldAccess,   // target.name
  kMethodCall,    // [target.]name(args)
  kNew,           // new type(args) [body]
  kNewArray,      // new type[dims] [init]
  kArrayInit,     // { elements }
  kArrayAccess,   // target[operands[0]]
  kAssign,        // operands[0] op operands[1]
  kBinary,        // operands[0] op operands[1]
  kUnary,         // op target
  kPostfix,       // target op
  kConditional,   // operands[0] ? operands[1] : operands[2]
  kCast,          // (type) target
  kInstanceOf,    // target instanceof type [pattern_name]
  kLambda,        // params -> target | lambda_body
  kMethodRef,     // target::name or type::name
  kLiteral,
  kThis,          // [qualifier.]this
  kSuper,         // [qualifier.]super, only as a member-access target
  kClassLit,      // type.class
  kParens,        // (target)
  kSwitch,        // switch expression; switch_stmt holds the body
};

struct Expr {
  ExprKind kind = ExprKind::kLiteral;
  SourceRange range;
  std::string op;
  std::string name;
  SourceRange name_range;
  ExprPtr target;
  std::vector<ExprPtr> operands;  // also call/new arguments
  TypeRef type;
  ClassDeclPtr body;  // anonymous class body of kNew
  std::vector<Param> lambda_params;
  StmtPtr lambda_body;  // block-bodied lambda
  StmtPtr switch_stmt;  // kSwitch
  std::string pattern_name;
  bool has_explicit_type_args = false;
};

enum class StmtKind {
  kBlock,
  kLocalVar,
  kLocalClass,
  kExpression,
  kExplicitCtorCall,  // this(...) or super(...)
  kIf,
  kFor,
  kForEach,
  kWhile,
  kDo,
  kTry,
  kSwitch,
  kReturn,
  kBreak,
  kContinue,
  kThrow,
  kSynchronized,
  kLabeled,
  kYield,
  kAssert,
  kEmpty,
};

struct VarDeclarator {
  SourceRange range;
  SourceRange name_range;
  std::string name;
  int extra_dims = 0;
  ExprPtr init;
};

struct CatchClause {
  SourceRange range;
  Param param;  // type holds the first alternative
  std::vector<TypeRef> alternatives;
  StmtPtr block;
};

struct SwitchCase {
  SourceRange range;
  bool is_default = false;
  bool arrow = false;
  std::vector<ExprPtr> labels;
  std::vector<StmtPtr> body;  // statements after ':' or the single arrow body
};

struct Stmt {
  StmtKind kind = StmtKind::kEmpty;
  SourceRange range;

  // kBlock statements; kFor init statements.
  std::vector<StmtPtr> stmts;
  // kIf: then/else; loops, kLabeled, kSynchronized: body; kTry: try block,
  // finally block.
  StmtPtr body;
  StmtPtr else_body;
  StmtPtr finally_block;

  // Primary expression: condition, returned/thrown value, expression
  // statement, switch selector, lock, yielded value, assert condition.
  ExprPtr expr;
  ExprPtr expr2;  // assert message
  std::vector<ExprPtr> updates;  // kFor update list; ctor call arguments

  // kLocalVar, kForEach variable, kTry resources (as kLocalVar stmts in
  // stmts).
  std::vector<std::string> modifiers;
  TypeRef var_type;
  std::vector<VarDeclarator> vars;

  std::vector<CatchClause> catches;
  std::vector<SwitchCase> cases;
  ClassDeclPtr local_class;
  std::string label;  // kLabeled, kBreak, kContinue
  bool ctor_is_super = false;
};

enum class ClassKind { kClass, kInterface, kEnum, kRecord, kAnnotation };

struct FieldDecl {
  SourceRange range;
  std::vector<std::string> modifiers;
  TypeRef type;
  std::vector<VarDeclarator> vars;
};

struct MethodDecl {
  SourceRange range;
  SourceRange name_range;
  std::vector<std::string> modifiers;
  std::vector<std::string> type_params;
  bool is_constructor = false;
  TypeRef return_type;  // "void" for void methods, empty for constructors
  std::string name;
  std::vector<Param> params;
  std::vector<TypeRef> throws;
  StmtPtr body;  // null when abstract/native/interface
  ExprPtr default_value;  // annotation members

  bool IsStatic() const;
  bool IsAbstract() const;
};

struct EnumConstant {
  SourceRange range;
  std::string name;
  std::vector<ExprPtr> args;
  ClassDeclPtr body;
};

struct Initializer {
  SourceRange range;
  bool is_static = false;
  StmtPtr block;
};

enum class MemberKind { kField, kMethod, kInitializer, kClass };

struct Member {
  MemberKind kind = MemberKind::kField;
  std::unique_ptr<FieldDecl> field;
  std::unique_ptr<MethodDecl> method;
  std::unique_ptr<Initializer> initializer;
  ClassDeclPtr nested;

  const SourceRange& range() const;
};

struct ClassDecl {
  ClassKind kind = ClassKind::kClass;
  SourceRange range;       // modifiers through closing brace
  SourceRange name_range;  // empty for anonymous bodies
  SourceRange body_range;  // '{' through '}'
  std::vector<std::string> modifiers;
  std::string name;        // empty for anonymous bodies
  bool anonymous = false;
  std::vector<std::string> type_params;
  std::vector<TypeRef> extends;  // superclass, or super-interfaces
  std::vector<TypeRef> implements;
  SourceRange extends_clause;    // "extends X" keyword through type; empty if
                                 // absent
  SourceRange implements_clause;
  std::vector<Param> record_components;
  std::vector<EnumConstant> enum_constants;
  bool enum_has_semicolon = false;
  std::vector<Member> members;

  bool IsAbstract() const;
};

struct ImportDecl {
  SourceRange range;
  std::string name;  // dotted, without ".*"
  bool is_static = false;
  bool wildcard = false;

  std::string SimpleName() const {
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
  }
};

struct CompilationUnit {
  std::string package;
  std::vector<ImportDecl> imports;
  std::vector<ClassDeclPtr> types;
};

bool HasModifier(const std::vector<std::string>& modifiers,
                 const std::string& m);

}  // namespace smellgen::java

#endif  // SMELLGEN_JAVA_AST_H_
