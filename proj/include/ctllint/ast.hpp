#pragma once

// AST for the MiniC subset accepted by the frontend.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ctllint/source_location.hpp"

namespace ctllint::ast {

enum class TypeKind { Int, PtrInt, ArrayInt, Void };

struct Type {
  TypeKind kind = TypeKind::Int;
  std::int64_t array_size = 0;  // only meaningful for ArrayInt

  static Type integer() { return {TypeKind::Int, 0}; }
  static Type pointer() { return {TypeKind::PtrInt, 0}; }
  static Type array(std::int64_t n) { return {TypeKind::ArrayInt, n}; }
  static Type void_type() { return {TypeKind::Void, 0}; }

  bool is_pointer() const { return kind == TypeKind::PtrInt; }
  bool is_array() const { return kind == TypeKind::ArrayInt; }
  bool is_int() const { return kind == TypeKind::Int; }

  friend bool operator==(const Type&, const Type&) = default;
};

enum class UnaryOp { Neg, Not, Deref, AddrOf };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, LogAnd, LogOr };

const char* spelling(UnaryOp op);
const char* spelling(BinaryOp op);
bool is_comparison(BinaryOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct IntLit {
  std::int64_t value = 0;
};
struct VarRef {
  std::string name;
};
struct Unary {
  UnaryOp op;
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Index {
  ExprPtr base;
  ExprPtr index;
};
struct Call {
  std::string callee;
  std::vector<ExprPtr> args;
};

struct Expr {
  SourceLocation loc;
  std::variant<IntLit, VarRef, Unary, Binary, Index, Call> node;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

ExprPtr clone(const Expr& e);

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct VarDecl {
  std::string name;
  Type type;
  ExprPtr init;  // may be null
};
struct Assign {
  ExprPtr target;  // VarRef, Unary(Deref) or Index
  ExprPtr value;
};
struct If {
  ExprPtr cond;
  StmtPtr then_branch;
  StmtPtr else_branch;  // may be null
};
struct While {
  ExprPtr cond;
  StmtPtr body;
};
struct For {
  StmtPtr init;  // may be null; VarDecl, Assign or ExprStmt
  ExprPtr cond;  // may be null, meaning "always true"
  StmtPtr step;  // may be null; Assign or ExprStmt
  StmtPtr body;
};
struct Return {
  ExprPtr value;  // may be null
};
struct ExprStmt {
  ExprPtr expr;
};
struct Block {
  std::vector<StmtPtr> stmts;
};
struct Break {};
struct Continue {};

struct Stmt {
  SourceLocation loc;
  std::variant<VarDecl, Assign, If, While, For, Return, ExprStmt, Block, Break, Continue> node;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

struct Param {
  std::string name;
  Type type;
  SourceLocation loc;
};

struct FunctionDef {
  std::string name;
  std::vector<Param> params;
  Type return_type;
  StmtPtr body;  // always a Block
  SourceLocation loc;
  SourceLocation end_loc;  // closing brace
  // Byte range of the definition in the original source.
  std::size_t source_begin = 0;
  std::size_t source_end = 0;
};

struct TranslationUnit {
  std::string file;
  std::string source;
  std::vector<FunctionDef> functions;
  std::vector<StmtPtr> globals;  // each is a VarDecl

  const FunctionDef* find_function(const std::string& name) const;
  std::string_view function_text(const FunctionDef& f) const {
    return std::string_view(source).substr(f.source_begin, f.source_end - f.source_begin);
  }
};

}  // namespace ctllint::ast
