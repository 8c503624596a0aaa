#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ctllint/ast.hpp"

namespace ctllint {

struct SemanticError {
  SourceLocation loc;
  std::string message;

  friend bool operator==(const SemanticError&, const SemanticError&) = default;
};

// Undeclared variables, calls to undeclared functions (malloc/free are
// builtins) and duplicate declarations within one scope. Empty means the unit
// is analyzable.
std::vector<SemanticError> check_well_formed(const ast::TranslationUnit& tu);

using VarId = int;

enum class VarOrigin { Global, Param, Local };

struct VarInfo {
  std::string name;
  ast::Type type;
  SourceLocation decl_loc;
  VarOrigin origin = VarOrigin::Local;
};

// Scope resolution for one function: every declaration (global, parameter or
// local) gets a dense id; every variable reference maps to its declaration.
struct FunctionSymbols {
  std::vector<VarInfo> vars;
  std::vector<VarId> params;  // in parameter order
  std::unordered_map<const ast::Expr*, VarId> refs;
  std::unordered_map<const ast::Stmt*, VarId> decls;

  VarId ref(const ast::Expr& e) const {
    auto it = refs.find(&e);
    return it == refs.end() ? -1 : it->second;
  }
  VarId decl(const ast::Stmt& s) const {
    auto it = decls.find(&s);
    return it == decls.end() ? -1 : it->second;
  }
};

// Precondition: the unit passes check_well_formed.
FunctionSymbols resolve_symbols(const ast::TranslationUnit& tu, const ast::FunctionDef& f);

}  // namespace ctllint
