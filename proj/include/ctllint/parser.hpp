#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ctllint/ast.hpp"

namespace ctllint {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLocation loc, const std::string& message)
      : std::runtime_error(to_string(loc) + ": " + message), loc_(std::move(loc)), message_(message) {}

  const SourceLocation& location() const { return loc_; }
  const std::string& detail() const { return message_; }

 private:
  SourceLocation loc_;
  std::string message_;
};

// Parses a MiniC translation unit. Throws ParseError on any syntax error or
// construct outside the subset (preprocessor lines, structs, goto, switch, ...).
ast::TranslationUnit parse(std::string_view source, const std::string& file);

// Canonical, fully parenthesized rendering. Reparsing the output yields a
// structurally identical AST.
std::string pretty_print(const ast::TranslationUnit& tu);
std::string pretty_print(const ast::Expr& e);

}  // namespace ctllint
