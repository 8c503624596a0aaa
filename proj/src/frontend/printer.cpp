#include <sstream>

#include "ctllint/parser.hpp"

namespace ctllint {
namespace {

using namespace ast;

void print_expr(std::ostream& os, const Expr& e) {
  if (auto lit = e.as<IntLit>()) {
    os << lit->value;
  } else if (auto v = e.as<VarRef>()) {
    os << v->name;
  } else if (auto u = e.as<Unary>()) {
    os << "(" << spelling(u->op);
    print_expr(os, *u->operand);
    os << ")";
  } else if (auto b = e.as<Binary>()) {
    os << "(";
    print_expr(os, *b->lhs);
    os << " " << spelling(b->op) << " ";
    print_expr(os, *b->rhs);
    os << ")";
  } else if (auto ix = e.as<Index>()) {
    print_expr(os, *ix->base);
    os << "[";
    print_expr(os, *ix->index);
    os << "]";
  } else if (auto c = e.as<Call>()) {
    os << c->callee << "(";
    for (std::size_t i = 0; i < c->args.size(); ++i) {
      if (i) os << ", ";
      print_expr(os, *c->args[i]);
    }
    os << ")";
  }
}

void print_decl(std::ostream& os, const VarDecl& d) {
  switch (d.type.kind) {
    case TypeKind::PtrInt: os << "int *" << d.name; break;
    case TypeKind::ArrayInt: os << "int " << d.name << "[" << d.type.array_size << "]"; break;
    default: os << "int " << d.name; break;
  }
  if (d.init) {
    os << " = ";
    print_expr(os, *d.init);
  }
}

// Statement forms allowed in for-headers, printed without ';'.
void print_simple(std::ostream& os, const Stmt& s) {
  if (auto d = s.as<VarDecl>()) {
    print_decl(os, *d);
  } else if (auto a = s.as<Assign>()) {
    print_expr(os, *a->target);
    os << " = ";
    print_expr(os, *a->value);
  } else if (auto es = s.as<ExprStmt>()) {
    print_expr(os, *es->expr);
  }
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_stmt(std::ostream& os, const Stmt& s, int depth) {
  indent(os, depth);
  if (s.as<VarDecl>() || s.as<Assign>() || s.as<ExprStmt>()) {
    print_simple(os, s);
    os << ";\n";
  } else if (auto b = s.as<Block>()) {
    os << "{\n";
    for (const auto& st : b->stmts) print_stmt(os, *st, depth + 1);
    indent(os, depth);
    os << "}\n";
  } else if (auto i = s.as<If>()) {
    os << "if (";
    print_expr(os, *i->cond);
    os << ")\n";
    print_stmt(os, *i->then_branch, depth + 1);
    if (i->else_branch) {
      indent(os, depth);
      os << "else\n";
      print_stmt(os, *i->else_branch, depth + 1);
    }
  } else if (auto w = s.as<While>()) {
    os << "while (";
    print_expr(os, *w->cond);
    os << ")\n";
    print_stmt(os, *w->body, depth + 1);
  } else if (auto f = s.as<For>()) {
    os << "for (";
    if (f->init) print_simple(os, *f->init);
    os << "; ";
    if (f->cond) print_expr(os, *f->cond);
    os << "; ";
    if (f->step) print_simple(os, *f->step);
    os << ")\n";
    print_stmt(os, *f->body, depth + 1);
  } else if (auto r = s.as<Return>()) {
    os << "return";
    if (r->value) {
      os << " ";
      print_expr(os, *r->value);
    }
    os << ";\n";
  } else if (s.as<Break>()) {
    os << "break;\n";
  } else if (s.as<Continue>()) {
    os << "continue;\n";
  }
}

const char* type_prefix(const Type& t) {
  switch (t.kind) {
    case TypeKind::PtrInt: return "int *";
    case TypeKind::Void: return "void ";
    default: return "int ";
  }
}

}  // namespace

std::string pretty_print(const ast::Expr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string pretty_print(const ast::TranslationUnit& tu) {
  std::ostringstream os;
  for (const auto& g : tu.globals) print_stmt(os, *g, 0);
  for (const auto& f : tu.functions) {
    os << type_prefix(f.return_type) << f.name << "(";
    if (f.params.empty()) os << "void";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i) os << ", ";
      os << type_prefix(f.params[i].type) << f.params[i].name;
    }
    os << ")\n";
    print_stmt(os, *f.body, 0);
  }
  return os.str();
}

}  // namespace ctllint
