#include "ctllint/ast.hpp"

namespace ctllint::ast {

const char* spelling(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Not: return "!";
    case UnaryOp::Deref: return "*";
    case UnaryOp::AddrOf: return "&";
  }
  return "?";
}

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::LogAnd: return "&&";
    case BinaryOp::LogOr: return "||";
  }
  return "?";
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      return true;
    default:
      return false;
  }
}

ExprPtr clone(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->loc = e.loc;
  if (auto lit = e.as<IntLit>()) {
    out->node = *lit;
  } else if (auto v = e.as<VarRef>()) {
    out->node = *v;
  } else if (auto u = e.as<Unary>()) {
    out->node = Unary{u->op, clone(*u->operand)};
  } else if (auto b = e.as<Binary>()) {
    out->node = Binary{b->op, clone(*b->lhs), clone(*b->rhs)};
  } else if (auto ix = e.as<Index>()) {
    out->node = Index{clone(*ix->base), clone(*ix->index)};
  } else if (auto c = e.as<Call>()) {
    Call copy;
    copy.callee = c->callee;
    for (const auto& a : c->args) copy.args.push_back(clone(*a));
    out->node = std::move(copy);
  }
  return out;
}

const FunctionDef* TranslationUnit::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

}  // namespace ctllint::ast
