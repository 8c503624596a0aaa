#include <algorithm>

#include "ctllint/speclang.hpp"

namespace ctllint::spec {
namespace {

using namespace ast;

// Pre-order visit of every sub-expression.
template <class F>
void walk(const Expr& e, F&& fn) {
  fn(e);
  if (auto u = e.as<Unary>()) {
    walk(*u->operand, fn);
  } else if (auto b = e.as<Binary>()) {
    walk(*b->lhs, fn);
    walk(*b->rhs, fn);
  } else if (auto ix = e.as<Index>()) {
    walk(*ix->base, fn);
    walk(*ix->index, fn);
  } else if (auto c = e.as<Call>()) {
    for (const auto& a : c->args) walk(*a, fn);
  }
}

// Expressions evaluated by the node (assignment targets included as a whole).
std::vector<const Expr*> fragments(const CfgNode& n) {
  std::vector<const Expr*> out;
  if (n.kind == NodeKind::Cond) {
    if (n.cond) out.push_back(n.cond);
    return out;
  }
  if (n.kind != NodeKind::Stmt) return out;
  const Stmt& s = *n.stmt;
  if (auto d = s.as<VarDecl>()) {
    if (d->init) out.push_back(d->init.get());
  } else if (auto a = s.as<Assign>()) {
    out.push_back(a->target.get());
    out.push_back(a->value.get());
  } else if (auto e = s.as<ExprStmt>()) {
    out.push_back(e->expr.get());
  } else if (auto r = s.as<Return>()) {
    if (r->value) out.push_back(r->value.get());
  }
  return out;
}

bool is_var(const Cfg& cfg, const Expr& e, VarId v) { return e.as<VarRef>() && cfg.symbols.ref(e) == v; }

bool any_expr(const CfgNode& n, auto&& pred) {
  bool hit = false;
  for (const Expr* f : fragments(n))
    walk(*f, [&](const Expr& e) { hit = hit || pred(e); });
  return hit;
}

// Reads of v: every reference except a plain assignment target, `&v` and the
// operand of free() (a free is its own event, see free_of).
bool reads(const Cfg& cfg, const CfgNode& n, VarId v) {
  std::vector<const Expr*> skip;
  if (n.kind == NodeKind::Stmt) {
    if (auto a = n.stmt->as<Assign>(); a && a->target->as<VarRef>()) skip.push_back(a->target.get());
  }
  bool hit = false;
  for (const Expr* f : fragments(n)) {
    walk(*f, [&](const Expr& e) {
      if (auto u = e.as<Unary>(); u && u->op == UnaryOp::AddrOf) skip.push_back(u->operand.get());
      if (auto c = e.as<Call>(); c && c->callee == "free" && c->args.size() == 1) skip.push_back(c->args[0].get());
    });
  }
  for (const Expr* f : fragments(n)) {
    walk(*f, [&](const Expr& e) {
      if (is_var(cfg, e, v) && std::find(skip.begin(), skip.end(), &e) == skip.end()) hit = true;
    });
  }
  return hit;
}

const Expr* strip_not(const Expr* e) {
  while (auto u = e->as<Unary>()) {
    if (u->op != UnaryOp::Not) break;
    e = u->operand.get();
  }
  return e;
}

bool is_zero(const Expr& e) {
  auto lit = e.as<IntLit>();
  return lit && lit->value == 0;
}

bool is_call(const Expr& e, const char* callee) {
  auto c = e.as<Call>();
  return c && c->callee == callee;
}

bool arg_matches(const Cfg& cfg, const PatternArg& a, const Expr& e, const Binding& b) {
  switch (a.kind) {
    case PatternArg::Wildcard: return true;
    case PatternArg::Integer: {
      auto lit = e.as<IntLit>();
      return lit && lit->value == a.value;
    }
    case PatternArg::Ident: {
      auto v = e.as<VarRef>();
      return v && v->name == a.text;
    }
    case PatternArg::MetaVar: {
      auto it = b.find(a.text);
      return it != b.end() && is_var(cfg, e, it->second);
    }
  }
  return false;
}

// `v = <rhs>` or `int *v = <rhs>` with rhs satisfying pred.
bool assigns_from(const Cfg& cfg, const CfgNode& n, VarId v, auto&& pred) {
  if (n.kind != NodeKind::Stmt) return false;
  if (auto a = n.stmt->as<Assign>()) return is_var(cfg, *a->target, v) && pred(*a->value);
  if (auto d = n.stmt->as<VarDecl>()) return d->init && cfg.symbols.decl(*n.stmt) == v && pred(*d->init);
  return false;
}

}  // namespace

bool match_pattern(const Pattern& p, const Cfg& cfg, const CfgNode& n, const Binding& binding) {
  auto bound = [&](std::size_t i) -> VarId {
    if (i >= p.args.size() || p.args[i].kind != PatternArg::MetaVar) return -1;
    auto it = binding.find(p.args[i].text);
    return it == binding.end() ? -1 : it->second;
  };
  switch (p.kind) {
    case PatternKind::AtEntry: return n.kind == NodeKind::Entry;
    case PatternKind::AtExit: return n.kind == NodeKind::Exit;
    case PatternKind::Call:
      return any_expr(n, [&](const Expr& e) {
        auto c = e.as<Call>();
        return c && c->callee == p.args[0].text;
      });
    case PatternKind::MallocAssign: {
      VarId v = bound(0);
      return v >= 0 && assigns_from(cfg, n, v, [](const Expr& e) { return is_call(e, "malloc"); });
    }
    case PatternKind::NullAssign: {
      VarId v = bound(0);
      return v >= 0 && assigns_from(cfg, n, v, is_zero);
    }
    case PatternKind::AssignTo: {
      VarId v = bound(0);
      if (v < 0) return false;
      if (assigns_from(cfg, n, v, [](const Expr&) { return true; })) return true;
      // Taking the address lets the variable be written behind our back.
      return any_expr(n, [&](const Expr& e) {
        auto u = e.as<Unary>();
        return u && u->op == UnaryOp::AddrOf && is_var(cfg, *u->operand, v);
      });
    }
    case PatternKind::FreeOf: {
      VarId v = bound(0);
      return v >= 0 && any_expr(n, [&](const Expr& e) {
               auto c = e.as<Call>();
               return c && c->callee == "free" && c->args.size() == 1 && is_var(cfg, *c->args[0], v);
             });
    }
    case PatternKind::Deref: {
      VarId v = bound(0);
      return v >= 0 && any_expr(n, [&](const Expr& e) {
               if (auto u = e.as<Unary>()) return u->op == UnaryOp::Deref && is_var(cfg, *u->operand, v);
               if (auto ix = e.as<Index>()) return is_var(cfg, *ix->base, v);
               return false;
             });
    }
    case PatternKind::Use: {
      VarId v = bound(0);
      return v >= 0 && reads(cfg, n, v);
    }
    case PatternKind::DeclUninit: {
      VarId v = bound(0);
      if (v < 0 || n.kind != NodeKind::Stmt) return false;
      auto d = n.stmt->as<VarDecl>();
      return d && !d->init && (d->type.is_int() || d->type.is_pointer()) && cfg.symbols.decl(*n.stmt) == v;
    }
    case PatternKind::NullCheck: {
      VarId v = bound(0);
      if (v < 0 || n.kind != NodeKind::Cond || !n.cond) return false;
      const Expr* e = strip_not(n.cond);
      if (is_var(cfg, *e, v)) return true;
      if (auto b = e->as<Binary>(); b && (b->op == BinaryOp::Eq || b->op == BinaryOp::Ne))
        return (is_var(cfg, *b->lhs, v) && is_zero(*b->rhs)) || (is_zero(*b->lhs) && is_var(cfg, *b->rhs, v));
      return false;
    }
    case PatternKind::IndexOf: {
      VarId a = bound(0);
      return a >= 0 && any_expr(n, [&](const Expr& e) {
               auto ix = e.as<Index>();
               return ix && is_var(cfg, *ix->base, a) && arg_matches(cfg, p.args[1], *ix->index, binding);
             });
    }
  }
  return false;
}

std::vector<VarId> candidates(const CheckSpec& check, const Cfg& cfg) {
  std::vector<VarId> out;
  for (VarId v = 0; v < static_cast<VarId>(cfg.symbols.vars.size()); ++v) {
    const ast::Type& t = cfg.symbols.vars[static_cast<std::size_t>(v)].type;
    bool ok = false;
    switch (check.quantifier) {
      case Quantifier::None: break;
      case Quantifier::Pointer: ok = t.is_pointer(); break;
      case Quantifier::Array: ok = t.is_array(); break;
      case Quantifier::Any: ok = t.kind != ast::TypeKind::Void; break;
    }
    if (ok) out.push_back(v);
  }
  return out;
}

Instantiation instantiate(const CheckSpec& check, const Cfg& cfg, const Augmentation& extra) {
  return instantiate(check, cfg, kripke_transitions(cfg), extra);
}

Instantiation instantiate(const CheckSpec& check, const Cfg& cfg, std::shared_ptr<const TransitionSystem> ts,
                          const Augmentation& extra) {
  Instantiation out;
  std::vector<Binding> bindings;
  if (check.quantifier == Quantifier::None) {
    bindings.emplace_back();
  } else {
    for (VarId v : candidates(check, cfg)) bindings.push_back({{check.metavar, v}});
  }

  for (const Binding& b : bindings) {
    ++out.created;
    CheckTask task;
    task.check = &check;
    task.function = cfg.function;
    task.binding = b;
    if (!b.empty()) task.variable = cfg.symbols.vars[static_cast<std::size_t>(b.begin()->second)].name;
    task.kripke.transitions = ts;
    task.formula = check.property;

    bool trigger_empty = false;
    for (std::size_t li = 0; li < check.labels.size(); ++li) {
      const LabelDecl& l = check.labels[li];
      StateSet& set = task.kripke.prop(l.name);
      VarId bound_var = -1;
      if (auto mv = l.pattern.metavars(); !mv.empty()) bound_var = b.at(*mv.begin());
      for (const CfgNode& n : cfg.nodes) {
        bool hit = match_pattern(l.pattern, cfg, n, b);
        if (!hit && bound_var >= 0) {
          auto it = extra.find(n.id);
          hit = it != extra.end() && it->second.count({l.pattern.kind, bound_var});
        }
        if (hit) set.set(n.id);
      }
      if (li == 0 && !set.any()) {
        trigger_empty = true;
        break;
      }
    }
    if (trigger_empty) {
      ++out.skipped;
      continue;
    }
    out.tasks.push_back(std::move(task));
  }
  return out;
}

}  // namespace ctllint::spec
