#include <set>
#include <sstream>

#include "ctllint/intervals.hpp"
#include "ctllint/parser.hpp"

namespace ctllint::intervals {
namespace {

using namespace ast;

void walk(const Expr& e, auto&& fn) {
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

std::vector<const Expr*> fragments(const CfgNode& n) {
  std::vector<const Expr*> out;
  if (n.kind == NodeKind::Cond) {
    if (n.cond) out.push_back(n.cond);
  } else if (n.kind == NodeKind::Stmt) {
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
  }
  return out;
}

Interval truth(const Interval& v) {
  if (v.is_bottom()) return v;
  if (v == Interval::constant(0)) return Interval::constant(0);
  if (!v.contains(0)) return Interval::constant(1);
  return {0, 1};
}

Interval logical_not(const Interval& v) {
  Interval t = truth(v);
  if (t.is_bottom() || t == Interval(0, 1)) return t;
  return Interval::constant(1 - t.lo());
}

Interval compare(BinaryOp op, const Interval& a, const Interval& b) {
  if (a.is_bottom() || b.is_bottom()) return Interval::bottom();
  const Interval unknown(0, 1), yes = Interval::constant(1), no = Interval::constant(0);
  switch (op) {
    case BinaryOp::Lt: return a.hi() < b.lo() ? yes : a.lo() >= b.hi() ? no : unknown;
    case BinaryOp::Le: return a.hi() <= b.lo() ? yes : a.lo() > b.hi() ? no : unknown;
    case BinaryOp::Gt: return a.lo() > b.hi() ? yes : a.hi() <= b.lo() ? no : unknown;
    case BinaryOp::Ge: return a.lo() >= b.hi() ? yes : a.hi() < b.lo() ? no : unknown;
    case BinaryOp::Eq:
      if (a.is_constant() && b.is_constant() && a.lo() == b.lo()) return yes;
      return a.meet(b).is_bottom() ? no : unknown;
    case BinaryOp::Ne:
      if (a.is_constant() && b.is_constant() && a.lo() == b.lo()) return no;
      return a.meet(b).is_bottom() ? yes : unknown;
    default: return unknown;
  }
}

BinaryOp negate(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return BinaryOp::Ge;
    case BinaryOp::Le: return BinaryOp::Gt;
    case BinaryOp::Gt: return BinaryOp::Le;
    case BinaryOp::Ge: return BinaryOp::Lt;
    case BinaryOp::Eq: return BinaryOp::Ne;
    case BinaryOp::Ne: return BinaryOp::Eq;
    default: return op;
  }
}

BinaryOp mirror(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return BinaryOp::Gt;
    case BinaryOp::Le: return BinaryOp::Ge;
    case BinaryOp::Gt: return BinaryOp::Lt;
    case BinaryOp::Ge: return BinaryOp::Le;
    default: return op;
  }
}

std::int64_t step(std::int64_t v, int by) {
  if (v == kNegInf || v == kPosInf) return v;
  std::int64_t r = v + by;
  if (r == kNegInf || r == kPosInf) return v;  // would saturate; keeping v is looser
  return r;
}

// Values of x consistent with `x op other` for some other in `r`.
Interval constrain(const Interval& x, BinaryOp op, const Interval& r) {
  if (r.is_bottom()) return Interval::bottom();
  switch (op) {
    case BinaryOp::Lt: return x.meet({kNegInf, step(r.hi(), -1)});
    case BinaryOp::Le: return x.meet({kNegInf, r.hi()});
    case BinaryOp::Gt: return x.meet({step(r.lo(), 1), kPosInf});
    case BinaryOp::Ge: return x.meet({r.lo(), kPosInf});
    case BinaryOp::Eq: return x.meet(r);
    case BinaryOp::Ne: {
      if (!r.is_constant() || x.is_bottom()) return x;
      std::int64_t c = r.lo(), lo = x.lo(), hi = x.hi();
      if (lo == c) lo = step(lo, 1);
      if (hi == c) hi = step(hi, -1);
      if (x.is_constant() && x.lo() == c) return Interval::bottom();
      return {lo, hi};
    }
    default: return x;
  }
}

class Analyzer {
 public:
  explicit Analyzer(const Cfg& cfg) : cfg_(cfg), tracked_(tracked_vars(cfg)) {}

  VarId tracked(const Expr& e) const {
    if (!e.as<VarRef>()) return -1;
    VarId v = cfg_.symbols.ref(e);
    return v >= 0 && tracked_[static_cast<std::size_t>(v)] ? v : -1;
  }

  Interval eval(const Expr& e, const Env& env) const {
    if (env.is_bottom()) return Interval::bottom();
    if (auto lit = e.as<IntLit>()) return Interval::constant(lit->value);
    if (e.as<VarRef>()) {
      VarId v = tracked(e);
      return v >= 0 ? env.get(v) : Interval::top();
    }
    if (auto u = e.as<Unary>()) {
      switch (u->op) {
        case UnaryOp::Neg: return -eval(*u->operand, env);
        case UnaryOp::Not: return logical_not(eval(*u->operand, env));
        default: return Interval::top();
      }
    }
    if (auto b = e.as<Binary>()) {
      Interval l = eval(*b->lhs, env), r = eval(*b->rhs, env);
      switch (b->op) {
        case BinaryOp::Add: return l + r;
        case BinaryOp::Sub: return l - r;
        case BinaryOp::Mul: return l * r;
        case BinaryOp::Div: return divide(l, r);
        case BinaryOp::Mod: return remainder(l, r);
        case BinaryOp::LogAnd: {
          Interval tl = truth(l), tr = truth(r);
          if (tl == Interval::constant(0) || tr == Interval::constant(0)) return Interval::constant(0);
          if (tl == Interval::constant(1) && tr == Interval::constant(1)) return Interval::constant(1);
          return {0, 1};
        }
        case BinaryOp::LogOr: {
          Interval tl = truth(l), tr = truth(r);
          if (tl == Interval::constant(1) || tr == Interval::constant(1)) return Interval::constant(1);
          if (tl == Interval::constant(0) && tr == Interval::constant(0)) return Interval::constant(0);
          return {0, 1};
        }
        default: return compare(b->op, l, r);
      }
    }
    return Interval::top();  // Index (array cells), Call
  }

  Env guard(const Expr& cond, bool polarity, Env env) const {
    if (env.is_bottom()) return env;
    const Expr* e = &cond;
    while (auto u = e->as<Unary>()) {
      if (u->op != UnaryOp::Not) break;
      polarity = !polarity;
      e = u->operand.get();
    }
    if (auto b = e->as<Binary>(); b && is_comparison(b->op)) {
      BinaryOp op = polarity ? b->op : negate(b->op);
      Interval l = eval(*b->lhs, env), r = eval(*b->rhs, env);
      if (VarId x = tracked(*b->lhs); x >= 0) env.set(x, constrain(l, op, r));
      if (VarId y = tracked(*b->rhs); y >= 0) env.set(y, constrain(r, mirror(op), l));
    } else if (VarId x = tracked(*e); x >= 0) {
      env.set(x, constrain(env.get(x), polarity ? BinaryOp::Ne : BinaryOp::Eq, Interval::constant(0)));
    }
    Interval v = truth(eval(*e, env));
    if (v.is_bottom()) return Env(env.size(), true);
    if (v == Interval::constant(polarity ? 0 : 1)) return Env(env.size(), true);
    return env;
  }

  Env transfer(const CfgNode& n, Env env, EdgeLabel label) const {
    if (env.is_bottom()) return env;
    if (n.kind == NodeKind::Cond) {
      if (!n.cond) return label == EdgeLabel::False ? Env(env.size(), true) : env;
      return guard(*n.cond, label != EdgeLabel::False, std::move(env));
    }
    if (n.kind != NodeKind::Stmt) return env;
    const Stmt& s = *n.stmt;
    if (auto d = s.as<VarDecl>()) {
      VarId v = cfg_.symbols.decl(s);
      if (v >= 0 && tracked_[static_cast<std::size_t>(v)])
        env.set(v, d->init ? eval(*d->init, env) : Interval::top());
    } else if (auto a = s.as<Assign>()) {
      if (VarId v = tracked(*a->target); v >= 0) env.set(v, eval(*a->value, env));
    }
    return env;
  }

 private:
  const Cfg& cfg_;
  std::vector<bool> tracked_;
};

struct Order {
  std::vector<int> rank;  // reverse postorder position, -1 when unreachable
  std::vector<bool> head;
};

Order depth_first(const Cfg& cfg) {
  const auto n = static_cast<std::size_t>(cfg.size());
  Order o{std::vector<int>(n, -1), std::vector<bool>(n, false)};
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> post;
  std::vector<std::pair<NodeId, std::size_t>> stack{{cfg.entry, 0}};
  state[static_cast<std::size_t>(cfg.entry)] = 1;
  while (!stack.empty()) {
    auto& [u, i] = stack.back();
    const auto& out = cfg.out_edges[static_cast<std::size_t>(u)];
    if (i < out.size()) {
      NodeId v = cfg.edges[static_cast<std::size_t>(out[i++])].to;
      auto& st = state[static_cast<std::size_t>(v)];
      if (st == 1) o.head[static_cast<std::size_t>(v)] = true;
      if (st == 0) {
        st = 1;
        stack.emplace_back(v, 0);
      }
    } else {
      state[static_cast<std::size_t>(u)] = 2;
      post.push_back(u);
      stack.pop_back();
    }
  }
  int r = 0;
  for (auto it = post.rbegin(); it != post.rend(); ++it) o.rank[static_cast<std::size_t>(*it)] = r++;
  return o;
}

}  // namespace

std::vector<bool> tracked_vars(const Cfg& cfg) {
  std::vector<bool> out(cfg.symbols.vars.size(), false);
  for (std::size_t v = 0; v < out.size(); ++v) {
    const VarInfo& info = cfg.symbols.vars[v];
    out[v] = info.type.is_int() && info.origin != VarOrigin::Global;
  }
  // Address-taken variables may change through pointers.
  for (const CfgNode& n : cfg.nodes)
    for (const Expr* f : fragments(n))
      walk(*f, [&](const Expr& e) {
        auto u = e.as<Unary>();
        if (!u || u->op != UnaryOp::AddrOf) return;
        VarId v = cfg.symbols.ref(*u->operand);
        if (v >= 0) out[static_cast<std::size_t>(v)] = false;
      });
  return out;
}

Interval eval_expr(const Expr& e, const Env& env, const Cfg& cfg) { return Analyzer(cfg).eval(e, env); }

Env transfer(const Cfg& cfg, const CfgNode& node, const Env& env, EdgeLabel label) {
  return Analyzer(cfg).transfer(node, env, label);
}

long iteration_cap(const Cfg& cfg) {
  const long n = cfg.size();
  const long v = static_cast<long>(cfg.symbols.vars.size());
  long heads = 0;
  for (bool h : depth_first(cfg).head) heads += h;
  return 3 * n * (v + 1) + n * (heads + 1) * (2 * v + 5) + n;
}

AbsResult analyze(const Cfg& cfg) {
  Analyzer an(cfg);
  const auto n = static_cast<std::size_t>(cfg.size());
  const std::size_t nv = cfg.symbols.vars.size();
  Order order = depth_first(cfg);

  AbsResult r;
  r.at.assign(n, Env(nv, true));
  r.widening_point = order.head;
  r.cap = iteration_cap(cfg);
  r.at[static_cast<std::size_t>(cfg.entry)] = Env(nv, false);

  std::vector<int> joins(n, 0);
  std::set<std::pair<int, NodeId>> work{{order.rank[static_cast<std::size_t>(cfg.entry)], cfg.entry}};
  while (!work.empty()) {
    if (++r.iterations > r.cap) {
      r.cap_exceeded = true;
      break;
    }
    NodeId u = work.begin()->second;
    work.erase(work.begin());
    for (int ei : cfg.out_edges[static_cast<std::size_t>(u)]) {
      const CfgEdge& e = cfg.edges[static_cast<std::size_t>(ei)];
      Env out = an.transfer(cfg.nodes[static_cast<std::size_t>(u)], r.at[static_cast<std::size_t>(u)], e.label);
      auto& cur = r.at[static_cast<std::size_t>(e.to)];
      if (out.leq(cur)) continue;
      Env next = cur.join(out);
      if (order.head[static_cast<std::size_t>(e.to)] && joins[static_cast<std::size_t>(e.to)]++ >= 3)
        next = cur.widen(next);
      cur = std::move(next);
      work.emplace(order.rank[static_cast<std::size_t>(e.to)], e.to);
    }
  }

  // One descending pass in reverse postorder.
  std::vector<NodeId> rpo(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (order.rank[i] >= 0) rpo[static_cast<std::size_t>(order.rank[i])] = static_cast<NodeId>(i);
  for (NodeId v : rpo) {
    if (v < 0 || v == cfg.entry) continue;
    Env in(nv, true);
    for (int ei : cfg.in_edges[static_cast<std::size_t>(v)]) {
      const CfgEdge& e = cfg.edges[static_cast<std::size_t>(ei)];
      in = in.join(an.transfer(cfg.nodes[static_cast<std::size_t>(e.from)], r.at[static_cast<std::size_t>(e.from)],
                               e.label));
    }
    r.at[static_cast<std::size_t>(v)] = r.at[static_cast<std::size_t>(v)].meet(in);
  }
  return r;
}

std::vector<Diagnostic> interval_checks(const Cfg& cfg, const AbsResult& r) {
  Analyzer an(cfg);
  std::vector<Diagnostic> out;
  auto report = [&](const char* id, bool definite, const SourceLocation& loc, std::string msg) {
    Diagnostic d;
    d.check_id = id;
    d.severity = definite ? Severity::Error : Severity::Warning;
    d.confidence = definite ? Confidence::Confirmed : Confidence::Unconfirmed;
    d.loc = loc;
    d.message = std::move(msg);
    d.function = cfg.function;
    out.push_back(std::move(d));
  };
  for (const CfgNode& n : cfg.nodes) {
    const Env& env = r.at[static_cast<std::size_t>(n.id)];
    if (env.is_bottom()) continue;
    for (const Expr* f : fragments(n)) {
      walk(*f, [&](const Expr& e) {
        if (auto ix = e.as<Index>()) {
          VarId a = ix->base->as<VarRef>() ? cfg.symbols.ref(*ix->base) : -1;
          if (a < 0) return;
          const VarInfo& info = cfg.symbols.vars[static_cast<std::size_t>(a)];
          if (!info.type.is_array()) return;
          Interval i = an.eval(*ix->index, env);
          Interval valid(0, info.type.array_size - 1);
          if (i.is_bottom() || i.subset_of(valid)) return;
          bool definite = i.meet(valid).is_bottom();
          std::string size = std::to_string(info.type.array_size);
          report("buffer-overrun", definite, e.loc,
                 definite ? "index " + to_string(i) + " is out of bounds for '" + info.name + "' of size " + size
                          : "index " + to_string(i) + " may be out of bounds for '" + info.name + "' of size " + size);
        } else if (auto b = e.as<Binary>(); b && (b->op == BinaryOp::Div || b->op == BinaryOp::Mod)) {
          Interval d = an.eval(*b->rhs, env);
          if (d.is_bottom() || !d.contains(0)) return;
          bool definite = d == Interval::constant(0);
          const char* what = b->op == BinaryOp::Div ? "division" : "remainder";
          report("div-by-zero", definite, b->rhs->loc,
                 definite ? std::string(what) + " by zero"
                          : std::string("possible ") + what + " by zero (divisor in " + to_string(d) + ")");
        }
      });
    }
  }
  return out;
}

std::string dump(const Cfg& cfg, const AbsResult& r) {
  std::ostringstream os;
  auto tracked = tracked_vars(cfg);
  os << "function " << cfg.function << " (" << r.iterations << " iterations)\n";
  for (const CfgNode& n : cfg.nodes) {
    os << "  n" << n.id << " " << describe(n) << ":";
    const Env& env = r.at[static_cast<std::size_t>(n.id)];
    if (env.is_bottom()) {
      os << " unreachable\n";
      continue;
    }
    for (std::size_t v = 0; v < tracked.size(); ++v)
      if (tracked[v]) os << " " << cfg.symbols.vars[v].name << "=" << to_string(env.get(static_cast<VarId>(v)));
    os << "\n";
  }
  return os.str();
}

}  // namespace ctllint::intervals
