#include <sstream>

#include "ctllint/refine.hpp"

namespace ctllint::refine {
namespace {

using namespace ast;

struct Linear {
  std::map<int, Rational> coeffs;
  Rational k;

  void add(const Linear& o, const Rational& scale) {
    for (const auto& [v, c] : o.coeffs) {
      Rational& slot = coeffs[v];
      slot += c * scale;
      if (slot == 0) coeffs.erase(v);
    }
    k += o.k * scale;
  }
};

class Encoder {
 public:
  explicit Encoder(const Cfg& cfg) : cfg_(cfg), version_(cfg.symbols.vars.size(), -1) {
    stable_.assign(cfg.symbols.vars.size(), true);
    for (std::size_t v = 0; v < stable_.size(); ++v) {
      const VarInfo& info = cfg.symbols.vars[v];
      // Globals can change in any callee; arrays have no scalar value.
      if (info.origin == VarOrigin::Global || info.type.is_array()) stable_[v] = false;
    }
    for (const CfgNode& n : cfg.nodes) mark_address_taken(n);
  }

  void node(const CfgNode& n, NodeId next) {
    if (n.kind == NodeKind::Cond) {
      guard(n, next);
      return;
    }
    if (n.kind != NodeKind::Stmt) return;
    const Stmt& s = *n.stmt;
    if (auto d = s.as<VarDecl>()) {
      VarId v = cfg_.symbols.decl(s);
      if (v < 0 || !stable_[static_cast<std::size_t>(v)]) return;
      if (!d->init) {
        fresh(v, false);  // indeterminate, but a plain unknown input
        return;
      }
      assign(v, *d->init);
    } else if (auto a = s.as<Assign>()) {
      if (!a->target->as<VarRef>()) return;
      VarId v = cfg_.symbols.ref(*a->target);
      if (v < 0 || !stable_[static_cast<std::size_t>(v)]) return;
      assign(v, *a->value);
    }
  }

  PathEncoding take() { return std::move(out_); }

 private:
  void mark_address_taken(const CfgNode& n) {
    std::vector<const Expr*> todo;
    if (n.kind == NodeKind::Cond && n.cond) todo.push_back(n.cond);
    if (n.kind == NodeKind::Stmt) {
      const Stmt& s = *n.stmt;
      if (auto d = s.as<VarDecl>(); d && d->init) todo.push_back(d->init.get());
      if (auto a = s.as<Assign>()) {
        todo.push_back(a->target.get());
        todo.push_back(a->value.get());
      }
      if (auto e = s.as<ExprStmt>()) todo.push_back(e->expr.get());
      if (auto r = s.as<Return>(); r && r->value) todo.push_back(r->value.get());
    }
    while (!todo.empty()) {
      const Expr* e = todo.back();
      todo.pop_back();
      if (auto u = e->as<Unary>()) {
        if (u->op == UnaryOp::AddrOf) {
          VarId v = cfg_.symbols.ref(*u->operand);
          if (v >= 0) stable_[static_cast<std::size_t>(v)] = false;
        }
        todo.push_back(u->operand.get());
      } else if (auto b = e->as<Binary>()) {
        todo.push_back(b->lhs.get());
        todo.push_back(b->rhs.get());
      } else if (auto ix = e->as<Index>()) {
        todo.push_back(ix->base.get());
        todo.push_back(ix->index.get());
      } else if (auto c = e->as<Call>()) {
        for (const auto& a : c->args) todo.push_back(a.get());
      }
    }
  }

  int fresh(VarId v, bool havoc) {
    int idx = static_cast<int>(out_.names.size());
    int ver = ++version_[static_cast<std::size_t>(v)];
    out_.names.push_back(cfg_.symbols.vars[static_cast<std::size_t>(v)].name + "_" + std::to_string(ver));
    out_.havoc.push_back(havoc);
    current_[v] = idx;
    return idx;
  }

  int current(VarId v) {
    if (!stable_[static_cast<std::size_t>(v)]) return fresh(v, true);  // every read may differ
    auto it = current_.find(v);
    if (it != current_.end()) return it->second;
    return fresh(v, false);  // initial value
  }

  std::optional<Linear> linear(const Expr& e) {
    if (auto lit = e.as<IntLit>()) return Linear{{}, Rational(lit->value)};
    if (e.as<VarRef>()) {
      VarId v = cfg_.symbols.ref(e);
      if (v < 0 || cfg_.symbols.vars[static_cast<std::size_t>(v)].type.is_array()) return std::nullopt;
      return Linear{{{current(v), Rational(1)}}, Rational(0)};
    }
    if (auto u = e.as<Unary>(); u && u->op == UnaryOp::Neg) {
      auto x = linear(*u->operand);
      if (!x) return std::nullopt;
      Linear out;
      out.add(*x, -1);
      return out;
    }
    auto b = e.as<Binary>();
    if (!b) return std::nullopt;
    auto l = linear(*b->lhs);
    auto r = linear(*b->rhs);
    if (!l || !r) return std::nullopt;
    switch (b->op) {
      case BinaryOp::Add: l->add(*r, 1); return l;
      case BinaryOp::Sub: l->add(*r, -1); return l;
      case BinaryOp::Mul: {
        if (l->coeffs.empty()) std::swap(l, r);
        if (!r->coeffs.empty()) return std::nullopt;
        Linear out;
        out.add(*l, r->k);
        return out;
      }
      case BinaryOp::Div:
      case BinaryOp::Mod: {
        if (!l->coeffs.empty() || !r->coeffs.empty() || r->k == 0) return std::nullopt;
        // Both constant: C truncating semantics on integers.
        auto a = static_cast<long long>(boost::multiprecision::numerator(l->k));
        auto c = static_cast<long long>(boost::multiprecision::numerator(r->k));
        return Linear{{}, Rational(b->op == BinaryOp::Div ? a / c : a % c)};
      }
      default: return std::nullopt;
    }
  }

  void assign(VarId v, const Expr& value) {
    if (auto c = value.as<Call>(); c && c->callee == "malloc") {
      fresh(v, false);  // null or not: an input, not lost information
      return;
    }
    auto rhs = linear(value);
    if (!rhs) {
      fresh(v, true);
      return;
    }
    int x = fresh(v, false);
    PathConstraint c;
    c.coeffs[x] = 1;
    for (const auto& [var, coef] : rhs->coeffs) {
      Rational& slot = c.coeffs[var];
      slot -= coef;
      if (slot == 0) c.coeffs.erase(var);
    }
    c.rel = Rel::Eq;
    c.k = rhs->k;
    out_.constraints.push_back(std::move(c));
  }

  static PathConstraint make(Linear lhs, Rel rel) {  // lhs rel 0
    PathConstraint c;
    c.coeffs = std::move(lhs.coeffs);
    c.rel = rel;
    c.k = -lhs.k;
    return c;
  }
  void emit(Linear lhs, Rel rel) { out_.constraints.push_back(make(std::move(lhs), rel)); }
  void diseq(Linear lhs) { out_.disequalities.push_back(make(std::move(lhs), Rel::Eq)); }

  void guard(const CfgNode& n, NodeId next) {
    if (!n.cond || next < 0) return;
    bool t = false, f = false;
    for (int ei : cfg_.out_edges[static_cast<std::size_t>(n.id)]) {
      const CfgEdge& e = cfg_.edges[static_cast<std::size_t>(ei)];
      if (e.to != next) continue;
      t = t || e.label == EdgeLabel::True;
      f = f || e.label == EdgeLabel::False;
    }
    if (t == f) return;  // both branches lead to the same node
    bool polarity = t;
    const Expr* e = n.cond;
    while (auto u = e->as<Unary>()) {
      if (u->op != UnaryOp::Not) break;
      polarity = !polarity;
      e = u->operand.get();
    }
    auto b = e->as<Binary>();
    if (b && is_comparison(b->op)) {
      auto l = linear(*b->lhs);
      auto r = linear(*b->rhs);
      if (!l || !r) {
        ++out_.dropped_guards;
        return;
      }
      BinaryOp op = b->op;
      if (!polarity) {
        switch (op) {
          case BinaryOp::Lt: op = BinaryOp::Ge; break;
          case BinaryOp::Le: op = BinaryOp::Gt; break;
          case BinaryOp::Gt: op = BinaryOp::Le; break;
          case BinaryOp::Ge: op = BinaryOp::Lt; break;
          case BinaryOp::Eq: op = BinaryOp::Ne; break;
          default: op = BinaryOp::Eq; break;
        }
      }
      Linear d = *l;  // l - r
      d.add(*r, -1);
      Linear nd;  // r - l
      nd.add(d, -1);
      switch (op) {
        case BinaryOp::Lt: emit(d, Rel::Lt); break;
        case BinaryOp::Le: emit(d, Rel::Le); break;
        case BinaryOp::Gt: emit(nd, Rel::Lt); break;
        case BinaryOp::Ge: emit(nd, Rel::Le); break;
        case BinaryOp::Eq: emit(d, Rel::Eq); break;
        default: diseq(d); break;
      }
      return;
    }
    auto x = linear(*e);
    if (!x) {
      ++out_.dropped_guards;
      return;
    }
    if (polarity)
      diseq(*x);
    else
      emit(*x, Rel::Eq);
  }

  const Cfg& cfg_;
  std::vector<int> version_;
  std::vector<bool> stable_;
  std::map<VarId, int> current_;
  PathEncoding out_;
};

}  // namespace

std::string to_string(const PathConstraint& c, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, coef] : c.coeffs) {
    std::string name = v < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(v)] : "v" + std::to_string(v);
    if (!first) os << (coef < 0 ? " - " : " + ");
    else if (coef < 0) os << "-";
    Rational a = coef < 0 ? Rational(-coef) : coef;
    if (a != 1) os << a << "*";
    os << name;
    first = false;
  }
  if (first) os << "0";
  os << (c.rel == Rel::Eq ? " = " : c.rel == Rel::Le ? " <= " : " < ") << c.k;
  return os.str();
}

std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::Unknown: return "unknown(" + v.reason + ")";
  }
  return "?";
}

PathEncoding encode_path(const Cfg& cfg, const std::vector<NodeId>& nodes) {
  Encoder enc(cfg);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    NodeId next = i + 1 < nodes.size() ? nodes[i + 1] : -1;
    const CfgNode& n = cfg.nodes[static_cast<std::size_t>(nodes[i])];
    if (n.kind == NodeKind::Cond && next < 0) continue;  // last node: branch not taken yet
    enc.node(n, next);
  }
  return enc.take();
}

std::vector<NodeId> stem(const ctl::WitnessTrace& trace) {
  if (!trace.is_lasso()) return trace.states;
  return {trace.states.begin(), trace.states.begin() + trace.cycle_start + 1};
}

std::vector<PathConstraint> path_constraints(const ctl::WitnessTrace& trace, const Cfg& cfg) {
  return encode_path(cfg, stem(trace)).constraints;
}

Verdict feasible(const PathEncoding& enc, std::size_t budget) {
  const std::size_t m = enc.disequalities.size();
  if (m > kMaxDisequalities) return Verdict::unknown("budget");
  // Over integers, e != k splits into e <= k - 1 or e >= k + 1.
  bool unknown = false;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<PathConstraint> cs = enc.constraints;
    for (std::size_t i = 0; i < m; ++i) {
      PathConstraint c = enc.disequalities[i];
      c.rel = Rel::Le;
      if (mask >> i & 1) {
        for (auto& [var, coef] : c.coeffs) coef = -coef;
        c.k = -c.k - 1;
      } else {
        c.k -= 1;
      }
      cs.push_back(std::move(c));
    }
    Verdict v = feasible(cs, budget);
    if (v.kind == Verdict::Feasible) return v;
    unknown = unknown || v.kind == Verdict::Unknown;
  }
  return unknown ? Verdict::unknown("budget") : Verdict::infeasible();
}

Verdict check_trace(const Cfg& cfg, const ctl::WitnessTrace& trace, std::size_t budget) {
  PathEncoding enc = encode_path(cfg, stem(trace));
  Verdict v = feasible(enc, budget);
  if (v.kind != Verdict::Feasible) return v;
  if (enc.dropped_guards > 0) return Verdict::unknown("nonlinear-havoc");
  for (const auto* list : {&enc.constraints, &enc.disequalities})
    for (const auto& c : *list)
      for (const auto& [var, coef] : c.coeffs)
        if (enc.havoc[static_cast<std::size_t>(var)]) return Verdict::unknown("nonlinear-havoc");
  return v;
}

}  // namespace ctllint::refine
