#include "ctllint/cfg.hpp"

#include <deque>
#include <sstream>

#include "ctllint/parser.hpp"

namespace ctllint {
namespace {

using namespace ast;

struct Pending {
  NodeId from;
  EdgeLabel label;
};
using Frontier = std::vector<Pending>;

struct LoopContext {
  Frontier breaks;
  Frontier continues;
};

class Builder {
 public:
  explicit Builder(Cfg& cfg) : cfg_(cfg) {}

  void run(const FunctionDef& f) {
    NodeId entry = add_node(NodeKind::Entry, nullptr, nullptr, f.loc, {});
    cfg_.entry = entry;
    Frontier out = stmt(*f.body, {{entry, EdgeLabel::Unconditional}});
    out.insert(out.end(), returns_.begin(), returns_.end());
    cfg_.exit = add_node(NodeKind::Exit, nullptr, nullptr, f.end_loc, out);
  }

 private:
  NodeId add_node(NodeKind kind, const Stmt* s, const Expr* c, const SourceLocation& loc, const Frontier& preds) {
    NodeId id = static_cast<NodeId>(cfg_.nodes.size());
    CfgNode n;
    n.id = id;
    n.kind = kind;
    n.stmt = s;
    n.cond = c;
    n.loc = loc;
    cfg_.nodes.push_back(n);
    cfg_.out_edges.emplace_back();
    cfg_.in_edges.emplace_back();
    connect(preds, id);
    return id;
  }

  void connect(const Frontier& preds, NodeId to) {
    for (const auto& p : preds) {
      int e = static_cast<int>(cfg_.edges.size());
      cfg_.edges.push_back({p.from, to, p.label});
      cfg_.out_edges[static_cast<std::size_t>(p.from)].push_back(e);
      cfg_.in_edges[static_cast<std::size_t>(to)].push_back(e);
    }
  }

  static Frontier concat(Frontier a, const Frontier& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  // True when `e`, after peeling negations, is a short-circuit operator.
  static bool is_short_circuit(const Expr& e) {
    const Expr* cur = &e;
    while (auto u = cur->as<Unary>()) {
      if (u->op != UnaryOp::Not) return false;
      cur = u->operand.get();
    }
    if (auto b = cur->as<Binary>()) return b->op == BinaryOp::LogAnd || b->op == BinaryOp::LogOr;
    return false;
  }

  std::pair<Frontier, Frontier> cond(const Expr& e, const Frontier& in) {
    if (auto b = e.as<Binary>()) {
      if (b->op == BinaryOp::LogAnd) {
        auto [ta, fa] = cond(*b->lhs, in);
        auto [tb, fb] = cond(*b->rhs, ta);
        return {tb, concat(fa, fb)};
      }
      if (b->op == BinaryOp::LogOr) {
        auto [ta, fa] = cond(*b->lhs, in);
        auto [tb, fb] = cond(*b->rhs, fa);
        return {concat(ta, tb), fb};
      }
    }
    if (auto u = e.as<Unary>(); u && u->op == UnaryOp::Not && is_short_circuit(*u->operand)) {
      auto [t, f] = cond(*u->operand, in);
      return {f, t};
    }
    NodeId n = add_node(NodeKind::Cond, nullptr, &e, e.loc, in);
    return {{{n, EdgeLabel::True}}, {{n, EdgeLabel::False}}};
  }

  Frontier simple(const Stmt& s, const Frontier& in) {
    NodeId n = add_node(NodeKind::Stmt, &s, nullptr, s.loc, in);
    return {{n, EdgeLabel::Unconditional}};
  }

  Frontier stmt(const Stmt& s, Frontier in) {
    if (s.as<VarDecl>() || s.as<Assign>() || s.as<ExprStmt>()) return simple(s, in);
    if (auto b = s.as<Block>()) {
      for (const auto& st : b->stmts) in = stmt(*st, std::move(in));
      return in;
    }
    if (auto i = s.as<If>()) {
      auto [t, f] = cond(*i->cond, in);
      Frontier out = stmt(*i->then_branch, t);
      Frontier other = i->else_branch ? stmt(*i->else_branch, f) : f;
      return concat(std::move(out), other);
    }
    if (auto w = s.as<While>()) {
      NodeId head = static_cast<NodeId>(cfg_.nodes.size());
      auto [t, f] = cond(*w->cond, in);
      loops_.emplace_back();
      Frontier body = stmt(*w->body, t);
      LoopContext ctx = std::move(loops_.back());
      loops_.pop_back();
      connect(concat(body, ctx.continues), head);
      return concat(f, ctx.breaks);
    }
    if (auto fr = s.as<For>()) {
      if (fr->init) in = stmt(*fr->init, std::move(in));
      NodeId head = static_cast<NodeId>(cfg_.nodes.size());
      Frontier t, f;
      if (fr->cond) {
        std::tie(t, f) = cond(*fr->cond, in);
      } else {
        // `for (;;)`: no false edge, the loop is left only by break/return.
        NodeId n = add_node(NodeKind::Cond, nullptr, nullptr, s.loc, in);
        t = {{n, EdgeLabel::True}};
      }
      loops_.emplace_back();
      Frontier body = stmt(*fr->body, t);
      LoopContext ctx = std::move(loops_.back());
      loops_.pop_back();
      Frontier latch = concat(body, ctx.continues);
      if (fr->step) latch = stmt(*fr->step, latch);
      connect(latch, head);
      return concat(f, ctx.breaks);
    }
    if (s.as<Return>()) {
      NodeId n = add_node(NodeKind::Stmt, &s, nullptr, s.loc, in);
      returns_.push_back({n, EdgeLabel::Unconditional});
      return {};
    }
    if (s.as<Break>()) {
      NodeId n = add_node(NodeKind::Stmt, &s, nullptr, s.loc, in);
      loops_.back().breaks.push_back({n, EdgeLabel::Unconditional});
      return {};
    }
    if (s.as<Continue>()) {
      NodeId n = add_node(NodeKind::Stmt, &s, nullptr, s.loc, in);
      loops_.back().continues.push_back({n, EdgeLabel::Unconditional});
      return {};
    }
    return in;
  }

  Cfg& cfg_;
  std::vector<LoopContext> loops_;
  Frontier returns_;
};

void mark_reachable(Cfg& cfg) {
  std::vector<bool> seen(cfg.nodes.size(), false);
  std::deque<NodeId> queue{cfg.entry};
  seen[static_cast<std::size_t>(cfg.entry)] = true;
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    for (int e : cfg.out_edges[static_cast<std::size_t>(n)]) {
      NodeId m = cfg.edges[static_cast<std::size_t>(e)].to;
      if (!seen[static_cast<std::size_t>(m)]) {
        seen[static_cast<std::size_t>(m)] = true;
        queue.push_back(m);
      }
    }
  }
  for (auto& node : cfg.nodes) node.reachable = seen[static_cast<std::size_t>(node.id)];
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::vector<NodeId> Cfg::successors(NodeId n) const {
  std::vector<NodeId> out;
  for (int e : out_edges[static_cast<std::size_t>(n)]) out.push_back(edges[static_cast<std::size_t>(e)].to);
  return out;
}

std::vector<NodeId> Cfg::predecessors(NodeId n) const {
  std::vector<NodeId> out;
  for (int e : in_edges[static_cast<std::size_t>(n)]) out.push_back(edges[static_cast<std::size_t>(e)].from);
  return out;
}

NodeId Cfg::successor(NodeId n, EdgeLabel label) const {
  for (int e : out_edges[static_cast<std::size_t>(n)])
    if (edges[static_cast<std::size_t>(e)].label == label) return edges[static_cast<std::size_t>(e)].to;
  return -1;
}

const CfgEdge* Cfg::edge_between(NodeId from, NodeId to) const {
  for (int e : out_edges[static_cast<std::size_t>(from)])
    if (edges[static_cast<std::size_t>(e)].to == to) return &edges[static_cast<std::size_t>(e)];
  return nullptr;
}

Cfg build_cfg(const TranslationUnit& tu, const FunctionDef& f) {
  Cfg cfg;
  cfg.function = f.name;
  cfg.def = &f;
  cfg.symbols = resolve_symbols(tu, f);
  Builder(cfg).run(f);
  mark_reachable(cfg);
  return cfg;
}

std::string describe(const CfgNode& node) {
  switch (node.kind) {
    case NodeKind::Entry: return "entry";
    case NodeKind::Exit: return "exit";
    case NodeKind::Cond: return node.cond ? "if (" + pretty_print(*node.cond) + ")" : "for (;;)";
    case NodeKind::Stmt: break;
  }
  const Stmt& s = *node.stmt;
  if (auto d = s.as<VarDecl>()) {
    std::string t = d->type.is_pointer() ? "int *" : "int ";
    std::string out = t + d->name;
    if (d->type.is_array()) out += "[" + std::to_string(d->type.array_size) + "]";
    if (d->init) out += " = " + pretty_print(*d->init);
    return out;
  }
  if (auto a = s.as<Assign>()) return pretty_print(*a->target) + " = " + pretty_print(*a->value);
  if (auto e = s.as<ExprStmt>()) return pretty_print(*e->expr);
  if (auto r = s.as<Return>()) return r->value ? "return " + pretty_print(*r->value) : "return";
  if (s.as<Break>()) return "break";
  if (s.as<Continue>()) return "continue";
  return "?";
}

std::string to_dot(const Cfg& cfg) {
  std::ostringstream os;
  os << "digraph \"" << escape_dot(cfg.function) << "\" {\n";
  for (const auto& n : cfg.nodes) {
    const char* kind = n.kind == NodeKind::Entry  ? "entry"
                       : n.kind == NodeKind::Exit ? "exit"
                       : n.kind == NodeKind::Cond ? "cond"
                                                  : "stmt";
    os << "  n" << n.id << " [label=\"" << n.id << " " << kind << " " << n.loc.line << ":" << n.loc.column
       << "\\n" << escape_dot(describe(n)) << "\"";
    if (n.kind == NodeKind::Cond) os << ", shape=diamond";
    if (!n.reachable) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : cfg.edges) {
    os << "  n" << e.from << " -> n" << e.to;
    if (e.label == EdgeLabel::True) os << " [label=\"T\"]";
    if (e.label == EdgeLabel::False) os << " [label=\"F\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ctllint
