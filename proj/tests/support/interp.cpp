#include "interp.hpp"

#include <map>
#include <stdexcept>

namespace ctllint::testing {
namespace {

using namespace ast;

struct Fault {
  std::string kind;
};

struct Cell {
  std::int64_t v = 0;
  bool init = false;
};

struct Block {
  std::vector<Cell> cells;
  bool freed = false;
  bool heap = false;
};

// Pointers are (block, offset) packed as block << 32 | offset; 0 is null.
constexpr std::int64_t pack(std::int64_t block, std::int64_t off) { return (block << 32) | (off & 0xffffffff); }

class Machine {
 public:
  Machine(const Cfg& cfg, std::optional<std::int64_t> fill) : cfg_(cfg), fill_(fill) {
    blocks_.emplace_back();  // block 0 is null
    for (const VarInfo& v : cfg.symbols.vars) {
      Block b;
      b.cells.resize(v.type.is_array() ? static_cast<std::size_t>(std::max<std::int64_t>(v.type.array_size, 1)) : 1);
      if (v.origin == VarOrigin::Global)
        for (auto& c : b.cells) c.init = true;  // globals start at 0
      var_block_.push_back(static_cast<std::int64_t>(blocks_.size()));
      blocks_.push_back(std::move(b));
    }
  }

  void set_var(VarId v, std::int64_t x) {
    Cell& c = blocks_[static_cast<std::size_t>(var_block_[static_cast<std::size_t>(v)])].cells[0];
    c.v = x;
    c.init = true;
  }
  // Fresh initialized heap block for a non-null pointer argument.
  std::int64_t argument_block() {
    Block b;
    b.heap = true;
    b.cells.resize(16);
    for (auto& c : b.cells) c.init = true;
    blocks_.push_back(std::move(b));
    return pack(static_cast<std::int64_t>(blocks_.size()) - 1, 0);
  }
  void reset_var(VarId v) {
    for (auto& c : blocks_[static_cast<std::size_t>(var_block_[static_cast<std::size_t>(v)])].cells) c.init = false;
  }
  std::optional<std::int64_t> peek(VarId v) const {
    const Cell& c = blocks_[static_cast<std::size_t>(var_block_[static_cast<std::size_t>(v)])].cells[0];
    if (!c.init) return std::nullopt;
    return c.v;
  }

  Cell& cell(std::int64_t ptr) {
    if (ptr == 0) throw Fault{"null-deref"};
    std::int64_t block = ptr >> 32, off = ptr & 0xffffffff;
    if (block <= 0 || block >= static_cast<std::int64_t>(blocks_.size())) throw Fault{"wild-pointer"};
    Block& b = blocks_[static_cast<std::size_t>(block)];
    if (b.freed) throw Fault{"use-after-free"};
    if (off >= static_cast<std::int64_t>(b.cells.size())) throw Fault{"out-of-bounds"};
    return b.cells[static_cast<std::size_t>(off)];
  }

  std::int64_t read(Cell& c) {
    if (!c.init) {
      if (!fill_) throw Fault{"uninit-read"};
      c.v = *fill_;
      c.init = true;
    }
    return c.v;
  }

  // Address of an lvalue expression.
  std::int64_t addr(const Expr& e) {
    if (e.as<VarRef>()) {
      VarId v = cfg_.symbols.ref(e);
      return pack(var_block_[static_cast<std::size_t>(v)], 0);
    }
    if (auto u = e.as<Unary>(); u && u->op == UnaryOp::Deref) return eval(*u->operand);
    if (auto ix = e.as<Index>()) {
      std::int64_t base = array_base(*ix->base);
      std::int64_t i = eval(*ix->index);
      if (base == 0) throw Fault{"null-deref"};
      if (i < 0) throw Fault{"out-of-bounds"};
      return base + i;
    }
    throw Fault{"not-an-lvalue"};
  }

  std::int64_t array_base(const Expr& e) {
    if (e.as<VarRef>()) {
      VarId v = cfg_.symbols.ref(e);
      if (cfg_.symbols.vars[static_cast<std::size_t>(v)].type.is_array())
        return pack(var_block_[static_cast<std::size_t>(v)], 0);
    }
    return eval(e);
  }

  template <class Op>
  static std::int64_t checked(Op op, std::int64_t l, std::int64_t r) {
    std::int64_t out = 0;
    if (op(l, r, &out)) throw Fault{"overflow"};
    return out;
  }

  std::int64_t eval(const Expr& e) {
    if (auto lit = e.as<IntLit>()) return lit->value;
    if (e.as<VarRef>()) {
      VarId v = cfg_.symbols.ref(e);
      if (cfg_.symbols.vars[static_cast<std::size_t>(v)].type.is_array())
        return pack(var_block_[static_cast<std::size_t>(v)], 0);
      return read(cell(addr(e)));
    }
    if (auto u = e.as<Unary>()) {
      switch (u->op) {
        case UnaryOp::Neg: {
          std::int64_t x = eval(*u->operand);
          if (x == INT64_MIN) throw Fault{"overflow"};
          return -x;
        }
        case UnaryOp::Not: return eval(*u->operand) == 0;
        case UnaryOp::Deref: return read(cell(eval(*u->operand)));
        case UnaryOp::AddrOf: return addr(*u->operand);
      }
    }
    if (e.as<Index>()) return read(cell(addr(e)));
    if (auto b = e.as<Binary>()) {
      if (b->op == BinaryOp::LogAnd) return eval(*b->lhs) != 0 && eval(*b->rhs) != 0;
      if (b->op == BinaryOp::LogOr) return eval(*b->lhs) != 0 || eval(*b->rhs) != 0;
      std::int64_t l = eval(*b->lhs), r = eval(*b->rhs);
      switch (b->op) {
        case BinaryOp::Add: return checked([](auto x, auto y, auto* o) { return __builtin_add_overflow(x, y, o); }, l, r);
        case BinaryOp::Sub: return checked([](auto x, auto y, auto* o) { return __builtin_sub_overflow(x, y, o); }, l, r);
        case BinaryOp::Mul: return checked([](auto x, auto y, auto* o) { return __builtin_mul_overflow(x, y, o); }, l, r);
        case BinaryOp::Div:
        case BinaryOp::Mod:
          if (r == 0) throw Fault{"div-by-zero"};
          if (l == INT64_MIN && r == -1) throw Fault{"overflow"};
          return b->op == BinaryOp::Div ? l / r : l % r;
        case BinaryOp::Lt: return l < r;
        case BinaryOp::Le: return l <= r;
        case BinaryOp::Gt: return l > r;
        case BinaryOp::Ge: return l >= r;
        case BinaryOp::Eq: return l == r;
        case BinaryOp::Ne: return l != r;
        default: break;
      }
    }
    if (auto c = e.as<Call>()) {
      if (c->callee == "malloc") {
        std::int64_t n = eval(*c->args[0]);
        if (n < 0 || n > 1 << 20) throw Fault{"bad-malloc"};
        Block b;
        b.heap = true;
        b.cells.resize(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)));
        blocks_.push_back(std::move(b));
        return pack(static_cast<std::int64_t>(blocks_.size()) - 1, 0);
      }
      if (c->callee == "free") {
        std::int64_t p = eval(*c->args[0]);
        if (p == 0) return 0;
        std::int64_t block = p >> 32;
        if (block <= 0 || block >= static_cast<std::int64_t>(blocks_.size()) || !blocks_[static_cast<std::size_t>(block)].heap)
          throw Fault{"bad-free"};
        Block& b = blocks_[static_cast<std::size_t>(block)];
        if (b.freed) throw Fault{"double-free"};
        b.freed = true;
        return 0;
      }
      for (const auto& a : c->args) eval(*a);
      return 0;
    }
    throw Fault{"unsupported"};
  }

  void exec(const Stmt& s) {
    if (auto d = s.as<VarDecl>()) {
      VarId v = cfg_.symbols.decl(s);
      reset_var(v);
      if (d->init) set_var(v, eval(*d->init));
    } else if (auto a = s.as<Assign>()) {
      std::int64_t val = eval(*a->value);
      Cell& c = cell(addr(*a->target));
      c.v = val;
      c.init = true;
    } else if (auto e = s.as<ExprStmt>()) {
      eval(*e->expr);
    } else if (auto r = s.as<Return>()) {
      if (r->value) eval(*r->value);
    }
  }

 private:
  const Cfg& cfg_;
  std::optional<std::int64_t> fill_;
  std::vector<Block> blocks_;
  std::vector<std::int64_t> var_block_;
};

}  // namespace

ExecResult execute(const Cfg& cfg, const std::vector<std::int64_t>& args, long max_steps,
                   std::optional<std::int64_t> fill) {
  ExecResult r;
  Machine m(cfg, fill);
  for (std::size_t i = 0; i < cfg.symbols.params.size(); ++i) {
    VarId p = cfg.symbols.params[i];
    bool ptr = cfg.symbols.vars[static_cast<std::size_t>(p)].type.is_pointer();
    std::int64_t a = i < args.size() ? args[i] : 0;
    m.set_var(p, ptr ? (a ? m.argument_block() : 0) : a);
  }
  auto snapshot = [&] {
    std::vector<std::optional<std::int64_t>> s;
    for (VarId v = 0; v < static_cast<VarId>(cfg.symbols.vars.size()); ++v) {
      const auto& t = cfg.symbols.vars[static_cast<std::size_t>(v)].type;
      s.push_back(t.is_int() ? m.peek(v) : std::nullopt);
    }
    return s;
  };
  NodeId n = cfg.entry;
  for (long step = 0;; ++step) {
    if (step >= max_steps) {
      r.stop = Stop::StepLimit;
      return r;
    }
    r.path.push_back(n);
    r.states.push_back(snapshot());
    if (n == cfg.exit) return r;
    const CfgNode& node = cfg.nodes[static_cast<std::size_t>(n)];
    try {
      if (node.kind == NodeKind::Cond) {
        bool t = !node.cond || m.eval(*node.cond) != 0;
        n = cfg.successor(n, t ? EdgeLabel::True : EdgeLabel::False);
        continue;
      }
      if (node.kind == NodeKind::Stmt) m.exec(*node.stmt);
    } catch (const Fault& f) {
      r.stop = Stop::Fault;
      r.fault = f.kind;
      return r;
    }
    auto succ = cfg.successors(n);
    if (succ.empty()) throw std::logic_error("node without successor");
    n = succ.front();
  }
}

}  // namespace ctllint::testing
