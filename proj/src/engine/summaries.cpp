#include <algorithm>
#include <functional>
#include <sstream>

#include "ctllint/engine.hpp"

namespace ctllint::engine {
namespace {

using namespace ast;

template <class F>
void walk_expr(const Expr& e, F&& fn) {
  fn(e);
  if (auto u = e.as<Unary>()) {
    walk_expr(*u->operand, fn);
  } else if (auto b = e.as<Binary>()) {
    walk_expr(*b->lhs, fn);
    walk_expr(*b->rhs, fn);
  } else if (auto ix = e.as<Index>()) {
    walk_expr(*ix->base, fn);
    walk_expr(*ix->index, fn);
  } else if (auto c = e.as<Call>()) {
    for (const auto& a : c->args) walk_expr(*a, fn);
  }
}

template <class F>
void walk_stmt(const Stmt& s, F&& fn) {
  auto ex = [&](const ExprPtr& e) {
    if (e) walk_expr(*e, fn);
  };
  auto st = [&](const StmtPtr& p) {
    if (p) walk_stmt(*p, fn);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarDecl>) ex(n.init);
        else if constexpr (std::is_same_v<T, Assign>) {
          ex(n.target);
          ex(n.value);
        } else if constexpr (std::is_same_v<T, If>) {
          ex(n.cond);
          st(n.then_branch);
          st(n.else_branch);
        } else if constexpr (std::is_same_v<T, While>) {
          ex(n.cond);
          st(n.body);
        } else if constexpr (std::is_same_v<T, For>) {
          st(n.init);
          ex(n.cond);
          st(n.step);
          st(n.body);
        } else if constexpr (std::is_same_v<T, Return>) ex(n.value);
        else if constexpr (std::is_same_v<T, ExprStmt>) ex(n.expr);
        else if constexpr (std::is_same_v<T, Block>) {
          for (const auto& c : n.stmts) st(c);
        }
      },
      s.node);
}

// Expressions evaluated at a CFG node.
std::vector<const Expr*> node_exprs(const CfgNode& n) {
  std::vector<const Expr*> out;
  if (n.kind == NodeKind::Cond) {
    if (n.cond) out.push_back(n.cond);
  } else if (n.kind == NodeKind::Stmt) {
    const Stmt& s = *n.stmt;
    if (auto d = s.as<VarDecl>(); d && d->init) out.push_back(d->init.get());
    if (auto a = s.as<Assign>()) {
      out.push_back(a->target.get());
      out.push_back(a->value.get());
    }
    if (auto e = s.as<ExprStmt>()) out.push_back(e->expr.get());
    if (auto r = s.as<Return>(); r && r->value) out.push_back(r->value.get());
  }
  return out;
}

bool is_builtin(const std::string& name) { return name == "malloc" || name == "free"; }

spec::Pattern pattern(spec::PatternKind k) {
  spec::Pattern p;
  p.kind = k;
  p.args.push_back({spec::PatternArg::MetaVar, "$v", 0});
  return p;
}

// Nodes matching `kind` for variable v, including summary matches.
StateSet label(const Cfg& cfg, spec::PatternKind kind, VarId v, const spec::Augmentation& aug) {
  StateSet s(cfg.size());
  spec::Pattern p = pattern(kind);
  spec::Binding b{{"$v", v}};
  for (const CfgNode& n : cfg.nodes) {
    bool hit = match_pattern(p, cfg, n, b);
    if (!hit) {
      auto it = aug.find(n.id);
      hit = it != aug.end() && it->second.count({kind, v});
    }
    if (hit) s.set(n.id);
  }
  return s;
}

bool holds_at_entry(const Cfg& cfg, const std::shared_ptr<const TransitionSystem>& ts,
                    std::vector<std::pair<std::string, StateSet>> props, const ctl::FormulaPtr& f) {
  KripkeStructure k;
  k.transitions = ts;
  for (auto& [name, set] : props) k.prop(name) = std::move(set);
  return ctl::check(k, f).holds(*f, cfg.entry);
}

const ctl::FormulaPtr& never_freed_formula() {
  static const ctl::FormulaPtr f = ctl::not_(ctl::eu(ctl::not_(ctl::prop("free")), ctl::prop("exit")));
  return f;
}
const ctl::FormulaPtr& unchecked_deref_formula() {
  static const ctl::FormulaPtr f = ctl::eu(ctl::not_(ctl::prop("check")), ctl::prop("deref"));
  return f;
}
const ctl::FormulaPtr& null_reaches_return_formula() {
  static const ctl::FormulaPtr f = ctl::ef(
      ctl::and_(ctl::prop("src"), ctl::ex(ctl::eu(ctl::not_(ctl::prop("asg")), ctl::prop("ret")))));
  return f;
}

}  // namespace

FunctionSummary pessimistic_summary(const FunctionDef& f) {
  FunctionSummary s;
  s.function = f.name;
  s.may_return_null = true;
  return s;
}

std::string canonical(const FunctionSummary& s) {
  std::ostringstream os;
  os << s.function << " null=" << (s.may_return_null ? 1 : 0) << " frees=";
  for (int i : s.always_frees) os << i << ",";
  os << " derefs=";
  for (int i : s.derefs_param_unchecked) os << i << ",";
  return os.str();
}

std::map<std::string, std::set<std::string>> call_graph(const TranslationUnit& tu) {
  std::map<std::string, std::set<std::string>> g;
  for (const auto& f : tu.functions) {
    auto& out = g[f.name];
    walk_stmt(*f.body, [&](const Expr& e) {
      if (auto c = e.as<Call>(); c && !is_builtin(c->callee) && tu.find_function(c->callee)) out.insert(c->callee);
    });
  }
  return g;
}

std::vector<std::vector<std::vector<std::string>>> component_levels(const TranslationUnit& tu) {
  auto g = call_graph(tu);
  // Tarjan; components come out callees first.
  std::map<std::string, int> index, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> comps;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : g[v]) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (const auto& f : tu.functions)
    if (!index.count(f.name)) visit(f.name);

  std::map<std::string, int> level;
  std::vector<std::vector<std::vector<std::string>>> levels;
  for (auto& comp : comps) {
    int lv = 0;
    for (const auto& v : comp)
      for (const auto& w : g[v])
        if (auto it = level.find(w); it != level.end()) lv = std::max(lv, it->second + 1);
    for (const auto& v : comp) level[v] = lv;
    if (levels.size() <= static_cast<std::size_t>(lv)) levels.resize(static_cast<std::size_t>(lv) + 1);
    levels[static_cast<std::size_t>(lv)].push_back(std::move(comp));
  }
  for (auto& l : levels) std::sort(l.begin(), l.end());
  return levels;
}

spec::Augmentation apply_summaries(const Cfg& cfg, const SummaryMap& summaries) {
  spec::Augmentation aug;
  auto var_of = [&](const Expr& e) -> VarId { return e.as<VarRef>() ? cfg.symbols.ref(e) : -1; };
  for (const CfgNode& n : cfg.nodes) {
    if (n.kind == NodeKind::Stmt) {
      const Stmt& s = *n.stmt;
      const Expr* value = nullptr;
      VarId target = -1;
      if (auto a = s.as<Assign>()) {
        value = a->value.get();
        target = var_of(*a->target);
      } else if (auto d = s.as<VarDecl>(); d && d->init) {
        value = d->init.get();
        target = cfg.symbols.decl(s);
      }
      if (value && target >= 0)
        if (auto c = value->as<Call>())
          if (auto it = summaries.find(c->callee); it != summaries.end() && it->second.may_return_null)
            aug[n.id].insert({spec::PatternKind::NullAssign, target});
    }
    for (const Expr* root : node_exprs(n)) {
      walk_expr(*root, [&](const Expr& e) {
        auto c = e.as<Call>();
        if (!c) return;
        auto it = summaries.find(c->callee);
        if (it == summaries.end()) return;
        for (std::size_t i = 0; i < c->args.size(); ++i) {
          VarId v = var_of(*c->args[i]);
          if (v < 0) continue;
          int idx = static_cast<int>(i);
          if (it->second.always_frees.count(idx)) aug[n.id].insert({spec::PatternKind::FreeOf, v});
          if (it->second.derefs_param_unchecked.count(idx)) aug[n.id].insert({spec::PatternKind::Deref, v});
        }
      });
    }
  }
  return aug;
}

FunctionSummary summarize(const Cfg& cfg, const SummaryMap& callees) {
  using spec::PatternKind;
  FunctionSummary s;
  s.function = cfg.function;
  const spec::Augmentation aug = apply_summaries(cfg, callees);
  auto ts = kripke_transitions(cfg);

  StateSet exit_set(cfg.size());
  exit_set.set(cfg.exit);
  for (std::size_t i = 0; i < cfg.symbols.params.size(); ++i) {
    VarId p = cfg.symbols.params[i];
    if (!cfg.symbols.vars[static_cast<std::size_t>(p)].type.is_pointer()) continue;
    StateSet freed = label(cfg, PatternKind::FreeOf, p, aug);
    if (freed.any() && holds_at_entry(cfg, ts, {{"free", freed}, {"exit", exit_set}}, never_freed_formula()))
      s.always_frees.insert(static_cast<int>(i));
    StateSet deref = label(cfg, PatternKind::Deref, p, aug);
    if (deref.any() &&
        holds_at_entry(cfg, ts, {{"check", label(cfg, PatternKind::NullCheck, p, aug)}, {"deref", deref}},
                       unchecked_deref_formula()))
      s.derefs_param_unchecked.insert(static_cast<int>(i));
  }

  for (const CfgNode& n : cfg.nodes) {
    if (n.kind != NodeKind::Stmt || !n.reachable) continue;
    auto r = n.stmt->as<Return>();
    if (!r || !r->value) continue;
    const Expr& e = *r->value;
    if (auto lit = e.as<IntLit>(); lit && lit->value == 0) s.may_return_null = true;
    if (auto c = e.as<Call>()) {
      if (c->callee == "malloc") s.may_return_null = true;
      if (auto it = callees.find(c->callee); it != callees.end() && it->second.may_return_null)
        s.may_return_null = true;
    }
    if (e.as<VarRef>()) {
      VarId v = cfg.symbols.ref(e);
      if (v < 0 || !cfg.symbols.vars[static_cast<std::size_t>(v)].type.is_pointer()) continue;
      StateSet src = label(cfg, PatternKind::NullAssign, v, aug);
      src |= label(cfg, PatternKind::MallocAssign, v, aug);
      if (!src.any()) continue;
      StateSet ret(cfg.size());
      ret.set(n.id);
      if (holds_at_entry(cfg, ts, {{"src", src}, {"asg", label(cfg, PatternKind::AssignTo, v, aug)}, {"ret", ret}},
                         null_reaches_return_formula()))
        s.may_return_null = true;
    }
    if (s.may_return_null) break;
  }
  return s;
}

SummaryMap compute_summaries(const TranslationUnit& tu) {
  SummaryMap out;
  const auto graph = call_graph(tu);
  for (const auto& level : component_levels(tu)) {
    for (const auto& comp : level) {
      const FunctionDef* first = tu.find_function(comp.front());
      bool recursive = comp.size() > 1 || graph.at(first->name).count(first->name);
      for (const auto& name : comp) {
        const FunctionDef* f = tu.find_function(name);
        if (recursive) {
          out[name] = pessimistic_summary(*f);
          continue;
        }
        out[name] = summarize(build_cfg(tu, *f), out);
      }
    }
  }
  return out;
}

}  // namespace ctllint::engine
