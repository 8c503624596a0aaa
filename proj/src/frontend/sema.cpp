#include "ctllint/sema.hpp"

#include <map>
#include <set>

namespace ctllint {
namespace {

using namespace ast;

// Shared scope walker. `on_decl` fires for every declaration, `on_ref` for
// every variable reference (with -1 when unresolved), `on_call` for calls.
class ScopeWalker {
 public:
  struct Hooks {
    virtual ~Hooks() = default;
    virtual VarId declare(const std::string& name, const Type& type, const SourceLocation& loc, VarOrigin origin,
                          const Stmt* decl) = 0;
    virtual void duplicate(const std::string& name, const SourceLocation& loc) = 0;
    virtual void reference(const Expr& e, const std::string& name, VarId id) = 0;
    virtual void call(const Expr& e, const std::string& callee) = 0;
  };

  explicit ScopeWalker(Hooks& hooks) : hooks_(hooks) {}

  void push() { scopes_.emplace_back(); }
  void pop() { scopes_.pop_back(); }

  void declare(const std::string& name, const Type& type, const SourceLocation& loc, VarOrigin origin,
               const Stmt* decl) {
    auto& top = scopes_.back();
    if (top.count(name)) {
      hooks_.duplicate(name, loc);
      return;
    }
    top[name] = hooks_.declare(name, type, loc, origin, decl);
  }

  VarId lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return -1;
  }

  void expr(const Expr& e) {
    if (auto v = e.as<VarRef>()) {
      hooks_.reference(e, v->name, lookup(v->name));
    } else if (auto u = e.as<Unary>()) {
      expr(*u->operand);
    } else if (auto b = e.as<Binary>()) {
      expr(*b->lhs);
      expr(*b->rhs);
    } else if (auto ix = e.as<Index>()) {
      expr(*ix->base);
      expr(*ix->index);
    } else if (auto c = e.as<Call>()) {
      hooks_.call(e, c->callee);
      for (const auto& a : c->args) expr(*a);
    }
  }

  void stmt(const Stmt& s) {
    if (auto d = s.as<VarDecl>()) {
      // The initializer sees the enclosing scope, not the new name.
      if (d->init) expr(*d->init);
      declare(d->name, d->type, s.loc, VarOrigin::Local, &s);
    } else if (auto a = s.as<Assign>()) {
      expr(*a->target);
      expr(*a->value);
    } else if (auto i = s.as<If>()) {
      expr(*i->cond);
      scoped(*i->then_branch);
      if (i->else_branch) scoped(*i->else_branch);
    } else if (auto w = s.as<While>()) {
      expr(*w->cond);
      scoped(*w->body);
    } else if (auto f = s.as<For>()) {
      push();
      if (f->init) stmt(*f->init);
      if (f->cond) expr(*f->cond);
      if (f->step) stmt(*f->step);
      scoped(*f->body);
      pop();
    } else if (auto r = s.as<Return>()) {
      if (r->value) expr(*r->value);
    } else if (auto es = s.as<ExprStmt>()) {
      expr(*es->expr);
    } else if (auto b = s.as<Block>()) {
      push();
      for (const auto& st : b->stmts) stmt(*st);
      pop();
    }
  }

  // Function body: parameters and top-level body declarations share a scope.
  void body(const Block& b) {
    for (const auto& st : b.stmts) stmt(*st);
  }

 private:
  void scoped(const Stmt& s) {
    push();
    stmt(s);
    pop();
  }

  Hooks& hooks_;
  std::vector<std::map<std::string, VarId>> scopes_;
};

class WellFormedHooks : public ScopeWalker::Hooks {
 public:
  WellFormedHooks(const std::set<std::string>& functions, std::vector<SemanticError>& errors)
      : functions_(functions), errors_(errors) {}

  VarId declare(const std::string&, const Type&, const SourceLocation&, VarOrigin, const Stmt*) override {
    return next_++;
  }
  void duplicate(const std::string& name, const SourceLocation& loc) override {
    errors_.push_back({loc, "duplicate declaration of '" + name + "'"});
  }
  void reference(const Expr& e, const std::string& name, VarId id) override {
    if (id < 0) errors_.push_back({e.loc, "undeclared identifier '" + name + "'"});
  }
  void call(const Expr& e, const std::string& callee) override {
    if (callee == "malloc" || callee == "free") return;
    if (!functions_.count(callee)) errors_.push_back({e.loc, "call to undeclared function '" + callee + "'"});
  }

 private:
  const std::set<std::string>& functions_;
  std::vector<SemanticError>& errors_;
  VarId next_ = 0;
};

class ResolveHooks : public ScopeWalker::Hooks {
 public:
  explicit ResolveHooks(FunctionSymbols& out) : out_(out) {}

  VarId declare(const std::string& name, const Type& type, const SourceLocation& loc, VarOrigin origin,
                const Stmt* decl) override {
    VarId id = static_cast<VarId>(out_.vars.size());
    out_.vars.push_back({name, type, loc, origin});
    if (decl) out_.decls[decl] = id;
    if (origin == VarOrigin::Param) out_.params.push_back(id);
    return id;
  }
  void duplicate(const std::string&, const SourceLocation&) override {}
  void reference(const Expr& e, const std::string&, VarId id) override {
    if (id >= 0) out_.refs[&e] = id;
  }
  void call(const Expr&, const std::string&) override {}

 private:
  FunctionSymbols& out_;
};

}  // namespace

std::vector<SemanticError> check_well_formed(const TranslationUnit& tu) {
  std::vector<SemanticError> errors;
  std::set<std::string> functions;
  for (const auto& f : tu.functions) {
    if (!functions.insert(f.name).second) errors.push_back({f.loc, "duplicate declaration of '" + f.name + "'"});
  }

  WellFormedHooks hooks(functions, errors);
  ScopeWalker walker(hooks);
  walker.push();
  for (const auto& g : tu.globals) {
    const auto& d = std::get<VarDecl>(g->node);
    if (d.init) walker.expr(*d.init);
    if (functions.count(d.name))
      errors.push_back({g->loc, "duplicate declaration of '" + d.name + "'"});
    else
      walker.declare(d.name, d.type, g->loc, VarOrigin::Global, g.get());
  }
  for (const auto& f : tu.functions) {
    walker.push();
    for (const auto& p : f.params) walker.declare(p.name, p.type, p.loc, VarOrigin::Param, nullptr);
    walker.body(std::get<Block>(f.body->node));
    walker.pop();
  }
  walker.pop();
  return errors;
}

FunctionSymbols resolve_symbols(const TranslationUnit& tu, const FunctionDef& f) {
  FunctionSymbols out;
  ResolveHooks hooks(out);
  ScopeWalker walker(hooks);
  walker.push();
  for (const auto& g : tu.globals) {
    const auto& d = std::get<VarDecl>(g->node);
    walker.declare(d.name, d.type, g->loc, VarOrigin::Global, g.get());
  }
  walker.push();
  for (const auto& p : f.params) walker.declare(p.name, p.type, p.loc, VarOrigin::Param, nullptr);
  walker.body(std::get<Block>(f.body->node));
  walker.pop();
  walker.pop();
  return out;
}

}  // namespace ctllint
