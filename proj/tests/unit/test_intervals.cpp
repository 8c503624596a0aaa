#include <doctest.h>

#include <random>

#include "ctllint/intervals.hpp"
#include "helpers.hpp"
#include "interp.hpp"
#include "program_gen.hpp"

using namespace ctllint;
using namespace ctllint::intervals;
using testing::compile;
using testing::find_node;

namespace {

VarId var(const Cfg& g, const std::string& name) {
  for (std::size_t i = 0; i < g.symbols.vars.size(); ++i)
    if (g.symbols.vars[i].name == name) return static_cast<VarId>(i);
  FAIL("no variable " << name);
  return -1;
}

Env top_env(const Cfg& g) { return Env(g.symbols.vars.size(), false); }

std::vector<Diagnostic> run_checks(const std::string& src) {
  auto p = compile(src);
  return interval_checks(p.only(), analyze(p.only()));
}

Interval random_interval(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 9), val(-20, 20);
  switch (pick(rng)) {
    case 0: return Interval::bottom();
    case 1: return Interval::top();
    case 2: return {kNegInf, val(rng)};
    case 3: return {val(rng), kPosInf};
    default: {
      auto a = val(rng), b = val(rng);
      return {std::min(a, b), std::max(a, b)};
    }
  }
}

}  // namespace

TEST_CASE("arithmetic") {
  CHECK(Interval(1, 3) + Interval::constant(10) == Interval(11, 13));
  CHECK(Interval(-2, 3) * Interval(4, 5) == Interval(-10, 15));
  CHECK(Interval(1, 3) - Interval(0, 5) == Interval(-4, 3));
  CHECK(-Interval(1, 3) == Interval(-3, -1));
  CHECK(divide(Interval(10, 20), Interval(-1, 1)).is_top());
  CHECK(divide(Interval(10, 20), Interval(2, 5)) == Interval(2, 10));
  CHECK(divide(Interval(-7, 7), Interval(2, 2)) == Interval(-3, 3));
  CHECK((Interval(0, kPosInf) + Interval(1, 1)) == Interval(1, kPosInf));
  CHECK((Interval::bottom() + Interval(1, 1)).is_bottom());
  CHECK(Interval(5, 1).is_bottom());
  CHECK(Interval(0, 3).widen(Interval(0, 4)) == Interval(0, kPosInf));
  CHECK(Interval(0, 3).widen(Interval(-1, 3)) == Interval(kNegInf, 3));
  CHECK(Interval(0, 3).widen(Interval(1, 2)) == Interval(0, 3));
  CHECK(to_string(Interval(kNegInf, 9)) == "[-inf,9]");
}

TEST_CASE("expression evaluation") {
  auto p = compile("int f(int a, int b) { int x = 5; x = (a < b) + 5; return x; }");
  const Cfg& g = p.only();
  const auto* decl = g.nodes[find_node(g, "int x = 5")].stmt->as<ast::VarDecl>();
  CHECK(eval_expr(*decl->init, top_env(g), g) == Interval::constant(5));
  const auto* as = g.nodes[find_node(g, "x = ((a < b) + 5)")].stmt->as<ast::Assign>();
  CHECK(eval_expr(*as->value, top_env(g), g) == Interval(5, 6));
}

TEST_CASE("transfer") {
  auto p = compile("int f(int x) { x = 5; if (x < 10) x = 1; return x; }");
  const Cfg& g = p.only();
  VarId x = var(g, "x");
  SUBCASE("assignment") {
    auto out = transfer(g, g.nodes[find_node(g, "x = 5")], top_env(g), EdgeLabel::Unconditional);
    CHECK(out.get(x) == Interval::constant(5));
  }
  const auto& cond = g.nodes[find_node(g, "if ((x < 10))")];
  SUBCASE("guard on top") {
    CHECK(transfer(g, cond, top_env(g), EdgeLabel::True).get(x) == Interval(kNegInf, 9));
    CHECK(transfer(g, cond, top_env(g), EdgeLabel::False).get(x) == Interval(10, kPosInf));
  }
  SUBCASE("empty meet") {
    Env e = top_env(g);
    e.set(x, Interval(20, 30));
    CHECK(transfer(g, cond, e, EdgeLabel::True).is_bottom());
    CHECK(transfer(g, cond, e, EdgeLabel::False).get(x) == Interval(20, 30));
  }
  SUBCASE("bottom propagates") {
    CHECK(transfer(g, cond, Env(g.symbols.vars.size(), true), EdgeLabel::True).is_bottom());
  }
}

TEST_CASE("analysis") {
  SUBCASE("loop exit") {
    auto p = compile("int f() { int i; i = 0; while (i < 10) i = i + 1; return i; }");
    const Cfg& g = p.only();
    auto r = analyze(g);
    CHECK(r.at[find_node(g, "return i")].get(var(g, "i")) == Interval::constant(10));
    CHECK(r.at[find_node(g, "i = (i + 1)")].get(var(g, "i")) == Interval(0, 9));
    CHECK_FALSE(r.cap_exceeded);
  }
  SUBCASE("straight line") {
    auto p = compile("void f() { int x; int y; x = 1; y = x + 2; }");
    const Cfg& g = p.only();
    auto r = analyze(g);
    CHECK(r.at[g.exit].get(var(g, "x")) == Interval::constant(1));
    CHECK(r.at[g.exit].get(var(g, "y")) == Interval::constant(3));
  }
  SUBCASE("infinite loop") {
    auto p = compile("void f() { while (1) { } }");
    const Cfg& g = p.only();
    CHECK(analyze(g).at[g.exit].is_bottom());
  }
  SUBCASE("globals and address-taken variables stay top") {
    auto p = compile("int g; void f() { int a; int* q; g = 1; a = 2; q = &a; *q = 7; }");
    const Cfg& g = p.only();
    auto t = tracked_vars(g);
    CHECK_FALSE(t[var(g, "g")]);
    CHECK_FALSE(t[var(g, "a")]);
    CHECK(analyze(g).at[g.exit].get(var(g, "a")).is_top());
  }
}

TEST_CASE("interval checks") {
  SUBCASE("constant overrun") {
    auto ds = run_checks("void f() { int a[10]; a[12] = 0; }");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].check_id == "buffer-overrun");
    CHECK(ds[0].severity == Severity::Error);
  }
  SUBCASE("in-bounds loop") {
    CHECK(run_checks("void f() { int a[10]; int i; for (i = 0; i < 10; i = i + 1) a[i] = 0; }").empty());
  }
  SUBCASE("possible overrun") {
    auto ds = run_checks("void f(int n) { int a[10]; if (n < 11) { if (n >= 0) a[n] = 0; } }");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].severity == Severity::Warning);
  }
  SUBCASE("division by zero") {
    auto ds = run_checks("int f(int x) { return x / 0; }");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].check_id == "div-by-zero");
    CHECK(ds[0].severity == Severity::Error);
    auto w = run_checks("int f(int x, int y) { return x % y; }");
    REQUIRE(w.size() == 1);
    CHECK(w[0].severity == Severity::Warning);
    CHECK(run_checks("int f(int x, int y) { if (y > 0) return x / y; return 0; }").empty());
  }
  SUBCASE("unreachable nodes are quiet") {
    CHECK(run_checks("void f() { int a[2]; while (1) { } a[5] = 1; }").empty());
  }
}

TEST_CASE("lattice laws") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    auto a = random_interval(rng), b = random_interval(rng), c = random_interval(rng);
    CHECK(a.join(b) == b.join(a));
    CHECK(a.meet(b) == b.meet(a));
    CHECK(a.join(b).join(c) == a.join(b.join(c)));
    CHECK(a.meet(a) == a);
    CHECK(a.subset_of(a.join(b)));
    CHECK(a.meet(b).subset_of(a));
    CHECK(a.join(b).subset_of(a.widen(b)));
    CHECK(Interval::bottom().subset_of(a));
    CHECK(a.subset_of(Interval::top()));
    // soundness of + and * on members
    if (!a.is_bottom() && !b.is_bottom() && a.is_constant() && b.is_constant()) {
      CHECK((a + b).contains(a.lo() + b.lo()));
      CHECK((a * b).contains(a.lo() * b.lo()));
    }
  }
}

TEST_CASE("observed values lie inside computed intervals") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 80; ++i) {
    testing::GenOptions o;
    o.functions = 1;
    std::string src = testing::generate_program(rng, o);
    auto p = compile(src);
    const Cfg& g = p.only();
    auto r = analyze(g);
    CHECK_FALSE(r.cap_exceeded);
    std::vector<std::int64_t> args;
    for (std::size_t a = 0; a < g.symbols.params.size(); ++a) args.push_back(static_cast<std::int64_t>(rng() % 41) - 20);
    auto run = testing::execute(g, args, 200000, 3);
    auto bad = testing::interval_violations(g, r, run);
    CAPTURE(src);
    CHECK(bad.empty());
  }
}
