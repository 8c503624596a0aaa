#include <set>
#include <tuple>

#include "ctllint/refine.hpp"

namespace ctllint::refine {
namespace {

// sum(c * v) <= k, or < k when strict.
struct Ineq {
  std::map<int, Rational> c;
  Rational k;
  bool strict = false;

  // Scale so the first coefficient has magnitude one; makes duplicates equal.
  void normalize() {
    if (c.empty()) return;
    Rational s = c.begin()->second;
    if (s < 0) s = -s;
    for (auto& [v, x] : c) x /= s;
    k /= s;
  }
  friend bool operator<(const Ineq& a, const Ineq& b) {
    return std::tie(a.c, a.k, a.strict) < std::tie(b.c, b.k, b.strict);
  }
};

// Ground inequality 0 <= k / 0 < k.
bool ground_ok(const Ineq& q) { return q.strict ? q.k > 0 : q.k >= 0; }

void substitute(std::map<int, Rational>& c, Rational& k, int var, const std::map<int, Rational>& def,
                const Rational& def_k) {
  // var = def_k - sum(def)   (def excludes var)
  auto it = c.find(var);
  if (it == c.end()) return;
  Rational a = it->second;
  c.erase(it);
  for (const auto& [v, x] : def) {
    Rational& slot = c[v];
    slot -= a * x;
    if (slot == 0) c.erase(v);
  }
  k -= a * def_k;
}

}  // namespace

Verdict feasible(const std::vector<PathConstraint>& cs, std::size_t budget) {
  std::set<int> vars;
  for (const auto& c : cs)
    for (const auto& [v, x] : c.coeffs) vars.insert(v);
  if (vars.size() * cs.size() > budget) return Verdict::unknown("budget");

  // Equalities first: solve for one variable and substitute everywhere.
  std::vector<PathConstraint> eqs, rest;
  for (const auto& c : cs) (c.rel == Rel::Eq ? eqs : rest).push_back(c);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    auto& e = eqs[i];
    for (auto it = e.coeffs.begin(); it != e.coeffs.end();)
      it = it->second == 0 ? e.coeffs.erase(it) : std::next(it);
    if (e.coeffs.empty()) {
      if (e.k != 0) return Verdict::infeasible();
      continue;
    }
    auto [var, a] = *e.coeffs.begin();
    std::map<int, Rational> def;
    for (const auto& [v, x] : e.coeffs)
      if (v != var) def[v] = x / a;
    Rational def_k = e.k / a;
    for (std::size_t j = i + 1; j < eqs.size(); ++j) substitute(eqs[j].coeffs, eqs[j].k, var, def, def_k);
    for (auto& r : rest) substitute(r.coeffs, r.k, var, def, def_k);
  }

  std::set<Ineq> system;
  for (const auto& r : rest) {
    Ineq q;
    for (const auto& [v, x] : r.coeffs)
      if (x != 0) q.c[v] = x;
    q.k = r.k;
    q.strict = r.rel == Rel::Lt;
    if (q.c.empty()) {
      if (!ground_ok(q)) return Verdict::infeasible();
      continue;
    }
    q.normalize();
    system.insert(std::move(q));
  }

  for (;;) {
    std::map<int, std::pair<int, int>> sides;  // var -> (#positive, #negative)
    for (const auto& q : system)
      for (const auto& [v, x] : q.c) (x > 0 ? sides[v].first : sides[v].second)++;
    if (sides.empty()) return Verdict::feasible();
    if (sides.size() * system.size() > budget) return Verdict::unknown("budget");

    // Cheapest variable to eliminate.
    int var = sides.begin()->first;
    std::optional<long> best;
    for (const auto& [v, pn] : sides) {
      long cost = static_cast<long>(pn.first) * pn.second - pn.first - pn.second;
      if (!best || cost < *best) {
        best = cost;
        var = v;
      }
    }

    std::vector<Ineq> pos, neg;
    std::set<Ineq> next;
    for (const auto& q : system) {
      auto it = q.c.find(var);
      if (it == q.c.end()) next.insert(q);
      else (it->second > 0 ? pos : neg).push_back(q);
    }
    for (const auto& p : pos) {
      Rational a = p.c.at(var);
      for (const auto& n : neg) {
        Rational b = -n.c.at(var);
        Ineq q;
        for (const auto& [v, x] : p.c) q.c[v] += x / a;
        for (const auto& [v, x] : n.c) q.c[v] += x / b;
        for (auto it = q.c.begin(); it != q.c.end();)
          it = it->second == 0 ? q.c.erase(it) : std::next(it);
        q.k = p.k / a + n.k / b;
        q.strict = p.strict || n.strict;
        if (q.c.empty()) {
          if (!ground_ok(q)) return Verdict::infeasible();
          continue;
        }
        q.normalize();
        next.insert(std::move(q));
        if (next.size() * sides.size() > budget) return Verdict::unknown("budget");
      }
    }
    system = std::move(next);
  }
}

}  // namespace ctllint::refine
