// Witness extraction as shortest paths in the product of the Kripke structure
// with a small path automaton compiled from the existential skeleton of the
// formula. Subformulas off that skeleton are discharged by SAT membership.

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "ctllint/ctl.hpp"

namespace ctllint::ctl {
namespace {

bool path_like(const Formula& f) {
  switch (f.op) {
    case Op::EX:
    case Op::EF:
    case Op::EU:
    case Op::EG:
      return true;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return path_like(*f.lhs) || path_like(*f.rhs);
    default:
      return false;
  }
}

// SAT lookup with a local overlay for sets the caller's SatSets lacks.
class SatLookup {
 public:
  SatLookup(const KripkeStructure& k, const SatSets& base) : k_(k), base_(base) {}

  const StateSet& operator()(const FormulaPtr& f) {
    if (const StateSet* s = base_.find(*f)) return *s;
    std::string fk = key(*f);
    if (const StateSet* s = extra_.find_key(fk)) return *s;
    SatSets fresh = check(k_, f);
    extra_.put(fk, fresh.at(*f));
    return *extra_.find_key(fk);
  }

 private:
  const KripkeStructure& k_;
  const SatSets& base_;
  SatSets extra_;
};

struct Loc {
  enum Kind { Test, Step, Choice, Accept, Lasso } kind = Accept;
  const StateSet* set = nullptr;  // Test, Lasso
  int next = -1;                  // Test, Step, Choice
  int alt = -1;                   // Choice
};

class Automaton {
 public:
  Automaton(const KripkeStructure& k, SatLookup& sat) : k_(k), sat_(sat) {}

  int compile(const FormulaPtr& f) {
    if (!path_like(*f)) return test(&sat_(f), accept());
    switch (f->op) {
      case Op::EX: {
        int body = compile(f->lhs);
        return test(&sat_(f), add({Loc::Step, nullptr, body, -1}));
      }
      case Op::EF:
      case Op::EU: {
        FormulaPtr g = f->op == Op::EF ? tt() : f->lhs;
        const FormulaPtr& h = f->op == Op::EF ? f->lhs : f->rhs;
        int head = add({Loc::Test, &sat_(f), -1, -1});
        int done = compile(h);
        int step = add({Loc::Step, nullptr, head, -1});
        int stay = test(&sat_(g), step);
        int choice = add({Loc::Choice, nullptr, done, stay});
        locs_[static_cast<std::size_t>(head)].next = choice;
        return head;
      }
      case Op::EG: return add({Loc::Lasso, &sat_(f), -1, -1});
      case Op::And: {
        // Demonstrate the rightmost path-like conjunct; the other one holds
        // here because f does.
        const FormulaPtr& p = path_like(*f->rhs) ? f->rhs : f->lhs;
        return test(&sat_(f), compile(p));
      }
      case Op::Or: {
        int a = compile(f->lhs);
        int b = compile(f->rhs);
        return test(&sat_(f), add({Loc::Choice, nullptr, a, b}));
      }
      case Op::Implies: {
        int a = compile(not_(f->lhs));
        int b = compile(f->rhs);
        return test(&sat_(f), add({Loc::Choice, nullptr, a, b}));
      }
      default: return test(&sat_(f), accept());
    }
  }

  const std::vector<Loc>& locs() const { return locs_; }

 private:
  int add(Loc l) {
    locs_.push_back(l);
    return static_cast<int>(locs_.size()) - 1;
  }
  int test(const StateSet* s, int next) { return add({Loc::Test, s, next, -1}); }
  int accept() {
    if (accept_ < 0) accept_ = add({Loc::Accept, nullptr, -1, -1});
    return accept_;
  }

  const KripkeStructure& k_;
  SatLookup& sat_;
  std::vector<Loc> locs_;
  int accept_ = -1;
};

// Shortest lasso (stem + cycle) from a state, staying inside a state set.
class LassoFinder {
 public:
  LassoFinder(const TransitionSystem& ts, const StateSet& inside) : ts_(ts), inside_(inside) {}

  // Total edge count of the shortest lasso from s, or -1.
  int length(int s) {
    auto it = cache_.find(s);
    if (it == cache_.end()) it = cache_.emplace(s, build(s)).first;
    return it->second ? static_cast<int>(it->second->states.size()) : -1;
  }

  // States after s (s excluded) and cycle start relative to a trace whose
  // first element is s.
  const WitnessTrace& trace(int s) {
    length(s);
    return *cache_.at(s);
  }

 private:
  std::vector<int> bfs(int from, std::vector<int>& parent) const {
    const auto n = static_cast<std::size_t>(ts_.size());
    std::vector<int> dist(n, -1);
    parent.assign(n, -1);
    std::deque<int> q{from};
    dist[static_cast<std::size_t>(from)] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : ts_.successors(u)) {
        if (!inside_.test(v) || dist[static_cast<std::size_t>(v)] >= 0) continue;
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        parent[static_cast<std::size_t>(v)] = u;
        q.push_back(v);
      }
    }
    return dist;
  }

  // Shortest cycle through t inside the set, as the list of states after t
  // back to (excluding) t; empty optional when none.
  std::optional<std::vector<int>> cycle(int t) const {
    std::vector<int> best;
    bool found = false;
    for (int u : ts_.successors(t)) {
      if (!inside_.test(u)) continue;
      if (u == t) return std::vector<int>{};
      std::vector<int> parent;
      auto dist = bfs(u, parent);
      if (dist[static_cast<std::size_t>(t)] < 0) continue;
      std::vector<int> path;
      for (int x = t; x != u; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
      path.push_back(u);
      std::reverse(path.begin(), path.end());  // u ... t
      path.pop_back();                         // drop t
      if (!found || path.size() < best.size()) {
        best = path;
        found = true;
      }
    }
    if (!found) return std::nullopt;
    return best;
  }

  std::optional<WitnessTrace> build(int s) const {
    if (!inside_.test(s)) return std::nullopt;
    std::vector<int> parent;
    auto dist = bfs(s, parent);
    std::vector<int> order;
    for (int t = 0; t < ts_.size(); ++t)
      if (dist[static_cast<std::size_t>(t)] >= 0) order.push_back(t);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)]; });
    std::optional<WitnessTrace> best;
    int best_len = std::numeric_limits<int>::max();
    for (int t : order) {
      if (dist[static_cast<std::size_t>(t)] >= best_len) break;
      auto cyc = cycle(t);
      if (!cyc) continue;
      int len = dist[static_cast<std::size_t>(t)] + static_cast<int>(cyc->size()) + 1;
      if (len >= best_len) continue;
      std::vector<int> stem;
      for (int x = t; x != s; x = parent[static_cast<std::size_t>(x)]) stem.push_back(x);
      std::reverse(stem.begin(), stem.end());  // states after s up to t
      WitnessTrace w;
      w.states = stem;
      // Cycle start index relative to a trace [s, stem..., cycle...].
      w.cycle_start = static_cast<int>(stem.size());
      w.states.insert(w.states.end(), cyc->begin(), cyc->end());
      best = w;
      best_len = len;
    }
    return best;
  }

  const TransitionSystem& ts_;
  const StateSet& inside_;
  std::map<int, std::optional<WitnessTrace>> cache_;
};

// Product graph search: node = state * |locs| + loc, plus one sink.
class ProductSearch {
 public:
  ProductSearch(const KripkeStructure& k, const Automaton& a) : ts_(*k.transitions), locs_(a.locs()) {
    nloc_ = static_cast<int>(locs_.size());
    sink_ = ts_.size() * nloc_;
  }

  struct Edge {
    int to;
    int weight;
  };

  int sink() const { return sink_; }
  int node(int state, int loc) const { return state * nloc_ + loc; }
  int state_of(int node) const { return node / nloc_; }

  std::vector<Edge> edges(int u) {
    std::vector<Edge> out;
    if (u == sink_) return out;
    int s = u / nloc_;
    const Loc& l = locs_[static_cast<std::size_t>(u % nloc_)];
    switch (l.kind) {
      case Loc::Test:
        if (l.set->test(s)) out.push_back({node(s, l.next), 0});
        break;
      case Loc::Choice:
        out.push_back({node(s, l.next), 0});
        out.push_back({node(s, l.alt), 0});
        break;
      case Loc::Step:
        for (int t : ts_.successors(s)) out.push_back({node(t, l.next), 1});
        break;
      case Loc::Accept: out.push_back({sink_, 0}); break;
      case Loc::Lasso: {
        int len = lasso(l, s);
        if (len >= 0) out.push_back({sink_, len});
        break;
      }
    }
    return out;
  }

  int lasso(const Loc& l, int s) {
    auto it = lassos_.find(l.set);
    if (it == lassos_.end()) it = lassos_.emplace(l.set, LassoFinder(ts_, *l.set)).first;
    return it->second.length(s);
  }

  const WitnessTrace& lasso_trace(const Loc& l, int s) {
    lasso(l, s);
    return lassos_.at(l.set).trace(s);
  }

  const Loc& loc_of(int node) const { return locs_[static_cast<std::size_t>(node % nloc_)]; }

  struct Path {
    std::vector<int> nodes;
    int cost = 0;
  };

  std::optional<Path> shortest(int source, const std::set<int>& banned_nodes,
                               const std::set<std::pair<int, int>>& banned_edges) {
    const auto total = static_cast<std::size_t>(sink_) + 1;
    std::vector<int> dist(total, std::numeric_limits<int>::max());
    std::vector<int> parent(total, -1);
    using Item = std::tuple<int, long, int>;  // dist, sequence, node
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    long seq = 0;
    dist[static_cast<std::size_t>(source)] = 0;
    pq.emplace(0, seq++, source);
    std::vector<bool> done(total, false);
    while (!pq.empty()) {
      auto [d, sq, u] = pq.top();
      pq.pop();
      if (done[static_cast<std::size_t>(u)]) continue;
      done[static_cast<std::size_t>(u)] = true;
      if (u == sink_) break;
      for (const Edge& e : edges(u)) {
        if (banned_nodes.count(e.to) || banned_edges.count({u, e.to})) continue;
        int nd = d + e.weight;
        if (nd < dist[static_cast<std::size_t>(e.to)]) {
          dist[static_cast<std::size_t>(e.to)] = nd;
          parent[static_cast<std::size_t>(e.to)] = u;
          pq.emplace(nd, seq++, e.to);
        }
      }
    }
    if (!done[static_cast<std::size_t>(sink_)]) return std::nullopt;
    Path p;
    p.cost = dist[static_cast<std::size_t>(sink_)];
    for (int x = sink_; x != -1; x = parent[static_cast<std::size_t>(x)]) p.nodes.push_back(x);
    std::reverse(p.nodes.begin(), p.nodes.end());
    return p;
  }

  int edge_weight(int u, int v) {
    for (const Edge& e : edges(u))
      if (e.to == v) return e.weight;
    return 0;
  }

  WitnessTrace project(const Path& p) {
    WitnessTrace w;
    w.states.push_back(state_of(p.nodes.front()));
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      int s = state_of(p.nodes[i]);
      if (loc_of(p.nodes[i - 1]).kind == Loc::Step) w.states.push_back(s);
    }
    // Last real node before the sink decides how the path ends.
    int last = p.nodes[p.nodes.size() - 2];
    const Loc& l = loc_of(last);
    if (l.kind == Loc::Lasso) {
      const WitnessTrace& tail = lasso_trace(l, state_of(last));
      int base = static_cast<int>(w.states.size()) - 1;
      w.states.insert(w.states.end(), tail.states.begin(), tail.states.end());
      w.cycle_start = base + tail.cycle_start;
    }
    return w;
  }

 private:
  const TransitionSystem& ts_;
  const std::vector<Loc>& locs_;
  int nloc_ = 0;
  int sink_ = 0;
  std::map<const StateSet*, LassoFinder> lassos_;
};

struct Candidate {
  int cost;
  std::vector<int> states;
  std::vector<int> nodes;
  bool operator<(const Candidate& o) const {
    if (cost != o.cost) return cost < o.cost;
    if (states != o.states) return states < o.states;
    return nodes < o.nodes;
  }
};

}  // namespace

std::vector<WitnessTrace> enumerate_witnesses(const KripkeStructure& k, const SatSets& sat, const FormulaPtr& f,
                                              int state, std::size_t limit) {
  std::vector<WitnessTrace> out;
  if (limit == 0 || state < 0 || state >= k.size()) return out;
  SatLookup lookup(k, sat);
  if (!lookup(f).test(state)) return out;

  Automaton automaton(k, lookup);
  int start_loc = automaton.compile(f);
  ProductSearch search(k, automaton);
  int source = search.node(state, start_loc);

  auto first = search.shortest(source, {}, {});
  if (!first) return out;  // cannot happen when state ∈ SAT(f)

  // Yen's k-shortest loopless paths over the product graph; distinct product
  // paths may project onto the same trace, so dedupe on the projection.
  std::vector<ProductSearch::Path> accepted{*first};
  std::set<Candidate> candidates;
  std::set<std::vector<int>> seen_nodes{first->nodes};
  auto emit = [&](const ProductSearch::Path& p) {
    WitnessTrace w = search.project(p);
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  };
  emit(*first);

  const std::size_t max_rounds = limit * 4 + 8;
  for (std::size_t round = 0; out.size() < limit && round < max_rounds; ++round) {
    const auto& prev = accepted.back().nodes;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      int spur = prev[i];
      std::vector<int> root(prev.begin(), prev.begin() + static_cast<long>(i) + 1);
      std::set<std::pair<int, int>> banned_edges;
      for (const auto& p : accepted) {
        if (p.nodes.size() > i + 1 && std::equal(root.begin(), root.end(), p.nodes.begin()))
          banned_edges.insert({p.nodes[i], p.nodes[i + 1]});
      }
      std::set<int> banned_nodes(root.begin(), root.end() - 1);
      auto spur_path = search.shortest(spur, banned_nodes, banned_edges);
      if (!spur_path) continue;
      ProductSearch::Path total;
      total.nodes = root;
      total.nodes.insert(total.nodes.end(), spur_path->nodes.begin() + 1, spur_path->nodes.end());
      int root_cost = 0;
      for (std::size_t j = 0; j + 1 < root.size(); ++j) root_cost += search.edge_weight(root[j], root[j + 1]);
      total.cost = root_cost + spur_path->cost;
      if (seen_nodes.count(total.nodes)) continue;
      seen_nodes.insert(total.nodes);
      candidates.insert({total.cost, search.project(total).states, total.nodes});
    }
    if (candidates.empty()) break;
    Candidate best = *candidates.begin();
    candidates.erase(candidates.begin());
    ProductSearch::Path next{best.nodes, best.cost};
    accepted.push_back(next);
    emit(next);
  }
  return out;
}

std::optional<WitnessTrace> witness(const KripkeStructure& k, const SatSets& sat, const FormulaPtr& f, int state) {
  auto all = enumerate_witnesses(k, sat, f, state, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<WitnessTrace> witness(const KripkeStructure& k, const FormulaPtr& f, int state) {
  SatSets sat = check(k, f);
  return witness(k, sat, f, state);
}

}  // namespace ctllint::ctl
