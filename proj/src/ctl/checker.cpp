#include <deque>
#include <sstream>
#include <map>

#include "ctllint/ctl.hpp"

namespace ctllint::ctl {

StateSet pre_exists(const TransitionSystem& ts, const StateSet& z) {
  StateSet out(ts.size());
  if (ts.has_dense_rows()) {
    auto rows = ts.dense_rows();
    simd::kernels().pre_exists(rows.data(), ts.row_stride(), static_cast<std::size_t>(ts.size()), z.words().data(),
                               out.words().data());
    return out;
  }
  for (int t : z.members())
    for (int p : ts.predecessors(t)) out.set(p);
  return out;
}

std::vector<StateSet> eu_iterates(const TransitionSystem& ts, const StateSet& g, const StateSet& h) {
  std::vector<StateSet> seq{h};
  for (;;) {
    StateSet next = pre_exists(ts, seq.back());
    next &= g;
    next |= h;
    if (next == seq.back()) return seq;
    seq.push_back(std::move(next));
  }
}

std::vector<StateSet> eg_iterates(const TransitionSystem& ts, const StateSet& g) {
  std::vector<StateSet> seq{g};
  for (;;) {
    StateSet next = pre_exists(ts, seq.back());
    next &= g;
    if (next == seq.back()) return seq;
    seq.push_back(std::move(next));
  }
}

namespace {

StateSet eu_worklist(const TransitionSystem& ts, const StateSet& g, const StateSet& h) {
  StateSet z = h;
  std::vector<int> work = h.members();
  while (!work.empty()) {
    int t = work.back();
    work.pop_back();
    for (int p : ts.predecessors(t)) {
      if (!z.test(p) && g.test(p)) {
        z.set(p);
        work.push_back(p);
      }
    }
  }
  return z;
}

StateSet eg_worklist(const TransitionSystem& ts, const StateSet& g) {
  StateSet z = g;
  std::vector<int> live(static_cast<std::size_t>(ts.size()), 0);
  std::vector<int> work;
  for (int s : g.members()) {
    int c = 0;
    for (int t : ts.successors(s))
      if (g.test(t)) ++c;
    live[static_cast<std::size_t>(s)] = c;
    if (c == 0) {
      z.reset(s);
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    int s = work.back();
    work.pop_back();
    for (int p : ts.predecessors(s)) {
      if (z.test(p) && --live[static_cast<std::size_t>(p)] == 0) {
        z.reset(p);
        work.push_back(p);
      }
    }
  }
  return z;
}

class Evaluator {
 public:
  Evaluator(const KripkeStructure& k, FixpointStrategy strategy, SatSets& out)
      : k_(k), ts_(*k.transitions), strategy_(strategy), out_(out) {}

  // `f` must be normalized.
  const StateSet& eval(const Formula& f) {
    std::string fk = key(f);
    if (const StateSet* hit = out_.find_key(fk)) return *hit;
    StateSet s = compute(f);
    out_.put(fk, std::move(s));
    return *out_.find_key(fk);
  }

 private:
  StateSet compute(const Formula& f) {
    const int n = ts_.size();
    switch (f.op) {
      case Op::True: return StateSet(n, true);
      case Op::Prop: {
        const StateSet* s = k_.states_with(f.name);
        return s ? *s : StateSet(n);
      }
      case Op::Not: return eval(*f.lhs).complement();
      case Op::And: {
        StateSet s = eval(*f.lhs);
        s &= eval(*f.rhs);
        return s;
      }
      case Op::EX: return pre_exists(ts_, eval(*f.lhs));
      case Op::EU: {
        StateSet g = eval(*f.lhs);
        const StateSet& h = eval(*f.rhs);
        if (strategy_ == FixpointStrategy::Iterative) return eu_iterates(ts_, g, h).back();
        return eu_worklist(ts_, g, h);
      }
      case Op::EG: {
        const StateSet& g = eval(*f.lhs);
        if (strategy_ == FixpointStrategy::Iterative) return eg_iterates(ts_, g).back();
        return eg_worklist(ts_, g);
      }
      default:
        // Unreachable for normalized input; evaluate via normalization.
        return eval(*normalize(std::make_shared<Formula>(f)));
    }
  }

  const KripkeStructure& k_;
  const TransitionSystem& ts_;
  FixpointStrategy strategy_;
  SatSets& out_;
};

void register_subformulas(const FormulaPtr& f, Evaluator& ev, SatSets& out) {
  std::string fk = key(*f);
  if (!out.find_key(fk)) {
    StateSet s = ev.eval(*normalize(f));
    out.put(fk, std::move(s));
  }
  if (f->lhs) register_subformulas(f->lhs, ev, out);
  if (f->rhs) register_subformulas(f->rhs, ev, out);
}

}  // namespace

const StateSet* SatSets::find_key(const std::string& k) const {
  auto it = sets_.find(k);
  return it == sets_.end() ? nullptr : &it->second;
}

const StateSet* SatSets::find(const Formula& f) const { return find_key(key(f)); }

const StateSet& SatSets::at(const Formula& f) const {
  if (const StateSet* s = find(f)) return *s;
  throw std::out_of_range("no SAT set for " + to_string(f));
}

std::string SatSets::dump() const {
  std::map<std::string, const StateSet*> ordered;
  for (const auto& [k, s] : sets_) ordered.emplace(k, &s);
  std::ostringstream os;
  for (const auto& [k, s] : ordered) os << k << " = " << s->to_string() << "\n";
  return os.str();
}

SatSets check(const KripkeStructure& k, const FormulaPtr& f, FixpointStrategy strategy) {
  SatSets out;
  Evaluator ev(k, strategy, out);
  register_subformulas(f, ev, out);
  return out;
}

}  // namespace ctllint::ctl
