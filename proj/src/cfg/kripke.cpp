#include "ctllint/kripke.hpp"

#include <algorithm>

namespace ctllint {

TransitionSystem::TransitionSystem(int states, const std::vector<std::pair<int, int>>& edges) : states_(states) {
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const auto n = static_cast<std::size_t>(states);
  succ_start_.assign(n + 1, 0);
  pred_start_.assign(n + 1, 0);
  for (auto [a, b] : sorted) {
    ++succ_start_[static_cast<std::size_t>(a) + 1];
    ++pred_start_[static_cast<std::size_t>(b) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    succ_start_[i + 1] += succ_start_[i];
    pred_start_[i + 1] += pred_start_[i];
  }
  succ_.resize(sorted.size());
  pred_.resize(sorted.size());
  std::vector<int> sfill(succ_start_.begin(), succ_start_.end() - 1);
  std::vector<int> pfill(pred_start_.begin(), pred_start_.end() - 1);
  // `sorted` is ordered by (from, to), so successor lists come out sorted;
  // predecessor lists are filled in increasing `from` order, also sorted.
  for (auto [a, b] : sorted) {
    succ_[static_cast<std::size_t>(sfill[static_cast<std::size_t>(a)]++)] = b;
    pred_[static_cast<std::size_t>(pfill[static_cast<std::size_t>(b)]++)] = a;
  }

  if (states <= kDenseLimit) {
    stride_ = simd::words_for(n);
    rows_.assign(stride_ * n, 0);
    for (auto [a, b] : sorted)
      rows_[static_cast<std::size_t>(a) * stride_ + static_cast<std::size_t>(b) / 64] |= simd::Word{1} << (b % 64);
  }
}

bool TransitionSystem::has_edge(int from, int to) const {
  auto s = successors(from);
  return std::binary_search(s.begin(), s.end(), to);
}

bool TransitionSystem::is_total() const {
  for (int s = 0; s < states_; ++s)
    if (successors(s).empty()) return false;
  return true;
}

std::vector<std::pair<int, int>> TransitionSystem::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < states_; ++s)
    for (int t : successors(s)) out.emplace_back(s, t);
  return out;
}

const StateSet* KripkeStructure::states_with(std::string_view prop) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == prop) return &label_sets[i];
  return nullptr;
}

std::set<std::string> KripkeStructure::labels(int state) const {
  std::set<std::string> out;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (label_sets[i].test(state)) out.insert(alphabet[i]);
  return out;
}

StateSet& KripkeStructure::prop(const std::string& name) {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == name) return label_sets[i];
  alphabet.push_back(name);
  label_sets.emplace_back(size());
  return label_sets.back();
}

std::shared_ptr<const TransitionSystem> kripke_transitions(const Cfg& cfg) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(cfg.edges.size() + 1);
  std::vector<bool> has_succ(cfg.nodes.size(), false);
  for (const auto& e : cfg.edges) {
    edges.emplace_back(e.from, e.to);
    has_succ[static_cast<std::size_t>(e.from)] = true;
  }
  edges.emplace_back(cfg.exit, cfg.exit);
  for (std::size_t s = 0; s < has_succ.size(); ++s)
    if (!has_succ[s]) edges.emplace_back(static_cast<int>(s), static_cast<int>(s));
  return std::make_shared<const TransitionSystem>(cfg.size(), edges);
}

KripkeStructure to_kripke(const Cfg& cfg, const std::map<NodeId, std::set<std::string>>& labeling) {
  KripkeStructure k;
  k.transitions = kripke_transitions(cfg);
  for (const auto& [node, props] : labeling)
    for (const auto& p : props) k.prop(p).set(node);
  return k;
}

KripkeStructure reverse(const KripkeStructure& k) {
  const TransitionSystem& ts = *k.transitions;
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : ts.edges()) edges.emplace_back(b, a);
  for (int s = 0; s < ts.size(); ++s)
    if (ts.predecessors(s).empty()) edges.emplace_back(s, s);
  KripkeStructure out;
  out.transitions = std::make_shared<const TransitionSystem>(ts.size(), edges);
  out.alphabet = k.alphabet;
  out.label_sets = k.label_sets;
  return out;
}

}  // namespace ctllint
