#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctllint/cfg.hpp"
#include "ctllint/state_set.hpp"

namespace ctllint {

// Immutable transition relation over dense state ids, shared by every
// Kripke structure derived from the same CFG.
class TransitionSystem {
 public:
  // Duplicate edges are dropped; successor and predecessor lists are sorted.
  TransitionSystem(int states, const std::vector<std::pair<int, int>>& edges);

  int size() const { return states_; }
  std::span<const int> successors(int s) const {
    return {succ_.data() + succ_start_[static_cast<std::size_t>(s)],
            succ_.data() + succ_start_[static_cast<std::size_t>(s) + 1]};
  }
  std::span<const int> predecessors(int s) const {
    return {pred_.data() + pred_start_[static_cast<std::size_t>(s)],
            pred_.data() + pred_start_[static_cast<std::size_t>(s) + 1]};
  }
  bool has_edge(int from, int to) const;
  bool is_total() const;
  std::vector<std::pair<int, int>> edges() const;

  // Dense successor bit-matrix (row s = successors of s); present when the
  // state count is at most kDenseLimit.
  static constexpr int kDenseLimit = 2048;
  bool has_dense_rows() const { return !rows_.empty(); }
  std::span<const simd::Word> dense_rows() const { return rows_; }
  std::size_t row_stride() const { return stride_; }

 private:
  int states_ = 0;
  std::vector<int> succ_, succ_start_, pred_, pred_start_;
  std::vector<simd::Word> rows_;
  std::size_t stride_ = 0;
};

struct KripkeStructure {
  std::shared_ptr<const TransitionSystem> transitions;
  std::vector<std::string> alphabet;    // proposition names
  std::vector<StateSet> label_sets;     // parallel to alphabet

  int size() const { return transitions->size(); }
  // States labelled with `prop`; null when the proposition is not in the alphabet.
  const StateSet* states_with(std::string_view prop) const;
  std::set<std::string> labels(int state) const;
  // Adds the proposition to the alphabet if missing and returns its state set.
  StateSet& prop(const std::string& name);
};

// CFG edges plus a self-loop on Exit (and on any other successor-less node) so
// the transition relation is total.
std::shared_ptr<const TransitionSystem> kripke_transitions(const Cfg& cfg);

KripkeStructure to_kripke(const Cfg& cfg, const std::map<NodeId, std::set<std::string>>& labeling);

// Flips every transition, then adds self-loops where the reversed relation
// leaves a state without successors. Labels are preserved.
KripkeStructure reverse(const KripkeStructure& k);

}  // namespace ctllint
