#pragma once

// Explicit-state CTL model checking over KripkeStructure: formula trees,
// adequate-set normalization, global fixpoint labeling and witness paths.

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctllint/kripke.hpp"
#include "ctllint/state_set.hpp"

namespace ctllint::ctl {

enum class Op { True, Prop, Not, And, Or, Implies, AX, EX, AF, EF, AG, EG, AU, EU };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op = Op::True;
  std::string name;  // Prop only
  FormulaPtr lhs;    // unary operand, or left operand
  FormulaPtr rhs;    // right operand of binary operators and U

  bool is_unary() const;
  bool is_binary() const;
};

FormulaPtr tt();
FormulaPtr prop(std::string name);
FormulaPtr not_(FormulaPtr f);
FormulaPtr and_(FormulaPtr a, FormulaPtr b);
FormulaPtr or_(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr ax(FormulaPtr f);
FormulaPtr ex(FormulaPtr f);
FormulaPtr af(FormulaPtr f);
FormulaPtr ef(FormulaPtr f);
FormulaPtr ag(FormulaPtr f);
FormulaPtr eg(FormulaPtr f);
FormulaPtr au(FormulaPtr a, FormulaPtr b);
FormulaPtr eu(FormulaPtr a, FormulaPtr b);

// Canonical prefix key; equal keys <=> structurally identical formulas.
std::string key(const Formula& f);
// Infix rendering in the check-language syntax ("EF (a & EX E[!b U a])").
std::string to_string(const Formula& f);

bool structurally_equal(const Formula& a, const Formula& b);
std::set<std::string> atoms(const Formula& f);
int depth(const Formula& f);  // temporal + boolean operator nesting depth

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, const std::string& msg) : std::runtime_error(msg), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses the infix syntax produced by to_string. Throws SyntaxError.
FormulaPtr parse(std::string_view text);

// Rewrites into {True, Prop, Not, And, EX, EU, EG}; double negations are
// cancelled.
FormulaPtr normalize(const FormulaPtr& f);
bool is_normal(const Formula& f);

// SAT sets per subformula. Both the normalized subformulas and every subformula
// of the queried (unnormalized) formula are present.
class SatSets {
 public:
  const StateSet* find(const Formula& f) const;
  const StateSet& at(const Formula& f) const;
  bool holds(const Formula& f, int state) const { return at(f).test(state); }
  std::size_t size() const { return sets_.size(); }
  std::string dump() const;

  void put(std::string k, StateSet s) { sets_.insert_or_assign(std::move(k), std::move(s)); }
  const StateSet* find_key(const std::string& k) const;

 private:
  std::unordered_map<std::string, StateSet> sets_;
};

enum class FixpointStrategy {
  Worklist,   // O(|S|+|T|) per operator via predecessor worklists
  Iterative,  // naive Kleene iteration on bitsets with the pre-exists kernel
};

SatSets check(const KripkeStructure& k, const FormulaPtr& f, FixpointStrategy strategy = FixpointStrategy::Worklist);

// Existential predecessor image: states with at least one successor in z.
StateSet pre_exists(const TransitionSystem& ts, const StateSet& z);

// Kleene iteration sequences (first element is the starting set, last is the
// fixpoint). E[g U h] starts from SAT(h) and grows; EG g starts from SAT(g) and
// shrinks.
std::vector<StateSet> eu_iterates(const TransitionSystem& ts, const StateSet& g, const StateSet& h);
std::vector<StateSet> eg_iterates(const TransitionSystem& ts, const StateSet& g);

struct WitnessTrace {
  std::vector<int> states;
  int cycle_start = -1;  // index into states for lassos; the last state has an
                         // edge back to states[cycle_start]

  bool is_lasso() const { return cycle_start >= 0; }
  friend bool operator==(const WitnessTrace&, const WitnessTrace&) = default;
};

// Shortest path from `state` demonstrating `f`: existential obligations
// (EX, EF, EU, EG) are unfolded along the path; other subformulas are checked
// by SAT membership at the state where they are required. Ties go to the lowest
// successor id. Nullopt when state is not in SAT(f).
std::optional<WitnessTrace> witness(const KripkeStructure& k, const SatSets& sat, const FormulaPtr& f, int state);
std::optional<WitnessTrace> witness(const KripkeStructure& k, const FormulaPtr& f, int state);

// Up to `limit` distinct witnesses in shortest-first order (first one equals
// witness()); each differs from the others in at least one transition.
std::vector<WitnessTrace> enumerate_witnesses(const KripkeStructure& k, const SatSets& sat, const FormulaPtr& f,
                                              int state, std::size_t limit);

}  // namespace ctllint::ctl
