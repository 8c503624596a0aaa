#pragma once

// Path feasibility for witness traces: SSA encoding of assignments and branch
// guards along the trace, decided by Fourier-Motzkin elimination over the
// rationals.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctllint/cfg.hpp"
#include "ctllint/ctl.hpp"
#include "ctllint/speclang.hpp"

namespace ctllint::refine {

using Rational = boost::multiprecision::cpp_rational;

enum class Rel { Eq, Le, Lt };

// sum(coeffs[v] * v) rel k, over SSA variable indices.
struct PathConstraint {
  std::map<int, Rational> coeffs;
  Rel rel = Rel::Le;
  Rational k;

  friend bool operator==(const PathConstraint&, const PathConstraint&) = default;
};

std::string to_string(const PathConstraint& c, const std::vector<std::string>& names = {});

struct Verdict {
  enum Kind { Feasible, Infeasible, Unknown } kind = Feasible;
  std::string reason;  // "nonlinear-havoc" or "budget" for Unknown

  static Verdict feasible() { return {Feasible, ""}; }
  static Verdict infeasible() { return {Infeasible, ""}; }
  static Verdict unknown(std::string why) { return {Unknown, std::move(why)}; }
};

std::string to_string(const Verdict& v);

struct PathEncoding {
  std::vector<PathConstraint> constraints;
  std::vector<PathConstraint> disequalities;  // rel is Eq; each means lhs != k
  std::vector<std::string> names;  // SSA variable index -> "x_2"
  std::vector<bool> havoc;         // SSA variable holds an unknown value
  int dropped_guards = 0;          // guards with no linear encoding
};

// Walks the nodes of a path (consecutive CFG nodes). Lasso traces contribute
// only their stem.
PathEncoding encode_path(const Cfg& cfg, const std::vector<NodeId>& nodes);
std::vector<NodeId> stem(const ctl::WitnessTrace& trace);
std::vector<PathConstraint> path_constraints(const ctl::WitnessTrace& trace, const Cfg& cfg);

inline constexpr std::size_t kDefaultBudget = 20000;

// Fourier-Motzkin over the rationals; Unknown("budget") once
// variables x constraints exceeds the budget.
Verdict feasible(const std::vector<PathConstraint>& cs, std::size_t budget = kDefaultBudget);

// Disequalities beyond this count are not split; the verdict is Unknown("budget").
inline constexpr std::size_t kMaxDisequalities = 10;

// Conjunction plus disequalities, by case split over integers.
Verdict feasible(const PathEncoding& enc, std::size_t budget = kDefaultBudget);

// Feasibility of one trace. A Feasible system is downgraded to
// Unknown("nonlinear-havoc") when it relied on dropped guards or havocked
// values.
Verdict check_trace(const Cfg& cfg, const ctl::WitnessTrace& trace, std::size_t budget = kDefaultBudget);

enum class Outcome { Confirmed, Unconfirmed, Suppressed };

struct Refinement {
  Outcome outcome = Outcome::Unconfirmed;
  std::optional<ctl::WitnessTrace> trace;  // kept trace
  std::vector<Verdict> verdicts;           // one per examined witness
};

// Witnesses from `state` in shortest-first order. The first Feasible one is
// confirmed; otherwise any Unknown leaves the diagnostic unconfirmed with the
// shortest trace; all examined witnesses Infeasible suppresses it, provided no
// further witness exists beyond the budget.
Refinement refine_diagnostic(const spec::CheckTask& task, const Cfg& cfg, const ctl::SatSets& sat, int state,
                             std::size_t max_witnesses);
Refinement refine_diagnostic(const spec::CheckTask& task, const Cfg& cfg, std::size_t max_witnesses);

}  // namespace ctllint::refine
