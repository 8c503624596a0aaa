#include "ctllint/refine.hpp"

namespace ctllint::refine {

Refinement refine_diagnostic(const spec::CheckTask& task, const Cfg& cfg, const ctl::SatSets& sat, int state,
                             std::size_t max_witnesses) {
  Refinement r;
  // One extra witness tells whether the examined ones were all there is.
  auto traces = ctl::enumerate_witnesses(task.kripke, sat, task.formula, state, max_witnesses + 1);
  if (traces.empty()) {
    r.outcome = Outcome::Suppressed;  // formula does not hold at `state`
    return r;
  }
  r.trace = traces.front();
  if (max_witnesses == 0) {
    r.outcome = Outcome::Unconfirmed;
    return r;
  }
  const std::size_t examined = std::min(traces.size(), max_witnesses);
  bool unknown = false;
  for (std::size_t i = 0; i < examined; ++i) {
    Verdict v = check_trace(cfg, traces[i]);
    r.verdicts.push_back(v);
    if (v.kind == Verdict::Feasible) {
      r.outcome = Outcome::Confirmed;
      r.trace = traces[i];
      return r;
    }
    unknown = unknown || v.kind == Verdict::Unknown;
  }
  // an undecided witness keeps the shortest trace
  if (unknown || traces.size() > max_witnesses) {
    r.outcome = Outcome::Unconfirmed;
    return r;
  }
  r.outcome = Outcome::Suppressed;
  r.trace.reset();
  return r;
}

Refinement refine_diagnostic(const spec::CheckTask& task, const Cfg& cfg, std::size_t max_witnesses) {
  ctl::SatSets sat = ctl::check(task.kripke, task.formula);
  return refine_diagnostic(task, cfg, sat, cfg.entry, max_witnesses);
}

}  // namespace ctllint::refine
