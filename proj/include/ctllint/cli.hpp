#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ctllint/diagnostic.hpp"
#include "ctllint/engine.hpp"

namespace ctllint::cli {

struct RunConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> check_ids;  // empty: all
  std::vector<std::string> spec_files;
  std::string format = "text";
  std::string db_path = ".ctl-lint.db";
  bool cache_enabled = true;
  std::size_t max_witnesses = 5;
  Severity min_severity = Severity::Info;
  unsigned jobs = 1;
};

std::vector<Diagnostic> filter_severity(const std::vector<Diagnostic>& ds, Severity min);

// `FILE:LINE:COL: SEVERITY [ID] MESSAGE (CONFIDENCE)` plus an indented trace line.
std::string render_text(const std::vector<Diagnostic>& ds);
// Compact JSON; counts in "summary" refer to the rendered diagnostics.
std::string render_json(const std::vector<Diagnostic>& ds, const engine::Counters& counters);
std::string render_summary(const std::vector<Diagnostic>& ds, const engine::Counters& counters);

// Exit codes: 0 nothing rendered, 1 diagnostics rendered, 2 error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctllint::cli
