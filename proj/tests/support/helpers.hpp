#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ctllint/cfg.hpp"
#include "ctllint/intervals.hpp"
#include "ctllint/parser.hpp"
#include "ctllint/sema.hpp"

namespace ctllint::testing {

// A parsed unit together with the CFG of each function.
struct Program {
  ast::TranslationUnit tu;
  std::vector<Cfg> cfgs;

  const Cfg& cfg(const std::string& function) const;
  const Cfg& only() const { return cfgs.front(); }
};

// Throws on parse or semantic errors.
Program compile(const std::string& source, const std::string& file = "t.c");

std::string read_text(const std::filesystem::path& p);
std::filesystem::path fixture_dir();

// Fixture annotations: `// <- check-id` on a line marks an expected finding;
// `// clean: check-id` and `// infeasible` in the header mark negatives.
struct FixtureSpec {
  std::filesystem::path path;
  std::vector<std::pair<std::string, int>> expected;  // (check, line)
  std::vector<std::string> clean;
  bool infeasible = false;
};
std::vector<FixtureSpec> load_fixtures();

// Node whose describe() text equals `text` (first match), or -1.
NodeId find_node(const Cfg& cfg, const std::string& text);

struct ExecResult;

// Observed int values that fall outside the computed interval at their node,
// as "node N: x=V not in [a,b]".
std::vector<std::string> interval_violations(const Cfg& cfg, const intervals::AbsResult& r, const ExecResult& run);

}  // namespace ctllint::testing
