#pragma once

// Orchestration: summaries over the call graph, per-function task
// decomposition, the on-disk result cache and deterministic aggregation.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctllint/ast.hpp"
#include "ctllint/cfg.hpp"
#include "ctllint/diagnostic.hpp"
#include "ctllint/speclang.hpp"

namespace ctllint::engine {

inline constexpr const char* kToolVersion = "ctl-lint 0.1.0";

// Ids of the checks implemented by interval analysis rather than the DSL.
inline constexpr const char* kBufferOverrun = "buffer-overrun";
inline constexpr const char* kDivByZero = "div-by-zero";

struct FunctionSummary {
  std::string function;
  bool may_return_null = false;
  std::set<int> always_frees;
  std::set<int> derefs_param_unchecked;

  friend bool operator==(const FunctionSummary&, const FunctionSummary&) = default;
};

using SummaryMap = std::map<std::string, FunctionSummary>;

FunctionSummary pessimistic_summary(const ast::FunctionDef& f);
// Canonical one-line text, used for hashing and the cache payload.
std::string canonical(const FunctionSummary& s);

// Direct callees that are defined in the unit (malloc/free excluded).
std::map<std::string, std::set<std::string>> call_graph(const ast::TranslationUnit& tu);
// Strongly connected components, callees before callers. Each level holds
// components whose callees all live in earlier levels.
std::vector<std::vector<std::vector<std::string>>> component_levels(const ast::TranslationUnit& tu);

// Summary of one function given the summaries of its callees.
FunctionSummary summarize(const Cfg& cfg, const SummaryMap& callees);
SummaryMap compute_summaries(const ast::TranslationUnit& tu);

// Extra proposition matches at call sites.
spec::Augmentation apply_summaries(const Cfg& cfg, const SummaryMap& summaries);

std::string sha256_hex(std::string_view data);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single-file store: header line, then `<64-hex key> <length>\n<payload>\n`
// records. Damaged records are skipped on load and the file is rewritten on
// the next flush.
class Cache {
 public:
  static constexpr const char* kHeader = "ctl-lint-cache v1";

  // Loads `path` if it exists. Throws IoError when the file exists but cannot
  // be read.
  explicit Cache(std::string path);

  std::optional<std::string> lookup(const std::string& key) const;
  void store(const std::string& key, std::string payload);
  // Drops an entry whose payload turned out to be unusable.
  void invalidate(const std::string& key, const std::string& why);
  // Writes pending records. Throws IoError when the file cannot be written.
  void flush();

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& events() const { return events_; }
  const std::string& path() const { return path_; }

 private:
  void load(const std::string& text);

  std::string path_;
  std::map<std::string, std::string> entries_;
  std::vector<std::string> pending_;  // keys appended since load
  std::vector<std::string> events_;
  bool rewrite_ = false;
  bool existed_ = false;
};

struct Config {
  std::size_t max_witnesses = 5;
  unsigned jobs = 1;
};

struct Counters {
  long functions = 0;
  long tasks_created = 0;
  long tasks_checked = 0;
  long tasks_skipped = 0;
  long cache_hits = 0;
  long cache_misses = 0;
  std::vector<std::string> analyzed;  // "file:function" analyzed from scratch
  std::vector<std::string> events;    // cache integrity events

  Counters& operator+=(const Counters& o);
};

struct RunResult {
  std::vector<Diagnostic> diagnostics;
  Counters counters;
};

// Canonical text of a check set; its digest is part of every cache key.
std::string canonical_checks(const std::vector<spec::CheckSpec>& checks, const std::set<std::string>& interval_checks);

struct CheckSet {
  std::vector<spec::CheckSpec> specs;
  std::set<std::string> interval_checks;  // subset of {buffer-overrun, div-by-zero}
};

CheckSet default_check_set();

// Analyzes every function of every unit. Units must be well formed.
RunResult analyze(const std::vector<const ast::TranslationUnit*>& units, const CheckSet& checks, Cache* cache,
                  const Config& config);
RunResult analyze_unit(const ast::TranslationUnit& tu, const CheckSet& checks, Cache* cache, const Config& config);

// Sorts by (file, line, column, check id) and keeps one diagnostic per
// (check id, location, function), preferring confirmed ones.
std::vector<Diagnostic> finalize(std::vector<Diagnostic> ds);

}  // namespace ctllint::engine
