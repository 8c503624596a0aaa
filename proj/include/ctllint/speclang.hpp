#pragma once

// Check-specification language: syntactic patterns become atomic
// propositions, one small CTL task per variable binding.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctllint/cfg.hpp"
#include "ctllint/ctl.hpp"
#include "ctllint/diagnostic.hpp"
#include "ctllint/kripke.hpp"

namespace ctllint::spec {

using ::ctllint::parse_severity;
using ::ctllint::Severity;

enum class PatternKind {
  Call,
  MallocAssign,
  NullAssign,
  AssignTo,
  FreeOf,
  Deref,
  Use,
  DeclUninit,
  NullCheck,
  IndexOf,
  AtEntry,
  AtExit,
};
const char* to_string(PatternKind k);
std::optional<PatternKind> pattern_kind(std::string_view name);

struct PatternArg {
  enum Kind { MetaVar, Wildcard, Integer, Ident } kind = Wildcard;
  std::string text;  // MetaVar ("$v") and Ident
  std::int64_t value = 0;

  friend bool operator==(const PatternArg&, const PatternArg&) = default;
};

struct Pattern {
  PatternKind kind = PatternKind::AtEntry;
  std::vector<PatternArg> args;

  std::set<std::string> metavars() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct LabelDecl {
  std::string name;
  Pattern pattern;
};

enum class Quantifier { None, Pointer, Array, Any };

// How a satisfied property becomes diagnostics. Entry: the property holds at
// the Entry state. Unreached: the property is evaluated on the reversed
// structure and every statement or condition node outside SAT is reported.
enum class ReportMode { Entry, Unreached };

struct CheckSpec {
  std::string id;
  Severity severity = Severity::Warning;
  std::string metavar;  // "$v"; empty when the check has no quantifier
  Quantifier quantifier = Quantifier::None;
  std::vector<LabelDecl> labels;
  ctl::FormulaPtr property;
  bool refine = false;
  ReportMode report = ReportMode::Entry;
  std::string message;  // `$v` is replaced by the bound variable's name
  SourceLocation loc;

  const LabelDecl* label(std::string_view name) const;
};

class SpecError : public std::runtime_error {
 public:
  SpecError(SourceLocation loc, const std::string& message)
      : std::runtime_error(to_string(loc) + ": " + message), loc_(std::move(loc)), message_(message) {}
  const SourceLocation& location() const { return loc_; }
  const std::string& detail() const { return message_; }

 private:
  SourceLocation loc_;
  std::string message_;
};

// A whole `.chk` file (one or more checks). Throws SpecError.
std::vector<CheckSpec> parse_checks(std::string_view text, const std::string& file = "<spec>");
// Exactly the first check of the text.
CheckSpec parse_check(std::string_view text, const std::string& file = "<spec>");

// Text of the bundled catalog (checks/builtin.chk).
std::string_view builtin_source();
const std::vector<CheckSpec>& builtin_checks();

// Metavariable -> variable.
using Binding = std::map<std::string, VarId>;

bool match_pattern(const Pattern& p, const Cfg& cfg, const CfgNode& node, const Binding& binding);

// Extra matches injected from call-site summaries: node -> (pattern, var).
using Augmentation = std::map<NodeId, std::set<std::pair<PatternKind, VarId>>>;

struct CheckTask {
  const CheckSpec* check = nullptr;
  std::string function;
  Binding binding;
  std::string variable;  // bound variable name, empty without quantifier
  KripkeStructure kripke;
  ctl::FormulaPtr formula;
};

struct Instantiation {
  std::vector<CheckTask> tasks;
  int created = 0;  // bindings considered
  int skipped = 0;  // dropped by the trigger filter
};

// Variables admissible for the quantifier, in id order.
std::vector<VarId> candidates(const CheckSpec& check, const Cfg& cfg);

Instantiation instantiate(const CheckSpec& check, const Cfg& cfg, const Augmentation& extra = {});
// Same, reusing a transition system already built for this cfg.
Instantiation instantiate(const CheckSpec& check, const Cfg& cfg, std::shared_ptr<const TransitionSystem> ts,
                          const Augmentation& extra = {});

}  // namespace ctllint::spec
