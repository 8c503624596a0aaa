#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctllint/source_location.hpp"

namespace ctllint {

enum class Severity { Info, Warning, Error };  // ordered for filtering
const char* to_string(Severity s);
std::optional<Severity> parse_severity(std::string_view s);

enum class Confidence { Unconfirmed, Confirmed };
const char* to_string(Confidence c);

struct Diagnostic {
  std::string check_id;
  Severity severity = Severity::Warning;
  SourceLocation loc;
  std::string message;
  std::vector<SourceLocation> trace;
  Confidence confidence = Confidence::Unconfirmed;
  std::string function;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Output order: file, line, column, check id (then message for stability).
bool diagnostic_less(const Diagnostic& a, const Diagnostic& b);

}  // namespace ctllint
