#include "ctllint/diagnostic.hpp"

#include <tuple>

namespace ctllint {

const char* to_string(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "?";
}

std::optional<Severity> parse_severity(std::string_view s) {
  if (s == "info") return Severity::Info;
  if (s == "warning") return Severity::Warning;
  if (s == "error") return Severity::Error;
  return std::nullopt;
}

const char* to_string(Confidence c) { return c == Confidence::Confirmed ? "confirmed" : "unconfirmed"; }

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
  return std::tie(a.loc.file, a.loc.line, a.loc.column, a.check_id, a.message, a.function) <
         std::tie(b.loc.file, b.loc.line, b.loc.column, b.check_id, b.message, b.function);
}

}  // namespace ctllint
