#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ctllint/cli.hpp"

namespace ctllint::cli {

std::vector<Diagnostic> filter_severity(const std::vector<Diagnostic>& ds, Severity min) {
  std::vector<Diagnostic> out;
  for (const auto& d : ds)
    if (d.severity >= min) out.push_back(d);
  return out;
}

std::string render_text(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (const auto& d : ds) {
    os << to_string(d.loc) << ": " << to_string(d.severity) << " [" << d.check_id << "] " << d.message << " ("
       << to_string(d.confidence) << ")\n";
    if (d.trace.empty()) continue;
    os << "  trace: ";
    for (std::size_t i = 0; i < d.trace.size(); ++i)
      os << (i ? " -> " : "") << d.trace[i].line << ":" << d.trace[i].column;
    os << "\n";
  }
  return os.str();
}

std::string render_json(const std::vector<Diagnostic>& ds, const engine::Counters& counters) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = "1";
  ordered_json arr = ordered_json::array();
  long counts[3] = {0, 0, 0};
  for (const auto& d : ds) {
    ++counts[static_cast<int>(d.severity)];
    ordered_json trace = ordered_json::array();
    for (const auto& l : d.trace) trace.push_back({{"line", l.line}, {"column", l.column}});
    arr.push_back({{"check", d.check_id},
                   {"severity", to_string(d.severity)},
                   {"file", d.loc.file},
                   {"line", d.loc.line},
                   {"column", d.loc.column},
                   {"message", d.message},
                   {"confidence", to_string(d.confidence)},
                   {"trace", std::move(trace)}});
  }
  j["diagnostics"] = std::move(arr);
  j["summary"] = {{"error", counts[static_cast<int>(Severity::Error)]},
                  {"warning", counts[static_cast<int>(Severity::Warning)]},
                  {"info", counts[static_cast<int>(Severity::Info)]},
                  {"tasks", counters.tasks_created},
                  {"cache_hits", counters.cache_hits}};
  return j.dump() + "\n";
}

std::string render_summary(const std::vector<Diagnostic>& ds, const engine::Counters& counters) {
  long counts[3] = {0, 0, 0};
  std::map<std::string, long> per_check;
  for (const auto& d : ds) {
    ++counts[static_cast<int>(d.severity)];
    ++per_check[d.check_id];
  }
  auto plural = [](long n, const char* word) { return std::to_string(n) + " " + word + (n == 1 ? "" : "s"); };
  std::ostringstream os;
  os << plural(counts[2], "error") << ", " << plural(counts[1], "warning") << ", " << plural(counts[0], "info")
     << "\n";
  if (!per_check.empty()) {
    os << "by check:";
    for (const auto& [id, n] : per_check) os << " " << id << "=" << n;
    os << "\n";
  }
  os << "functions: " << counters.functions << " (" << counters.cache_misses << " analyzed)\n";
  os << "tasks: " << counters.tasks_created << " created, " << counters.tasks_checked << " checked, "
     << counters.tasks_skipped << " skipped\n";
  long pct = counters.functions ? counters.cache_hits * 100 / counters.functions : 0;
  os << "cache hits: " << pct << "% (" << counters.cache_hits << "/" << counters.functions << ")\n";
  return os.str();
}

}  // namespace ctllint::cli
