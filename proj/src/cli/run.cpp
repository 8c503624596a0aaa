#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "ctllint/cfg.hpp"
#include "ctllint/cli.hpp"
#include "ctllint/intervals.hpp"
#include "ctllint/parser.hpp"
#include "ctllint/sema.hpp"

namespace ctllint::cli {
namespace {

struct Failure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

engine::CheckSet load_checks(const RunConfig& cfg) {
  engine::CheckSet all = engine::default_check_set();
  for (const auto& path : cfg.spec_files) {
    std::string text = read_file(path);
    std::vector<spec::CheckSpec> parsed;
    try {
      parsed = spec::parse_checks(text, path);
    } catch (const spec::SpecError& e) {
      throw Failure{to_string(e.location()) + ": spec error: " + e.detail()};
    }
    for (const auto& c : parsed) {
      bool dup = c.id == engine::kBufferOverrun || c.id == engine::kDivByZero;
      for (const auto& o : all.specs) dup = dup || o.id == c.id;
      if (dup) throw Failure{to_string(c.loc) + ": spec error: duplicate check id '" + c.id + "'"};
      all.specs.push_back(c);
    }
  }
  if (cfg.check_ids.empty()) return all;

  engine::CheckSet picked;
  for (const auto& id : cfg.check_ids) {
    bool found = false;
    for (const auto& c : all.specs)
      if (c.id == id) {
        picked.specs.push_back(c);
        found = true;
      }
    if (all.interval_checks.count(id)) {
      picked.interval_checks.insert(id);
      found = true;
    }
    if (!found) throw Failure{"unknown check '" + id + "' (see --list-checks)"};
  }
  return picked;
}

std::string list_checks(const engine::CheckSet& set) {
  std::ostringstream os;
  for (const auto& c : set.specs) os << c.id << " " << to_string(c.severity) << " " << c.message << "\n";
  os << engine::kBufferOverrun << " error|warning array index outside the declared bounds\n";
  os << engine::kDivByZero << " error|warning division or remainder by zero\n";
  return os.str();
}

std::vector<ast::TranslationUnit> parse_inputs(const std::vector<std::string>& inputs) {
  std::vector<ast::TranslationUnit> units;
  for (const auto& path : inputs) {
    std::string text = read_file(path);
    try {
      units.push_back(parse(text, path));
    } catch (const ParseError& e) {
      throw Failure{to_string(e.location()) + ": parse error: " + e.detail()};
    }
    auto errs = check_well_formed(units.back());
    if (!errs.empty()) throw Failure{to_string(errs.front().loc) + ": error: " + errs.front().message};
  }
  return units;
}

std::string dump_sat(const ast::TranslationUnit& tu, const engine::CheckSet& checks) {
  std::ostringstream os;
  auto summaries = engine::compute_summaries(tu);
  for (const auto& f : tu.functions) {
    Cfg cfg = build_cfg(tu, f);
    auto aug = engine::apply_summaries(cfg, summaries);
    for (const auto& c : checks.specs) {
      auto inst = spec::instantiate(c, cfg, aug);
      for (const auto& task : inst.tasks) {
        os << "== " << f.name << " " << c.id;
        if (!task.variable.empty()) os << " " << c.metavar << "=" << task.variable;
        os << "\n";
        KripkeStructure k = c.report == spec::ReportMode::Unreached ? reverse(task.kripke) : task.kripke;
        os << ctl::check(k, task.formula).dump();
      }
    }
  }
  return os.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  unsigned hw = std::thread::hardware_concurrency();
  cfg.jobs = hw ? hw : 1;
  if (const char* env = std::getenv("CTL_LINT_DB"); env && *env) cfg.db_path = env;

  CLI::App app{"CTL-based static checker for a C subset", "ctl-lint"};
  app.set_version_flag("--version", engine::kToolVersion);
  std::vector<std::string> raw_checks;
  std::string min_sev = "info";
  bool no_cache = false, list = false, dump_cfg = false, dump_sat_flag = false, dump_iv = false, summary = false;
  std::string db;
  app.add_option("--checks", raw_checks, "Comma-separated check ids to run")
      ->delimiter(',')
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_flag("--list-checks", list, "List available checks and exit");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--db", db, "Cache database path");
  app.add_flag("--no-cache", no_cache, "Do not read or write the cache");
  app.add_option("--max-witnesses", cfg.max_witnesses, "Witnesses examined per diagnostic")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--min-severity", min_sev, "Lowest severity rendered")
      ->check(CLI::IsMember({"info", "warning", "error"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--dump-cfg", dump_cfg, "Print each function's CFG as Graphviz and exit");
  app.add_flag("--dump-sat", dump_sat_flag, "Print SAT sets of every task and exit");
  app.add_flag("--dump-intervals", dump_iv, "Print interval invariants and exit");
  app.add_option("--specs", cfg.spec_files, "Additional .chk file (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_flag("--summary", summary, "Append a summary report");
  CLI::App* analyze = app.add_subcommand("analyze", "Analyze source files");
  analyze->add_option("files", cfg.inputs, "MiniC sources")->required();
  analyze->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.check_ids = raw_checks;
    cfg.min_severity = *parse_severity(min_sev);
    cfg.cache_enabled = !no_cache;
    if (!db.empty()) cfg.db_path = db;

    engine::CheckSet checks = load_checks(cfg);
    if (list) {
      out << list_checks(checks);
      return 0;
    }
    if (!analyze->parsed()) {
      err << "ctl-lint: error: missing 'analyze <files...>'\n" << app.help();
      return 2;
    }
    std::vector<ast::TranslationUnit> units = parse_inputs(cfg.inputs);

    if (dump_cfg || dump_sat_flag || dump_iv) {
      for (const auto& tu : units) {
        if (dump_sat_flag) out << dump_sat(tu, checks);
        for (const auto& f : tu.functions) {
          if (!dump_cfg && !dump_iv) break;
          Cfg g = build_cfg(tu, f);
          if (dump_cfg) out << to_dot(g);
          if (dump_iv) out << "== " << f.name << "\n" << intervals::dump(g, intervals::analyze(g));
        }
      }
      return 0;
    }

    std::optional<engine::Cache> cache;
    if (cfg.cache_enabled) cache.emplace(cfg.db_path);
    engine::Config ec;
    ec.max_witnesses = cfg.max_witnesses;
    ec.jobs = cfg.jobs;
    std::vector<const ast::TranslationUnit*> ptrs;
    for (const auto& tu : units) ptrs.push_back(&tu);
    engine::RunResult result = engine::analyze(ptrs, checks, cache ? &*cache : nullptr, ec);
    if (cache) cache->flush();
    for (const auto& e : result.counters.events) err << "ctl-lint: warning: " << e << "\n";

    std::vector<Diagnostic> shown = filter_severity(result.diagnostics, cfg.min_severity);
    if (cfg.format == "json") {
      out << render_json(shown, result.counters);
      if (summary) err << render_summary(shown, result.counters);
    } else {
      out << render_text(shown);
      if (summary) out << render_summary(shown, result.counters);
    }
    return shown.empty() ? 0 : 1;
  } catch (const Failure& f) {
    err << "ctl-lint: " << f.message << "\n";
  } catch (const engine::IoError& e) {
    err << "ctl-lint: error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace ctllint::cli
