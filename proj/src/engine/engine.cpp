#include <algorithm>
#include <atomic>
#include <exception>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "ctllint/engine.hpp"
#include "ctllint/intervals.hpp"
#include "ctllint/parser.hpp"
#include "ctllint/refine.hpp"

namespace ctllint::engine {
namespace {

using nlohmann::ordered_json;

struct FunctionResult {
  std::vector<Diagnostic> diagnostics;
  FunctionSummary summary;
  long created = 0;
  long skipped = 0;
  long checked = 0;
};

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  if (from.empty()) return s;
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
  return s;
}

std::vector<SourceLocation> trace_locations(const Cfg& cfg, const ctl::WitnessTrace& t) {
  std::vector<SourceLocation> out;
  int prev = -1;
  for (int s : t.states) {
    if (s == cfg.entry || s == prev) continue;
    out.push_back(cfg.nodes[static_cast<std::size_t>(s)].loc);
    prev = s;
  }
  return out;
}

// Last non-Exit node; a trace ending at Exit points at its trigger instead.
NodeId report_node(const Cfg& cfg, const spec::CheckTask& task, const ctl::WitnessTrace& t) {
  if (!t.states.empty() && t.states.back() == cfg.exit && !t.is_lasso()) {
    const StateSet* trigger = task.kripke.states_with(task.check->labels.front().name);
    if (trigger)
      for (int s : t.states)
        if (trigger->test(s)) return s;
  }
  for (auto it = t.states.rbegin(); it != t.states.rend(); ++it)
    if (*it != cfg.exit && *it != cfg.entry) return *it;
  return t.states.empty() ? cfg.entry : t.states.front();
}

Diagnostic make(const spec::CheckSpec& check, const Cfg& cfg, const std::string& variable, SourceLocation loc) {
  Diagnostic d;
  d.check_id = check.id;
  d.severity = check.severity;
  d.loc = std::move(loc);
  d.message = check.metavar.empty() ? check.message : replace_all(check.message, check.metavar, variable);
  d.function = cfg.function;
  return d;
}

void unreached(const spec::CheckTask& task, const Cfg& cfg, std::vector<Diagnostic>& out) {
  KripkeStructure rev = reverse(task.kripke);
  ctl::SatSets sat = ctl::check(rev, task.formula);
  const StateSet& ok = sat.at(*task.formula);
  auto dead = [&](NodeId n) {
    const CfgNode& node = cfg.nodes[static_cast<std::size_t>(n)];
    return (node.kind == NodeKind::Stmt || node.kind == NodeKind::Cond) && !ok.test(n);
  };
  for (const CfgNode& n : cfg.nodes) {
    if (!dead(n.id)) continue;
    bool first = true;
    for (NodeId p : cfg.predecessors(n.id))
      if (p < n.id && dead(p)) first = false;
    if (!first) continue;
    Diagnostic d = make(*task.check, cfg, task.variable, n.loc);
    d.trace.push_back(n.loc);
    d.confidence = Confidence::Confirmed;
    out.push_back(std::move(d));
  }
}

void run_task(const spec::CheckTask& task, const Cfg& cfg, const Config& config, std::vector<Diagnostic>& out) {
  const spec::CheckSpec& check = *task.check;
  if (check.report == spec::ReportMode::Unreached) {
    unreached(task, cfg, out);
    return;
  }
  ctl::SatSets sat = ctl::check(task.kripke, task.formula);
  if (!sat.holds(*task.formula, cfg.entry)) return;
  ctl::WitnessTrace trace;
  Confidence conf = Confidence::Unconfirmed;
  if (check.refine) {
    refine::Refinement r = refine::refine_diagnostic(task, cfg, sat, cfg.entry, config.max_witnesses);
    if (r.outcome == refine::Outcome::Suppressed || !r.trace) return;
    trace = *r.trace;
    if (r.outcome == refine::Outcome::Confirmed) conf = Confidence::Confirmed;
  } else {
    auto w = ctl::witness(task.kripke, sat, task.formula, cfg.entry);
    if (!w) return;
    trace = *w;
  }
  Diagnostic d = make(check, cfg, task.variable, cfg.nodes[static_cast<std::size_t>(report_node(cfg, task, trace))].loc);
  d.trace = trace_locations(cfg, trace);
  d.confidence = conf;
  out.push_back(std::move(d));
}

FunctionResult analyze_function(const ast::TranslationUnit& tu, const ast::FunctionDef& f, const CheckSet& checks,
                                const SummaryMap& summaries, const std::optional<FunctionSummary>& fixed,
                                const Config& config) {
  FunctionResult r;
  Cfg cfg = build_cfg(tu, f);
  r.summary = fixed ? *fixed : summarize(cfg, summaries);
  spec::Augmentation aug = apply_summaries(cfg, summaries);
  auto ts = kripke_transitions(cfg);
  for (const auto& check : checks.specs) {
    spec::Instantiation inst = spec::instantiate(check, cfg, ts, aug);
    r.created += inst.created;
    r.skipped += inst.skipped;
    r.checked += static_cast<long>(inst.tasks.size());
    for (const auto& task : inst.tasks) run_task(task, cfg, config, r.diagnostics);
  }
  if (!checks.interval_checks.empty()) {
    intervals::AbsResult ar = intervals::analyze(cfg);
    for (auto& d : intervals::interval_checks(cfg, ar))
      if (checks.interval_checks.count(d.check_id)) r.diagnostics.push_back(std::move(d));
  }
  return r;
}

// Cached locations are relative to the function header so that entries
// survive edits elsewhere in the file.
ordered_json rel(const SourceLocation& l, const ast::FunctionDef& f) {
  int dl = l.line - f.loc.line;
  return ordered_json::array({dl, dl == 0 ? l.column - f.loc.column : l.column});
}

SourceLocation absolute(const ordered_json& j, const ast::FunctionDef& f, const std::string& file) {
  int dl = j.at(0).get<int>();
  int col = j.at(1).get<int>();
  return {file, f.loc.line + dl, dl == 0 ? col + f.loc.column : col};
}

std::string encode(const FunctionResult& r, const ast::FunctionDef& f) {
  ordered_json j;
  ordered_json ds = ordered_json::array();
  for (const auto& d : r.diagnostics) {
    ordered_json t = ordered_json::array();
    for (const auto& l : d.trace) t.push_back(rel(l, f));
    ds.push_back({{"check", d.check_id},
                  {"severity", to_string(d.severity)},
                  {"loc", rel(d.loc, f)},
                  {"message", d.message},
                  {"confidence", to_string(d.confidence)},
                  {"trace", std::move(t)}});
  }
  j["diagnostics"] = std::move(ds);
  j["summary"] = {{"function", r.summary.function},
                  {"may_return_null", r.summary.may_return_null},
                  {"always_frees", r.summary.always_frees},
                  {"derefs_param_unchecked", r.summary.derefs_param_unchecked}};
  j["tasks"] = {{"created", r.created}, {"skipped", r.skipped}, {"checked", r.checked}};
  return j.dump();
}

FunctionResult decode(const std::string& payload, const ast::FunctionDef& f, const std::string& file) {
  ordered_json j = ordered_json::parse(payload);
  FunctionResult r;
  for (const auto& d : j.at("diagnostics")) {
    Diagnostic x;
    x.check_id = d.at("check").get<std::string>();
    auto sev = parse_severity(d.at("severity").get<std::string>());
    if (!sev) throw std::runtime_error("bad severity");
    x.severity = *sev;
    x.loc = absolute(d.at("loc"), f, file);
    x.message = d.at("message").get<std::string>();
    std::string c = d.at("confidence").get<std::string>();
    if (c != "confirmed" && c != "unconfirmed") throw std::runtime_error("bad confidence");
    x.confidence = c == "confirmed" ? Confidence::Confirmed : Confidence::Unconfirmed;
    for (const auto& l : d.at("trace")) x.trace.push_back(absolute(l, f, file));
    x.function = f.name;
    r.diagnostics.push_back(std::move(x));
  }
  const auto& s = j.at("summary");
  r.summary.function = s.at("function").get<std::string>();
  if (r.summary.function != f.name) throw std::runtime_error("summary of another function");
  r.summary.may_return_null = s.at("may_return_null").get<bool>();
  r.summary.always_frees = s.at("always_frees").get<std::set<int>>();
  r.summary.derefs_param_unchecked = s.at("derefs_param_unchecked").get<std::set<int>>();
  r.created = j.at("tasks").at("created").get<long>();
  r.skipped = j.at("tasks").at("skipped").get<long>();
  r.checked = j.at("tasks").at("checked").get<long>();
  return r;
}

std::string globals_text(const ast::TranslationUnit& tu) {
  std::ostringstream os;
  for (const auto& g : tu.globals) {
    auto d = g->as<ast::VarDecl>();
    if (!d) continue;
    os << static_cast<int>(d->type.kind) << ' ' << d->type.array_size << ' ' << d->name;
    if (d->init) os << " = " << pretty_print(*d->init);
    os << ";\n";
  }
  return os.str();
}

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) guarded(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Job {
  std::size_t unit = 0;
  const ast::FunctionDef* f = nullptr;
  bool recursive = false;
  std::string key;
  std::optional<FunctionResult> result;
};

}  // namespace

Counters& Counters::operator+=(const Counters& o) {
  functions += o.functions;
  tasks_created += o.tasks_created;
  tasks_checked += o.tasks_checked;
  tasks_skipped += o.tasks_skipped;
  cache_hits += o.cache_hits;
  cache_misses += o.cache_misses;
  analyzed.insert(analyzed.end(), o.analyzed.begin(), o.analyzed.end());
  events.insert(events.end(), o.events.begin(), o.events.end());
  return *this;
}

std::string canonical_checks(const std::vector<spec::CheckSpec>& checks, const std::set<std::string>& interval_checks) {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << "check " << c.id << " severity=" << to_string(c.severity) << " forall=" << c.metavar << ":"
       << static_cast<int>(c.quantifier) << "\n";
    for (const auto& l : c.labels) {
      os << "  label " << l.name << " := " << spec::to_string(l.pattern.kind) << "(";
      for (const auto& a : l.pattern.args)
        os << static_cast<int>(a.kind) << ":" << a.text << ":" << a.value << ",";
      os << ")\n";
    }
    os << "  property " << ctl::to_string(*c.property) << "\n  refine=" << c.refine
       << " report=" << static_cast<int>(c.report) << "\n  message " << c.message << "\n";
  }
  for (const auto& i : interval_checks) os << "interval " << i << "\n";
  return os.str();
}

CheckSet default_check_set() {
  return {spec::builtin_checks(), {kBufferOverrun, kDivByZero}};
}

std::vector<Diagnostic> finalize(std::vector<Diagnostic> ds) {
  std::stable_sort(ds.begin(), ds.end(), diagnostic_less);
  std::vector<Diagnostic> out;
  std::map<std::tuple<std::string, SourceLocation, std::string>, std::size_t> seen;
  for (auto& d : ds) {
    auto k = std::make_tuple(d.check_id, d.loc, d.function);
    auto it = seen.find(k);
    if (it == seen.end()) {
      seen.emplace(std::move(k), out.size());
      out.push_back(std::move(d));
    } else if (d.confidence > out[it->second].confidence) {
      out[it->second] = std::move(d);
    }
  }
  return out;
}

RunResult analyze(const std::vector<const ast::TranslationUnit*>& units, const CheckSet& checks, Cache* cache,
                  const Config& config) {
  RunResult out;
  const std::string check_hash = sha256_hex(canonical_checks(checks.specs, checks.interval_checks));
  unsigned jobs = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());

  std::vector<SummaryMap> summaries(units.size());
  std::vector<std::vector<std::vector<std::vector<std::string>>>> levels;
  std::vector<std::map<std::string, std::set<std::string>>> graphs;
  std::vector<std::string> globals;
  std::size_t depth = 0;
  for (const auto* tu : units) {
    levels.push_back(component_levels(*tu));
    graphs.push_back(call_graph(*tu));
    globals.push_back(globals_text(*tu));
    depth = std::max(depth, levels.back().size());
  }

  for (std::size_t lv = 0; lv < depth; ++lv) {
    std::vector<Job> batch;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (lv >= levels[u].size()) continue;
      const auto& tu = *units[u];
      for (const auto& comp : levels[u][lv]) {
        bool recursive = comp.size() > 1 || graphs[u].at(comp.front()).count(comp.front());
        for (const auto& name : comp) {
          const ast::FunctionDef* f = tu.find_function(name);
          if (recursive) summaries[u][name] = pessimistic_summary(*f);
          batch.push_back({u, f, recursive, {}, std::nullopt});
        }
      }
    }

    for (auto& job : batch) {
      const auto& tu = *units[job.unit];
      std::ostringstream key;
      key << kToolVersion << "\nchecks " << check_hash << "\nmax-witnesses " << config.max_witnesses
          << "\nglobals\n" << globals[job.unit] << "callees\n";
      for (const auto& callee : graphs[job.unit].at(job.f->name))
        key << canonical(summaries[job.unit].at(callee)) << "\n";
      key << "function\n" << tu.function_text(*job.f);
      job.key = sha256_hex(key.str());
      if (!cache) continue;
      if (auto payload = cache->lookup(job.key)) {
        try {
          job.result = decode(*payload, *job.f, tu.file);
        } catch (const std::exception& e) {
          cache->invalidate(job.key, e.what());
        }
      }
    }

    std::vector<std::size_t> misses;
    for (std::size_t i = 0; i < batch.size(); ++i)
      if (!batch[i].result) misses.push_back(i);
    parallel_for(misses.size(), jobs, [&](std::size_t m) {
      Job& job = batch[misses[m]];
      std::optional<FunctionSummary> fixed;
      if (job.recursive) fixed = summaries[job.unit].at(job.f->name);
      job.result = analyze_function(*units[job.unit], *job.f, checks, summaries[job.unit], fixed, config);
    });

    for (std::size_t i = 0; i < batch.size(); ++i) {
      Job& job = batch[i];
      const auto& tu = *units[job.unit];
      FunctionResult& r = *job.result;
      bool hit = std::find(misses.begin(), misses.end(), i) == misses.end();
      ++out.counters.functions;
      if (hit) {
        ++out.counters.cache_hits;
      } else {
        ++out.counters.cache_misses;
        out.counters.analyzed.push_back(tu.file + ":" + job.f->name);
        if (cache) cache->store(job.key, encode(r, *job.f));
      }
      out.counters.tasks_created += r.created;
      out.counters.tasks_skipped += r.skipped;
      out.counters.tasks_checked += r.checked;
      if (!job.recursive) summaries[job.unit][job.f->name] = r.summary;
      for (auto& d : r.diagnostics) out.diagnostics.push_back(std::move(d));
    }
  }
  if (cache) out.counters.events = cache->events();
  out.diagnostics = finalize(std::move(out.diagnostics));
  return out;
}

RunResult analyze_unit(const ast::TranslationUnit& tu, const CheckSet& checks, Cache* cache, const Config& config) {
  return analyze({&tu}, checks, cache, config);
}

}  // namespace ctllint::engine
