#include "helpers.hpp"

#include "interp.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace ctllint::testing {

const Cfg& Program::cfg(const std::string& function) const {
  for (const auto& c : cfgs)
    if (c.function == function) return c;
  throw std::out_of_range("no function " + function);
}

Program compile(const std::string& source, const std::string& file) {
  Program p;
  p.tu = parse(source, file);
  auto errs = check_well_formed(p.tu);
  if (!errs.empty()) throw std::runtime_error(to_string(errs.front().loc) + ": " + errs.front().message);
  for (const auto& f : p.tu.functions) p.cfgs.push_back(build_cfg(p.tu, f));
  return p;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path fixture_dir() { return CTLLINT_FIXTURE_DIR; }

std::vector<FixtureSpec> load_fixtures() {
  std::vector<FixtureSpec> out;
  static const std::regex mark(R"(//\s*<-\s*([a-z-]+))");
  static const std::regex clean(R"(^//\s*clean:\s*([a-z-]+))");
  for (const auto& e : std::filesystem::directory_iterator(fixture_dir())) {
    if (e.path().extension() != ".c") continue;
    FixtureSpec f;
    f.path = e.path();
    std::istringstream in(read_text(e.path()));
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
      std::smatch m;
      if (std::regex_search(line, m, mark)) f.expected.emplace_back(m[1], n);
      if (std::regex_search(line, m, clean)) f.clean.push_back(m[1]);
      if (line.rfind("// infeasible", 0) == 0) f.infeasible = true;
    }
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return out;
}

NodeId find_node(const Cfg& cfg, const std::string& text) {
  for (const auto& n : cfg.nodes)
    if (describe(n) == text) return n.id;
  return -1;
}

std::vector<std::string> interval_violations(const Cfg& cfg, const intervals::AbsResult& r, const ExecResult& run) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < run.path.size(); ++i) {
    NodeId n = run.path[i];
    const auto& env = r.at[static_cast<std::size_t>(n)];
    if (env.is_bottom()) {
      out.push_back("node " + std::to_string(n) + " reached but bottom");
      continue;
    }
    const auto& st = run.states[i];
    for (std::size_t v = 0; v < st.size(); ++v) {
      if (!st[v]) continue;
      const auto& iv = env.get(static_cast<VarId>(v));
      if (!iv.contains(*st[v]))
        out.push_back("node " + std::to_string(n) + ": " + cfg.symbols.vars[v].name + "=" + std::to_string(*st[v]) +
                      " not in " + intervals::to_string(iv));
    }
  }
  return out;
}

}  // namespace ctllint::testing
