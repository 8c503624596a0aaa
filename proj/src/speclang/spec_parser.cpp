#include <cctype>
#include <charconv>

#include "ctllint/speclang.hpp"

namespace ctllint::spec {
namespace {

struct PatternSig {
  const char* name;
  PatternKind kind;
  int arity;
};

constexpr PatternSig kPatterns[] = {
    {"call", PatternKind::Call, 1},           {"malloc_assign", PatternKind::MallocAssign, 1},
    {"null_assign", PatternKind::NullAssign, 1}, {"assign_to", PatternKind::AssignTo, 1},
    {"free_of", PatternKind::FreeOf, 1},      {"deref", PatternKind::Deref, 1},
    {"use", PatternKind::Use, 1},             {"decl_uninit", PatternKind::DeclUninit, 1},
    {"null_check", PatternKind::NullCheck, 1}, {"index_of", PatternKind::IndexOf, 2},
    {"at_entry", PatternKind::AtEntry, 0},    {"at_exit", PatternKind::AtExit, 0},
};

const PatternSig& sig(PatternKind k) {
  for (const auto& s : kPatterns)
    if (s.kind == k) return s;
  return kPatterns[0];
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class SpecParser {
 public:
  SpecParser(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<CheckSpec> run() {
    std::vector<CheckSpec> out;
    skip();
    if (at_end()) fail("expected 'check'");
    while (!at_end()) {
      CheckSpec c = check();
      for (const auto& prev : out)
        if (prev.id == c.id) fail_at(c.loc, "duplicate check id '" + c.id + "'");
      out.push_back(std::move(c));
      skip();
    }
    return out;
  }

 private:
  // ---- cursor ----
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '#' || (peek() == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/')) {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      return;
    }
  }

  SourceLocation here() const { return {file_, line_, col_}; }
  [[noreturn]] void fail(const std::string& msg) const { throw SpecError(here(), msg); }
  [[noreturn]] void fail_at(const SourceLocation& loc, const std::string& msg) const { throw SpecError(loc, msg); }

  std::string found() const {
    if (at_end()) return "end of input";
    std::size_t p = pos_;
    if (ident_char(text_[p]) || text_[p] == '$') {
      ++p;
      while (p < text_.size() && (ident_char(text_[p]) || text_[p] == '-')) ++p;
    } else {
      ++p;
    }
    return "'" + std::string(text_.substr(pos_, p - pos_)) + "'";
  }

  void expect(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) != tok) fail("expected '" + std::string(tok) + "', found " + found());
    for (std::size_t i = 0; i < tok.size(); ++i) advance();
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    for (std::size_t i = 0; i < tok.size(); ++i) advance();
    return true;
  }

  // Identifier; kebab-case dashes allowed when `dashes` is set.
  std::string ident(const char* what, bool dashes = false) {
    skip();
    if (!ident_start(peek())) fail(std::string("expected ") + what + ", found " + found());
    std::size_t start = pos_;
    while (!at_end() && (ident_char(peek()) || (dashes && peek() == '-'))) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string peek_word() {
    skip();
    std::size_t p = pos_;
    while (p < text_.size() && ident_char(text_[p])) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  // Keyword followed by ':' at the cursor (spaces allowed before the colon).
  bool clause_ahead(std::string_view kw) {
    skip();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t p = pos_ + kw.size();
    if (p < text_.size() && ident_char(text_[p])) return false;
    while (p < text_.size() && (text_[p] == ' ' || text_[p] == '\t')) ++p;
    return p < text_.size() && text_[p] == ':' && (p + 1 >= text_.size() || text_[p + 1] != '=');
  }

  std::string metavar() {
    skip();
    if (peek() != '$') fail("expected metavariable, found " + found());
    std::size_t start = pos_;
    advance();
    if (!ident_start(peek())) fail("malformed metavariable");
    while (!at_end() && ident_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  // ---- grammar ----
  CheckSpec check() {
    CheckSpec c;
    skip();
    c.loc = here();
    if (peek_word() != "check") fail("expected 'check', found " + found());
    expect("check");
    c.id = ident("check id", true);
    expect("{");

    if (!clause_ahead("severity")) fail("expected 'severity:', found " + found());
    expect("severity");
    expect(":");
    SourceLocation sev_loc = (skip(), here());
    std::string sev = ident("severity");
    auto s = parse_severity(sev);
    if (!s) fail_at(sev_loc, "unknown severity '" + sev + "' (expected error, warning or info)");
    c.severity = *s;

    if (peek_word() == "forall") {
      expect("forall");
      c.metavar = metavar();
      expect(":");
      SourceLocation q_loc = (skip(), here());
      std::string q = ident("quantifier type");
      if (q == "pointer") c.quantifier = Quantifier::Pointer;
      else if (q == "array") c.quantifier = Quantifier::Array;
      else if (q == "any") c.quantifier = Quantifier::Any;
      else fail_at(q_loc, "unknown quantifier type '" + q + "' (expected pointer, array or any)");
    }

    while (peek_word() == "label" && !clause_ahead("label")) c.labels.push_back(label(c));
    if (c.labels.empty()) fail("expected 'label', found " + found());

    if (!clause_ahead("property")) fail("expected 'property:', found " + found());
    expect("property");
    expect(":");
    c.property = property(c);

    bool seen_refine = false, seen_report = false, seen_message = false;
    for (;;) {
      if (clause_ahead("refine")) {
        if (seen_refine) fail("duplicate 'refine:' clause");
        seen_refine = true;
        expect("refine");
        expect(":");
        SourceLocation at = (skip(), here());
        std::string v = ident("'on' or 'off'");
        if (v != "on" && v != "off") fail_at(at, "expected 'on' or 'off', found '" + v + "'");
        c.refine = v == "on";
      } else if (clause_ahead("report")) {
        if (seen_report) fail("duplicate 'report:' clause");
        seen_report = true;
        expect("report");
        expect(":");
        SourceLocation at = (skip(), here());
        std::string v = ident("'entry' or 'unreached'");
        if (v == "entry") c.report = ReportMode::Entry;
        else if (v == "unreached") c.report = ReportMode::Unreached;
        else fail_at(at, "expected 'entry' or 'unreached', found '" + v + "'");
      } else if (clause_ahead("message")) {
        if (seen_message) fail("duplicate 'message:' clause");
        seen_message = true;
        expect("message");
        expect(":");
        c.message = string_literal();
      } else {
        break;
      }
    }
    expect("}");

    if (!c.metavar.empty()) {
      bool used = false;
      for (const auto& l : c.labels) used = used || l.pattern.metavars().count(c.metavar);
      if (!used) fail_at(c.loc, "metavariable '" + c.metavar + "' is not used by any label");
    }
    if (c.message.empty())
      c.message = c.metavar.empty() ? "property '" + c.id + "' violated" : "property '" + c.id + "' violated for '" +
                                                                               c.metavar + "'";
    return c;
  }

  LabelDecl label(const CheckSpec& c) {
    expect("label");
    SourceLocation at = (skip(), here());
    LabelDecl d;
    d.name = ident("label name");
    if (c.label(d.name)) fail_at(at, "duplicate label '" + d.name + "'");
    expect(":=");
    d.pattern = pattern(c);
    return d;
  }

  Pattern pattern(const CheckSpec& c) {
    SourceLocation at = (skip(), here());
    std::string name = ident("pattern name");
    auto kind = pattern_kind(name);
    if (!kind) fail_at(at, "unknown pattern '" + name + "'");
    Pattern p;
    p.kind = *kind;
    expect("(");
    skip();
    if (peek() != ')') {
      do p.args.push_back(argument(c));
      while (eat(","));
    }
    expect(")");

    const int arity = sig(p.kind).arity;
    if (static_cast<int>(p.args.size()) != arity)
      fail_at(at, "pattern '" + name + "' takes " + std::to_string(arity) + " argument" + (arity == 1 ? "" : "s"));
    switch (p.kind) {
      case PatternKind::Call:
        if (p.args[0].kind != PatternArg::Ident) fail_at(at, "call() expects a function name");
        break;
      case PatternKind::IndexOf:
        if (p.args[0].kind != PatternArg::MetaVar) fail_at(at, "index_of() expects a metavariable as array");
        break;
      case PatternKind::AtEntry:
      case PatternKind::AtExit: break;
      default:
        if (p.args[0].kind != PatternArg::MetaVar) fail_at(at, "pattern '" + name + "' expects a metavariable");
    }
    return p;
  }

  PatternArg argument(const CheckSpec& c) {
    skip();
    SourceLocation at = here();
    PatternArg a;
    if (peek() == '$') {
      a.kind = PatternArg::MetaVar;
      a.text = metavar();
      if (a.text != c.metavar) fail_at(at, "unbound metavariable '" + a.text + "'");
    } else if (peek() == '_' && (pos_ + 1 >= text_.size() || !ident_char(text_[pos_ + 1]))) {
      advance();
      a.kind = PatternArg::Wildcard;
    } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-') {
      std::size_t start = pos_;
      advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      std::string_view digits = text_.substr(start, pos_ - start);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), a.value);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) fail_at(at, "malformed integer argument");
      a.kind = PatternArg::Integer;
    } else if (ident_start(peek())) {
      a.kind = PatternArg::Ident;
      a.text = ident("argument");
    } else {
      fail("expected pattern argument, found " + found());
    }
    return a;
  }

  std::string string_literal() {
    skip();
    if (peek() != '"') fail("expected string, found " + found());
    advance();
    std::string out;
    while (!at_end() && peek() != '"') {
      if (peek() == '\n') fail("unterminated string");
      if (peek() == '\\' && pos_ + 1 < text_.size()) advance();
      out += peek();
      advance();
    }
    if (at_end()) fail("unterminated string");
    advance();
    return out;
  }

  ctl::FormulaPtr property(const CheckSpec& c) {
    skip();
    const std::size_t start = pos_;
    const int line = line_, col = col_;
    // The formula extends to the closing brace or the next clause keyword.
    while (!at_end() && peek() != '}') {
      if (ident_start(peek()) && (pos_ == 0 || !ident_char(text_[pos_ - 1])) &&
          (clause_ahead("refine") || clause_ahead("report") || clause_ahead("message")))
        break;
      advance();
    }
    std::string_view body = text_.substr(start, pos_ - start);
    ctl::FormulaPtr f;
    try {
      f = ctl::parse(body);
    } catch (const ctl::SyntaxError& e) {
      throw SpecError(offset_loc(start, line, col, e.offset()), std::string("malformed CTL: ") + e.what());
    }
    for (const auto& a : ctl::atoms(*f)) {
      if (!c.label(a)) {
        std::size_t at = body.find(a);
        throw SpecError(offset_loc(start, line, col, at == std::string_view::npos ? 0 : at),
                        "unknown label '" + a + "' in property");
      }
    }
    return f;
  }

  SourceLocation offset_loc(std::size_t start, int line, int col, std::size_t off) const {
    for (std::size_t i = start; i < start + off && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {file_, line, col};
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace

const char* to_string(PatternKind k) { return sig(k).name; }

std::optional<PatternKind> pattern_kind(std::string_view name) {
  for (const auto& s : kPatterns)
    if (name == s.name) return s.kind;
  return std::nullopt;
}

std::set<std::string> Pattern::metavars() const {
  std::set<std::string> out;
  for (const auto& a : args)
    if (a.kind == PatternArg::MetaVar) out.insert(a.text);
  return out;
}

const LabelDecl* CheckSpec::label(std::string_view name) const {
  for (const auto& l : labels)
    if (l.name == name) return &l;
  return nullptr;
}

std::vector<CheckSpec> parse_checks(std::string_view text, const std::string& file) {
  return SpecParser(text, file).run();
}

CheckSpec parse_check(std::string_view text, const std::string& file) { return parse_checks(text, file).front(); }

const std::vector<CheckSpec>& builtin_checks() {
  static const std::vector<CheckSpec> checks = parse_checks(builtin_source(), "builtin.chk");
  return checks;
}

}  // namespace ctllint::spec
