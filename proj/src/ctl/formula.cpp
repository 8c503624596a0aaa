#include <algorithm>
#include <cctype>

#include "ctllint/ctl.hpp"

namespace ctllint::ctl {
namespace {

FormulaPtr make(Op op, FormulaPtr l = nullptr, FormulaPtr r = nullptr) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::True: return "true";
    case Op::Prop: return "prop";
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::AX: return "AX";
    case Op::EX: return "EX";
    case Op::AF: return "AF";
    case Op::EF: return "EF";
    case Op::AG: return "AG";
    case Op::EG: return "EG";
    case Op::AU: return "A";
    case Op::EU: return "E";
  }
  return "?";
}

void key_into(const Formula& f, std::string& out) {
  switch (f.op) {
    case Op::True: out += "T"; return;
    case Op::Prop:
      out += "'";
      out += f.name;
      out += "'";
      return;
    default: break;
  }
  out += op_name(f.op);
  if (f.op == Op::AU || f.op == Op::EU) out += "U";
  out += "(";
  key_into(*f.lhs, out);
  if (f.rhs) {
    out += ",";
    key_into(*f.rhs, out);
  }
  out += ")";
}

bool is_connective(Op op) { return op == Op::And || op == Op::Or || op == Op::Implies; }

std::string operand(const Formula& f) {
  std::string s = to_string(f);
  return is_connective(f.op) ? "(" + s + ")" : s;
}

// ---- infix parser ----
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr run() {
    auto f = implication();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "' in formula");
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) {
      skip();
      throw SyntaxError(pos_, "expected '" + std::string(tok) + "' in formula");
    }
  }
  std::string peek_word() {
    skip();
    std::size_t p = pos_;
    while (p < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_')) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  FormulaPtr implication() {
    auto lhs = disjunction();
    if (eat("->")) return implies(lhs, implication());
    return lhs;
  }
  FormulaPtr disjunction() {
    auto lhs = conjunction();
    for (;;) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        lhs = or_(lhs, conjunction());
      } else {
        return lhs;
      }
    }
  }
  FormulaPtr conjunction() {
    auto lhs = unary();
    for (;;) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '&') {
        ++pos_;
        lhs = and_(lhs, unary());
      } else {
        return lhs;
      }
    }
  }
  FormulaPtr unary() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of formula");
    if (eat("!")) return not_(unary());
    if (eat("(")) {
      auto f = implication();
      expect(")");
      return f;
    }
    std::string w = peek_word();
    if (w.empty()) throw SyntaxError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "' in formula");
    static const std::pair<const char*, FormulaPtr (*)(FormulaPtr)> temporal[] = {
        {"AX", ax}, {"EX", ex}, {"AF", af}, {"EF", ef}, {"AG", ag}, {"EG", eg}};
    for (auto [name, fn] : temporal) {
      if (w == name) {
        pos_ += w.size();
        return fn(unary());
      }
    }
    if (w == "A" || w == "E") {
      std::size_t at = pos_;
      pos_ += 1;
      if (!eat("[")) throw SyntaxError(at, "expected '[' after '" + w + "'");
      auto l = implication();
      skip();
      if (peek_word() != "U") throw SyntaxError(pos_, "expected 'U' in until formula");
      pos_ += 1;
      auto r = implication();
      expect("]");
      return w == "A" ? au(l, r) : eu(l, r);
    }
    if (w == "U") throw SyntaxError(pos_, "'U' outside of an until formula");
    pos_ += w.size();
    if (w == "true") return tt();
    if (w == "false") return not_(tt());
    if (std::isdigit(static_cast<unsigned char>(w[0]))) throw SyntaxError(pos_ - w.size(), "malformed proposition name");
    return prop(w);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

FormulaPtr negate(const FormulaPtr& f) { return f->op == Op::Not ? f->lhs : not_(f); }

}  // namespace

bool Formula::is_unary() const {
  switch (op) {
    case Op::Not:
    case Op::AX:
    case Op::EX:
    case Op::AF:
    case Op::EF:
    case Op::AG:
    case Op::EG:
      return true;
    default:
      return false;
  }
}

bool Formula::is_binary() const { return is_connective(op) || op == Op::AU || op == Op::EU; }

FormulaPtr tt() {
  static const FormulaPtr t = make(Op::True);
  return t;
}
FormulaPtr prop(std::string name) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Prop;
  f->name = std::move(name);
  return f;
}
FormulaPtr not_(FormulaPtr f) { return make(Op::Not, std::move(f)); }
FormulaPtr and_(FormulaPtr a, FormulaPtr b) { return make(Op::And, std::move(a), std::move(b)); }
FormulaPtr or_(FormulaPtr a, FormulaPtr b) { return make(Op::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return make(Op::Implies, std::move(a), std::move(b)); }
FormulaPtr ax(FormulaPtr f) { return make(Op::AX, std::move(f)); }
FormulaPtr ex(FormulaPtr f) { return make(Op::EX, std::move(f)); }
FormulaPtr af(FormulaPtr f) { return make(Op::AF, std::move(f)); }
FormulaPtr ef(FormulaPtr f) { return make(Op::EF, std::move(f)); }
FormulaPtr ag(FormulaPtr f) { return make(Op::AG, std::move(f)); }
FormulaPtr eg(FormulaPtr f) { return make(Op::EG, std::move(f)); }
FormulaPtr au(FormulaPtr a, FormulaPtr b) { return make(Op::AU, std::move(a), std::move(b)); }
FormulaPtr eu(FormulaPtr a, FormulaPtr b) { return make(Op::EU, std::move(a), std::move(b)); }

std::string key(const Formula& f) {
  std::string out;
  key_into(f, out);
  return out;
}

std::string to_string(const Formula& f) {
  switch (f.op) {
    case Op::True: return "true";
    case Op::Prop: return f.name;
    case Op::Not: return "!" + operand(*f.lhs);
    case Op::And: return operand(*f.lhs) + " & " + operand(*f.rhs);
    case Op::Or: return operand(*f.lhs) + " | " + operand(*f.rhs);
    case Op::Implies: return operand(*f.lhs) + " -> " + operand(*f.rhs);
    case Op::AU: return "A[" + to_string(*f.lhs) + " U " + to_string(*f.rhs) + "]";
    case Op::EU: return "E[" + to_string(*f.lhs) + " U " + to_string(*f.rhs) + "]";
    default: return std::string(op_name(f.op)) + " " + operand(*f.lhs);
  }
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.op != b.op || a.name != b.name) return false;
  if (!a.lhs != !b.lhs || !a.rhs != !b.rhs) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  if (f.op == Op::Prop) out.insert(f.name);
  if (f.lhs) out.merge(atoms(*f.lhs));
  if (f.rhs) out.merge(atoms(*f.rhs));
  return out;
}

int depth(const Formula& f) {
  if (f.op == Op::True || f.op == Op::Prop) return 0;
  int d = f.lhs ? depth(*f.lhs) : 0;
  if (f.rhs) d = std::max(d, depth(*f.rhs));
  return d + 1;
}

FormulaPtr parse(std::string_view text) { return Parser(text).run(); }

FormulaPtr normalize(const FormulaPtr& f) {
  switch (f->op) {
    case Op::True:
    case Op::Prop:
      return f;
    case Op::Not: return negate(normalize(f->lhs));
    case Op::And: return and_(normalize(f->lhs), normalize(f->rhs));
    case Op::Or: return negate(and_(negate(normalize(f->lhs)), negate(normalize(f->rhs))));
    case Op::Implies: return negate(and_(normalize(f->lhs), negate(normalize(f->rhs))));
    case Op::EX: return ex(normalize(f->lhs));
    case Op::AX: return negate(ex(negate(normalize(f->lhs))));
    case Op::EF: return eu(tt(), normalize(f->lhs));
    case Op::AG: return negate(eu(tt(), negate(normalize(f->lhs))));
    case Op::EG: return eg(normalize(f->lhs));
    case Op::AF: return negate(eg(negate(normalize(f->lhs))));
    case Op::EU: return eu(normalize(f->lhs), normalize(f->rhs));
    case Op::AU: {
      // A[a U b] == !(E[!b U (!a & !b)] | EG !b)
      auto na = negate(normalize(f->lhs));
      auto nb = negate(normalize(f->rhs));
      return and_(negate(eu(nb, and_(na, nb))), negate(eg(nb)));
    }
  }
  return f;
}

bool is_normal(const Formula& f) {
  switch (f.op) {
    case Op::True:
    case Op::Prop:
      return true;
    case Op::Not:
    case Op::EX:
    case Op::EG:
      return is_normal(*f.lhs);
    case Op::And:
    case Op::EU:
      return is_normal(*f.lhs) && is_normal(*f.rhs);
    default:
      return false;
  }
}

}  // namespace ctllint::ctl
