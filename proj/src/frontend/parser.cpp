#include "ctllint/parser.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <set>
#include <unordered_set>

namespace ctllint {
namespace {

using namespace ast;

enum class Tok { Ident, Number, Punct, Keyword, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
};

const std::unordered_set<std::string_view> kKeywords = {
    "int", "void", "if", "else", "while", "for", "return", "break", "continue", "NULL"};

// Reserved words of full C that fall outside the subset.
const std::unordered_set<std::string_view> kUnsupported = {
    "struct", "union", "enum",   "typedef", "goto",    "switch", "case",    "default",
    "do",     "char",  "float",  "double",  "long",    "short",  "unsigned", "signed",
    "const",  "static", "extern", "volatile", "register", "sizeof", "auto",   "inline",
    "class",  "template", "namespace", "new", "delete", "_Bool", "bool"};

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = col_;
      t.offset = pos_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (c == '#') fail("preprocessor directives are not supported");
      if (c == '"' || c == '\'') fail("string and character literals are not supported");
      if (std::isalpha(c) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        if (kUnsupported.count(t.text)) {
          throw ParseError(loc(t), "unsupported construct '" + t.text + "' (outside the MiniC subset)");
        }
        t.kind = kKeywords.count(t.text) ? Tok::Keyword : Tok::Ident;
      } else if (std::isdigit(c)) {
        std::size_t start = pos_;
        int base = 10;
        if (c == '0' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
          base = 16;
          advance();
          advance();
          start = pos_;
          while (pos_ < src_.size() && std::isxdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        } else {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        }
        if (pos_ < src_.size() &&
            (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '.')) {
          throw ParseError(loc(t), "malformed integer literal (suffixes and floating point are not supported)");
        }
        std::string_view digits = src_.substr(start, pos_ - start);
        if (digits.empty()) throw ParseError(loc(t), "malformed integer literal");
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.value, base);
        if (ec != std::errc()) throw ParseError(loc(t), "integer literal out of range");
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(t.offset, pos_ - t.offset));
      } else {
        static const char* two[] = {"<=", ">=", "==", "!=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%="};
        t.kind = Tok::Punct;
        for (const char* p : two) {
          if (src_.substr(pos_, 2) == p) {
            t.text = p;
            break;
          }
        }
        if (t.text.empty()) {
          static const std::string_view one = "(){}[];,=+-*/%<>!&";
          if (one.find(static_cast<char>(c)) == std::string_view::npos) {
            if (c >= 0x80) fail("unexpected non-ASCII byte");
            if (c == '|' || c == '^' || c == '~' || c == '?' || c == ':' || c == '.')
              fail(std::string("unsupported operator '") + static_cast<char>(c) + "'");
            fail("unexpected character");
          }
          t.text = std::string(1, static_cast<char>(c));
        }
        for (std::size_t i = 0; i < t.text.size(); ++i) advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  SourceLocation loc(const Token& t) const { return {file_, t.line, t.column}; }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError({file_, line_, col_}, msg); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        int l = line_, cl = col_;
        advance();
        advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) throw ParseError({file_, l, cl}, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::string& file) : toks_(std::move(toks)), file_(file) {}

  TranslationUnit parse_unit(std::string_view source) {
    TranslationUnit tu;
    tu.file = file_;
    tu.source = std::string(source);
    while (!at_end()) {
      const Token& start = peek();
      Type base = parse_base_type();
      Token name = expect_ident("expected identifier after type");
      if (is_punct("(")) {
        tu.functions.push_back(parse_function(start, base, name));
      } else {
        if (base.kind == TypeKind::Void) throw error(name, "variables cannot have type void");
        tu.globals.push_back(parse_var_decl_rest(start, base, name));
      }
    }
    return tu;
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_keyword(std::string_view k) const { return peek().kind == Tok::Keyword && peek().text == k; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  SourceLocation loc(const Token& t) const { return {file_, t.line, t.column}; }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  ParseError error(const Token& t, const std::string& msg) const { return ParseError(loc(t), msg); }

  Token expect_punct(std::string_view p) {
    if (!is_punct(p)) throw error(peek(), "expected '" + std::string(p) + "' but found " + describe(peek()));
    return next();
  }
  Token expect_ident(const std::string& msg) {
    if (peek().kind != Tok::Ident) throw error(peek(), msg + ", found " + describe(peek()));
    return next();
  }

  // ---- declarations ----
  Type parse_base_type() {
    if (is_keyword("int")) {
      next();
      if (is_punct("*")) {
        next();
        if (is_punct("*")) throw error(peek(), "multi-level pointers are not supported");
        return Type::pointer();
      }
      return Type::integer();
    }
    if (is_keyword("void")) {
      next();
      if (is_punct("*")) throw error(peek(), "void pointers are not supported");
      return Type::void_type();
    }
    throw error(peek(), "expected type ('int' or 'void') but found " + describe(peek()));
  }

  FunctionDef parse_function(const Token& start, Type ret, const Token& name) {
    FunctionDef f;
    f.name = name.text;
    f.return_type = ret;
    f.loc = loc(start);
    f.source_begin = start.offset;
    expect_punct("(");
    if (is_keyword("void") && peek(1).kind == Tok::Punct && peek(1).text == ")") {
      next();
    } else if (!is_punct(")")) {
      for (;;) {
        const Token& pstart = peek();
        if (!is_keyword("int")) throw error(peek(), "expected parameter type 'int' but found " + describe(peek()));
        Type t = parse_base_type();
        Token pname = expect_ident("expected parameter name");
        if (is_punct("[")) throw error(peek(), "array parameters are not supported");
        f.params.push_back(Param{pname.text, t, loc(pstart)});
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    if (is_punct(";")) throw error(peek(), "function declarations without a body are not supported");
    if (!is_punct("{")) throw error(peek(), "expected '{' but found " + describe(peek()));
    loop_depth_ = 0;
    f.body = parse_block();
    const Token& close = toks_[pos_ - 1];
    f.end_loc = loc(close);
    f.source_end = close.offset + 1;
    return f;
  }

  // After "int [*] name": optional array suffix, optional initializer, ';'.
  StmtPtr parse_var_decl_rest(const Token& start, Type t, const Token& name) {
    auto s = std::make_unique<Stmt>();
    s->loc = loc(start);
    VarDecl d;
    d.name = name.text;
    d.type = t;
    if (is_punct("[")) {
      if (t.kind != TypeKind::Int) throw error(peek(), "arrays of pointers are not supported");
      next();
      if (peek().kind != Tok::Number) throw error(peek(), "expected array size but found " + describe(peek()));
      Token n = next();
      if (n.value < 1) throw error(n, "array size must be positive");
      expect_punct("]");
      d.type = Type::array(n.value);
      if (is_punct("=")) throw error(peek(), "array initializers are not supported");
    }
    if (is_punct("=")) {
      next();
      d.init = parse_expr();
    }
    if (is_punct(",")) throw error(peek(), "multiple declarators per declaration are not supported");
    expect_punct(";");
    s->node = std::move(d);
    return s;
  }

  // ---- statements ----
  StmtPtr parse_block() {
    Token open = expect_punct("{");
    auto s = std::make_unique<Stmt>();
    s->loc = loc(open);
    Block b;
    while (!is_punct("}")) {
      if (at_end()) throw error(peek(), "expected '}' but found end of input");
      b.stmts.push_back(parse_stmt());
    }
    next();
    s->node = std::move(b);
    return s;
  }

  StmtPtr parse_stmt() {
    const Token& t = peek();
    if (is_punct("{")) return parse_block();
    if (is_punct(";")) {
      next();
      auto s = std::make_unique<Stmt>();
      s->loc = loc(t);
      s->node = Block{};
      return s;
    }
    if (t.kind == Tok::Keyword) {
      if (t.text == "int") {
        Token start = t;
        Type ty = parse_base_type();
        Token name = expect_ident("expected identifier after type");
        return parse_var_decl_rest(start, ty, name);
      }
      if (t.text == "void") throw error(t, "local variables cannot have type void");
      if (t.text == "if") return parse_if();
      if (t.text == "while") return parse_while();
      if (t.text == "for") return parse_for();
      if (t.text == "return") {
        next();
        auto s = std::make_unique<Stmt>();
        s->loc = loc(t);
        Return r;
        if (!is_punct(";")) r.value = parse_expr();
        expect_punct(";");
        s->node = std::move(r);
        return s;
      }
      if (t.text == "break" || t.text == "continue") {
        Token kw = next();
        if (loop_depth_ == 0) throw error(kw, "'" + kw.text + "' outside of a loop");
        expect_punct(";");
        auto s = std::make_unique<Stmt>();
        s->loc = loc(kw);
        if (kw.text == "break")
          s->node = Break{};
        else
          s->node = Continue{};
        return s;
      }
      if (t.text == "else") throw error(t, "'else' without a matching 'if'");
    }
    auto s = parse_simple_stmt();
    expect_punct(";");
    return s;
  }

  StmtPtr parse_if() {
    Token kw = next();
    expect_punct("(");
    auto cond = parse_expr();
    expect_punct(")");
    If node;
    node.cond = std::move(cond);
    node.then_branch = parse_stmt();
    if (is_keyword("else")) {
      next();
      node.else_branch = parse_stmt();
    }
    auto s = std::make_unique<Stmt>();
    s->loc = loc(kw);
    s->node = std::move(node);
    return s;
  }

  StmtPtr parse_while() {
    Token kw = next();
    expect_punct("(");
    While node;
    node.cond = parse_expr();
    expect_punct(")");
    ++loop_depth_;
    node.body = parse_stmt();
    --loop_depth_;
    auto s = std::make_unique<Stmt>();
    s->loc = loc(kw);
    s->node = std::move(node);
    return s;
  }

  StmtPtr parse_for() {
    Token kw = next();
    expect_punct("(");
    For node;
    if (!is_punct(";")) {
      if (is_keyword("int")) {
        Token start = peek();
        Type ty = parse_base_type();
        Token name = expect_ident("expected identifier after type");
        node.init = parse_var_decl_rest(start, ty, name);  // consumes ';'
      } else {
        node.init = parse_simple_stmt();
        expect_punct(";");
      }
    } else {
      next();
    }
    if (!is_punct(";")) node.cond = parse_expr();
    expect_punct(";");
    if (!is_punct(")")) node.step = parse_simple_stmt();
    expect_punct(")");
    ++loop_depth_;
    node.body = parse_stmt();
    --loop_depth_;
    auto s = std::make_unique<Stmt>();
    s->loc = loc(kw);
    s->node = std::move(node);
    return s;
  }

  static bool is_lvalue(const Expr& e) {
    if (e.as<VarRef>() || e.as<Index>()) return true;
    if (auto u = e.as<Unary>()) return u->op == UnaryOp::Deref;
    return false;
  }

  ExprPtr make_lit(const SourceLocation& l, std::int64_t v) {
    auto e = std::make_unique<Expr>();
    e->loc = l;
    e->node = IntLit{v};
    return e;
  }

  // Assignment or expression statement, without the trailing ';'.
  // `x++`, `x--`, `++x`, `--x` and `x op= e` desugar into plain assignments.
  StmtPtr parse_simple_stmt() {
    const Token start = peek();
    auto s = std::make_unique<Stmt>();
    s->loc = loc(start);
    if (is_punct("++") || is_punct("--")) {
      Token op = next();
      auto target = parse_unary();
      if (!is_lvalue(*target)) throw error(start, "operand of '" + op.text + "' is not assignable");
      s->node = desugar_update(std::move(target), op.text == "++" ? BinaryOp::Add : BinaryOp::Sub,
                               make_lit(loc(op), 1), loc(start));
      return s;
    }
    auto lhs = parse_expr();
    if (is_punct("=")) {
      Token eq = next();
      if (!is_lvalue(*lhs)) throw error(eq, "left-hand side of assignment is not assignable");
      Assign a;
      a.target = std::move(lhs);
      a.value = parse_expr();
      s->node = std::move(a);
      return s;
    }
    if (is_punct("++") || is_punct("--")) {
      Token op = next();
      if (!is_lvalue(*lhs)) throw error(op, "operand of '" + op.text + "' is not assignable");
      s->node = desugar_update(std::move(lhs), op.text == "++" ? BinaryOp::Add : BinaryOp::Sub,
                               make_lit(loc(op), 1), loc(start));
      return s;
    }
    static const std::pair<const char*, BinaryOp> compound[] = {
        {"+=", BinaryOp::Add}, {"-=", BinaryOp::Sub}, {"*=", BinaryOp::Mul}, {"/=", BinaryOp::Div}, {"%=", BinaryOp::Mod}};
    for (auto [p, op] : compound) {
      if (is_punct(p)) {
        Token t = next();
        if (!is_lvalue(*lhs)) throw error(t, "left-hand side of assignment is not assignable");
        auto rhs = parse_expr();
        s->node = desugar_update(std::move(lhs), op, std::move(rhs), loc(start));
        return s;
      }
    }
    ExprStmt es;
    es.expr = std::move(lhs);
    s->node = std::move(es);
    return s;
  }

  Assign desugar_update(ExprPtr target, BinaryOp op, ExprPtr rhs, const SourceLocation& l) {
    auto value = std::make_unique<Expr>();
    value->loc = l;
    value->node = Binary{op, clone(*target), std::move(rhs)};
    Assign a;
    a.target = std::move(target);
    a.value = std::move(value);
    return a;
  }

  // ---- expressions (precedence climbing) ----
  ExprPtr parse_expr() { return parse_binary(0); }

  static int precedence(const Token& t, BinaryOp& op) {
    if (t.kind != Tok::Punct) return -1;
    static const std::pair<const char*, std::pair<BinaryOp, int>> table[] = {
        {"||", {BinaryOp::LogOr, 1}}, {"&&", {BinaryOp::LogAnd, 2}}, {"==", {BinaryOp::Eq, 3}},
        {"!=", {BinaryOp::Ne, 3}},    {"<", {BinaryOp::Lt, 4}},      {"<=", {BinaryOp::Le, 4}},
        {">", {BinaryOp::Gt, 4}},     {">=", {BinaryOp::Ge, 4}},     {"+", {BinaryOp::Add, 5}},
        {"-", {BinaryOp::Sub, 5}},    {"*", {BinaryOp::Mul, 6}},     {"/", {BinaryOp::Div, 6}},
        {"%", {BinaryOp::Mod, 6}}};
    for (const auto& [p, info] : table) {
      if (t.text == p) {
        op = info.first;
        return info.second;
      }
    }
    return -1;
  }

  ExprPtr parse_binary(int min_prec) {
    auto lhs = parse_unary();
    for (;;) {
      BinaryOp op{};
      int prec = precedence(peek(), op);
      if (prec < 0 || prec < min_prec) break;
      next();
      auto rhs = parse_binary(prec + 1);
      auto e = std::make_unique<Expr>();
      e->loc = lhs->loc;
      e->node = Binary{op, std::move(lhs), std::move(rhs)};
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Punct) {
      UnaryOp op{};
      bool unary = true;
      if (t.text == "-")
        op = UnaryOp::Neg;
      else if (t.text == "!")
        op = UnaryOp::Not;
      else if (t.text == "*")
        op = UnaryOp::Deref;
      else if (t.text == "&")
        op = UnaryOp::AddrOf;
      else
        unary = false;
      if (unary) {
        Token tok = next();
        auto operand = parse_unary();
        if (op == UnaryOp::AddrOf && !operand->as<VarRef>())
          throw error(tok, "'&' is only supported on variables");
        auto e = std::make_unique<Expr>();
        e->loc = loc(tok);
        e->node = Unary{op, std::move(operand)};
        return e;
      }
      if (t.text == "++" || t.text == "--")
        throw error(t, "increment and decrement are only supported as statements");
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    auto e = parse_primary();
    while (is_punct("[")) {
      next();
      auto idx = parse_expr();
      expect_punct("]");
      auto ix = std::make_unique<Expr>();
      ix->loc = e->loc;
      ix->node = Index{std::move(e), std::move(idx)};
      e = std::move(ix);
    }
    if (is_punct("++") || is_punct("--")) {
      // Only legal at statement level; parse_simple_stmt handles it there.
      if (!statement_level_update_allowed()) throw error(peek(), "increment and decrement are only supported as statements");
    }
    return e;
  }

  bool statement_level_update_allowed() const {
    const Token& after = peek(1);
    return after.kind == Tok::Punct && (after.text == ";" || after.text == ")");
  }

  ExprPtr parse_primary() {
    Token t = peek();
    auto e = std::make_unique<Expr>();
    e->loc = loc(t);
    if (t.kind == Tok::Number) {
      next();
      e->node = IntLit{t.value};
      return e;
    }
    if (t.kind == Tok::Keyword && t.text == "NULL") {
      next();
      e->node = IntLit{0};
      return e;
    }
    if (t.kind == Tok::Ident) {
      next();
      if (is_punct("(")) {
        next();
        Call c;
        c.callee = t.text;
        if (!is_punct(")")) {
          for (;;) {
            c.args.push_back(parse_expr());
            if (is_punct(",")) {
              next();
              continue;
            }
            break;
          }
        }
        expect_punct(")");
        if ((c.callee == "malloc" || c.callee == "free") && c.args.size() != 1) {
          throw error(t, "'" + c.callee + "' expects exactly 1 argument, got " + std::to_string(c.args.size()));
        }
        e->node = std::move(c);
        return e;
      }
      e->node = VarRef{t.text};
      return e;
    }
    if (is_punct("(")) {
      next();
      auto inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    throw error(t, "expected expression but found " + describe(t));
  }

  std::vector<Token> toks_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int loop_depth_ = 0;
};

}  // namespace

ast::TranslationUnit parse(std::string_view source, const std::string& file) {
  Lexer lexer(source, file);
  Parser parser(lexer.run(), file);
  return parser.parse_unit(source);
}

}  // namespace ctllint
