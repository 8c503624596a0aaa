#include "program_gen.hpp"

#include <set>
#include <sstream>
#include <vector>

namespace ctllint::testing {
namespace {

class Gen {
 public:
  Gen(std::mt19937_64& rng, const GenOptions& o) : rng_(rng), o_(o) {}

  std::string unit() {
    std::ostringstream os;
    if (o_.pointers) os << "int g_count = 0;\n\n";
    for (int f = 0; f < o_.functions; ++f) {
      function(os, f);
      os << "\n";
    }
    return os.str();
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int pct) { return pick(0, 99) < pct; }
  std::string ind() const { return std::string(static_cast<std::size_t>(2 * indent_), ' '); }

  std::string int_var() {
    std::vector<std::string> pool;
    for (const auto& v : ints_)
      if (!locked_.count(v)) pool.push_back(v);
    return pool[static_cast<std::size_t>(pick(0, static_cast<int>(pool.size()) - 1))];
  }
  std::string any_int() { return ints_[static_cast<std::size_t>(pick(0, static_cast<int>(ints_.size()) - 1))]; }

  std::string atom() {
    if (chance(40)) return std::to_string(pick(-5, 20));
    return any_int();
  }

  std::string expr(int depth) {
    if (depth <= 0 || chance(35)) return atom();
    switch (pick(0, 6)) {
      case 0: return "(" + expr(depth - 1) + " + " + expr(depth - 1) + ")";
      case 1: return "(" + expr(depth - 1) + " - " + expr(depth - 1) + ")";
      case 2: return "(" + expr(depth - 1) + " * " + std::to_string(pick(-3, 3)) + ")";
      case 3: return "(" + expr(depth - 1) + " / " + std::to_string(pick(1, 7)) + ")";
      case 4: return "(" + expr(depth - 1) + " % " + std::to_string(pick(1, 7)) + ")";
      case 5: {
        std::string a = atom();
        return a[0] == '-' ? "-(" + a + ")" : "-" + a;
      }
      default:
        if (o_.arrays && !arrays_.empty()) return arrays_.front() + "[" + std::to_string(pick(0, 3)) + "]";
        return atom();
    }
  }

  std::string cond(int depth) {
    static const char* ops[] = {"<", "<=", ">", ">=", "==", "!="};
    std::string c = expr(1) + " " + ops[pick(0, 5)] + " " + expr(1);
    if (depth > 0 && chance(25)) return "(" + c + ") " + (chance(50) ? "&&" : "||") + " (" + cond(depth - 1) + ")";
    if (chance(10)) return "!(" + c + ")";
    return c;
  }

  void stmt(std::ostringstream& os, int depth, bool in_for) {
    int kind = pick(0, 99);
    if (depth < o_.max_depth && kind < 15) {
      os << ind() << "if (" << cond(1) << ") {\n";
      block(os, depth + 1, pick(1, 3), in_for);
      if (chance(50)) {
        os << ind() << "} else {\n";
        block(os, depth + 1, pick(1, 3), in_for);
      }
      os << ind() << "}\n";
      return;
    }
    if (depth < o_.max_depth && kind < 25) {
      std::string i = "i" + std::to_string(loops_++);
      int bound = pick(0, o_.max_loop_bound);
      if (chance(50)) {
        os << ind() << "int " << i << " = 0;\n";
        ints_.push_back(i);
        locked_.insert(i);
        os << ind() << "while (" << i << " < " << bound << ") {\n";
        block(os, depth + 1, pick(1, 3), false);
        ++indent_;
        os << ind() << i << " = " << i << " + 1;\n";
        --indent_;
        os << ind() << "}\n";
      } else {
        os << ind() << "int " << i << ";\n";
        ints_.push_back(i);
        locked_.insert(i);
        os << ind() << "for (" << i << " = 0; " << i << " < " << bound << "; " << i << "++) {\n";
        block(os, depth + 1, pick(1, 3), true);
        os << ind() << "}\n";
      }
      locked_.erase(i);
      return;
    }
    if (in_for && kind < 28) {
      os << ind() << (chance(50) ? "continue;\n" : "if (" + cond(0) + ") {\n" + ind() + "  break;\n" + ind() + "}\n");
      return;
    }
    if (o_.pointers && kind < 55) {
      pointer_stmt(os);
      return;
    }
    if (o_.arrays && !arrays_.empty() && kind < 32) {
      os << ind() << arrays_.front() << "[" << pick(0, 3) << "] = " << expr(2) << ";\n";
      return;
    }
    if (kind < 36) {
      os << ind() << int_var() << " += " << expr(1) << ";\n";
      return;
    }
    os << ind() << int_var() << " = " << expr(2) << ";\n";
  }

  void pointer_stmt(std::ostringstream& os) {
    const std::string p = ptrs_[static_cast<std::size_t>(pick(0, static_cast<int>(ptrs_.size()) - 1))];
    switch (pick(0, 7)) {
      case 0: os << ind() << p << " = malloc(" << pick(1, 8) << ");\n"; break;
      case 1: os << ind() << "if (" << p << " != 0) {\n" << ind() << "  *" << p << " = " << expr(1) << ";\n" << ind() << "}\n"; break;
      case 2: os << ind() << "free(" << p << ");\n" << ind() << p << " = 0;\n"; break;
      case 3: os << ind() << "if (" << p << ") {\n" << ind() << "  " << int_var() << " = *" << p << ";\n" << ind() << "}\n"; break;
      case 4:
        if (!callees_.empty()) {
          os << ind() << int_var() << " = " << callees_[static_cast<std::size_t>(pick(0, static_cast<int>(callees_.size()) - 1))]
             << "(" << atom() << ", " << p << ");\n";
          break;
        }
        [[fallthrough]];
      case 5: os << ind() << "g_count = g_count + 1;\n"; break;
      default: os << ind() << int_var() << " = " << expr(2) << ";\n"; break;
    }
  }

  void block(std::ostringstream& os, int depth, int n, bool in_for) {
    ++indent_;
    std::size_t scope = ints_.size();
    for (int i = 0; i < n; ++i) stmt(os, depth, in_for);
    ints_.resize(scope);
    --indent_;
  }

  void function(std::ostringstream& os, int index) {
    ints_ = {"a", "b"};
    locked_.clear();
    ptrs_.clear();
    arrays_.clear();
    loops_ = 0;
    std::string name = "f" + std::to_string(index);
    os << "int " << name << "(int a, " << (o_.pointers ? "int* q" : "int b") << ") {\n";
    if (o_.pointers) {
      ints_ = {"a"};
      ptrs_ = {"q"};
    }
    indent_ = 1;
    int locals = pick(2, 4);
    for (int i = 0; i < locals; ++i) {
      std::string v = "x" + std::to_string(i);
      os << ind() << "int " << v << " = " << atom() << ";\n";
      ints_.push_back(v);
    }
    if (o_.arrays && chance(50)) {
      os << ind() << "int arr[4];\n";
      for (int i = 0; i < 4; ++i) os << ind() << "arr[" << i << "] = " << pick(0, 9) << ";\n";
      arrays_.push_back("arr");
    }
    if (o_.pointers) {
      os << ind() << "int* p = 0;\n";
      ptrs_.push_back("p");
    }
    indent_ = 0;
    block(os, 0, o_.statements, false);
    indent_ = 1;
    if (o_.pointers) os << ind() << "if (p != 0) {\n" << ind() << "  free(p);\n" << ind() << "}\n";
    os << ind() << "return " << expr(1) << ";\n}\n";
    callees_.push_back(name);
  }

  std::mt19937_64& rng_;
  GenOptions o_;
  std::vector<std::string> ints_, ptrs_, arrays_, callees_;
  std::set<std::string> locked_;
  int indent_ = 0;
  int loops_ = 0;
};

}  // namespace

std::string generate_program(std::mt19937_64& rng, const GenOptions& o) { return Gen(rng, o).unit(); }

}  // namespace ctllint::testing
