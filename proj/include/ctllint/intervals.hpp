#pragma once

// Interval abstract interpretation over statement-level CFGs.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ctllint/cfg.hpp"
#include "ctllint/diagnostic.hpp"

namespace ctllint::intervals {

// Bounds saturate: INT64_MIN / INT64_MAX stand for -inf / +inf.
inline constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kPosInf = std::numeric_limits<std::int64_t>::max();

class Interval {
 public:
  Interval() = default;  // top
  Interval(std::int64_t lo, std::int64_t hi);  // bottom when lo > hi

  static Interval top() { return {}; }
  static Interval bottom();
  static Interval constant(std::int64_t v) { return {v, v}; }

  bool is_bottom() const { return bottom_; }
  bool is_top() const { return !bottom_ && lo_ == kNegInf && hi_ == kPosInf; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  bool is_constant() const { return !bottom_ && lo_ == hi_ && lo_ != kNegInf && lo_ != kPosInf; }
  bool contains(std::int64_t v) const { return !bottom_ && lo_ <= v && v <= hi_; }
  bool subset_of(const Interval& o) const;

  Interval join(const Interval& o) const;
  Interval meet(const Interval& o) const;
  // [a,b] widen [c,d] = [c<a ? -inf : a, d>b ? +inf : b]
  Interval widen(const Interval& next) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  std::int64_t lo_ = kNegInf;
  std::int64_t hi_ = kPosInf;
  bool bottom_ = false;
};

std::string to_string(const Interval& i);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
// Truncating division / remainder; a divisor containing zero yields top.
Interval divide(const Interval& a, const Interval& b);
Interval remainder(const Interval& a, const Interval& b);

// Per-variable intervals indexed by VarId. Variables the analysis does not
// track (pointers, arrays, globals, address-taken ints) always read as top.
class Env {
 public:
  Env() = default;
  Env(std::size_t vars, bool bottom);

  bool is_bottom() const { return bottom_; }
  std::size_t size() const { return vals_.size(); }
  const Interval& get(VarId v) const { return vals_[static_cast<std::size_t>(v)]; }
  // Setting a bottom interval makes the whole env bottom.
  void set(VarId v, const Interval& i);

  Env join(const Env& o) const;
  Env meet(const Env& o) const;
  Env widen(const Env& next) const;
  bool leq(const Env& o) const;

  friend bool operator==(const Env& a, const Env& b) {
    if (a.bottom_ || b.bottom_) return a.bottom_ == b.bottom_;
    return a.vals_ == b.vals_;
  }

 private:
  std::vector<Interval> vals_;
  bool bottom_ = true;
};

// Which variables carry intervals in this function.
std::vector<bool> tracked_vars(const Cfg& cfg);

Interval eval_expr(const ast::Expr& e, const Env& env, const Cfg& cfg);

// Env after `node` along an out-edge carrying `label`.
Env transfer(const Cfg& cfg, const CfgNode& node, const Env& env, EdgeLabel label);

struct AbsResult {
  std::vector<Env> at;  // state at node entry
  std::vector<bool> widening_point;
  long iterations = 0;
  long cap = 0;
  bool cap_exceeded = false;
};

long iteration_cap(const Cfg& cfg);
AbsResult analyze(const Cfg& cfg);

// buffer-overrun and div-by-zero findings; nodes with bottom env are skipped.
std::vector<Diagnostic> interval_checks(const Cfg& cfg, const AbsResult& r);

std::string dump(const Cfg& cfg, const AbsResult& r);

}  // namespace ctllint::intervals
