#include <algorithm>
#include <array>

#include "ctllint/intervals.hpp"

namespace ctllint::intervals {
namespace {

bool is_inf(std::int64_t v) { return v == kNegInf || v == kPosInf; }

// Saturating bound arithmetic. `toward` picks the infinity used when the
// exact result leaves the representable range (-inf for lower bounds).
std::int64_t add_bound(std::int64_t a, std::int64_t b, std::int64_t toward) {
  if (a == kNegInf || b == kNegInf) {
    if (a == kPosInf || b == kPosInf) return toward;
    return kNegInf;
  }
  if (a == kPosInf || b == kPosInf) return kPosInf;
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r) || is_inf(r)) return toward;
  return r;
}

std::int64_t neg_bound(std::int64_t a) {
  if (a == kNegInf) return kPosInf;
  if (a == kPosInf) return kNegInf;
  return -a;
}

int sign(std::int64_t a) { return (a > 0) - (a < 0); }

std::int64_t mul_bound(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (is_inf(a) || is_inf(b)) return sign(a) * sign(b) > 0 ? kPosInf : kNegInf;
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r) || is_inf(r)) return sign(a) * sign(b) > 0 ? kPosInf : kNegInf;
  return r;
}

// Truncating quotient of bounds, b != 0.
std::int64_t div_bound(std::int64_t a, std::int64_t b) {
  if (is_inf(b)) return is_inf(a) ? (sign(a) * sign(b) > 0 ? kPosInf : kNegInf) : 0;
  if (is_inf(a)) return sign(a) * sign(b) > 0 ? kPosInf : kNegInf;
  return a / b;
}

}  // namespace

Interval::Interval(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi), bottom_(lo > hi) {
  if (bottom_) {
    lo_ = 1;
    hi_ = 0;
  }
}

Interval Interval::bottom() { return {1, 0}; }

bool Interval::subset_of(const Interval& o) const {
  if (bottom_) return true;
  if (o.bottom_) return false;
  return o.lo_ <= lo_ && hi_ <= o.hi_;
}

Interval Interval::join(const Interval& o) const {
  if (bottom_) return o;
  if (o.bottom_) return *this;
  return {std::min(lo_, o.lo_), std::max(hi_, o.hi_)};
}

Interval Interval::meet(const Interval& o) const {
  if (bottom_ || o.bottom_) return bottom();
  return {std::max(lo_, o.lo_), std::min(hi_, o.hi_)};
}

Interval Interval::widen(const Interval& next) const {
  if (bottom_) return next;
  if (next.bottom_) return *this;
  return {next.lo_ < lo_ ? kNegInf : lo_, next.hi_ > hi_ ? kPosInf : hi_};
}

std::string to_string(const Interval& i) {
  if (i.is_bottom()) return "bottom";
  auto b = [](std::int64_t v) {
    if (v == kNegInf) return std::string("-inf");
    if (v == kPosInf) return std::string("+inf");
    return std::to_string(v);
  };
  return "[" + b(i.lo()) + "," + b(i.hi()) + "]";
}

Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_bottom() || b.is_bottom()) return Interval::bottom();
  return {add_bound(a.lo(), b.lo(), kNegInf), add_bound(a.hi(), b.hi(), kPosInf)};
}

Interval operator-(const Interval& a) {
  if (a.is_bottom()) return a;
  return {neg_bound(a.hi()), neg_bound(a.lo())};
}

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_bottom() || b.is_bottom()) return Interval::bottom();
  std::array<std::int64_t, 4> c{mul_bound(a.lo(), b.lo()), mul_bound(a.lo(), b.hi()), mul_bound(a.hi(), b.lo()),
                                mul_bound(a.hi(), b.hi())};
  return {*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end())};
}

Interval divide(const Interval& a, const Interval& b) {
  if (a.is_bottom() || b.is_bottom()) return Interval::bottom();
  if (b.contains(0)) return Interval::top();
  if (b.hi() < 0) return -divide(a, -b);
  // Positive divisor [c,d]: quotient is monotone in each argument.
  std::int64_t lo = a.lo() >= 0 ? div_bound(a.lo(), b.hi()) : div_bound(a.lo(), b.lo());
  std::int64_t hi = a.hi() >= 0 ? div_bound(a.hi(), b.lo()) : div_bound(a.hi(), b.hi());
  return {lo, hi};
}

Interval remainder(const Interval& a, const Interval& b) {
  if (a.is_bottom() || b.is_bottom()) return Interval::bottom();
  if (b.contains(0)) return Interval::top();
  std::int64_t m = b.lo() > 0 ? b.hi() : neg_bound(b.lo());  // largest |divisor|
  std::int64_t r = m == kPosInf ? kPosInf : m - 1;  // |result| <= r
  std::int64_t lo = a.lo() >= 0 ? 0 : std::max(a.lo(), neg_bound(r));
  std::int64_t hi = a.hi() <= 0 ? 0 : std::min(a.hi(), r);
  return {lo, hi};
}

Env::Env(std::size_t vars, bool bottom) : vals_(vars), bottom_(bottom) {}

void Env::set(VarId v, const Interval& i) {
  if (bottom_) return;
  if (i.is_bottom()) {
    bottom_ = true;
    return;
  }
  vals_[static_cast<std::size_t>(v)] = i;
}

Env Env::join(const Env& o) const {
  if (bottom_) return o;
  if (o.bottom_) return *this;
  Env out = *this;
  for (std::size_t i = 0; i < vals_.size(); ++i) out.vals_[i] = vals_[i].join(o.vals_[i]);
  return out;
}

Env Env::meet(const Env& o) const {
  if (bottom_) return *this;
  if (o.bottom_) return o;
  Env out = *this;
  for (std::size_t i = 0; i < vals_.size(); ++i) {
    out.vals_[i] = vals_[i].meet(o.vals_[i]);
    if (out.vals_[i].is_bottom()) return Env(vals_.size(), true);
  }
  return out;
}

Env Env::widen(const Env& next) const {
  if (bottom_) return next;
  if (next.bottom_) return *this;
  Env out = *this;
  for (std::size_t i = 0; i < vals_.size(); ++i) out.vals_[i] = vals_[i].widen(next.vals_[i]);
  return out;
}

bool Env::leq(const Env& o) const {
  if (bottom_) return true;
  if (o.bottom_) return false;
  for (std::size_t i = 0; i < vals_.size(); ++i)
    if (!vals_[i].subset_of(o.vals_[i])) return false;
  return true;
}

}  // namespace ctllint::intervals
