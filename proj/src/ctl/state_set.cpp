#include "ctllint/state_set.hpp"

#include <bit>

namespace ctllint {

StateSet::StateSet(int universe, bool full)
    : universe_(universe), words_(simd::words_for(static_cast<std::size_t>(universe)), full ? ~simd::Word{0} : 0) {
  clear_tail();
}

StateSet StateSet::of(int universe, std::initializer_list<int> members) {
  StateSet s(universe);
  for (int m : members) s.set(m);
  return s;
}

void StateSet::clear_tail() {
  const int rem = universe_ % 64;
  if (rem != 0 && !words_.empty()) words_.back() &= (simd::Word{1} << rem) - 1;
}

StateSet& StateSet::operator&=(const StateSet& o) {
  simd::kernels().and_assign(words_.data(), o.words_.data(), words_.size());
  return *this;
}

StateSet& StateSet::operator|=(const StateSet& o) {
  simd::kernels().or_assign(words_.data(), o.words_.data(), words_.size());
  return *this;
}

StateSet& StateSet::subtract(const StateSet& o) {
  simd::kernels().andnot_assign(words_.data(), o.words_.data(), words_.size());
  return *this;
}

StateSet StateSet::complement() const {
  StateSet out = *this;
  simd::kernels().invert(out.words_.data(), out.words_.size());
  out.clear_tail();
  return out;
}

bool StateSet::any() const { return simd::kernels().any(words_.data(), words_.size()); }

int StateSet::count() const { return static_cast<int>(simd::kernels().popcount(words_.data(), words_.size())); }

bool StateSet::subset_of(const StateSet& o) const {
  return simd::kernels().subset(words_.data(), o.words_.data(), words_.size());
}

std::vector<int> StateSet::members() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    simd::Word bits = words_[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<int>(w * 64) + b);
      bits &= bits - 1;
    }
  }
  return out;
}

bool operator==(const StateSet& a, const StateSet& b) {
  return a.universe_ == b.universe_ && simd::kernels().equal(a.words_.data(), b.words_.data(), a.words_.size());
}

std::string StateSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int m : members()) {
    if (!first) s += ",";
    s += std::to_string(m);
    first = false;
  }
  return s + "}";
}

}  // namespace ctllint
