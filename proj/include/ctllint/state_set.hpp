#pragma once

#include <span>
#include <string>
#include <vector>

#include "ctllint/simd/bit_kernels.hpp"

namespace ctllint {

// Fixed-universe set of Kripke states, stored as a bitset. Bits past size()
// are always zero.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(int universe, bool full = false);

  static StateSet of(int universe, std::initializer_list<int> members);

  int universe() const { return universe_; }
  bool test(int s) const { return (words_[static_cast<std::size_t>(s) / 64] >> (s % 64)) & 1U; }
  void set(int s) { words_[static_cast<std::size_t>(s) / 64] |= simd::Word{1} << (s % 64); }
  void reset(int s) { words_[static_cast<std::size_t>(s) / 64] &= ~(simd::Word{1} << (s % 64)); }

  StateSet& operator&=(const StateSet& o);
  StateSet& operator|=(const StateSet& o);
  StateSet& subtract(const StateSet& o);
  StateSet complement() const;

  bool any() const;
  bool empty() const { return !any(); }
  int count() const;
  bool subset_of(const StateSet& o) const;
  std::vector<int> members() const;

  std::span<const simd::Word> words() const { return words_; }
  std::span<simd::Word> words() { return words_; }

  friend bool operator==(const StateSet& a, const StateSet& b);

  std::string to_string() const;  // "{0,3,5}"

 private:
  void clear_tail();

  int universe_ = 0;
  std::vector<simd::Word> words_;
};

inline StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
inline StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }

}  // namespace ctllint
