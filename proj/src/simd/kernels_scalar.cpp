#include <bit>

#include "ctllint/simd/bit_kernels.hpp"

namespace ctllint::simd {
namespace {

void and_assign(Word* dst, const Word* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

void or_assign(Word* dst, const Word* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

void andnot_assign(Word* dst, const Word* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= ~src[i];
}

void invert(Word* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = ~dst[i];
}

bool any(const Word* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) return true;
  return false;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool subset(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

void pre_exists(const Word* matrix, std::size_t stride, std::size_t rows, const Word* z, Word* out) {
  const std::size_t out_words = words_for(rows);
  for (std::size_t w = 0; w < out_words; ++w) out[w] = 0;
  for (std::size_t s = 0; s < rows; ++s) {
    const Word* row = matrix + s * stride;
    for (std::size_t i = 0; i < stride; ++i) {
      if (row[i] & z[i]) {
        out[s / kWordBits] |= Word{1} << (s % kWordBits);
        break;
      }
    }
  }
}

}  // namespace

const BitKernels& scalar_kernels() {
  static const BitKernels table{"scalar", and_assign, or_assign, andnot_assign, invert,
                                any,      equal,      subset,    popcount,      pre_exists};
  return table;
}

}  // namespace ctllint::simd
