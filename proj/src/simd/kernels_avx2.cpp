// Built with -mavx2 -mpopcnt; only reached after a CPUID check.

#include <immintrin.h>

#include "ctllint/simd/bit_kernels.hpp"

namespace ctllint::simd {
namespace {

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void and_assign(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

void or_assign(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] |= src[i];
}

void andnot_assign(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(a, b) computes ~a & b.
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_andnot_si256(load(src + i), load(dst + i)));
  for (; i < n; ++i) dst[i] &= ~src[i];
}

void invert(Word* dst, std::size_t n) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_xor_si256(load(dst + i), ones));
  for (; i < n; ++i) dst[i] = ~dst[i];
}

bool any(const Word* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = load(a + i);
    if (!_mm256_testz_si256(v, v)) return true;
  }
  for (; i < n; ++i)
    if (a[i]) return true;
  return false;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool subset(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  // testc(b, a) == 1 iff (~b & a) == 0.
  for (; i + 4 <= n; i += 4)
    if (!_mm256_testc_si256(load(b + i), load(a + i))) return false;
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// Nibble-table popcount (vpshufb lookup, vpsadbw horizontal sum).
std::size_t popcount(const Word* a, std::size_t n) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = load(a + i);
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  std::size_t total = static_cast<std::size_t>(_mm256_extract_epi64(acc, 0)) +
                      static_cast<std::size_t>(_mm256_extract_epi64(acc, 1)) +
                      static_cast<std::size_t>(_mm256_extract_epi64(acc, 2)) +
                      static_cast<std::size_t>(_mm256_extract_epi64(acc, 3));
  for (; i < n; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return total;
}

bool row_intersects(const Word* row, const Word* z, std::size_t stride) {
  std::size_t i = 0;
  for (; i + 4 <= stride; i += 4)
    if (!_mm256_testz_si256(load(row + i), load(z + i))) return true;
  for (; i < stride; ++i)
    if (row[i] & z[i]) return true;
  return false;
}

void pre_exists(const Word* matrix, std::size_t stride, std::size_t rows, const Word* z, Word* out) {
  const std::size_t out_words = words_for(rows);
  for (std::size_t w = 0; w < out_words; ++w) {
    Word bits = 0;
    const std::size_t first = w * kWordBits;
    const std::size_t last = first + kWordBits < rows ? first + kWordBits : rows;
    for (std::size_t s = first; s < last; ++s)
      if (row_intersects(matrix + s * stride, z, stride)) bits |= Word{1} << (s - first);
    out[w] = bits;
  }
}

}  // namespace

const BitKernels& avx2_table() {
  static const BitKernels table{"avx2", and_assign, or_assign, andnot_assign, invert,
                                any,    equal,      subset,    popcount,      pre_exists};
  return table;
}

}  // namespace ctllint::simd
