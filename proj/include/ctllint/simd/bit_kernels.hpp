#pragma once

// Word-parallel bitset kernels backing CTL state sets.
//
// Every kernel has a portable scalar reference implementation and, on x86-64
// builds, an AVX2 variant. The active table is chosen once at runtime from
// CPUID; CTL_LINT_SIMD=scalar|avx2 forces a variant (tests use this to compare
// them side by side).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace ctllint::simd {

using Word = std::uint64_t;

constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

struct BitKernels {
  const char* name;

  void (*and_assign)(Word* dst, const Word* src, std::size_t n);     // dst &= src
  void (*or_assign)(Word* dst, const Word* src, std::size_t n);      // dst |= src
  void (*andnot_assign)(Word* dst, const Word* src, std::size_t n);  // dst &= ~src
  void (*invert)(Word* dst, std::size_t n);                          // dst = ~dst
  bool (*any)(const Word* a, std::size_t n);
  bool (*equal)(const Word* a, const Word* b, std::size_t n);
  bool (*subset)(const Word* a, const Word* b, std::size_t n);  // a ⊆ b
  std::size_t (*popcount)(const Word* a, std::size_t n);

  // Existential predecessor image over a dense successor bit-matrix:
  // bit s of `out` is set iff row s (stride words) intersects z.
  // `out` receives words_for(rows) words; bits past `rows` are cleared.
  void (*pre_exists)(const Word* matrix, std::size_t stride, std::size_t rows, const Word* z, Word* out);
};

const BitKernels& scalar_kernels();

// Null when the build lacks the variant or the CPU does not support it.
const BitKernels* avx2_kernels();

// The dispatched table.
const BitKernels& kernels();

// Forces a variant by name ("scalar", "avx2", "auto"). Returns false if the
// requested variant is unavailable; the active table is then unchanged.
bool select_kernels(std::string_view name);

}  // namespace ctllint::simd
