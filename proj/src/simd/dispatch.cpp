#include <atomic>
#include <cstdlib>
#include <string>

#include "ctllint/simd/bit_kernels.hpp"

namespace ctllint::simd {

#if defined(CTLLINT_HAVE_AVX2)
const BitKernels& avx2_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(CTLLINT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const BitKernels* pick(std::string_view name) {
  if (name == "scalar") return &scalar_kernels();
  if (name == "avx2") return avx2_kernels();
  if (name == "auto" || name.empty()) {
    if (auto* k = avx2_kernels()) return k;
    return &scalar_kernels();
  }
  return nullptr;
}

std::atomic<const BitKernels*>& active() {
  static std::atomic<const BitKernels*> table = [] {
    const char* env = std::getenv("CTL_LINT_SIMD");
    const BitKernels* k = pick(env ? std::string_view(env) : std::string_view("auto"));
    return k ? k : pick("auto");
  }();
  return table;
}

}  // namespace

const BitKernels* avx2_kernels() {
#if defined(CTLLINT_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const BitKernels& kernels() { return *active().load(std::memory_order_relaxed); }

bool select_kernels(std::string_view name) {
  const BitKernels* k = pick(name);
  if (!k) return false;
  active().store(k, std::memory_order_relaxed);
  return true;
}

}  // namespace ctllint::simd
