#include <doctest.h>

#include <random>
#include <vector>

#include "ctllint/ctl.hpp"
#include "ctllint/simd/bit_kernels.hpp"
#include "ctl_oracle.hpp"

using namespace ctllint;
using simd::Word;

namespace {

std::vector<Word> random_words(std::mt19937_64& rng, std::size_t n) {
  std::vector<Word> w(n);
  std::uniform_int_distribution<int> shape(0, 3);
  for (auto& x : w) {
    switch (shape(rng)) {
      case 0: x = 0; break;
      case 1: x = ~Word{0}; break;
      default: x = rng(); break;
    }
  }
  return w;
}

}  // namespace

TEST_CASE("dispatch") {
  const auto& s = simd::scalar_kernels();
  CHECK(std::string(s.name) == "scalar");
  CHECK(simd::select_kernels("scalar"));
  CHECK(&simd::kernels() == &s);
  CHECK_FALSE(simd::select_kernels("sse9"));
  CHECK(&simd::kernels() == &s);
  CHECK(simd::select_kernels("auto"));
  if (simd::avx2_kernels()) CHECK(&simd::kernels() == simd::avx2_kernels());
}

TEST_CASE("avx2 kernels match scalar") {
  const simd::BitKernels* v = simd::avx2_kernels();
  if (!v) {
    MESSAGE("avx2 unavailable on this machine; equivalence not exercised");
    return;
  }
  const simd::BitKernels& s = simd::scalar_kernels();
  std::mt19937_64 rng(42);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 33u, 64u, 100u}) {
    for (int rep = 0; rep < 20; ++rep) {
      CAPTURE(n);
      auto a = random_words(rng, n), b = random_words(rng, n);
      if (rep % 5 == 0) b = a;

      auto x1 = a, x2 = a;
      s.and_assign(x1.data(), b.data(), n);
      v->and_assign(x2.data(), b.data(), n);
      CHECK(x1 == x2);
      x1 = a, x2 = a;
      s.or_assign(x1.data(), b.data(), n);
      v->or_assign(x2.data(), b.data(), n);
      CHECK(x1 == x2);
      x1 = a, x2 = a;
      s.andnot_assign(x1.data(), b.data(), n);
      v->andnot_assign(x2.data(), b.data(), n);
      CHECK(x1 == x2);
      x1 = a, x2 = a;
      s.invert(x1.data(), n);
      v->invert(x2.data(), n);
      CHECK(x1 == x2);

      CHECK(s.any(a.data(), n) == v->any(a.data(), n));
      CHECK(s.equal(a.data(), b.data(), n) == v->equal(a.data(), b.data(), n));
      CHECK(s.subset(a.data(), b.data(), n) == v->subset(a.data(), b.data(), n));
      auto ab = a;
      s.and_assign(ab.data(), b.data(), n);
      CHECK(v->subset(ab.data(), a.data(), n));
      CHECK(s.popcount(a.data(), n) == v->popcount(a.data(), n));
    }
  }
  for (std::size_t rows : {1u, 5u, 63u, 64u, 65u, 200u, 300u}) {
    std::size_t stride = simd::words_for(rows);
    for (int rep = 0; rep < 10; ++rep) {
      auto m = random_words(rng, rows * stride);
      auto z = random_words(rng, stride);
      std::vector<Word> o1(stride, 0xdead), o2(stride, 0xbeef);
      s.pre_exists(m.data(), stride, rows, z.data(), o1.data());
      v->pre_exists(m.data(), stride, rows, z.data(), o2.data());
      CAPTURE(rows);
      CHECK(o1 == o2);
    }
  }
}

TEST_CASE("checker results do not depend on the kernel variant") {
  if (!simd::avx2_kernels()) return;
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    auto k = testing::random_kripke(rng);
    auto f = testing::random_formula(rng, 3);
    for (auto strat : {ctl::FixpointStrategy::Worklist, ctl::FixpointStrategy::Iterative}) {
      simd::select_kernels("scalar");
      auto a = ctl::check(k, f, strat).at(*f);
      simd::select_kernels("avx2");
      auto b = ctl::check(k, f, strat).at(*f);
      CHECK(a == b);
    }
  }
  simd::select_kernels("auto");
}

TEST_CASE("state set basics") {
  StateSet s(130);
  CHECK(s.empty());
  s.set(0);
  s.set(129);
  CHECK(s.count() == 2);
  CHECK(s.members() == std::vector<int>{0, 129});
  auto c = s.complement();
  CHECK(c.count() == 128);
  CHECK_FALSE(c.test(129));
  CHECK((c | s) == StateSet(130, true));
  CHECK((c & s).empty());
  CHECK(s.subset_of(StateSet(130, true)));
  CHECK(StateSet::of(5, {1, 3}).to_string() == "{1,3}");
}
