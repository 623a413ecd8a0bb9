#include "doctest.h"
#include "rainbow/common.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/rng.hpp"

using namespace rainbow;
namespace K = rainbow::kernels;

TEST_CASE("row kernels agree") {
  if (!K::avx2_supported()) return;
  for (std::uint32_t n : {1u, 2u, 3u, 7u, 8u, 9u, 17u, 64u, 101u, 1000u, 4097u}) {
    std::vector<std::uint32_t> a(n), b(n);
    for (std::uint32_t v = 0; v < n; v += std::max(1u, n / 13)) {
      K::scalar::row_mod_sum(v, n, a.data());
      K::avx2::row_mod_sum(v, n, b.data());
      CHECK(a == b);
      K::scalar::row_nd(v, n, a.data());
      K::avx2::row_nd(v, n, b.data());
      CHECK(a == b);
      if ((n & (n - 1)) == 0) {
        K::scalar::row_xor(v, n, a.data());
        K::avx2::row_xor(v, n, b.data());
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("mask kernels agree") {
  Rng rng(3, "kern");
  for (std::uint32_t n : {0u, 1u, 5u, 8u, 31u, 64u, 65u, 333u, 5000u}) {
    std::uint32_t colours = 50;
    std::vector<std::uint32_t> row(n);
    for (auto& x : row) x = rng.below(colours);
    std::vector<std::uint8_t> vm(n + 3, 0), cm(colours + 3, 0);
    for (std::uint32_t i = 0; i < n; ++i) vm[i] = rng.bernoulli(0.4);
    for (std::uint32_t i = 0; i < colours; ++i) cm[i] = rng.bernoulli(0.5);
    std::size_t expect = 0;
    for (std::uint32_t i = 0; i < n; ++i) expect += vm[i] && cm[row[i]];
    CHECK(K::scalar::count_masked(row.data(), vm.data(), cm.data(), n) == expect);
    if (K::avx2_supported()) CHECK(K::avx2::count_masked(row.data(), vm.data(), cm.data(), n) == expect);

    IndexSet a(n), b(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (rng.bernoulli(0.5)) a.insert(i);
      if (rng.bernoulli(0.5)) b.insert(i);
    }
    std::size_t both = 0;
    for (std::uint32_t i = 0; i < n; ++i) both += a.contains(i) && b.contains(i);
    std::size_t w = a.words().size();
    CHECK(K::scalar::and_popcount(a.words().data(), b.words().data(), w) == both);
    if (K::avx2_supported()) CHECK(K::avx2::and_popcount(a.words().data(), b.words().data(), w) == both);
    CHECK(K::and_popcount(a.words().data(), b.words().data(), w) == both);
  }
}
