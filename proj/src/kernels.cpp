#include "rainbow/kernels.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define RAINBOW_X86 1
#define RAINBOW_TARGET_AVX2 __attribute__((target("avx2,popcnt")))
#endif

namespace rainbow::kernels {

namespace scalar {

void row_mod_sum(std::uint32_t v, std::uint32_t n, std::uint32_t* out) {
  for (std::uint32_t u = 0; u < n; ++u) {
    std::uint32_t s = v + u;
    out[u] = s >= n ? s - n : s;
  }
  if (v < n) out[v] = 0;
}

void row_xor(std::uint32_t v, std::uint32_t n, std::uint32_t* out) {
  for (std::uint32_t u = 0; u < n; ++u) out[u] = (v ^ u) - 1;
  if (v < n) out[v] = 0;
}

void row_nd(std::uint32_t v, std::uint32_t n, std::uint32_t* out) {
  for (std::uint32_t u = 0; u < n; ++u) {
    std::uint32_t d = u >= v ? u - v : u + n - v;
    std::uint32_t e = n - d;
    out[u] = (d < e ? d : e) - 1;
  }
  if (v < n) out[v] = 0;
}

std::size_t count_masked(const std::uint32_t* colours, const std::uint8_t* vmask,
                         const std::uint8_t* cmask, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t u = 0; u < n; ++u) c += (vmask[u] != 0) & (cmask[colours[u]] != 0);
  return c;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i] & b[i]));
  return c;
}

}  // namespace scalar

#ifdef RAINBOW_X86
namespace avx2 {

RAINBOW_TARGET_AVX2 void row_mod_sum(std::uint32_t v, std::uint32_t n, std::uint32_t* out) {
  const __m256i vv = _mm256_set1_epi32(static_cast<int>(v));
  const __m256i nn = _mm256_set1_epi32(static_cast<int>(n));
  const __m256i nm1 = _mm256_set1_epi32(static_cast<int>(n) - 1);
  __m256i idx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(8);
  std::uint32_t u = 0;
  for (; u + 8 <= n; u += 8) {
    __m256i s = _mm256_add_epi32(vv, idx);
    __m256i ge = _mm256_cmpgt_epi32(s, nm1);
    s = _mm256_sub_epi32(s, _mm256_and_si256(ge, nn));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + u), s);
    idx = _mm256_add_epi32(idx, step);
  }
  for (; u < n; ++u) {
    std::uint32_t s = v + u;
    out[u] = s >= n ? s - n : s;
  }
  if (v < n) out[v] = 0;
}

RAINBOW_TARGET_AVX2 void row_xor(std::uint32_t v, std::uint32_t n, std::uint32_t* out) {
  const __m256i vv = _mm256_set1_epi32(static_cast<int>(v));
  const __m256i one = _mm256_set1_epi32(1);
  __m256i idx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(8);
  std::uint32_t u = 0;
  for (; u + 8 <= n; u += 8) {
    __m256i s = _mm256_sub_epi32(_mm256_xor_si256(vv, idx), one);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + u), s);
    idx = _mm256_add_epi32(idx, step);
  }
  for (; u < n; ++u) out[u] = (v ^ u) - 1;
  if (v < n) out[v] = 0;
}

RAINBOW_TARGET_AVX2 void row_nd(std::uint32_t v, std::uint32_t n, std::uint32_t* out) {
  const __m256i vv = _mm256_set1_epi32(static_cast<int>(v));
  const __m256i nn = _mm256_set1_epi32(static_cast<int>(n));
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i zero = _mm256_setzero_si256();
  __m256i idx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(8);
  std::uint32_t u = 0;
  for (; u + 8 <= n; u += 8) {
    __m256i d = _mm256_sub_epi32(idx, vv);
    __m256i neg = _mm256_cmpgt_epi32(zero, d);
    d = _mm256_add_epi32(d, _mm256_and_si256(neg, nn));
    __m256i e = _mm256_sub_epi32(nn, d);
    __m256i m = _mm256_min_epi32(d, e);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + u), _mm256_sub_epi32(m, one));
    idx = _mm256_add_epi32(idx, step);
  }
  for (; u < n; ++u) {
    std::uint32_t d = u >= v ? u - v : u + n - v;
    std::uint32_t e = n - d;
    out[u] = (d < e ? d : e) - 1;
  }
  if (v < n) out[v] = 0;
}

RAINBOW_TARGET_AVX2 std::size_t count_masked(const std::uint32_t* colours, const std::uint8_t* vmask,
                                             const std::uint8_t* cmask, std::size_t n) {
  const __m256i low = _mm256_set1_epi32(0xff);
  const __m256i zero = _mm256_setzero_si256();
  const int* base = reinterpret_cast<const int*>(cmask);
  std::size_t total = 0;
  std::size_t u = 0;
  for (; u + 8 <= n; u += 8) {
    __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(colours + u));
    __m256i g = _mm256_and_si256(_mm256_i32gather_epi32(base, c, 1), low);
    __m128i vb = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(vmask + u));
    __m256i vm = _mm256_cvtepu8_epi32(vb);
    __m256i hit = _mm256_andnot_si256(_mm256_or_si256(_mm256_cmpeq_epi32(g, zero), _mm256_cmpeq_epi32(vm, zero)),
                                      _mm256_set1_epi32(-1));
    total += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(hit)))));
  }
  for (; u < n; ++u) total += (vmask[u] != 0) & (cmask[colours[u]] != 0);
  return total;
}

RAINBOW_TARGET_AVX2 std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i x = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
                                 _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)));
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), x);
    c += static_cast<std::size_t>(_mm_popcnt_u64(lanes[0]) + _mm_popcnt_u64(lanes[1]) + _mm_popcnt_u64(lanes[2]) +
                                  _mm_popcnt_u64(lanes[3]));
  }
  for (; i < words; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i] & b[i]));
  return c;
}

}  // namespace avx2
#endif

namespace {

struct Table {
  Isa isa;
  void (*row_mod_sum)(std::uint32_t, std::uint32_t, std::uint32_t*);
  void (*row_xor)(std::uint32_t, std::uint32_t, std::uint32_t*);
  void (*row_nd)(std::uint32_t, std::uint32_t, std::uint32_t*);
  std::size_t (*count_masked)(const std::uint32_t*, const std::uint8_t*, const std::uint8_t*, std::size_t);
  std::size_t (*and_popcount)(const std::uint64_t*, const std::uint64_t*, std::size_t);
};

Table select() {
  Table t{Isa::Scalar, scalar::row_mod_sum, scalar::row_xor, scalar::row_nd, scalar::count_masked,
          scalar::and_popcount};
  const char* env = std::getenv("RAINBOW_SCALAR");
  if (env && std::strcmp(env, "0") != 0) return t;
#ifdef RAINBOW_X86
  if (avx2_supported()) {
    t = Table{Isa::Avx2, avx2::row_mod_sum, avx2::row_xor, avx2::row_nd, avx2::count_masked, avx2::and_popcount};
  }
#endif
  return t;
}

const Table& table() {
  static const Table t = select();
  return t;
}

}  // namespace

bool avx2_supported() {
#ifdef RAINBOW_X86
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

Isa active_isa() { return table().isa; }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void row_mod_sum(std::uint32_t v, std::uint32_t n, std::uint32_t* out) { table().row_mod_sum(v, n, out); }
void row_xor(std::uint32_t v, std::uint32_t n, std::uint32_t* out) { table().row_xor(v, n, out); }
void row_nd(std::uint32_t v, std::uint32_t n, std::uint32_t* out) { table().row_nd(v, n, out); }

std::size_t count_masked(const std::uint32_t* colours, const std::uint8_t* vmask, const std::uint8_t* cmask,
                         std::size_t n) {
  return table().count_masked(colours, vmask, cmask, n);
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  return table().and_popcount(a, b, words);
}

}  // namespace rainbow::kernels
