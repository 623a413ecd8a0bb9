#pragma once

#include <cstddef>
#include <cstdint>

// Row and counting kernels behind the colour queries.  Each kernel has a
// scalar reference and an AVX2 variant; the variant is picked once at load
// time from cpuid.  Setting RAINBOW_SCALAR=1 in the environment pins the
// scalar path.

namespace rainbow::kernels {

enum class Isa { Scalar, Avx2 };

bool avx2_supported();
Isa active_isa();
const char* isa_name(Isa isa);

// out[u] = colour of {v,u} for u in [0,n); out[v] is set to 0.
void row_mod_sum(std::uint32_t v, std::uint32_t n, std::uint32_t* out);  // (v+u) mod n
void row_xor(std::uint32_t v, std::uint32_t n, std::uint32_t* out);      // (v^u) - 1
void row_nd(std::uint32_t v, std::uint32_t n, std::uint32_t* out);       // min(±(u-v) mod n) - 1

// Number of u in [0,n) with vmask[u] != 0 and cmask[colours[u]] != 0.  The
// colour mask must carry three bytes of padding past its last colour.
std::size_t count_masked(const std::uint32_t* colours, const std::uint8_t* vmask,
                         const std::uint8_t* cmask, std::size_t n);

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);

namespace scalar {
void row_mod_sum(std::uint32_t v, std::uint32_t n, std::uint32_t* out);
void row_xor(std::uint32_t v, std::uint32_t n, std::uint32_t* out);
void row_nd(std::uint32_t v, std::uint32_t n, std::uint32_t* out);
std::size_t count_masked(const std::uint32_t* colours, const std::uint8_t* vmask,
                         const std::uint8_t* cmask, std::size_t n);
std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
void row_mod_sum(std::uint32_t v, std::uint32_t n, std::uint32_t* out);
void row_xor(std::uint32_t v, std::uint32_t n, std::uint32_t* out);
void row_nd(std::uint32_t v, std::uint32_t n, std::uint32_t* out);
std::size_t count_masked(const std::uint32_t* colours, const std::uint8_t* vmask,
                         const std::uint8_t* cmask, std::size_t n);
std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
}  // namespace avx2
#endif

}  // namespace rainbow::kernels
