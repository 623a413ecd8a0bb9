#include "rainbow/colouring_gen.hpp"

namespace rainbow {

EdgeColouring nd_colouring(std::uint32_t m) { return EdgeColouring::nd(m); }

EdgeColouring group_sum_colouring(const GroupSpec& spec) {
  if (spec.order() < 3) throw SizeError("group order must be at least 3");
  return EdgeColouring::group_sum_unchecked(spec);
}

EdgeColouring random_locally_k_bounded(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
  return EdgeColouring::random_k_bounded(n, k, seed);
}

EdgeColouring round_robin_proper(std::uint32_t n) { return EdgeColouring::round_robin(n); }

}  // namespace rainbow
