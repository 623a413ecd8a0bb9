#pragma once

#include <cstdint>

#include "rainbow/coloured_graph.hpp"

namespace rainbow {

// Near-distance colouring of K_{2m+1}: colour of {i,j} is the cyclic distance
// minus one.
EdgeColouring nd_colouring(std::uint32_t m);

// Colour of {g,h} is g+h in the group (order >= 3).
EdgeColouring group_sum_colouring(const GroupSpec& spec);

// Proper colouring merged into groups of at most k classes.
EdgeColouring random_locally_k_bounded(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

// Circle-method 1-factorization with pivot n-1.
EdgeColouring round_robin_proper(std::uint32_t n);

}  // namespace rainbow
