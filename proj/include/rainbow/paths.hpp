#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/coloured_graph.hpp"

namespace rainbow {

struct PathRequest {
  VertexId u, v;
};

// u - x - y - v
struct RainbowPath {
  std::array<VertexId, 4> vertices;
  std::array<ColourId, 3> colours;
};

struct RainbowPathSystem {
  std::vector<std::optional<RainbowPath>> paths;  // one slot per request
  std::vector<std::size_t> unconnected;
  std::uint32_t backtracks = 0;
  bool budget_exhausted = false;

  bool complete() const { return unconnected.empty(); }
};

// Rainbow u-x-y-v paths with x,y in Y and colours in C, scanned in
// lexicographic (x,y) order.  With `disjoint` the interiors are pairwise
// disjoint (greedy extraction); otherwise every such path is listed.
std::vector<RainbowPath> enumerate_rainbow_3paths(const EdgeColouring& col, VertexId u, VertexId v,
                                                  const VertexSet& Y, const ColourSet& C, std::size_t limit,
                                                  bool disjoint = true);

RainbowPathSystem connect_pairs_disjointly(const EdgeColouring& col, const std::vector<PathRequest>& requests,
                                           const VertexSet& Y, const ColourSet& C,
                                           std::uint64_t budget = 10'000'000);

std::optional<std::string> validate_path_system(const EdgeColouring& col, const RainbowPathSystem& sys,
                                                const std::vector<PathRequest>& requests, const VertexSet& Y,
                                                const ColourSet& C);

}  // namespace rainbow
