#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/coloured_graph.hpp"

namespace rainbow {

struct MatchEdge {
  VertexId a;  // A side
  VertexId x;  // X side
  ColourId c;
  bool operator==(const MatchEdge&) const = default;
};

struct RainbowMatching {
  std::vector<MatchEdge> edges;
  bool budget_exhausted = false;
  std::uint32_t augmentations = 0;

  std::size_t size() const { return edges.size(); }
  std::vector<ColourId> colours() const;
};

struct SwitchingParams {
  std::uint32_t max_layers = 6;
  std::uint32_t disjoint_edge_threshold = 4;  // halved down to 1 when stuck
  std::uint64_t node_budget = 1'000'000;
};

// Vertex-disjoint, colour-distinct, A to X, colours in C.
std::optional<std::string> validate_matching(const EdgeColouring& col, const RainbowMatching& m, const VertexSet& A,
                                             const VertexSet& X, const ColourSet& C);

RainbowMatching greedy_rainbow_matching(const EdgeColouring& col, const VertexSet& A, const VertexSet& X,
                                        const ColourSet& C);

RainbowMatching switching_rainbow_matching(const EdgeColouring& col, const VertexSet& A, const VertexSet& X,
                                           const ColourSet& C, const SwitchingParams& params = {});

inline constexpr std::uint32_t kBruteMatchA = 10;
inline constexpr std::uint32_t kBruteMatchX = 16;

RainbowMatching brute_force_rainbow_matching(const EdgeColouring& col, const VertexSet& A, const VertexSet& X,
                                             const ColourSet& C);

// Extends `partial` so every vertex of A_uncovered is matched into Z with a
// fresh colour from C_reserve.  Throws CompletionError naming the first
// vertex with no usable edge.
RainbowMatching complete_matching_greedy(const EdgeColouring& col, const RainbowMatching& partial,
                                         const VertexSet& A_uncovered, const VertexSet& Z,
                                         const ColourSet& C_reserve);

// Same, but reports the stuck vertex instead of throwing.  Vertices and
// colours are drawn from ordered pools; an edge whose vertex and colour come
// from earlier pools is preferred.  `used_vertices` and `used_colours` are
// extra exclusions.
struct CompletionResult {
  RainbowMatching matching;
  VertexId stuck = kNone;
  bool ok() const { return stuck == kNone; }
};
CompletionResult try_complete_matching(const EdgeColouring& col, const RainbowMatching& partial,
                                       const std::vector<VertexId>& A_uncovered,
                                       const std::vector<const VertexSet*>& vertex_pools,
                                       const std::vector<const ColourSet*>& colour_pools,
                                       const VertexSet* used_vertices = nullptr,
                                       const ColourSet* used_colours = nullptr);

}  // namespace rainbow
