#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/coloured_graph.hpp"

namespace rainbow {

struct StarRequest {
  VertexId root;
  std::uint32_t degree;
};

struct FoundStar {
  VertexId root;
  std::vector<VertexId> leaves;
};

struct StarFamily {
  std::vector<FoundStar> stars;
  std::uint32_t deficiency = 0;  // sum over stars of missing leaves
  std::uint32_t augmentations = 0;
  bool budget_exhausted = false;
  bool exhaustive = false;  // produced by the small-n backtracking search

  bool complete() const { return deficiency == 0; }
  std::size_t leaf_count() const;
};

struct StarBudget {
  std::uint64_t node_budget = 1'000'000;
  std::uint32_t overfill = 8;
  std::uint32_t exhaustive_cutoff = 40;  // largest n for the backtracking fallback
};

// Leaves disjoint from each other, from the roots and from the forbidden
// vertices; colours avoid the forbidden set and no colour occurs more than
// `multiplicity` times.  With requests, star i must have degree d_i.
std::optional<std::string> validate_star_family(const EdgeColouring& col, const StarFamily& family,
                                                std::uint32_t multiplicity, const VertexSet* forbidden_vertices,
                                                const ColourSet* forbidden_colours,
                                                const std::vector<StarRequest>* requests = nullptr);

// Stars with at most `multiplicity` edges of each colour (col.k() by
// default).  Multiplicity 1 gives a rainbow family directly.
StarFamily find_k_bounded_stars(const EdgeColouring& col, const std::vector<StarRequest>& requests,
                                const VertexSet& forbidden_vertices, const ColourSet& forbidden_colours,
                                const StarBudget& budget = {}, std::uint32_t multiplicity = 0);

// Picks targets[i] leaves of star i so the union is rainbow.
StarFamily hall_select_rainbow_substars(const EdgeColouring& col, const StarFamily& family,
                                        const std::vector<std::uint32_t>& targets);

StarFamily find_disjoint_rainbow_stars(const EdgeColouring& col, const std::vector<StarRequest>& requests,
                                       const VertexSet& forbidden_vertices, const ColourSet& forbidden_colours,
                                       double epsilon, const StarBudget& budget = {});

}  // namespace rainbow
