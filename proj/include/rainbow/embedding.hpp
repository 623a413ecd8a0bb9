#pragma once

#include <vector>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/tree.hpp"

namespace rainbow {

struct RainbowEmbedding {
  std::vector<VertexId> map;      // host vertex per tree vertex
  std::vector<ColourId> colours;  // colour per tree edge, in t.edges() order
};

RainbowEmbedding induced_embedding(const EdgeColouring& col, const Tree& t, std::vector<VertexId> map);

}  // namespace rainbow
