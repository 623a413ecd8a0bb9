#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/embedding.hpp"
#include "rainbow/tree.hpp"

namespace rainbow {

using HostEdge = std::array<VertexId, 2>;

struct Verdict {
  bool ok = true;
  std::string reason;
  std::vector<HostEdge> witness;  // the first violating pair

  explicit operator bool() const { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string reason, std::vector<HostEdge> witness) {
    return {false, std::move(reason), std::move(witness)};
  }
};

// Malformed input (wrong lengths, out-of-range ids) throws SchemaError.
Verdict check_rainbow_embedding(const EdgeColouring& col, const Tree& t, const std::vector<VertexId>& map);
// Also checks that the recorded colours are the induced ones.
Verdict check_rainbow_embedding(const EdgeColouring& col, const Tree& t, const RainbowEmbedding& emb);

// Copies pairwise edge-disjoint; with `exact`, every edge of K_n covered once.
Verdict check_packing(std::uint32_t n, const Tree& t, const std::vector<std::vector<VertexId>>& copies, bool exact);

// Every edge in at most two copies, every two copies share at most one edge.
Verdict check_odc(std::uint32_t n, const Tree& t, const std::vector<std::vector<VertexId>>& copies);

// Injective labels with pairwise distinct edge sums.  Witness entries are
// tree vertex pairs.
Verdict check_harmonious(const Tree& t, const GroupSpec& group, const std::vector<std::uint32_t>& labels);

}  // namespace rainbow
