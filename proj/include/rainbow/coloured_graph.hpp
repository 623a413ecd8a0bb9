#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/common.hpp"

namespace rainbow {

enum class ColouringKind { Explicit, ND, GroupSum, RoundRobin, RandomKBounded };

const char* kind_name(ColouringKind kind);

struct GroupSpec {
  enum class Kind { Cyclic, ElementaryTwo, Product };
  Kind kind = Kind::Cyclic;
  std::vector<std::uint32_t> orders;  // factor orders, mixed radix with orders[0] least significant

  static GroupSpec cyclic(std::uint32_t n);
  static GroupSpec elementary_two(std::uint32_t k);
  static GroupSpec product(std::vector<std::uint32_t> orders);

  std::uint32_t order() const;
  bool all_two() const;  // every element is its own inverse
  std::uint32_t add(std::uint32_t g, std::uint32_t h) const;
  std::uint32_t neg(std::uint32_t g) const;
  std::string describe() const;
};

// Total colouring of the pairs of [n].  Immutable once built.
class EdgeColouring {
 public:
  EdgeColouring() = default;

  // Explicit table: colours[idx(u,v)] for u<v in row-major upper-triangle
  // order.  Colour ids are remapped to a dense range.
  static EdgeColouring explicit_table(std::uint32_t n, std::uint32_t k, std::vector<std::uint32_t> upper);
  static EdgeColouring nd(std::uint32_t m);
  // No lower bound on the order; the public generator enforces it.
  static EdgeColouring group_sum_unchecked(const GroupSpec& g);
  static EdgeColouring round_robin(std::uint32_t n);
  static EdgeColouring random_k_bounded(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

  std::uint32_t n() const { return n_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t num_colours() const { return num_colours_; }
  ColouringKind kind() const { return kind_; }
  const GroupSpec& group() const { return group_; }
  std::uint32_t nd_m() const { return nd_m_; }
  std::uint64_t seed() const { return seed_; }
  // Value to add to a colour id to recover the natural label (1 for ND and
  // for the nonzero elements of an elementary two-group).
  std::uint32_t colour_offset() const { return offset_; }
  std::string describe() const;

  ColourId colour_of(VertexId u, VertexId v) const;
  ColourId colour(VertexId u, VertexId v) const;  // unchecked, u != v
  // out[u] = colour(v,u) for every u; out[v] = 0.  out must hold n entries.
  void row(VertexId v, std::uint32_t* out) const;
  std::vector<std::uint32_t> row(VertexId v) const;

  std::uint32_t colour_degree(VertexId v, ColourId c) const;
  VertexSet neighbours_in(VertexId v, const ColourSet& C, const VertexSet& X) const;
  // |{u in X : colour(v,u) in C}| via the masked kernel.
  std::uint32_t count_neighbours(VertexId v, const std::vector<std::uint8_t>& cmask,
                                 const std::vector<std::uint8_t>& xmask, std::vector<std::uint32_t>& scratch) const;

  // Upper triangle of the full table (explicit export).
  std::vector<std::uint32_t> table() const;

  static std::size_t tri_index(std::uint32_t n, std::uint32_t u, std::uint32_t v);

 private:
  std::uint32_t n_ = 0;
  std::uint32_t k_ = 1;
  std::uint32_t num_colours_ = 0;
  ColouringKind kind_ = ColouringKind::Explicit;
  GroupSpec group_;
  std::uint32_t nd_m_ = 0;
  std::uint64_t seed_ = 0;
  std::uint32_t offset_ = 0;
  std::uint32_t rr_n_ = 0;                 // round-robin order (padded to even)
  std::uint32_t rr_half_ = 0;              // inverse of 2 modulo rr_n_-1
  std::vector<std::uint32_t> class_map_;   // random_k_bounded: proper class -> merged colour
  std::vector<std::uint32_t> upper_;       // explicit table
};

inline constexpr std::uint32_t kDefaultScanLimit = 5000;

// Maximum over v and c of colour_degree(v,c).
std::uint32_t verify_locally_k_bounded(const EdgeColouring& col, std::uint32_t scan_limit = kDefaultScanLimit);

}  // namespace rainbow
