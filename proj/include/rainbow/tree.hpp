#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/common.hpp"

namespace rainbow {

using Edge = std::pair<VertexId, VertexId>;

class Tree {
 public:
  Tree() : Tree(1, {}) {}
  // Validates: n-1 distinct edges, no loops, connected.
  Tree(std::uint32_t n, std::vector<Edge> edges);

  std::uint32_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& neighbours(VertexId v) const { return adj_[v]; }
  std::uint32_t degree(VertexId v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
  std::uint32_t leaf_count() const;
  std::uint32_t max_degree() const;

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adj_;
};

using BarePath = std::vector<VertexId>;

std::vector<BarePath> find_maximal_bare_paths(const Tree& t);
std::vector<BarePath> extract_bare_subpaths(const Tree& t, std::uint32_t m);

// Number of vertices left after deleting the interiors of the given paths.
std::uint32_t leftover_after_paths(const Tree& t, const std::vector<BarePath>& paths);

enum class LayerKind { Base, Stars, Paths3, Leaves };
const char* layer_kind_name(LayerKind k);

struct Star {
  VertexId root;
  std::vector<VertexId> leaves;
};

// x-a-b-y with x,y already present and a,b new.
struct Path3 {
  VertexId x, a, b, y;
};

struct Attachment {
  VertexId parent, leaf;
};

struct Layer {
  LayerKind kind = LayerKind::Leaves;
  std::vector<VertexId> vertices;
  std::vector<Star> stars;
  std::vector<Path3> paths;
  std::vector<Attachment> leaves;
};

struct SplitOptions {
  std::uint32_t path_length = 0;     // 0: ceil(100/mu)
  std::uint32_t leaf_threshold = 0;  // 0: ceil(mu*n/(16*m*D)), at least 1
};

struct LayeredDecomposition {
  std::vector<Layer> layers;  // index 0..ell
  std::uint32_t ell = 0;
  std::uint32_t j = 0;
  std::uint32_t D = 0;
  double mu = 0;
  std::uint32_t n_target = 0;
  std::uint32_t path_length = 0;
  std::uint32_t leaf_threshold = 0;
  bool heavy_peeled = false;  // leaves of high-degree vertices were peeled too

  std::uint32_t layer_size(std::uint32_t i) const { return static_cast<std::uint32_t>(layers[i].vertices.size()); }
};

std::uint32_t default_star_threshold(std::uint32_t n);

LayeredDecomposition split_tree(const Tree& t, std::uint32_t D, double mu, std::uint32_t n_target,
                                const SplitOptions& opts = {});

// Empty optional when every structural property holds.
std::optional<std::string> validate_decomposition(const Tree& t, const LayeredDecomposition& dec);

Tree random_tree(std::uint32_t n, std::uint64_t seed);
Tree tree_from_pruefer(std::uint32_t n, const std::vector<VertexId>& seq);

inline constexpr std::uint32_t kEnumerationCutoff = 10;
std::vector<Tree> enumerate_trees(std::uint32_t n);
std::string canonical_form(const Tree& t);

// Named families used by the benchmarks and the acceptance runs.
Tree path_tree(std::uint32_t n);
Tree star_tree(std::uint32_t leaves);
Tree broom_tree(std::uint32_t handle, std::uint32_t bristles);
Tree spider_tree(std::uint32_t legs, std::uint32_t leg_length);
Tree caterpillar_tree(std::uint32_t n, std::uint32_t hub_degree, std::uint64_t seed);
Tree double_star_tree(std::uint32_t left, std::uint32_t right);
Tree random_recursive_tree(std::uint32_t n, std::uint64_t seed);

}  // namespace rainbow
