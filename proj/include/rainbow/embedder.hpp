#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/embedding.hpp"
#include "rainbow/tree.hpp"

namespace rainbow {

struct PipelineConfig {
  double epsilon = 0.2;
  double mu = 0.01;
  std::uint32_t D = 0;  // 0: default_star_threshold(n)
  double p0 = 0;        // 0: sqrt(12/n) clamped to [eps/5k, eps/2k]
  std::uint32_t retries = 10;
  std::uint64_t seed = 0;
  std::uint32_t fallback_cutoff = 20;
  std::uint64_t search_budget = 20'000'000;  // backtracking nodes when the pipeline has no headroom
  SplitOptions split;

  // Throws ParameterError unless 0 < mu < epsilon < 1, p0 in [0,1), retries >= 1.
  void validate() const;
  double resolved_p0(std::uint32_t n, std::uint32_t k) const;
};

// p_1..p_ell for layer sizes m_1..m_ell; p_ell closes the simplex.
std::vector<double> layer_probabilities(const std::vector<std::uint32_t>& m, std::uint32_t n, std::uint32_t k,
                                        double epsilon, double p0);

struct PlanInputs {
  std::vector<double> p;  // p_0..p_ell
  std::optional<VertexSet> X0;
  std::optional<ColourSet> C0;
};

using Pairing = std::vector<std::pair<VertexId, ColourId>>;

struct PartitionPlan {
  std::vector<double> p;
  std::vector<std::uint32_t> vertex_class;  // class index per vertex
  std::vector<std::uint32_t> colour_class;  // class index per colour
  Pairing pairing;

  std::uint32_t classes() const { return static_cast<std::uint32_t>(p.size()); }
  VertexSet vertices(std::uint32_t i) const;
  ColourSet colours(std::uint32_t i) const;
};

// Classes other than X0/C0 avoid the given reserves.  A paired colour lands
// in C1 exactly when its vertex lands in X1.
PartitionPlan sample_partitions(const EdgeColouring& col, const PlanInputs& in, const Pairing& pairing,
                                std::uint64_t seed);

std::optional<std::string> validate_plan(const EdgeColouring& col, const PartitionPlan& plan);

// Rainbow copy of t inside X0 with colours from C0, greedy in BFS order with
// a small amount of backtracking.
std::optional<RainbowEmbedding> greedy_embed_small(const EdgeColouring& col, const Tree& t, const VertexSet& X0,
                                                   const ColourSet& C0);

inline constexpr std::uint32_t kBruteTree = 10;
inline constexpr std::uint32_t kBruteHost = 20;

struct BruteResult {
  std::optional<RainbowEmbedding> embedding;  // empty and not exhausted: proven absent
  std::uint64_t nodes = 0;
  bool budget_exhausted = false;
};

BruteResult brute_force_embed(const EdgeColouring& col, const Tree& t);

// The same backtracking without size limits; node_budget 0 means unlimited.
BruteResult search_embed(const EdgeColouring& col, const Tree& t, std::uint64_t node_budget);

struct LayerTrace {
  std::uint32_t index = 0;
  LayerKind kind = LayerKind::Leaves;
  std::uint32_t size = 0;
  std::uint32_t class_vertices = 0;
  std::uint32_t class_colours = 0;
  std::uint32_t matched = 0;        // into X_i with C_i
  std::uint32_t matched_pool = 0;   // into earlier leftovers
  std::uint32_t completed = 0;      // needing X0 or C0
  std::uint32_t r5_shortfall = 0;   // m_i - matched beyond mu*p_i*n
  std::uint32_t reserve_vertices = 0;  // running X0 usage
  std::uint32_t reserve_colours = 0;   // running C0 usage
};

struct AttemptTrace {
  std::uint32_t attempt = 0;
  std::string stage;    // furthest stage reached
  std::string failure;  // empty on success; else R1, R2, R3, T0, star, Q0, Q1, path, accounting
  std::string detail;
  double p0 = 0;
  double p1_boost = 0;  // added to p1 for the reservoirs
  std::uint32_t X0 = 0, C0 = 0;
  std::uint32_t r1_min = 0, r1_threshold = 0;
  std::uint32_t r3_min = 0, r3_threshold = 0;
  std::uint32_t star_deficiency = 0;
  std::vector<std::uint32_t> reservoir_sizes;
  std::vector<LayerTrace> layers;
  std::uint32_t reserve_vertex_bound = 0, reserve_colour_bound = 0;
};

struct EmbedOutcome {
  std::optional<RainbowEmbedding> embedding;
  std::string method;  // pipeline, brute_force
  std::uint32_t ell = 0, j = 0, D = 0;
  std::vector<std::uint32_t> layer_sizes;
  std::vector<AttemptTrace> attempts;
  std::string failure;  // summary when no embedding

  bool ok() const { return embedding.has_value(); }
};

// Throws InfeasibleParametersError when |T| > (1-eps)n/k above the cutoff.
EmbedOutcome embed_tree(const EdgeColouring& col, const Tree& t, const PipelineConfig& cfg = {});

}  // namespace rainbow
