#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/embedder.hpp"
#include "rainbow/verify.hpp"

namespace rainbow {

struct EmbeddingFailedError : Error {
  EmbeddingFailedError(const std::string& what, EmbedOutcome o) : Error(what), outcome(std::move(o)) {}
  EmbedOutcome outcome;
};

// Brute force on tiny hosts, the pipeline when |T| leaves headroom (epsilon
// is lowered to the available headroom if needed), bounded backtracking
// otherwise.
EmbedOutcome embed_any(const EdgeColouring& col, const Tree& t, const PipelineConfig& cfg = {});

std::vector<VertexId> translate_copy(const std::vector<VertexId>& map, std::uint32_t shift, std::uint32_t modulus);
std::vector<VertexId> translate_copy(const std::vector<VertexId>& map, std::uint32_t shift, const GroupSpec& group);

struct TreePacking {
  std::uint32_t ell = 0;  // host is K_{2 ell + 1} with the ND colouring
  std::uint32_t n = 0;
  bool exact = false;     // t - 1 == ell
  RainbowEmbedding base;
  std::vector<std::vector<VertexId>> copies;
  Verdict validation;
  std::string method;
};

// exact: ell = t - 1 (perfect decomposition); otherwise the smallest ell with
// 2 ell + 1 >= (2 + epsilon)(t - 1) + 1.
TreePacking ringel_pack(const Tree& t, double epsilon, bool exact, const PipelineConfig& cfg = {});

struct HarmoniousLabelling {
  GroupSpec group;
  std::vector<std::uint32_t> labels;
  Verdict validation;
  std::string method;
};

HarmoniousLabelling harmonious_label(const Tree& t, const GroupSpec& group, const PipelineConfig& cfg = {});

// Tries Z_m for m = |T| .. max_order; empty when none is found.
std::optional<HarmoniousLabelling> smallest_harmonious(const Tree& t, std::uint32_t max_order,
                                                       const PipelineConfig& cfg = {});

struct DoubleCover {
  std::uint32_t k = 0;
  RainbowEmbedding base;
  std::vector<std::vector<VertexId>> copies;  // copy x maps v to x + base(v)
  Verdict validation;
  std::string method;
};

inline constexpr std::uint32_t kOdcSearchHost = 8;

// Falls back to a direct search for copies (not translates) when T has no
// rainbow copy and 2^k <= kOdcSearchHost; method is then "direct_search".
DoubleCover odc_construct(const Tree& t, std::uint32_t k, const PipelineConfig& cfg = {});

// Host colourings used above.
EdgeColouring group_host(const GroupSpec& group);

}  // namespace rainbow
