#include "rainbow/applications.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "rainbow/colouring_gen.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

EmbedOutcome embed_any(const EdgeColouring& col, const Tree& t, const PipelineConfig& cfg) {
  const std::uint32_t n = col.n(), k = col.k();
  if (t.size() > n) throw SizeError("tree has more vertices than the host");
  if (n <= std::min(cfg.fallback_cutoff, kBruteHost) && t.size() <= kBruteTree) return embed_tree(col, t, cfg);
  double headroom = 1 - double(t.size()) * k / n;
  if (headroom > 2 * cfg.mu) {
    PipelineConfig c = cfg;
    c.epsilon = std::min(cfg.epsilon, headroom - 1e-9);
    try {
      auto out = embed_tree(col, t, c);
      if (out.ok()) return out;
    } catch (const ParameterError&) {
    }
  }
  EmbedOutcome out;
  out.method = "search";
  auto r = search_embed(col, t, cfg.search_budget);
  out.embedding = std::move(r.embedding);
  if (!out.ok()) out.failure = r.budget_exhausted ? "search budget exhausted" : "proven absent";
  return out;
}

std::vector<VertexId> translate_copy(const std::vector<VertexId>& map, std::uint32_t shift, std::uint32_t modulus) {
  if (modulus == 0) throw ParameterError("modulus must be positive");
  std::vector<VertexId> out;
  out.reserve(map.size());
  for (VertexId v : map) out.push_back(static_cast<VertexId>((std::uint64_t(v) + shift) % modulus));
  return out;
}

std::vector<VertexId> translate_copy(const std::vector<VertexId>& map, std::uint32_t shift, const GroupSpec& group) {
  std::vector<VertexId> out;
  out.reserve(map.size());
  for (VertexId v : map) out.push_back(group.add(v, shift));
  return out;
}

EdgeColouring group_host(const GroupSpec& group) {
  return group.order() >= 3 ? group_sum_colouring(group) : EdgeColouring::group_sum_unchecked(group);
}

namespace {

// Backtracking over edge sets of copies of t in K_n: every edge at most twice,
// any two copies share at most one edge.
std::optional<std::vector<std::vector<VertexId>>> search_double_cover(const Tree& t, std::uint32_t n,
                                                                      std::uint64_t budget, std::uint64_t seed) {
  auto bit = [n](VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return std::uint64_t{1} << (u * n - u * (u + 1) / 2 + (v - u - 1));
  };
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::uint64_t, std::vector<VertexId>> by_mask;
  do {
    std::uint64_t m = 0;
    for (auto [u, v] : t.edges()) m |= bit(perm[u], perm[v]);
    by_mask.try_emplace(m, perm.begin(), perm.begin() + t.size());
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::uint64_t> cand;
  for (auto& [m, _] : by_mask) cand.push_back(m);
  Rng(seed, "odc_search").shuffle(cand);

  std::vector<std::size_t> chosen;
  std::uint64_t once = 0, twice = 0, nodes = 0;
  std::function<bool(std::size_t)> dfs = [&](std::size_t from) -> bool {
    if (chosen.size() == n) return true;
    for (std::size_t i = from; i < cand.size(); ++i) {
      if (++nodes > budget) return false;
      const std::uint64_t m = cand[i];
      if (m & twice) continue;
      bool ok = true;
      for (std::size_t j : chosen)
        if (std::popcount(cand[j] & m) > 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      const std::uint64_t o = once, w = twice;
      twice |= once & m;
      once ^= m;
      chosen.push_back(i);
      if (dfs(i)) return true;
      chosen.pop_back();
      once = o;
      twice = w;
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  std::vector<std::vector<VertexId>> copies;
  for (std::size_t i : chosen) copies.push_back(by_mask[cand[i]]);
  return copies;
}

}  // namespace

TreePacking ringel_pack(const Tree& t, double epsilon, bool exact, const PipelineConfig& cfg) {
  if (t.size() < 2) throw ParameterError("packing needs a tree with at least 2 vertices");
  TreePacking pk;
  const std::uint32_t e = t.size() - 1;
  pk.ell = exact ? e : static_cast<std::uint32_t>(std::ceil((2 + epsilon) * e / 2 - 1e-9));
  pk.ell = std::max(pk.ell, e);
  pk.n = 2 * pk.ell + 1;
  pk.exact = pk.ell == e;
  EdgeColouring col = nd_colouring(pk.ell);
  EmbedOutcome out = embed_any(col, t, cfg);
  if (!out.ok()) {
    std::string what = "no rainbow copy in nd(" + std::to_string(pk.ell) + "): " + out.failure;
    throw EmbeddingFailedError(what, std::move(out));
  }
  pk.method = out.method;
  pk.base = *out.embedding;
  for (std::uint32_t s = 0; s < pk.n; ++s) pk.copies.push_back(translate_copy(pk.base.map, s, pk.n));
  pk.validation = check_packing(pk.n, t, pk.copies, pk.exact);
  return pk;
}

HarmoniousLabelling harmonious_label(const Tree& t, const GroupSpec& group, const PipelineConfig& cfg) {
  if (group.order() < t.size()) throw SizeError("group smaller than the tree");
  EdgeColouring col = group_host(group);
  EmbedOutcome out = embed_any(col, t, cfg);
  if (!out.ok()) {
    std::string what = "no rainbow copy in " + group.describe() + ": " + out.failure;
    throw EmbeddingFailedError(what, std::move(out));
  }
  HarmoniousLabelling h{group, out.embedding->map, {}, out.method};
  h.validation = check_harmonious(t, group, h.labels);
  return h;
}

std::optional<HarmoniousLabelling> smallest_harmonious(const Tree& t, std::uint32_t max_order,
                                                       const PipelineConfig& cfg) {
  for (std::uint32_t m = std::max<std::uint32_t>(t.size(), 1); m <= max_order; ++m) {
    try {
      auto h = harmonious_label(t, GroupSpec::cyclic(m), cfg);
      if (h.validation) return h;
    } catch (const EmbeddingFailedError&) {
    }
  }
  return std::nullopt;
}

DoubleCover odc_construct(const Tree& t, std::uint32_t k, const PipelineConfig& cfg) {
  if (k < 1) throw ParameterError("exponent must be >= 1");
  GroupSpec group = GroupSpec::elementary_two(k);
  if (t.size() > group.order()) throw SizeError("tree larger than 2^k");
  EdgeColouring col = group_host(group);
  EmbedOutcome out = embed_any(col, t, cfg);
  if (!out.ok()) {
    if (out.failure == "proven absent" && group.order() <= kOdcSearchHost) {
      if (auto copies = search_double_cover(t, group.order(), cfg.search_budget, cfg.seed)) {
        DoubleCover dc;
        dc.k = k;
        dc.method = "direct_search";
        dc.copies = std::move(*copies);
        dc.validation = check_odc(group.order(), t, dc.copies);
        return dc;
      }
    }
    std::string what = "no rainbow copy in " + group.describe() + ": " + out.failure;
    throw EmbeddingFailedError(what, std::move(out));
  }
  DoubleCover dc;
  dc.k = k;
  dc.method = out.method;
  dc.base = *out.embedding;
  for (std::uint32_t x = 0; x < group.order(); ++x) dc.copies.push_back(translate_copy(dc.base.map, x, group));
  dc.validation = check_odc(group.order(), t, dc.copies);
  return dc;
}

}  // namespace rainbow
