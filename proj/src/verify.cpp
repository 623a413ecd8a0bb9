#include "rainbow/verify.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

namespace rainbow {

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

HostEdge key_edge(std::uint64_t key) {
  return {static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu)};
}

HostEdge sorted(VertexId u, VertexId v) { return u < v ? HostEdge{u, v} : HostEdge{v, u}; }

void check_map_shape(const Tree& t, const std::vector<VertexId>& map, std::uint32_t n, const char* what) {
  if (map.size() != t.size())
    throw SchemaError(std::string(what) + ": map has " + std::to_string(map.size()) + " entries for a tree on " +
                      std::to_string(t.size()) + " vertices");
  for (VertexId h : map)
    if (h >= n) throw SchemaError(std::string(what) + ": host vertex " + std::to_string(h) + " out of range");
}

// Returns the pair of tree vertices sharing a host, if any.
std::optional<HostEdge> collision(const std::vector<VertexId>& map, std::uint32_t n) {
  std::vector<VertexId> owner(n, kNone);
  for (VertexId v = 0; v < map.size(); ++v) {
    if (owner[map[v]] != kNone) return HostEdge{owner[map[v]], v};
    owner[map[v]] = v;
  }
  return std::nullopt;
}

}  // namespace

RainbowEmbedding induced_embedding(const EdgeColouring& col, const Tree& t, std::vector<VertexId> map) {
  RainbowEmbedding e;
  e.colours.reserve(t.edges().size());
  for (auto [u, v] : t.edges()) e.colours.push_back(col.colour_of(map.at(u), map.at(v)));
  e.map = std::move(map);
  return e;
}

Verdict check_rainbow_embedding(const EdgeColouring& col, const Tree& t, const std::vector<VertexId>& map) {
  check_map_shape(t, map, col.n(), "embedding");
  if (auto c = collision(map, col.n()))
    return Verdict::fail("tree vertices " + std::to_string((*c)[0]) + " and " + std::to_string((*c)[1]) +
                             " share host " + std::to_string(map[(*c)[0]]),
                         {*c});
  std::unordered_map<ColourId, std::size_t> seen;
  seen.reserve(t.edges().size() * 2);
  for (std::size_t i = 0; i < t.edges().size(); ++i) {
    auto [u, v] = t.edges()[i];
    ColourId c = col.colour(map[u], map[v]);
    auto [it, fresh] = seen.emplace(c, i);
    if (!fresh) {
      auto [pu, pv] = t.edges()[it->second];
      return Verdict::fail("colour " + std::to_string(c) + " repeated",
                           {sorted(map[pu], map[pv]), sorted(map[u], map[v])});
    }
  }
  return Verdict::pass();
}

Verdict check_rainbow_embedding(const EdgeColouring& col, const Tree& t, const RainbowEmbedding& emb) {
  check_map_shape(t, emb.map, col.n(), "embedding");
  if (emb.colours.size() != t.edges().size())
    throw SchemaError("embedding: " + std::to_string(emb.colours.size()) + " colours for " +
                      std::to_string(t.edges().size()) + " edges");
  Verdict v = check_rainbow_embedding(col, t, emb.map);
  if (!v) return v;
  for (std::size_t i = 0; i < t.edges().size(); ++i) {
    auto [a, b] = t.edges()[i];
    if (col.colour(emb.map[a], emb.map[b]) != emb.colours[i])
      return Verdict::fail("recorded colour of edge " + std::to_string(i) + " differs from the host",
                           {sorted(emb.map[a], emb.map[b])});
  }
  return v;
}

Verdict check_packing(std::uint32_t n, const Tree& t, const std::vector<std::vector<VertexId>>& copies,
                      bool exact) {
  std::unordered_map<std::uint64_t, std::uint32_t> owner;
  owner.reserve(copies.size() * t.edges().size() * 2);
  for (std::uint32_t i = 0; i < copies.size(); ++i) {
    check_map_shape(t, copies[i], n, "packing");
    if (auto c = collision(copies[i], n))
      return Verdict::fail("copy " + std::to_string(i) + " is not injective", {*c});
    for (auto [u, v] : t.edges()) {
      std::uint64_t key = edge_key(copies[i][u], copies[i][v]);
      auto [it, fresh] = owner.emplace(key, i);
      if (!fresh)
        return Verdict::fail("copies " + std::to_string(it->second) + " and " + std::to_string(i) + " share an edge",
                             {key_edge(key)});
    }
  }
  if (exact) {
    std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (owner.size() != total) {
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
          if (!owner.count(edge_key(u, v))) return Verdict::fail("edge not covered", {HostEdge{u, v}});
    }
  }
  return Verdict::pass();
}

Verdict check_odc(std::uint32_t n, const Tree& t, const std::vector<std::vector<VertexId>>& copies) {
  std::unordered_map<std::uint64_t, std::array<std::uint32_t, 2>> owners;
  std::unordered_map<std::uint64_t, std::uint64_t> shared;  // copy pair -> first common edge
  for (std::uint32_t i = 0; i < copies.size(); ++i) {
    check_map_shape(t, copies[i], n, "double cover");
    if (auto c = collision(copies[i], n))
      return Verdict::fail("copy " + std::to_string(i) + " is not injective", {*c});
    for (auto [u, v] : t.edges()) {
      std::uint64_t key = edge_key(copies[i][u], copies[i][v]);
      auto it = owners.find(key);
      if (it == owners.end()) {
        owners.emplace(key, std::array<std::uint32_t, 2>{i, kNone});
        continue;
      }
      if (it->second[1] != kNone)
        return Verdict::fail("edge lies in three copies", {key_edge(key)});
      it->second[1] = i;
      std::uint32_t a = it->second[0];
      if (a == i) return Verdict::fail("copy " + std::to_string(i) + " repeats an edge", {key_edge(key)});
      auto [prev, fresh] = shared.emplace((static_cast<std::uint64_t>(a) << 32) | i, key);
      if (!fresh)
        return Verdict::fail("copies " + std::to_string(a) + " and " + std::to_string(i) + " share two edges",
                             {key_edge(prev->second), key_edge(key)});
    }
  }
  return Verdict::pass();
}

Verdict check_harmonious(const Tree& t, const GroupSpec& group, const std::vector<std::uint32_t>& labels) {
  check_map_shape(t, labels, group.order(), "labelling");
  if (auto c = collision(labels, group.order()))
    return Verdict::fail("label " + std::to_string(labels[(*c)[0]]) + " used twice", {*c});
  std::unordered_map<std::uint32_t, std::size_t> sums;
  for (std::size_t i = 0; i < t.edges().size(); ++i) {
    auto [u, v] = t.edges()[i];
    auto [it, fresh] = sums.emplace(group.add(labels[u], labels[v]), i);
    if (!fresh) {
      auto [pu, pv] = t.edges()[it->second];
      return Verdict::fail("edge sum " + std::to_string(it->first) + " repeated", {sorted(pu, pv), sorted(u, v)});
    }
  }
  return Verdict::pass();
}

}  // namespace rainbow
