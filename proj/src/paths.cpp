#include "rainbow/paths.hpp"

#include <set>

namespace rainbow {

namespace {

struct Finder {
  const EdgeColouring& col;
  const std::vector<VertexId>& Y;
  const ColourSet& C;
  std::vector<char>& used_v;
  std::vector<char>& used_c;
  std::vector<std::uint32_t> ru, rv, rx;
  std::uint64_t nodes = 0;

  Finder(const EdgeColouring& c, const std::vector<VertexId>& y, const ColourSet& cs, std::vector<char>& uv,
         std::vector<char>& uc)
      : col(c), Y(y), C(cs), used_v(uv), used_c(uc), ru(c.n()), rv(c.n()), rx(c.n()) {}

  bool ok(ColourId c) const { return C.contains(c) && !used_c[c]; }

  // First path after position (xi, yi) in the (x,y) scan, inclusive.
  std::optional<RainbowPath> next(VertexId u, VertexId v, std::size_t& xi, std::size_t& yi, std::uint64_t budget) {
    col.row(u, ru.data());
    col.row(v, rv.data());
    for (; xi < Y.size(); ++xi, yi = 0) {
      VertexId x = Y[xi];
      if (used_v[x] || x == u || x == v) continue;
      ColourId c1 = ru[x];
      if (!ok(c1)) continue;
      col.row(x, rx.data());
      for (; yi < Y.size(); ++yi) {
        if (++nodes > budget) return std::nullopt;
        VertexId y = Y[yi];
        if (y == x || used_v[y] || y == u || y == v) continue;
        ColourId c2 = rx[y], c3 = rv[y];
        if (!ok(c2) || !ok(c3) || c1 == c2 || c2 == c3 || c1 == c3) continue;
        return RainbowPath{{u, x, y, v}, {c1, c2, c3}};
      }
    }
    return std::nullopt;
  }
};

void mark(std::vector<char>& uv, std::vector<char>& uc, const RainbowPath& p, char val) {
  uv[p.vertices[1]] = uv[p.vertices[2]] = val;
  for (ColourId c : p.colours) uc[c] = val;
}

}  // namespace

std::vector<RainbowPath> enumerate_rainbow_3paths(const EdgeColouring& col, VertexId u, VertexId v,
                                                  const VertexSet& Y, const ColourSet& C, std::size_t limit,
                                                  bool disjoint) {
  if (u >= col.n() || v >= col.n()) throw BoundsError("path endpoint out of range");
  if (u == v) throw InvalidEdgeError("path endpoints must differ");
  if (Y.contains(u) || Y.contains(v)) throw ParameterError("path endpoints must lie outside Y");
  auto ys = Y.members();
  std::vector<char> used_v(col.n(), 0), used_c(col.num_colours(), 0);
  Finder f(col, ys, C, used_v, used_c);
  std::vector<RainbowPath> out;
  std::size_t xi = 0, yi = 0;
  while (out.size() < limit) {
    auto p = f.next(u, v, xi, yi, ~0ull);
    if (!p) break;
    out.push_back(*p);
    if (disjoint) {
      used_v[p->vertices[1]] = used_v[p->vertices[2]] = 1;
      ++xi;
      yi = 0;
    } else {
      ++yi;
    }
  }
  return out;
}

RainbowPathSystem connect_pairs_disjointly(const EdgeColouring& col, const std::vector<PathRequest>& requests,
                                           const VertexSet& Y, const ColourSet& C, std::uint64_t budget) {
  std::set<VertexId> ends;
  for (auto& r : requests) {
    if (r.u >= col.n() || r.v >= col.n()) throw BoundsError("path endpoint out of range");
    if (r.u == r.v) throw InvalidEdgeError("path endpoints must differ");
    if (Y.contains(r.u) || Y.contains(r.v)) throw ParameterError("path endpoints must lie outside Y");
    if (!ends.insert(r.u).second || !ends.insert(r.v).second)
      throw ParameterError("path requests must have pairwise distinct endpoints");
  }
  const std::size_t m = requests.size();
  RainbowPathSystem sys;
  sys.paths.assign(m, std::nullopt);
  auto ys = Y.members();
  std::vector<char> used_v(col.n(), 0), used_c(col.num_colours(), 0);
  Finder f(col, ys, C, used_v, used_c);
  std::vector<std::size_t> xi(m + 1, 0), yi(m + 1, 0);
  const std::uint32_t cap = static_cast<std::uint32_t>(2 * m);
  std::size_t i = 0;
  while (i < m) {
    auto p = f.next(requests[i].u, requests[i].v, xi[i], yi[i], budget);
    if (f.nodes > budget) sys.budget_exhausted = true;
    if (p) {
      mark(used_v, used_c, *p, 1);
      sys.paths[i] = p;
      ++yi[i];
      ++i;
      if (i < m) xi[i] = yi[i] = 0;
      continue;
    }
    if (i > 0 && sys.backtracks < cap && !sys.budget_exhausted) {
      ++sys.backtracks;
      --i;
      mark(used_v, used_c, *sys.paths[i], 0);
      sys.paths[i].reset();
      continue;
    }
    // Give up on this request and keep going greedily.
    sys.unconnected.push_back(i);
    ++i;
    if (i < m) xi[i] = yi[i] = 0;
  }
  return sys;
}

std::optional<std::string> validate_path_system(const EdgeColouring& col, const RainbowPathSystem& sys,
                                                const std::vector<PathRequest>& requests, const VertexSet& Y,
                                                const ColourSet& C) {
  if (sys.paths.size() != requests.size()) return "one slot per request is required";
  std::vector<char> used_v(col.n(), 0), used_c(col.num_colours(), 0);
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!sys.paths[i]) continue;
    const RainbowPath& p = *sys.paths[i];
    std::string tag = "path " + std::to_string(i);
    if (p.vertices[0] != requests[i].u || p.vertices[3] != requests[i].v) return tag + " has the wrong endpoints";
    for (int t = 1; t <= 2; ++t) {
      VertexId x = p.vertices[t];
      if (!Y.contains(x)) return tag + " leaves the reserve";
      if (used_v[x]++) return tag + " reuses vertex " + std::to_string(x);
    }
    for (int t = 0; t < 3; ++t) {
      ColourId c = col.colour_of(p.vertices[t], p.vertices[t + 1]);
      if (c != p.colours[t]) return tag + " records a wrong colour";
      if (!C.contains(c)) return tag + " uses a colour outside C";
      if (used_c[c]++) return tag + " repeats colour " + std::to_string(c);
    }
  }
  return std::nullopt;
}

}  // namespace rainbow
