#include "rainbow/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "rainbow/rng.hpp"

namespace rainbow {

Tree::Tree(std::uint32_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(n) {
  if (n == 0) throw SizeError("a tree needs at least one vertex");
  if (edges_.size() != n - 1) throw SchemaError("a tree on " + std::to_string(n) + " vertices needs n-1 edges");
  std::set<Edge> seen;
  for (auto& [u, v] : edges_) {
    if (u >= n || v >= n) throw BoundsError("tree edge endpoint out of range");
    if (u == v) throw SchemaError("tree edge is a self-loop");
    Edge key{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) throw SchemaError("tree has a repeated edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  std::vector<char> vis(n, 0);
  std::vector<VertexId> stack{0};
  vis[0] = 1;
  std::uint32_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : adj_[v])
      if (!vis[w]) {
        vis[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != n) throw SchemaError("tree edges do not connect all vertices");
}

std::uint32_t Tree::leaf_count() const {
  std::uint32_t c = 0;
  for (auto& a : adj_) c += a.size() == 1;
  return c;
}

std::uint32_t Tree::max_degree() const {
  std::size_t d = 0;
  for (auto& a : adj_) d = std::max(d, a.size());
  return static_cast<std::uint32_t>(d);
}

namespace {

// Maximal bare paths of the subforest induced by `alive`.
std::vector<BarePath> bare_paths_in(const Tree& t, const std::vector<char>& alive) {
  std::uint32_t n = t.size();
  std::vector<std::uint32_t> deg(n, 0);
  for (VertexId v = 0; v < n; ++v)
    if (alive[v])
      for (VertexId w : t.neighbours(v)) deg[v] += alive[w] != 0;
  std::vector<BarePath> out;
  for (VertexId s = 0; s < n; ++s) {
    if (!alive[s] || deg[s] == 2 || deg[s] == 0) continue;
    for (VertexId w0 : t.neighbours(s)) {
      if (!alive[w0]) continue;
      BarePath p{s};
      VertexId prev = s, cur = w0;
      while (true) {
        p.push_back(cur);
        if (deg[cur] != 2) break;
        VertexId next = kNone;
        for (VertexId x : t.neighbours(cur))
          if (alive[x] && x != prev) {
            next = x;
            break;
          }
        prev = cur;
        cur = next;
      }
      if (s < p.back()) out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<BarePath> subpaths_of(const std::vector<BarePath>& maximal, std::uint32_t m) {
  std::vector<BarePath> out;
  for (const BarePath& q : maximal) {
    std::uint32_t sz = static_cast<std::uint32_t>(q.size());
    if (sz < 2) continue;
    std::uint32_t count = (sz - 2) / (m + 1);
    for (std::uint32_t t = 0; t < count; ++t) {
      std::uint32_t start = 1 + t * (m + 1);
      out.emplace_back(q.begin() + start, q.begin() + start + m + 1);
    }
  }
  return out;
}

}  // namespace

std::vector<BarePath> find_maximal_bare_paths(const Tree& t) {
  if (t.size() < 2) return {};
  std::vector<char> alive(t.size(), 1);
  return bare_paths_in(t, alive);
}

std::vector<BarePath> extract_bare_subpaths(const Tree& t, std::uint32_t m) {
  if (m < 2) throw ParameterError("bare subpath length must be >= 2");
  return subpaths_of(find_maximal_bare_paths(t), m);
}

std::uint32_t leftover_after_paths(const Tree& t, const std::vector<BarePath>& paths) {
  std::vector<char> gone(t.size(), 0);
  for (auto& p : paths)
    for (std::size_t i = 1; i + 1 < p.size(); ++i) gone[p[i]] = 1;
  std::uint32_t c = 0;
  for (char g : gone) c += !g;
  return c;
}

const char* layer_kind_name(LayerKind k) {
  switch (k) {
    case LayerKind::Base: return "base";
    case LayerKind::Stars: return "stars";
    case LayerKind::Paths3: return "paths3";
    case LayerKind::Leaves: return "leaves";
  }
  return "?";
}

std::uint32_t default_star_threshold(std::uint32_t n) {
  double l = std::log(std::max<double>(n, 2.0));
  double d = std::ceil(l * l);
  return static_cast<std::uint32_t>(std::clamp(d, 1.0, 10.0));
}

namespace {

struct Attempt {
  bool ok = false;
  std::vector<std::vector<Attachment>> rounds;  // first peeled first
  std::vector<BarePath> long_paths;
  std::vector<std::vector<Attachment>> path_layers;  // index i-2 holds layer i
  std::vector<Path3> path3;
  std::vector<Star> stars;
  std::vector<VertexId> base;
};

Attempt attempt_split(const Tree& t, std::uint32_t D, std::uint32_t limit, std::uint32_t m, std::uint32_t b,
                      bool heavy_ok) {
  const std::uint32_t n = t.size();
  Attempt at;
  std::vector<char> alive(n, 1);
  std::vector<std::uint32_t> deg(n);
  for (VertexId v = 0; v < n; ++v) deg[v] = t.degree(v);
  std::uint32_t alive_count = n;

  auto alive_parent = [&](VertexId leaf) {
    for (VertexId w : t.neighbours(leaf))
      if (alive[w]) return w;
    return kNone;
  };

  std::vector<VertexId> leaves;
  for (VertexId v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.push_back(v);
  std::vector<std::uint32_t> leaf_children(n, 0);
  std::vector<VertexId> best(n, kNone);
  std::vector<char> chosen(n, 0);
  std::vector<char> frozen(n, 0);  // heavy parents in light mode stay heavy

  while (alive_count > 1) {
    std::vector<VertexId> parents;
    for (VertexId l : leaves) {
      VertexId p = alive_parent(l);
      if (p == kNone) continue;
      if (leaf_children[p]++ == 0) parents.push_back(p);
      if (best[p] == kNone || l < best[p]) best[p] = l;
    }
    std::sort(parents.begin(), parents.end());
    std::vector<Attachment> round;
    for (VertexId p : parents) {
      if (!heavy_ok && (frozen[p] || leaf_children[p] >= D)) {
        frozen[p] = 1;
        continue;
      }
      if (chosen[p]) continue;
      round.push_back({p, best[p]});
      chosen[best[p]] = 1;
    }
    for (VertexId p : parents) {
      leaf_children[p] = 0;
      best[p] = kNone;
    }
    if (round.empty() || round.size() < b) {
      for (auto& a : round) chosen[a.leaf] = 0;
      break;
    }
    std::vector<VertexId> next;
    for (auto& a : round) {
      alive[a.leaf] = 0;
      --alive_count;
      if (--deg[a.parent] == 1) next.push_back(a.parent);
    }
    for (VertexId l : leaves)
      if (alive[l]) next.push_back(l);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    leaves.swap(next);
    for (auto& a : round) chosen[a.leaf] = 0;
    at.rounds.push_back(std::move(round));
  }

  // Long bare paths in what remains.
  std::vector<BarePath> maximal = bare_paths_in(t, alive);
  at.long_paths = subpaths_of(maximal, m);
  std::uint32_t r = static_cast<std::uint32_t>(at.long_paths.size());
  if (r > 0) {
    at.path_layers.assign(m - 6, {});
    std::vector<std::vector<VertexId>> segs;
    for (const BarePath& p : at.long_paths) {
      at.path3.push_back({p[0], p[1], p[2], p[3]});
      at.path3.push_back({p[m - 3], p[m - 2], p[m - 1], p[m]});
      for (VertexId v : {p[1], p[2], p[m - 2], p[m - 1]}) {
        alive[v] = 0;
        --alive_count;
      }
      segs.emplace_back(p.begin() + 3, p.begin() + (m - 2));
    }
    for (std::uint32_t i = m - 5; i >= 2; --i) {
      auto& layer = at.path_layers[i - 2];
      for (auto& seg : segs) {
        // Remove the lower-indexed end of the segment.
        if (seg.front() < seg.back()) {
          layer.push_back({seg[1], seg.front()});
          alive[seg.front()] = 0;
          seg.erase(seg.begin());
        } else {
          layer.push_back({seg[seg.size() - 2], seg.back()});
          alive[seg.back()] = 0;
          seg.pop_back();
        }
        --alive_count;
      }
    }
  }

  // Stars: every vertex with >= D leaves loses them.
  std::vector<std::uint32_t> adeg(n, 0);
  for (VertexId v = 0; v < n; ++v)
    if (alive[v])
      for (VertexId w : t.neighbours(v)) adeg[v] += alive[w] != 0;
  std::vector<std::vector<VertexId>> kids(n);
  for (VertexId v = 0; v < n; ++v)
    if (alive[v] && adeg[v] == 1) kids[alive_parent(v)].push_back(v);
  std::vector<char> is_root(n, 0);
  for (VertexId v = 0; v < n; ++v)
    if (alive[v] && kids[v].size() >= D) is_root[v] = 1;
  for (VertexId v = 0; v < n; ++v) {
    if (!is_root[v]) continue;
    Star s{v, {}};
    for (VertexId l : kids[v])
      if (!is_root[l]) s.leaves.push_back(l);
    if (s.leaves.size() < D) continue;
    for (VertexId l : s.leaves) {
      alive[l] = 0;
      --alive_count;
    }
    at.stars.push_back(std::move(s));
  }
  for (VertexId v = 0; v < n; ++v)
    if (alive[v]) at.base.push_back(v);
  at.ok = at.base.size() <= limit && 2 * r <= limit;
  return at;
}

LayeredDecomposition assemble(const Attempt& at, std::uint32_t m) {
  LayeredDecomposition dec;
  bool with_paths = !at.long_paths.empty();
  std::uint32_t j = with_paths ? m - 4 : 2;
  dec.j = j;
  dec.ell = j + static_cast<std::uint32_t>(at.rounds.size());
  dec.layers.resize(dec.ell + 1);
  Layer& base = dec.layers[0];
  base.kind = LayerKind::Base;
  base.vertices = at.base;
  Layer& stars = dec.layers[1];
  stars.kind = LayerKind::Stars;
  stars.stars = at.stars;
  for (auto& s : at.stars) stars.vertices.insert(stars.vertices.end(), s.leaves.begin(), s.leaves.end());
  if (with_paths) {
    for (std::uint32_t i = 2; i < j; ++i) {
      Layer& L = dec.layers[i];
      L.kind = LayerKind::Leaves;
      L.leaves = at.path_layers[i - 2];
      for (auto& a : L.leaves) L.vertices.push_back(a.leaf);
    }
  }
  Layer& pl = dec.layers[j];
  pl.kind = LayerKind::Paths3;
  pl.paths = at.path3;
  for (auto& p : at.path3) {
    pl.vertices.push_back(p.a);
    pl.vertices.push_back(p.b);
  }
  std::uint32_t rounds = static_cast<std::uint32_t>(at.rounds.size());
  for (std::uint32_t q = 0; q < rounds; ++q) {
    // The last round peeled sits directly above the path layer.
    Layer& L = dec.layers[dec.ell - q];
    L.kind = LayerKind::Leaves;
    L.leaves = at.rounds[q];
    for (auto& a : L.leaves) L.vertices.push_back(a.leaf);
  }
  for (auto& L : dec.layers) std::sort(L.vertices.begin(), L.vertices.end());
  return dec;
}

}  // namespace

LayeredDecomposition split_tree(const Tree& t, std::uint32_t D, double mu, std::uint32_t n_target,
                                const SplitOptions& opts) {
  if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("mu must lie in (0,1)");
  if (D < 1) throw ParameterError("star threshold D must be >= 1");
  if (t.size() > n_target) throw ParameterError("tree larger than the target host");
  double budget = mu * n_target;
  if (budget < 1.0) throw ParameterError("infeasible mu: mu*n_target < 1");
  const std::uint32_t limit = static_cast<std::uint32_t>(std::floor(budget + 1e-9));

  std::uint32_t m_paper = opts.path_length ? opts.path_length
                                           : static_cast<std::uint32_t>(std::ceil(100.0 / mu - 1e-9));
  m_paper = std::max<std::uint32_t>(m_paper, 8);
  auto threshold = [&](std::uint32_t m) -> std::uint32_t {
    if (opts.leaf_threshold) return opts.leaf_threshold;
    double b = std::ceil(budget / (16.0 * m * D) - 1e-9);
    return static_cast<std::uint32_t>(std::max(1.0, b));
  };

  auto finish = [&](LayeredDecomposition dec, std::uint32_t m, std::uint32_t b, bool heavy) {
    dec.D = D;
    dec.mu = mu;
    dec.n_target = n_target;
    dec.path_length = m;
    dec.leaf_threshold = b;
    dec.heavy_peeled = heavy;
    return dec;
  };

  if (t.size() <= limit) {
    Attempt at;
    for (VertexId v = 0; v < t.size(); ++v) at.base.push_back(v);
    return finish(assemble(at, m_paper), m_paper, threshold(m_paper), false);
  }

  std::vector<std::uint32_t> lengths{m_paper};
  if (!opts.path_length)
    for (std::uint32_t m = m_paper / 2; m >= 8; m /= 2) lengths.push_back(m);
  for (std::uint32_t m : lengths) {
    Attempt at = attempt_split(t, D, limit, m, threshold(m), false);
    if (at.ok) return finish(assemble(at, m), m, threshold(m), false);
  }
  Attempt at = attempt_split(t, D, limit, m_paper, threshold(m_paper), true);
  if (at.ok) return finish(assemble(at, m_paper), m_paper, threshold(m_paper), true);
  at = attempt_split(t, D, limit, m_paper, 1, true);
  if (at.ok) return finish(assemble(at, m_paper), m_paper, 1, true);
  throw ParameterError("no decomposition meets the base-size bound for this mu");
}

std::optional<std::string> validate_decomposition(const Tree& t, const LayeredDecomposition& dec) {
  const std::uint32_t n = t.size();
  auto fail = [](std::string s) { return std::optional<std::string>(std::move(s)); };
  if (dec.layers.size() != dec.ell + 1) return fail("layer count does not match ell");
  if (dec.j < 2 || dec.j > dec.ell) return fail("path layer index outside [2, ell]");
  const double limit = dec.mu * dec.n_target + 1e-9;
  if (dec.layers[0].kind != LayerKind::Base) return fail("layer 0 is not the base");
  if (dec.layers[1].kind != LayerKind::Stars) return fail("layer 1 is not the star layer");
  if (dec.layers[dec.j].kind != LayerKind::Paths3) return fail("layer j is not the path layer");
  if (dec.layers[0].vertices.size() > limit) return fail("base exceeds mu*n");

  std::vector<std::uint32_t> layer_of(n, kNone);
  for (std::uint32_t i = 0; i <= dec.ell; ++i) {
    const Layer& L = dec.layers[i];
    if (i != 0 && i != 1 && i != dec.j && L.kind != LayerKind::Leaves)
      return fail("layer " + std::to_string(i) + " should add leaves");
    for (VertexId v : L.vertices) {
      if (v >= n) return fail("layer vertex out of range");
      if (layer_of[v] != kNone) return fail("vertex " + std::to_string(v) + " in two layers");
      layer_of[v] = i;
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (layer_of[v] == kNone) return fail("vertex " + std::to_string(v) + " in no layer");

  auto adjacent = [&](VertexId a, VertexId b) {
    const auto& nb = t.neighbours(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  };
  // Neighbours of v inside prefix union T_i.
  auto prefix_degree = [&](VertexId v, std::uint32_t i) {
    std::uint32_t d = 0;
    for (VertexId w : t.neighbours(v)) d += layer_of[w] <= i;
    return d;
  };

  // Stars.
  {
    const Layer& L = dec.layers[1];
    std::size_t leaves = 0;
    for (const Star& s : L.stars) {
      if (layer_of[s.root] != 0) return fail("star root outside the base");
      if (s.leaves.size() < dec.D) return fail("star with fewer than D leaves");
      for (VertexId l : s.leaves) {
        if (layer_of[l] != 1) return fail("star leaf not in the star layer");
        if (!adjacent(s.root, l)) return fail("star leaf not adjacent to its root");
        if (prefix_degree(l, 1) != 1) return fail("star leaf is not a leaf of T_1");
      }
      leaves += s.leaves.size();
    }
    if (leaves != L.vertices.size()) return fail("star layer vertices do not match its stars");
  }
  // Paths.
  {
    const Layer& L = dec.layers[dec.j];
    if (L.paths.size() > limit) return fail("more than mu*n length-3 paths");
    std::set<VertexId> used;
    for (const Path3& p : L.paths) {
      if (layer_of[p.x] >= dec.j || layer_of[p.y] >= dec.j) return fail("path endpoint not in T_{j-1}");
      if (layer_of[p.a] != dec.j || layer_of[p.b] != dec.j) return fail("path interior not in layer j");
      if (!adjacent(p.x, p.a) || !adjacent(p.a, p.b) || !adjacent(p.b, p.y)) return fail("path edges missing");
      if (prefix_degree(p.a, dec.j) != 2 || prefix_degree(p.b, dec.j) != 2) return fail("path not bare in T_j");
      if (!used.insert(p.a).second || !used.insert(p.b).second) return fail("paths share an interior vertex");
    }
    if (2 * L.paths.size() != L.vertices.size()) return fail("path layer vertices do not match its paths");
  }
  // Leaf layers.
  for (std::uint32_t i = 2; i <= dec.ell; ++i) {
    if (i == dec.j) continue;
    const Layer& L = dec.layers[i];
    std::set<VertexId> parents;
    if (L.leaves.size() != L.vertices.size()) return fail("leaf layer attachments do not match its vertices");
    for (const Attachment& a : L.leaves) {
      if (layer_of[a.leaf] != i) return fail("attached leaf not in its layer");
      if (layer_of[a.parent] >= i) return fail("leaf parent not in the earlier prefix");
      if (!adjacent(a.parent, a.leaf)) return fail("leaf not adjacent to its parent");
      if (prefix_degree(a.leaf, i) != 1) return fail("added vertex is not a leaf of T_i");
      if (!parents.insert(a.parent).second)
        return fail("layer " + std::to_string(i) + " leaves share a neighbour");
    }
  }
  // Every prefix is an induced forest and the last prefix is T; forests are
  // automatic for induced subgraphs of a tree, so only check edge counts of
  // the full union.
  return std::nullopt;
}

Tree tree_from_pruefer(std::uint32_t n, const std::vector<VertexId>& seq) {
  if (n == 1) return Tree(1, {});
  if (n == 2) return Tree(2, {{0, 1}});
  if (seq.size() != n - 2) throw SchemaError("Pruefer sequence must have n-2 entries");
  std::vector<std::uint32_t> deg(n, 1);
  for (VertexId v : seq) {
    if (v >= n) throw BoundsError("Pruefer entry out of range");
    ++deg[v];
  }
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> leaves;
  for (VertexId v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.push(v);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (VertexId v : seq) {
    VertexId l = leaves.top();
    leaves.pop();
    edges.push_back({l, v});
    if (--deg[v] == 1) leaves.push(v);
  }
  VertexId a = leaves.top();
  leaves.pop();
  VertexId b = leaves.top();
  edges.push_back({a, b});
  return Tree(n, std::move(edges));
}

Tree random_tree(std::uint32_t n, std::uint64_t seed) {
  if (n == 0) throw SizeError("a tree needs at least one vertex");
  Rng rng(seed, "random_tree");
  std::vector<VertexId> seq(n >= 2 ? n - 2 : 0);
  for (auto& s : seq) s = rng.below(n);
  return tree_from_pruefer(n, seq);
}

namespace {

std::string rooted_code(const Tree& t, VertexId v, VertexId parent) {
  std::vector<std::string> kids;
  for (VertexId w : t.neighbours(v))
    if (w != parent) kids.push_back(rooted_code(t, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  s += ")";
  return s;
}

std::vector<VertexId> centres(const Tree& t) {
  std::uint32_t n = t.size();
  if (n <= 2) {
    std::vector<VertexId> c;
    for (VertexId v = 0; v < n; ++v) c.push_back(v);
    return c;
  }
  std::vector<std::uint32_t> deg(n);
  std::vector<VertexId> layer;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] == 1) layer.push_back(v);
  }
  std::uint32_t remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<std::uint32_t>(layer.size());
    std::vector<VertexId> next;
    for (VertexId l : layer)
      for (VertexId w : t.neighbours(l))
        if (--deg[w] == 1) next.push_back(w);
    layer.swap(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

std::string canonical_form(const Tree& t) {
  std::string best;
  for (VertexId c : centres(t)) {
    std::string s = rooted_code(t, c, kNone);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

std::vector<Tree> enumerate_trees(std::uint32_t n) {
  if (n == 0) throw SizeError("trees need at least one vertex");
  if (n > kEnumerationCutoff) throw SizeError("tree enumeration is limited to n <= 10");
  std::map<std::string, Tree> level;
  Tree one(1, {});
  level.emplace(canonical_form(one), one);
  for (std::uint32_t size = 2; size <= n; ++size) {
    std::map<std::string, Tree> next;
    for (auto& [code, tr] : level) {
      for (VertexId v = 0; v < tr.size(); ++v) {
        auto edges = tr.edges();
        edges.push_back({v, size - 1});
        Tree grown(size, std::move(edges));
        next.emplace(canonical_form(grown), std::move(grown));
      }
    }
    level.swap(next);
  }
  std::vector<Tree> out;
  for (auto& [code, tr] : level) out.push_back(tr);
  return out;
}

Tree path_tree(std::uint32_t n) {
  std::vector<Edge> e;
  for (VertexId v = 1; v < n; ++v) e.push_back({v - 1, v});
  return Tree(n, std::move(e));
}

Tree star_tree(std::uint32_t leaves) {
  std::vector<Edge> e;
  for (VertexId v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Tree(leaves + 1, std::move(e));
}

Tree broom_tree(std::uint32_t handle, std::uint32_t bristles) {
  std::vector<Edge> e;
  for (VertexId v = 1; v <= handle; ++v) e.push_back({v - 1, v});
  for (std::uint32_t i = 0; i < bristles; ++i) e.push_back({handle, handle + 1 + i});
  return Tree(handle + 1 + bristles, std::move(e));
}

Tree spider_tree(std::uint32_t legs, std::uint32_t leg_length) {
  std::vector<Edge> e;
  VertexId next = 1;
  for (std::uint32_t l = 0; l < legs; ++l) {
    VertexId prev = 0;
    for (std::uint32_t s = 0; s < leg_length; ++s) {
      e.push_back({prev, next});
      prev = next++;
    }
  }
  return Tree(next, std::move(e));
}

Tree caterpillar_tree(std::uint32_t n, std::uint32_t hub_degree, std::uint64_t seed) {
  if (hub_degree < 2 || n < hub_degree + 3) throw ParameterError("caterpillar too small for its hub");
  std::uint32_t hub_leaves = hub_degree - 2;
  std::uint32_t spine = (n - hub_leaves) / 2;
  std::uint32_t hub = spine / 2;
  std::vector<Edge> e;
  for (VertexId v = 1; v < spine; ++v) e.push_back({v - 1, v});
  VertexId next = spine;
  for (std::uint32_t i = 0; i < hub_leaves; ++i) e.push_back({hub, next++});
  Rng rng(seed, "caterpillar");
  while (next < n) {
    VertexId at = rng.below(spine);
    if (at == hub) continue;
    e.push_back({at, next++});
  }
  return Tree(n, std::move(e));
}

Tree double_star_tree(std::uint32_t left, std::uint32_t right) {
  std::vector<Edge> e{{0, 1}};
  VertexId next = 2;
  for (std::uint32_t i = 0; i < left; ++i) e.push_back({0, next++});
  for (std::uint32_t i = 0; i < right; ++i) e.push_back({1, next++});
  return Tree(next, std::move(e));
}

Tree random_recursive_tree(std::uint32_t n, std::uint64_t seed) {
  Rng rng(seed, "recursive_tree");
  std::vector<Edge> e;
  for (VertexId v = 1; v < n; ++v) e.push_back({rng.below(v), v});
  return Tree(n, std::move(e));
}

}  // namespace rainbow
