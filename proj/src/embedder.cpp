#include "rainbow/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include "rainbow/matching.hpp"
#include "rainbow/paths.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/stars.hpp"
#include "rainbow/verify.hpp"

namespace rainbow {

void PipelineConfig::validate() const {
  if (!(mu > 0 && mu < epsilon && epsilon < 1)) throw ParameterError("need 0 < mu < epsilon < 1");
  if (!(p0 >= 0 && p0 < 1)) throw ParameterError("p0 must lie in (0,1)");
  if (retries < 1) throw ParameterError("retries must be >= 1");
}

double PipelineConfig::resolved_p0(std::uint32_t n, std::uint32_t k) const {
  if (p0 > 0) return p0;
  return std::clamp(std::sqrt(12.0 / n), epsilon / (5.0 * k), epsilon / (2.0 * k));
}

std::vector<double> layer_probabilities(const std::vector<std::uint32_t>& m, std::uint32_t n, std::uint32_t k,
                                        double epsilon, double p0) {
  if (m.empty()) throw ParameterError("at least one layer is required");
  if (n == 0 || k == 0) throw ParameterError("n and k must be positive");
  if (!(p0 > 0 && p0 < 1)) throw ParameterError("p0 must lie in (0,1)");
  const std::size_t ell = m.size();
  std::vector<double> p(ell);
  double sum = p0;
  for (std::size_t i = 0; i + 1 < ell; ++i) {
    p[i] = (1 + epsilon / 4) * k * m[i] / n + epsilon / (4.0 * ell);
    sum += p[i];
  }
  p[ell - 1] = 1 - sum;
  if (p[ell - 1] <= 0)
    throw InfeasibleParametersError("layer probabilities exceed 1; the tree is too large for epsilon");
  double total = p0 + std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1) > 1e-12) throw InternalError("layer probabilities do not sum to 1");
  return p;
}

VertexSet PartitionPlan::vertices(std::uint32_t i) const {
  VertexSet s(static_cast<std::uint32_t>(vertex_class.size()));
  for (VertexId v = 0; v < vertex_class.size(); ++v)
    if (vertex_class[v] == i) s.insert(v);
  return s;
}

ColourSet PartitionPlan::colours(std::uint32_t i) const {
  ColourSet s(static_cast<std::uint32_t>(colour_class.size()));
  for (ColourId c = 0; c < colour_class.size(); ++c)
    if (colour_class[c] == i) s.insert(c);
  return s;
}

namespace {

// Draws a class in 2..ell with weights p_2..p_ell.
struct UpperClasses {
  std::vector<double> cum;
  explicit UpperClasses(const std::vector<double>& p) {
    double s = 0;
    for (std::size_t i = 2; i < p.size(); ++i) cum.push_back(s += p[i]);
  }
  std::uint32_t draw(Rng& rng) const {
    double u = rng.unit() * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    return static_cast<std::uint32_t>(it - cum.begin()) + 2;
  }
};

}  // namespace

PartitionPlan sample_partitions(const EdgeColouring& col, const PlanInputs& in, const Pairing& pairing,
                                std::uint64_t seed) {
  const auto& p = in.p;
  if (p.size() < 2) throw ParameterError("need p_0 and at least one layer probability");
  double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1) > 1e-9) throw ParameterError("probabilities must sum to 1");
  for (double x : p)
    if (!(x > 0)) throw ParameterError("probabilities must be positive");
  const std::uint32_t n = col.n(), nc = col.num_colours();
  if ((in.X0 && in.X0->universe() != n) || (in.C0 && in.C0->universe() != nc))
    throw ParameterError("reserve sets have the wrong universe");

  Rng rng(seed, "partition");
  PartitionPlan plan;
  plan.p = p;
  plan.vertex_class.assign(n, 1);
  plan.colour_class.assign(nc, 1);
  for (VertexId v = 0; v < n; ++v)
    if (in.X0 ? in.X0->contains(v) : rng.bernoulli(p[0])) plan.vertex_class[v] = 0;
  for (ColourId c = 0; c < nc; ++c)
    if (in.C0 ? in.C0->contains(c) : rng.bernoulli(p[0])) plan.colour_class[c] = 0;

  std::vector<VertexId> paired_vertex(nc, kNone);
  std::vector<char> vertex_paired(n, 0);
  for (auto [x, c] : pairing) {
    if (x >= n || c >= nc) throw ParameterError("pairing entry out of range");
    if (vertex_paired[x] || paired_vertex[c] != kNone) throw ParameterError("pairing is not injective");
    vertex_paired[x] = 1;
    paired_vertex[c] = x;
    bool reserved = plan.vertex_class[x] == 0 || plan.colour_class[c] == 0;
    if (reserved && (in.X0 || in.C0)) throw ParameterError("paired vertex or colour lies in the reserve");
    if (reserved) paired_vertex[c] = kNone;
    else plan.pairing.emplace_back(x, c);
  }

  const double q1 = p[1] / (1 - p[0]);
  const bool single = p.size() == 2;
  UpperClasses upper(single ? std::vector<double>{} : p);
  auto draw = [&]() -> std::uint32_t {
    if (single || rng.unit() < q1) return 1;
    return upper.draw(rng);
  };
  for (VertexId v = 0; v < n; ++v)
    if (plan.vertex_class[v] != 0) plan.vertex_class[v] = draw();
  for (ColourId c = 0; c < nc; ++c) {
    if (plan.colour_class[c] == 0) continue;
    if (paired_vertex[c] == kNone) {
      plan.colour_class[c] = draw();
    } else if (plan.vertex_class[paired_vertex[c]] == 1) {
      plan.colour_class[c] = 1;
    } else {
      plan.colour_class[c] = upper.draw(rng);
    }
  }
  return plan;
}

std::optional<std::string> validate_plan(const EdgeColouring& col, const PartitionPlan& plan) {
  if (plan.vertex_class.size() != col.n() || plan.colour_class.size() != col.num_colours())
    return "class vectors have the wrong length";
  double total = std::accumulate(plan.p.begin(), plan.p.end(), 0.0);
  if (std::abs(total - 1) > 1e-9) return "probabilities do not sum to 1";
  for (auto c : plan.vertex_class)
    if (c >= plan.classes()) return "vertex class out of range";
  for (auto c : plan.colour_class)
    if (c >= plan.classes()) return "colour class out of range";
  std::vector<char> sv(col.n(), 0), sc(col.num_colours(), 0);
  for (auto [x, c] : plan.pairing) {
    if (sv[x]++ || sc[c]++) return "pairing is not injective";
    if ((plan.vertex_class[x] == 1) != (plan.colour_class[c] == 1))
      return "pair (" + std::to_string(x) + "," + std::to_string(c) + ") breaks the X1/C1 coupling";
  }
  return std::nullopt;
}

namespace {

// Backtracking embedding of the sub-forest of t induced on `verts` into X
// with colours from C.  map, used_v, used_c are updated on success only.
class ForestEmbedder {
 public:
  ForestEmbedder(const EdgeColouring& col, const Tree& t, const std::vector<VertexId>& verts, const VertexSet& X,
                 const ColourSet& C, std::vector<VertexId>& map, std::vector<char>& used_v,
                 std::vector<char>& used_c, std::uint64_t budget)
      : col_(col), X_(X), C_(C), map_(map), used_v_(used_v), used_c_(used_c), budget_(budget) {
    std::vector<char> in(t.size(), 0), seen(t.size(), 0);
    for (VertexId v : verts) in[v] = 1;
    std::vector<VertexId> roots(verts);
    std::stable_sort(roots.begin(), roots.end(), [&](VertexId a, VertexId b) { return t.degree(a) > t.degree(b); });
    for (VertexId r : roots) {
      if (seen[r]) continue;
      std::deque<VertexId> q{r};
      seen[r] = 1;
      order_.push_back({r, kNone});
      while (!q.empty()) {
        VertexId u = q.front();
        q.pop_front();
        for (VertexId w : t.neighbours(u))
          if (in[w] && !seen[w]) {
            seen[w] = 1;
            order_.push_back({w, u});
            q.push_back(w);
          }
      }
    }
    xs_ = X.members();
  }

  bool run() { return place(0); }

 private:
  bool place(std::size_t i) {
    if (i == order_.size()) return true;
    if (budget_ == 0) return false;
    --budget_;
    auto [v, parent] = order_[i];
    for (VertexId x : xs_) {
      if (used_v_[x]) continue;
      ColourId c = kNone;
      if (parent != kNone) {
        c = col_.colour(map_[parent], x);
        if (!C_.contains(c) || used_c_[c]) continue;
        used_c_[c] = 1;
      }
      used_v_[x] = 1;
      map_[v] = x;
      if (place(i + 1)) return true;
      used_v_[x] = 0;
      map_[v] = kNone;
      if (c != kNone) used_c_[c] = 0;
      if (budget_ == 0) return false;
    }
    return false;
  }

  const EdgeColouring& col_;
  const VertexSet& X_;
  const ColourSet& C_;
  std::vector<VertexId>& map_;
  std::vector<char>& used_v_;
  std::vector<char>& used_c_;
  std::uint64_t budget_;
  std::vector<std::pair<VertexId, VertexId>> order_;
  std::vector<VertexId> xs_;
};

constexpr std::uint64_t kSmallBudget = 200'000;

}  // namespace

std::optional<RainbowEmbedding> greedy_embed_small(const EdgeColouring& col, const Tree& t, const VertexSet& X0,
                                                   const ColourSet& C0) {
  if (X0.universe() != col.n() || C0.universe() != col.num_colours())
    throw ParameterError("reserve sets have the wrong universe");
  std::vector<VertexId> map(t.size(), kNone), all(t.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<char> used_v(col.n(), 0), used_c(col.num_colours(), 0);
  ForestEmbedder fe(col, t, all, X0, C0, map, used_v, used_c, kSmallBudget);
  if (fe.run()) return induced_embedding(col, t, std::move(map));

  auto xm = X0.byte_mask(), cm = C0.byte_mask();
  std::vector<std::uint32_t> scratch;
  bool dense = !X0.empty();
  X0.for_each([&](VertexId x) {
    if (dense && col.count_neighbours(x, cm, xm, scratch) < 3 * col.k() * t.size()) dense = false;
  });
  if (dense) throw InternalError("greedy extension blocked although the reserve degree condition holds");
  return std::nullopt;
}

BruteResult search_embed(const EdgeColouring& col, const Tree& t, std::uint64_t node_budget) {
  BruteResult res;
  if (t.size() > col.n()) return res;
  // Translations of ND and group-sum hosts permute colours, so one root image suffices.
  bool transitive = col.kind() == ColouringKind::ND || col.kind() == ColouringKind::GroupSum;

  VertexId root = 0;
  for (VertexId v = 1; v < t.size(); ++v)
    if (t.degree(v) > t.degree(root)) root = v;
  std::vector<std::pair<VertexId, VertexId>> order{{root, kNone}};
  std::vector<char> seen(t.size(), 0);
  seen[root] = 1;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (VertexId w : t.neighbours(order[h].first))
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back({w, order[h].first});
      }

  std::vector<VertexId> map(t.size(), kNone);
  std::vector<char> used_v(col.n(), 0), used_c(col.num_colours(), 0);
  auto place = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    if (node_budget && res.nodes >= node_budget) {
      res.budget_exhausted = true;
      return false;
    }
    ++res.nodes;
    auto [v, parent] = order[i];
    VertexId hi = (parent == kNone && transitive) ? 1 : col.n();
    for (VertexId x = 0; x < hi; ++x) {
      if (used_v[x]) continue;
      ColourId c = kNone;
      if (parent != kNone) {
        c = col.colour(map[parent], x);
        if (used_c[c]) continue;
        used_c[c] = 1;
      }
      used_v[x] = 1;
      map[v] = x;
      if (self(self, i + 1)) return true;
      used_v[x] = 0;
      if (c != kNone) used_c[c] = 0;
      if (res.budget_exhausted) return false;
    }
    return false;
  };
  if (place(place, 0)) res.embedding = induced_embedding(col, t, std::move(map));
  return res;
}

BruteResult brute_force_embed(const EdgeColouring& col, const Tree& t) {
  if (t.size() > kBruteTree || col.n() > kBruteHost)
    throw SizeError("brute force is limited to trees on <= 10 vertices and hosts on <= 20 vertices");
  return search_embed(col, t, 0);
}

namespace {

struct Run {
  const EdgeColouring& col;
  const Tree& t;
  const LayeredDecomposition& dec;
  const PipelineConfig& cfg;
  std::vector<double> p;  // p_0..p_ell
  std::uint64_t seed;
  AttemptTrace& tr;

  Run(const EdgeColouring& c, const Tree& tt, const LayeredDecomposition& d, const PipelineConfig& pc,
      const std::vector<double>& pp, std::uint64_t s, AttemptTrace& t_)
      : col(c), t(tt), dec(d), cfg(pc), p(pp), seed(s), tr(t_) {}

  std::uint32_t n = col.n(), nc = col.num_colours(), k = col.k();
  std::vector<VertexId> map = std::vector<VertexId>(t.size(), kNone);
  std::vector<char> used_v = std::vector<char>(n, 0), used_c = std::vector<char>(nc, 0);
  VertexSet X0{n}, x0_avail{n}, pool_v{n};
  ColourSet C0{nc}, c0_avail{nc}, pool_c{nc};
  PartitionPlan plan;
  std::uint32_t reserve_v = 0, reserve_c = 0;
  double bound_v = 0, bound_c = 0;

  bool fail(const char* what, std::string detail) {
    tr.failure = what;
    tr.detail = std::move(detail);
    return false;
  }

  void use_vertex(VertexId x) {
    if (used_v[x]) throw InternalError("host vertex used twice");
    used_v[x] = 1;
    if (X0.contains(x)) {
      ++reserve_v;
      x0_avail.erase(x);
    } else {
      pool_v.erase(x);
    }
  }
  void use_colour(ColourId c) {
    if (used_c[c]) throw InternalError("colour used twice");
    used_c[c] = 1;
    if (C0.contains(c)) {
      ++reserve_c;
      c0_avail.erase(c);
    } else {
      pool_c.erase(c);
    }
  }
  void attach(VertexId leaf, VertexId x, ColourId c) {
    map[leaf] = x;
    use_vertex(x);
    use_colour(c);
  }

  bool reserves() {
    tr.stage = "reserve";
    Rng rng(seed, "reserve");
    const double p0 = p[0];
    for (VertexId v = 0; v < n; ++v)
      if (rng.bernoulli(p0)) X0.insert(v);
    for (ColourId c = 0; c < nc; ++c)
      if (rng.bernoulli(p0)) C0.insert(c);
    x0_avail = X0;
    c0_avail = C0;
    tr.X0 = X0.size();
    tr.C0 = C0.size();

    auto xm = X0.byte_mask(), cm = C0.byte_mask();
    std::vector<std::uint32_t> scratch;
    const double lambda = p0 * p0 * (n - 1);
    const double tail = std::floor(lambda - std::sqrt(2 * lambda * std::log(100.0 * n)));
    tr.r1_threshold = static_cast<std::uint32_t>(std::max(0.0, std::min(10.0 * k * cfg.mu * n, tail)));
    tr.r1_min = kNone;
    for (VertexId v = 0; v < n; ++v) tr.r1_min = std::min(tr.r1_min, col.count_neighbours(v, cm, xm, scratch));
    if (tr.r1_min < tr.r1_threshold)
      return fail("R1", "minimum colour-C0 degree into X0 is " + std::to_string(tr.r1_min));

    ColourSet notC0 = ColourSet::all(nc);
    C0.for_each([&](ColourId c) { notC0.erase(c); });
    VertexSet notX0 = VertexSet::all(n);
    X0.for_each([&](VertexId v) { notX0.erase(v); });
    auto ncm = notC0.byte_mask(), all_m = VertexSet::all(n).byte_mask(), nxm = notX0.byte_mask();
    double r3 = (1 - cfg.epsilon / 50) * (n - 1.0) - double(k) * C0.size() - X0.size();
    tr.r3_threshold = static_cast<std::uint32_t>(std::max(0.0, r3));
    tr.r3_min = kNone;
    for (VertexId v = 0; v < n; ++v)
      tr.r3_min = std::min(tr.r3_min, col.count_neighbours(v, ncm, X0.contains(v) ? nxm : all_m, scratch));
    if (tr.r3_min < tr.r3_threshold) return fail("R3", "minimum degree outside C0 is " + std::to_string(tr.r3_min));
    return true;
  }

  bool base() {
    tr.stage = "T0";
    const auto& verts = dec.layers[0].vertices;
    std::vector<char> uv(used_v), uc(used_c);
    ForestEmbedder fe(col, t, verts, X0, C0, map, uv, uc, kSmallBudget);
    if (!fe.run()) return fail("T0", "no rainbow copy of the base inside the reserve");
    for (VertexId v : verts) use_vertex(map[v]);
    for (auto [a, b] : t.edges())
      if (map[a] != kNone && map[b] != kNone) use_colour(col.colour(map[a], map[b]));
    return true;
  }

  bool stars_and_partition() {
    tr.stage = "stars";
    const auto& stars = dec.layers[1].stars;
    Pairing pairing;
    StarFamily fam;
    if (!stars.empty()) {
      std::uint64_t d = 0;
      for (auto& s : stars) d += s.leaves.size();
      VertexSet forbid_v = X0;
      ColourSet forbid_c = C0;
      std::uint64_t avail_v = n - X0.size(), avail_c = nc - C0.size();
      std::vector<StarRequest> req;
      std::uint64_t want = 0;
      for (auto& s : stars) {
        double ni = std::ceil((1 - cfg.epsilon / 8) * n * s.leaves.size() / (double(k) * d));
        req.push_back({map[s.root], static_cast<std::uint32_t>(ni)});
        want += req.back().degree;
      }
      std::uint64_t cap = std::min(avail_v, avail_c * k);
      if (want > cap)
        for (auto& r : req) r.degree = static_cast<std::uint32_t>(double(r.degree) * cap / want);
      fam = find_disjoint_rainbow_stars(col, req, forbid_v, forbid_c, cfg.epsilon / 8);
      tr.star_deficiency = fam.deficiency;
      for (std::size_t i = 0; i < fam.stars.size(); ++i) {
        tr.reservoir_sizes.push_back(static_cast<std::uint32_t>(fam.stars[i].leaves.size()));
        for (VertexId y : fam.stars[i].leaves) pairing.emplace_back(y, col.colour(fam.stars[i].root, y));
      }
    }

    tr.stage = "partition";
    // Raise p1 so every reservoir expects max((1+eps/4)d_i, d_i+3sqrt(d_i))
    // vertices in X1; p_ell pays.
    double need = 0;
    for (std::size_t i = 0; i < fam.stars.size(); ++i)
      if (!fam.stars[i].leaves.empty()) {
        double d = static_cast<double>(stars[i].leaves.size());
        double want = std::max((1 + cfg.epsilon / 4) * d, d + 3 * std::sqrt(d));
        need = std::max(need, want * (1 - p[0]) / double(fam.stars[i].leaves.size()));
      }
    const std::size_t last = p.size() - 1;
    if (need > p[1] && last > 1) {
      double delta = std::min(need - p[1], p[last] / 2);
      p[1] += delta;
      p[last] -= delta;
      tr.p1_boost = delta;
    }
    PlanInputs in{p, X0, C0};
    plan = sample_partitions(col, in, pairing, seed);
    if (auto err = validate_plan(col, plan)) throw InternalError("partition plan: " + *err);

    tr.stage = "layer 1";
    for (std::size_t i = 0; i < stars.size(); ++i) {
      const auto& want = stars[i].leaves;
      std::vector<VertexId> got;
      for (VertexId y : fam.stars[i].leaves)
        if (plan.vertex_class[y] == 1 && got.size() < want.size()) got.push_back(y);
      if (got.size() < want.size()) {
        bool short_star = fam.stars[i].leaves.size() < want.size();
        return fail(short_star ? "star" : "Q0", "star at " + std::to_string(stars[i].root) + " has " +
                                                    std::to_string(got.size()) + " of " +
                                                    std::to_string(want.size()) + " leaves in X1");
      }
      VertexId r = map[stars[i].root];
      for (std::size_t q = 0; q < want.size(); ++q) attach(want[q], got[q], col.colour(r, got[q]));
    }
    return true;
  }

  void open_class(std::uint32_t i) {
    for (VertexId v = 0; v < n; ++v)
      if (plan.vertex_class[v] == i && !used_v[v]) pool_v.insert(v);
    for (ColourId c = 0; c < nc; ++c)
      if (plan.colour_class[c] == i && !used_c[c]) pool_c.insert(c);
  }

  bool leaf_layer(std::uint32_t i, LayerTrace& lt) {
    const auto& att = dec.layers[i].leaves;
    std::vector<std::pair<VertexId, VertexId>> hosts;  // parent image, leaf
    for (auto& a : att) hosts.push_back({map[a.parent], a.leaf});
    std::sort(hosts.begin(), hosts.end());
    std::map<VertexId, VertexId> leaf_of(hosts.begin(), hosts.end());
    std::vector<VertexId> A;
    for (auto& h : hosts) A.push_back(h.first);

    VertexSet Xi(n);
    ColourSet Ci(nc);
    pool_v.for_each([&](VertexId v) {
      if (plan.vertex_class[v] == i) Xi.insert(v);
    });
    pool_c.for_each([&](ColourId c) {
      if (plan.colour_class[c] == i) Ci.insert(c);
    });
    lt.class_vertices = Xi.size();
    lt.class_colours = Ci.size();

    auto apply = [&](const RainbowMatching& m, std::size_t from) {
      for (std::size_t e = from; e < m.edges.size(); ++e) {
        auto& me = m.edges[e];
        attach(leaf_of.at(me.a), me.x, me.c);
        leaf_of.erase(me.a);
      }
    };
    auto remaining = [&]() {
      std::vector<VertexId> r;
      for (auto& [a, leaf] : leaf_of) r.push_back(a);
      return r;
    };

    RainbowMatching m1 = switching_rainbow_matching(col, VertexSet::of(n, A), Xi, Ci);
    lt.matched = static_cast<std::uint32_t>(m1.size());
    apply(m1, 0);
    double allowed = cfg.mu * p[i] * n;
    if (lt.size > lt.matched + allowed) lt.r5_shortfall = static_cast<std::uint32_t>(lt.size - lt.matched - allowed);

    auto rest = remaining();
    if (!rest.empty()) {
      RainbowMatching m2 = switching_rainbow_matching(col, VertexSet::of(n, rest), pool_v, pool_c);
      lt.matched_pool = static_cast<std::uint32_t>(m2.size());
      apply(m2, 0);
      rest = remaining();
    }
    if (!rest.empty()) {
      lt.completed = static_cast<std::uint32_t>(rest.size());
      auto res = try_complete_matching(col, {}, rest, {&pool_v, &x0_avail}, {&pool_c, &c0_avail});
      apply(res.matching, 0);
      if (!res.ok())
        return fail("Q1", "layer " + std::to_string(i) + ": no free edge from host " + std::to_string(res.stuck));
    }
    return true;
  }

  bool path_layer(std::uint32_t i, LayerTrace& lt) {
    const auto& paths = dec.layers[i].paths;
    std::vector<PathRequest> req;
    for (auto& q : paths) req.push_back({map[q.x], map[q.y]});
    auto apply = [&](const RainbowPathSystem& sys, const std::vector<std::size_t>& ids) {
      for (std::size_t r = 0; r < ids.size(); ++r) {
        if (!sys.paths[r]) continue;
        const auto& rp = *sys.paths[r];
        const auto& q = paths[ids[r]];
        attach(q.a, rp.vertices[1], rp.colours[0]);
        attach(q.b, rp.vertices[2], rp.colours[1]);
        use_colour(rp.colours[2]);
      }
    };
    std::vector<std::size_t> ids(req.size());
    std::iota(ids.begin(), ids.end(), 0);
    auto sys = connect_pairs_disjointly(col, req, pool_v, pool_c);
    apply(sys, ids);
    lt.matched_pool = static_cast<std::uint32_t>(req.size() - sys.unconnected.size());
    if (sys.complete()) return true;

    std::vector<PathRequest> req2;
    std::vector<std::size_t> ids2;
    for (auto r : sys.unconnected) {
      req2.push_back(req[r]);
      ids2.push_back(r);
    }
    VertexSet Y = pool_v;
    x0_avail.for_each([&](VertexId v) { Y.insert(v); });
    ColourSet C = pool_c;
    c0_avail.for_each([&](ColourId c) { C.insert(c); });
    auto sys2 = connect_pairs_disjointly(col, req2, Y, C);
    apply(sys2, ids2);
    lt.completed = static_cast<std::uint32_t>(req2.size());
    if (sys2.complete()) return true;

    std::size_t threshold = std::min<std::size_t>(static_cast<std::size_t>(20 * cfg.mu * n), 10 * req.size());
    for (auto r : sys2.unconnected) {
      auto found = enumerate_rainbow_3paths(col, req2[r].u, req2[r].v, Y, C, threshold);
      if (found.size() < threshold)
        return fail("R2", "pair (" + std::to_string(req2[r].u) + "," + std::to_string(req2[r].v) + ") has " +
                              std::to_string(found.size()) + " disjoint candidates");
    }
    return fail("path", std::to_string(sys2.unconnected.size()) + " pairs left unconnected in layer " +
                            std::to_string(i));
  }

  // Layer i prefix: hosts in X0..Xi, colours in C0..Ci.
  void check_prefix(std::uint32_t i) {
    for (std::uint32_t q = 0; q <= i; ++q)
      for (VertexId v : dec.layers[q].vertices) {
        if (map[v] == kNone) throw InternalError("prefix vertex left unmapped");
        if (plan.vertex_class[map[v]] > i) throw InternalError("prefix vertex outside X0..Xi");
      }
    for (auto [a, b] : t.edges()) {
      if (map[a] == kNone || map[b] == kNone) continue;
      if (plan.colour_class[col.colour(map[a], map[b])] > i) throw InternalError("prefix colour outside C0..Ci");
    }
  }

  bool run() {
    if (!reserves() || !base() || !stars_and_partition()) return false;
    bound_v = 3 * cfg.mu * n + cfg.mu * p[1] * n;
    bound_c = 4 * cfg.mu * n + cfg.mu * p[1] * n;
    open_class(1);
    check_prefix(1);
    const bool cheap = t.size() <= 2000;
    for (std::uint32_t i = 2; i <= dec.ell; ++i) {
      tr.stage = "layer " + std::to_string(i);
      open_class(i);
      LayerTrace lt;
      lt.index = i;
      lt.kind = dec.layers[i].kind;
      lt.size = dec.layer_size(i);
      bool ok = lt.kind == LayerKind::Paths3 ? path_layer(i, lt) : leaf_layer(i, lt);
      bound_v += cfg.mu * p[i] * n;
      bound_c += cfg.mu * p[i] * n;
      lt.reserve_vertices = reserve_v;
      lt.reserve_colours = reserve_c;
      tr.layers.push_back(lt);
      if (!ok) return false;
      if (reserve_v > bound_v || reserve_c > bound_c)
        return fail("accounting", "layer " + std::to_string(i) + " drew " + std::to_string(reserve_v) +
                                      " reserve vertices and " + std::to_string(reserve_c) + " reserve colours");
      if (cheap || i == dec.ell) check_prefix(i);
    }
    tr.reserve_vertex_bound = static_cast<std::uint32_t>(bound_v);
    tr.reserve_colour_bound = static_cast<std::uint32_t>(bound_c);
    tr.stage = "done";
    return true;
  }
};

}  // namespace

EmbedOutcome embed_tree(const EdgeColouring& col, const Tree& t, const PipelineConfig& cfg) {
  cfg.validate();
  const std::uint32_t n = col.n(), k = col.k();
  EmbedOutcome out;
  if (t.size() > n) throw InfeasibleParametersError("tree has more vertices than the host");
  if (n <= cfg.fallback_cutoff && t.size() <= kBruteTree && n <= kBruteHost) {
    out.method = "brute_force";
    auto r = brute_force_embed(col, t);
    out.embedding = std::move(r.embedding);
    if (!out.ok()) out.failure = "proven absent";
    return out;
  }
  if (static_cast<double>(t.size()) * k > (1 - cfg.epsilon) * n + 1e-9)
    throw InfeasibleParametersError("tree exceeds (1-epsilon)n/k vertices");
  out.method = "pipeline";
  if (t.size() == 1) {
    out.embedding = induced_embedding(col, t, {0});
    return out;
  }

  const double p0 = cfg.resolved_p0(n, k);
  out.D = cfg.D ? cfg.D : default_star_threshold(n);
  LayeredDecomposition dec = split_tree(t, out.D, cfg.mu, n, cfg.split);
  out.ell = dec.ell;
  out.j = dec.j;
  std::vector<std::uint32_t> m;
  for (std::uint32_t i = 1; i <= dec.ell; ++i) m.push_back(dec.layer_size(i));
  out.layer_sizes = m;
  out.layer_sizes.insert(out.layer_sizes.begin(), dec.layer_size(0));
  std::vector<double> p = layer_probabilities(m, n, k, cfg.epsilon, p0);
  p.insert(p.begin(), p0);

  std::map<std::string, int> causes;
  for (std::uint32_t r = 0; r < cfg.retries; ++r) {
    AttemptTrace tr;
    tr.attempt = r;
    tr.p0 = p0;
    Run run{col, t, dec, cfg, p, Rng(cfg.seed, "attempt", r).next(), tr};
    bool ok = run.run();
    if (ok) {
      RainbowEmbedding emb = induced_embedding(col, t, run.map);
      Verdict v = check_rainbow_embedding(col, t, emb);
      if (!v) throw InternalError("pipeline produced an invalid embedding: " + v.reason);
      out.embedding = std::move(emb);
    } else {
      ++causes[tr.failure];
    }
    out.attempts.push_back(std::move(tr));
    if (ok) return out;
  }
  out.failure = "retries exhausted:";
  for (auto& [what, count] : causes) out.failure += " " + what + " x" + std::to_string(count);
  return out;
}

}  // namespace rainbow
