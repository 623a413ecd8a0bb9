#include "rainbow/matching.hpp"

#include <algorithm>
#include <functional>

namespace rainbow {

std::vector<ColourId> RainbowMatching::colours() const {
  std::vector<ColourId> out;
  out.reserve(edges.size());
  for (auto& e : edges) out.push_back(e.c);
  return out;
}

std::optional<std::string> validate_matching(const EdgeColouring& col, const RainbowMatching& m, const VertexSet& A,
                                             const VertexSet& X, const ColourSet& C) {
  std::vector<char> seen_v(col.n(), 0), seen_c(col.num_colours(), 0);
  for (auto& e : m.edges) {
    std::string tag = "edge (" + std::to_string(e.a) + "," + std::to_string(e.x) + ")";
    if (e.a >= col.n() || e.x >= col.n() || e.a == e.x) return tag + " is not a valid pair";
    if (!A.contains(e.a) || !X.contains(e.x)) return tag + " leaves A x X";
    if (col.colour(e.a, e.x) != e.c) return tag + " has the wrong colour";
    if (!C.contains(e.c)) return tag + " uses a colour outside C";
    if (seen_v[e.a]++ || seen_v[e.x]++) return tag + " shares a vertex";
    if (seen_c[e.c]++) return tag + " repeats colour " + std::to_string(e.c);
  }
  return std::nullopt;
}

namespace {

void check_disjoint(const VertexSet& A, const VertexSet& X) {
  bool clash = false;
  A.for_each([&](std::uint32_t v) { clash |= X.contains(v); });
  if (clash) throw ParameterError("A and X must be disjoint");
}

struct Cand {
  VertexId a, x;
};

// Mutable matching with an undo log.
class Work {
 public:
  Work(std::uint32_t n, std::uint32_t colours)
      : mate_a_(n, kNone), mate_x_(n, kNone), col_a_(n, kNone), owner_(colours, kNone), lock_(n, 0) {}

  VertexId mate_a(VertexId a) const { return mate_a_[a]; }
  VertexId mate_x(VertexId x) const { return mate_x_[x]; }
  ColourId colour_at(VertexId a) const { return col_a_[a]; }
  VertexId owner(ColourId c) const { return owner_[c]; }
  bool locked(VertexId v) const { return lock_[v] != 0; }

  void insert(VertexId a, VertexId x, ColourId c) {
    mate_a_[a] = x;
    mate_x_[x] = a;
    col_a_[a] = c;
    owner_[c] = a;
    log_.push_back({Op::Insert, a, x, c});
  }
  void remove(VertexId a) {
    VertexId x = mate_a_[a];
    ColourId c = col_a_[a];
    mate_a_[a] = kNone;
    mate_x_[x] = kNone;
    col_a_[a] = kNone;
    owner_[c] = kNone;
    log_.push_back({Op::Remove, a, x, c});
  }
  void lock(VertexId a, VertexId x) {
    lock_[a] = lock_[x] = 1;
    log_.push_back({Op::Lock, a, x, 0});
  }
  std::size_t checkpoint() const { return log_.size(); }
  void rollback(std::size_t cp) {
    while (log_.size() > cp) {
      Entry e = log_.back();
      log_.pop_back();
      switch (e.op) {
        case Op::Insert:
          mate_a_[e.a] = kNone;
          mate_x_[e.x] = kNone;
          col_a_[e.a] = kNone;
          owner_[e.c] = kNone;
          break;
        case Op::Remove:
          mate_a_[e.a] = e.x;
          mate_x_[e.x] = e.a;
          col_a_[e.a] = e.c;
          owner_[e.c] = e.a;
          break;
        case Op::Lock:
          lock_[e.a] = lock_[e.x] = 0;
          break;
      }
    }
  }
  void commit() {
    for (auto& e : log_)
      if (e.op == Op::Lock) lock_[e.a] = lock_[e.x] = 0;
    log_.clear();
  }

 private:
  enum class Op { Insert, Remove, Lock };
  struct Entry {
    Op op;
    VertexId a, x;
    ColourId c;
  };
  std::vector<VertexId> mate_a_, mate_x_;
  std::vector<ColourId> col_a_;
  std::vector<VertexId> owner_;
  std::vector<char> lock_;
  std::vector<Entry> log_;
};

struct Instance {
  std::vector<VertexId> A, X;
  std::vector<std::vector<Cand>> by_colour;
  std::vector<ColourId> colours;  // colours with at least one candidate, increasing
};

Instance build_instance(const EdgeColouring& col, const VertexSet& A, const VertexSet& X, const ColourSet& C) {
  Instance in;
  in.A = A.members();
  in.X = X.members();
  in.by_colour.resize(col.num_colours());
  std::vector<std::uint32_t> row(col.n());
  for (VertexId a : in.A) {
    col.row(a, row.data());
    for (VertexId x : in.X) {
      ColourId c = row[x];
      if (C.contains(c)) in.by_colour[c].push_back({a, x});
    }
  }
  for (ColourId c = 0; c < in.by_colour.size(); ++c)
    if (!in.by_colour[c].empty()) in.colours.push_back(c);
  return in;
}

void greedy_fill(const EdgeColouring& col, const Instance& in, const ColourSet& C, Work& w) {
  std::vector<std::uint32_t> row(col.n());
  for (VertexId a : in.A) {
    if (w.mate_a(a) != kNone) continue;
    col.row(a, row.data());
    for (VertexId x : in.X) {
      ColourId c = row[x];
      if (w.mate_x(x) == kNone && C.contains(c) && w.owner(c) == kNone) {
        w.insert(a, x, c);
        break;
      }
    }
  }
  w.commit();
}

RainbowMatching export_matching(const Instance& in, const Work& w) {
  RainbowMatching m;
  for (VertexId a : in.A)
    if (w.mate_a(a) != kNone) m.edges.push_back({a, w.mate_a(a), w.colour_at(a)});
  return m;
}

class Switcher {
 public:
  Switcher(const Instance& in, Work& w, std::uint32_t n, std::uint32_t colours, std::uint64_t budget)
      : in_(in), w_(w), enter_(n, kInf), level_(colours, kInf), budget_(budget) {}

  bool exhausted() const { return exhausted_; }

  bool augment(std::uint32_t s, std::uint32_t max_layers) {
    std::fill(enter_.begin(), enter_.end(), kInf);
    std::fill(level_.begin(), level_.end(), kInf);
    for (VertexId a : in_.A)
      if (w_.mate_a(a) == kNone) enter_[a] = 0;
    for (VertexId x : in_.X)
      if (w_.mate_x(x) == kNone) enter_[x] = 0;
    nodes_ = 0;
    exhausted_ = false;
    for (std::uint32_t i = 0; i < max_layers; ++i) {
      for (ColourId c : in_.colours) {
        if (w_.owner(c) != kNone) continue;
        for (const Cand& e : in_.by_colour[c]) {
          if (enter_[e.a] > i || enter_[e.x] > i) continue;
          if (place(e.a, e.x, c, i)) return true;
          if (exhausted_) return false;
        }
      }
      // C_i: colours with s disjoint edges inside A_i x B_i.
      std::vector<char> used(enter_.size(), 0);
      for (ColourId c : in_.colours) {
        if (level_[c] != kInf) continue;
        std::uint32_t found = 0;
        std::vector<VertexId> touched;
        for (const Cand& e : in_.by_colour[c]) {
          if (enter_[e.a] > i || enter_[e.x] > i || used[e.a] || used[e.x]) continue;
          used[e.a] = used[e.x] = 1;
          touched.push_back(e.a);
          touched.push_back(e.x);
          if (++found >= s) break;
        }
        for (VertexId v : touched) used[v] = 0;
        if (found >= s) level_[c] = i;
      }
      bool grew = false;
      for (VertexId a : in_.A) {
        VertexId x = w_.mate_a(a);
        if (x == kNone || level_[w_.colour_at(a)] != i) continue;
        if (enter_[a] > i + 1) enter_[a] = i + 1, grew = true;
        if (enter_[x] > i + 1) enter_[x] = i + 1, grew = true;
      }
      if (!grew) break;
    }
    return false;
  }

 private:
  static constexpr std::uint32_t kInf = 0xffffffffu;

  // Insert (a,x,c), relocating the matched edges it displaces to
  // same-coloured substitutes of lower level.
  bool place(VertexId a, VertexId x, ColourId c, std::uint32_t depth) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (w_.locked(a) || w_.locked(x)) return false;
    struct Displaced {
      VertexId a, x;
      ColourId c;
    };
    Displaced out[2];
    int k = 0;
    if (VertexId xa = w_.mate_a(a); xa != kNone) out[k++] = {a, xa, w_.colour_at(a)};
    if (VertexId ax = w_.mate_x(x); ax != kNone && ax != a) out[k++] = {ax, x, w_.colour_at(ax)};
    for (int i = 0; i < k; ++i)
      if (depth == 0 || level_[out[i].c] > depth - 1) return false;
    std::size_t cp = w_.checkpoint();
    for (int i = 0; i < k; ++i) w_.remove(out[i].a);
    w_.insert(a, x, c);
    w_.lock(a, x);
    for (int i = 0; i < k; ++i) {
      if (!relocate(out[i].a, out[i].x, out[i].c, depth - 1)) {
        w_.rollback(cp);
        return false;
      }
    }
    return true;
  }

  bool relocate(VertexId old_a, VertexId old_x, ColourId c, std::uint32_t depth) {
    for (const Cand& e : in_.by_colour[c]) {
      if (e.a == old_a && e.x == old_x) continue;
      if (place(e.a, e.x, c, depth)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  const Instance& in_;
  Work& w_;
  std::vector<std::uint32_t> enter_;
  std::vector<std::uint32_t> level_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

RainbowMatching greedy_rainbow_matching(const EdgeColouring& col, const VertexSet& A, const VertexSet& X,
                                        const ColourSet& C) {
  check_disjoint(A, X);
  Instance in;
  in.A = A.members();
  in.X = X.members();
  Work w(col.n(), col.num_colours());
  greedy_fill(col, in, C, w);
  return export_matching(in, w);
}

RainbowMatching switching_rainbow_matching(const EdgeColouring& col, const VertexSet& A, const VertexSet& X,
                                           const ColourSet& C, const SwitchingParams& params) {
  check_disjoint(A, X);
  if (params.max_layers == 0 || params.disjoint_edge_threshold == 0 || params.node_budget == 0)
    throw ParameterError("switching parameters must be positive");
  Instance in = build_instance(col, A, X, C);
  Work w(col.n(), col.num_colours());
  greedy_fill(col, in, C, w);
  const std::size_t cap = std::min({in.A.size(), in.X.size(), in.colours.size()});
  Switcher sw(in, w, col.n(), col.num_colours(), params.node_budget);
  std::uint32_t s = params.disjoint_edge_threshold;
  std::uint32_t augmentations = 0;
  bool exhausted = false;
  std::size_t size = export_matching(in, w).size();
  while (size < cap) {
    std::vector<ColourId> before = export_matching(in, w).colours();
    if (sw.augment(s, params.max_layers)) {
      w.commit();
      ++augmentations;
      auto after = export_matching(in, w).colours();
      // Relocated edges keep their colours; exactly one colour is new.
      std::sort(before.begin(), before.end());
      std::sort(after.begin(), after.end());
      if (after.size() != before.size() + 1 || !std::includes(after.begin(), after.end(), before.begin(), before.end()))
        throw InternalError("switching changed the colour multiset");
      greedy_fill(col, in, C, w);
      size = export_matching(in, w).size();
      s = params.disjoint_edge_threshold;
      continue;
    }
    if (sw.exhausted()) exhausted = true;
    if (s == 1) break;
    s = std::max<std::uint32_t>(1, s / 2);
  }
  RainbowMatching m = export_matching(in, w);
  m.augmentations = augmentations;
  m.budget_exhausted = exhausted;
  return m;
}

RainbowMatching brute_force_rainbow_matching(const EdgeColouring& col, const VertexSet& A, const VertexSet& X,
                                             const ColourSet& C) {
  if (A.size() > kBruteMatchA || X.size() > kBruteMatchX)
    throw SizeError("brute-force matching is limited to |A| <= 10 and |X| <= 16");
  check_disjoint(A, X);
  auto av = A.members();
  auto xv = X.members();
  std::size_t na = av.size(), nx = xv.size();
  std::vector<std::vector<ColourId>> c(na, std::vector<ColourId>(nx));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nx; ++j) c[i][j] = col.colour(av[i], xv[j]);
  std::vector<int> pick(na, -1), best_pick(na, -1);
  std::vector<char> used_x(nx, 0), used_c(col.num_colours(), 0);
  std::size_t best = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t i, std::size_t size) {
    if (size + (na - i) <= best) return;
    if (i == na) {
      best = size;
      best_pick = pick;
      return;
    }
    for (std::size_t j = 0; j < nx; ++j) {
      ColourId q = c[i][j];
      if (used_x[j] || used_c[q] || !C.contains(q)) continue;
      used_x[j] = used_c[q] = 1;
      pick[i] = static_cast<int>(j);
      dfs(i + 1, size + 1);
      pick[i] = -1;
      used_x[j] = used_c[q] = 0;
    }
    dfs(i + 1, size);
  };
  dfs(0, 0);
  RainbowMatching m;
  for (std::size_t i = 0; i < na; ++i)
    if (best_pick[i] >= 0) m.edges.push_back({av[i], xv[best_pick[i]], c[i][best_pick[i]]});
  return m;
}

CompletionResult try_complete_matching(const EdgeColouring& col, const RainbowMatching& partial,
                                       const std::vector<VertexId>& A_uncovered,
                                       const std::vector<const VertexSet*>& vertex_pools,
                                       const std::vector<const ColourSet*>& colour_pools,
                                       const VertexSet* used_vertices, const ColourSet* used_colours) {
  const std::uint32_t n = col.n();
  std::vector<char> used_v(n, 0), used_c(col.num_colours(), 0);
  if (used_vertices) used_vertices->for_each([&](std::uint32_t v) { used_v[v] = 1; });
  if (used_colours) used_colours->for_each([&](std::uint32_t c) { used_c[c] = 1; });
  for (auto& e : partial.edges) {
    used_v[e.a] = used_v[e.x] = 1;
    used_c[e.c] = 1;
  }
  for (VertexId a : A_uncovered) used_v[a] = 1;
  std::vector<std::uint8_t> colour_rank(col.num_colours(), 0xff);
  for (std::size_t p = colour_pools.size(); p-- > 0;)
    colour_pools[p]->for_each([&](std::uint32_t c) { colour_rank[c] = static_cast<std::uint8_t>(p); });

  CompletionResult res;
  res.matching = partial;
  std::vector<std::uint32_t> row(n);
  std::vector<std::vector<VertexId>> pool_members;
  for (auto* p : vertex_pools) pool_members.push_back(p->members());
  for (VertexId a : A_uncovered) {
    col.row(a, row.data());
    VertexId best_x = kNone;
    std::uint32_t best_score = 0xffffffffu;
    for (std::size_t p = 0; p < pool_members.size() && best_score > p; ++p) {
      for (VertexId x : pool_members[p]) {
        if (used_v[x]) continue;
        ColourId c = row[x];
        if (used_c[c] || colour_rank[c] == 0xff) continue;
        std::uint32_t score = static_cast<std::uint32_t>(p) + colour_rank[c];
        if (score < best_score) {
          best_score = score;
          best_x = x;
          if (score == p) break;
        }
      }
    }
    if (best_x == kNone) {
      res.stuck = a;
      return res;
    }
    ColourId c = row[best_x];
    used_v[best_x] = 1;
    used_c[c] = 1;
    res.matching.edges.push_back({a, best_x, c});
  }
  return res;
}

RainbowMatching complete_matching_greedy(const EdgeColouring& col, const RainbowMatching& partial,
                                         const VertexSet& A_uncovered, const VertexSet& Z,
                                         const ColourSet& C_reserve) {
  auto r = try_complete_matching(col, partial, A_uncovered.members(), {&Z}, {&C_reserve});
  if (!r.ok()) throw CompletionError("no unused reserve edge from vertex " + std::to_string(r.stuck), r.stuck);
  return r.matching;
}

}  // namespace rainbow
