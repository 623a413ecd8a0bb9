#include "rainbow/stars.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace rainbow {

std::size_t StarFamily::leaf_count() const {
  std::size_t c = 0;
  for (auto& s : stars) c += s.leaves.size();
  return c;
}

std::optional<std::string> validate_star_family(const EdgeColouring& col, const StarFamily& family,
                                                std::uint32_t multiplicity, const VertexSet* forbidden_vertices,
                                                const ColourSet* forbidden_colours,
                                                const std::vector<StarRequest>* requests) {
  const std::uint32_t n = col.n();
  std::vector<char> is_root(n, 0), used(n, 0);
  std::vector<std::uint32_t> count(col.num_colours(), 0);
  if (requests && requests->size() != family.stars.size()) return "star count differs from the request count";
  for (auto& s : family.stars) {
    if (s.root >= n) return "root out of range";
    if (is_root[s.root]++) return "root " + std::to_string(s.root) + " repeated";
  }
  for (std::size_t i = 0; i < family.stars.size(); ++i) {
    const FoundStar& s = family.stars[i];
    if (requests) {
      if ((*requests)[i].root != s.root) return "star " + std::to_string(i) + " has the wrong root";
      if ((*requests)[i].degree != s.leaves.size()) return "star " + std::to_string(i) + " has the wrong degree";
    }
    for (VertexId u : s.leaves) {
      std::string tag = "leaf " + std::to_string(u) + " of root " + std::to_string(s.root);
      if (u >= n) return tag + " out of range";
      if (is_root[u]) return tag + " is a root";
      if (used[u]++) return tag + " is used twice";
      if (forbidden_vertices && forbidden_vertices->contains(u)) return tag + " is forbidden";
      ColourId c = col.colour(s.root, u);
      if (forbidden_colours && forbidden_colours->contains(c)) return tag + " uses a forbidden colour";
      if (++count[c] > multiplicity) return tag + " exceeds the multiplicity of colour " + std::to_string(c);
    }
  }
  return std::nullopt;
}

namespace {

class StarSearch {
 public:
  StarSearch(const EdgeColouring& col, const std::vector<StarRequest>& req, const VertexSet& fv,
             const ColourSet& fc, std::uint32_t mult, const StarBudget& budget)
      : col_(col), req_(req), fv_(fv), fc_(fc), mult_(mult), budget_(budget), n_(col.n()) {
    const std::size_t r = req.size();
    is_root_.assign(n_, 0);
    for (auto& q : req) {
      if (q.root >= n_) throw BoundsError("star root out of range");
      if (is_root_[q.root]) throw ParameterError("star roots must be distinct");
      is_root_[q.root] = 1;
    }
    rows_.assign(r, std::vector<std::uint32_t>(n_));
    for (std::size_t i = 0; i < r; ++i) {
      col.row(req[i].root, rows_[i].data());
      if (mult_ > 1) {
        // Rank of u among the root's neighbours of the same colour.
        std::vector<std::uint32_t> seen(col.num_colours(), 0);
        for (VertexId u = 0; u < n_; ++u) {
          if (u == req[i].root) continue;
          std::uint32_t c = rows_[i][u];
          rows_[i][u] = c * mult_ + std::min(seen[c]++, mult_ - 1);
        }
      }
    }
    owner_star_.assign(static_cast<std::size_t>(col.num_colours()) * mult_, kNone);
    owner_leaf_.assign(owner_star_.size(), kNone);
    leaf_of_.assign(n_, kNone);
    pos_.assign(n_, 0);
    leaves_.resize(r);
  }

  void run() {
    greedy();
    bool progress = true;
    while (deficiency() > 0 && progress && !exhausted_) {
      progress = false;
      for (std::size_t i = 0; i < req_.size() && !exhausted_; ++i) {
        while (leaves_[i].size() < req_[i].degree && !exhausted_) {
          if (direct(i)) {
            progress = true;
            continue;
          }
          if (chain(i)) {
            ++augmentations_;
            progress = true;
            continue;
          }
          break;
        }
      }
    }
    // Release overfill, then let deficient stars take the released leaves.
    for (std::size_t i = 0; i < req_.size(); ++i) {
      auto sorted = leaves_[i];
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t t = req_[i].degree; t < sorted.size(); ++t) remove(sorted[t]);
    }
    for (std::size_t i = 0; i < req_.size(); ++i)
      while (leaves_[i].size() < req_[i].degree && direct(i)) {
      }
    log_.clear();
  }

  StarFamily result() const {
    StarFamily f;
    for (std::size_t i = 0; i < req_.size(); ++i) {
      FoundStar s{req_[i].root, leaves_[i]};
      std::sort(s.leaves.begin(), s.leaves.end());
      f.deficiency += req_[i].degree - static_cast<std::uint32_t>(std::min<std::size_t>(s.leaves.size(), req_[i].degree));
      f.stars.push_back(std::move(s));
    }
    f.augmentations = augmentations_;
    f.budget_exhausted = exhausted_;
    return f;
  }

 private:
  std::uint32_t pc(std::size_t i, VertexId u) const { return rows_[i][u]; }
  ColourId real(std::size_t i, VertexId u) const { return mult_ > 1 ? rows_[i][u] / mult_ : rows_[i][u]; }
  bool usable(VertexId u) const { return !is_root_[u] && !fv_.contains(u) && leaf_of_[u] == kNone; }
  bool colour_ok(std::size_t i, VertexId u) const { return !fc_.contains(real(i, u)); }

  std::uint32_t deficiency() const {
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < req_.size(); ++i)
      if (leaves_[i].size() < req_[i].degree) d += req_[i].degree - static_cast<std::uint32_t>(leaves_[i].size());
    return d;
  }

  void add(std::size_t i, VertexId u, bool logged = true) {
    std::uint32_t p = pc(i, u);
    owner_star_[p] = static_cast<std::uint32_t>(i);
    owner_leaf_[p] = u;
    leaf_of_[u] = static_cast<std::uint32_t>(i);
    pos_[u] = static_cast<std::uint32_t>(leaves_[i].size());
    leaves_[i].push_back(u);
    if (logged) log_.push_back({true, static_cast<std::uint32_t>(i), u});
  }
  void remove(VertexId u, bool logged = true) {
    std::uint32_t i = leaf_of_[u];
    std::uint32_t p = pc(i, u);
    owner_star_[p] = kNone;
    owner_leaf_[p] = kNone;
    leaf_of_[u] = kNone;
    VertexId last = leaves_[i].back();
    leaves_[i][pos_[u]] = last;
    pos_[last] = pos_[u];
    leaves_[i].pop_back();
    if (logged) log_.push_back({false, i, u});
  }
  void rollback(std::size_t cp) {
    while (log_.size() > cp) {
      auto e = log_.back();
      log_.pop_back();
      if (e.added) remove(e.leaf, false);
      else add(e.star, e.leaf, false);
    }
  }

  void greedy() {
    std::vector<VertexId> ptr(req_.size(), 0);
    bool any = true;
    while (any) {
      any = false;
      for (std::size_t i = 0; i < req_.size(); ++i) {
        if (leaves_[i].size() >= req_[i].degree) continue;
        while (ptr[i] < n_) {
          VertexId u = ptr[i]++;
          if (usable(u) && colour_ok(i, u) && owner_star_[pc(i, u)] == kNone) {
            add(i, u);
            any = true;
            break;
          }
        }
      }
    }
    log_.clear();
  }

  bool direct(std::size_t i) {
    for (VertexId u = 0; u < n_; ++u)
      if (usable(u) && colour_ok(i, u) && owner_star_[pc(i, u)] == kNone) {
        add(i, u);
        log_.clear();
        return true;
      }
    return false;
  }

  // Star i takes u; if u's colour is held by another star, that star gives
  // up the leaf holding it and star i takes that leaf next.
  bool chain(std::size_t i) {
    const std::size_t cap = req_[i].degree - leaves_[i].size() + budget_.overfill;
    for (VertexId start = 0; start < n_; ++start) {
      if (!usable(start) || !colour_ok(i, start)) continue;
      std::size_t cp = log_.size();
      VertexId cur = start;
      bool ok = false;
      for (std::size_t steps = 0; steps <= cap; ++steps) {
        if (++nodes_ > budget_.node_budget) {
          exhausted_ = true;
          break;
        }
        std::uint32_t p = pc(i, cur);
        std::uint32_t j = owner_star_[p];
        if (j == kNone) {
          add(i, cur);
          ok = true;
          break;
        }
        if (j == i) break;
        VertexId w = owner_leaf_[p];
        remove(w);
        add(i, cur);
        if (!colour_ok(i, w)) break;
        cur = w;
      }
      if (ok) {
        log_.clear();
        return true;
      }
      rollback(cp);
      if (exhausted_) return false;
    }
    return false;
  }

  struct Entry {
    bool added;
    std::uint32_t star;
    VertexId leaf;
  };

  const EdgeColouring& col_;
  const std::vector<StarRequest>& req_;
  const VertexSet& fv_;
  const ColourSet& fc_;
  std::uint32_t mult_;
  StarBudget budget_;
  std::uint32_t n_;
  std::vector<char> is_root_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::uint32_t> owner_star_;
  std::vector<VertexId> owner_leaf_;
  std::vector<std::uint32_t> leaf_of_;
  std::vector<std::uint32_t> pos_;
  std::vector<std::vector<VertexId>> leaves_;
  std::vector<Entry> log_;
  std::uint64_t nodes_ = 0;
  std::uint32_t augmentations_ = 0;
  bool exhausted_ = false;
};

std::optional<StarFamily> exhaustive_rainbow_stars(const EdgeColouring& col, const std::vector<StarRequest>& req,
                                                   const VertexSet& fv, const ColourSet& fc, std::uint64_t budget) {
  const std::uint32_t n = col.n();
  std::vector<char> blocked(n, 0), used_c(col.num_colours(), 0);
  for (auto& q : req) blocked[q.root] = 1;
  fv.for_each([&](std::uint32_t v) { blocked[v] = 1; });
  std::vector<std::vector<VertexId>> leaves(req.size());
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t, VertexId)> dfs = [&](std::size_t i, VertexId from) -> bool {
    if (++nodes > budget) return false;
    if (i == req.size()) return true;
    if (leaves[i].size() == req[i].degree) return dfs(i + 1, 0);
    for (VertexId u = from; u < n; ++u) {
      if (blocked[u]) continue;
      ColourId c = col.colour(req[i].root, u);
      if (used_c[c] || fc.contains(c)) continue;
      blocked[u] = 1;
      used_c[c] = 1;
      leaves[i].push_back(u);
      if (dfs(i, u + 1)) return true;
      leaves[i].pop_back();
      used_c[c] = 0;
      blocked[u] = 0;
    }
    return false;
  };
  if (!dfs(0, 0)) return std::nullopt;
  StarFamily f;
  for (std::size_t i = 0; i < req.size(); ++i) f.stars.push_back({req[i].root, leaves[i]});
  f.exhaustive = true;
  return f;
}

}  // namespace

StarFamily find_k_bounded_stars(const EdgeColouring& col, const std::vector<StarRequest>& requests,
                                const VertexSet& forbidden_vertices, const ColourSet& forbidden_colours,
                                const StarBudget& budget, std::uint32_t multiplicity) {
  std::uint32_t mult = multiplicity ? multiplicity : col.k();
  if (mult > 1 && mult < col.k()) throw ParameterError("multiplicity must be 1 or at least k");
  for (auto& q : requests)
    if (q.degree == 0) throw ParameterError("star degree must be positive");
  StarSearch search(col, requests, forbidden_vertices, forbidden_colours, mult, budget);
  search.run();
  StarFamily f = search.result();
  if (auto err = validate_star_family(col, f, mult, &forbidden_vertices, &forbidden_colours))
    throw InternalError("star search produced an invalid family: " + *err);
  return f;
}

StarFamily hall_select_rainbow_substars(const EdgeColouring& col, const StarFamily& family,
                                        const std::vector<std::uint32_t>& targets) {
  const std::size_t s = family.stars.size();
  if (targets.size() != s) throw ParameterError("one target per star is required");
  // Per star: colour -> smallest leaf of that colour.
  std::vector<std::map<ColourId, VertexId>> avail(s);
  for (std::size_t i = 0; i < s; ++i) {
    if (family.stars[i].leaves.size() < targets[i]) throw ParameterError("star has fewer leaves than its target");
    for (VertexId u : family.stars[i].leaves) {
      ColourId c = col.colour(family.stars[i].root, u);
      auto it = avail[i].find(c);
      if (it == avail[i].end() || u < it->second) avail[i][c] = u;
    }
  }
  std::vector<std::uint32_t> holder(col.num_colours(), kNone);
  std::vector<std::uint32_t> stamp(col.num_colours(), 0);
  std::uint32_t round = 0;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) -> bool {
    for (auto& [c, u] : avail[i]) {
      if (stamp[c] == round) continue;
      stamp[c] = round;
      if (holder[c] == kNone || augment(holder[c])) {
        holder[c] = static_cast<std::uint32_t>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < s; ++i)
    for (std::uint32_t t = 0; t < targets[i]; ++t) {
      ++round;
      if (!augment(i)) throw InternalError("generalised Hall condition fails for star " + std::to_string(i));
    }
  StarFamily out;
  for (std::size_t i = 0; i < s; ++i) out.stars.push_back({family.stars[i].root, {}});
  for (ColourId c = 0; c < holder.size(); ++c)
    if (holder[c] != kNone) out.stars[holder[c]].leaves.push_back(avail[holder[c]].at(c));
  for (auto& st : out.stars) std::sort(st.leaves.begin(), st.leaves.end());
  if (auto err = validate_star_family(col, out, 1, nullptr, nullptr))
    throw InternalError("Hall selection is not rainbow: " + *err);
  return out;
}

StarFamily find_disjoint_rainbow_stars(const EdgeColouring& col, const std::vector<StarRequest>& requests,
                                       const VertexSet& forbidden_vertices, const ColourSet& forbidden_colours,
                                       double epsilon, const StarBudget& budget) {
  if (requests.empty()) return {};
  const std::uint32_t n = col.n(), k = col.k();
  std::uint32_t roots_free = 0;
  std::uint64_t total = 0;
  for (auto& q : requests) {
    roots_free += !forbidden_vertices.contains(q.root);
    total += q.degree;
  }
  double avail = static_cast<double>(n) - forbidden_vertices.size() - roots_free;
  bool in_regime = total <= (1 - 3 * epsilon) * avail / k && requests.size() <= epsilon * epsilon * avail / 2;
  bool small = n <= budget.exhaustive_cutoff;

  if (small && !in_regime)
    if (auto f = exhaustive_rainbow_stars(col, requests, forbidden_vertices, forbidden_colours, budget.node_budget))
      return *f;

  StarFamily fam;
  bool done = false;
  if (k > 1) {
    std::vector<StarRequest> wide = requests;
    for (auto& q : wide) q.degree *= k;
    StarFamily kb = find_k_bounded_stars(col, wide, forbidden_vertices, forbidden_colours, budget, k);
    if (kb.complete()) {
      std::vector<std::uint32_t> targets;
      for (auto& q : requests) targets.push_back(q.degree);
      fam = hall_select_rainbow_substars(col, kb, targets);
      fam.augmentations = kb.augmentations;
      done = true;
    }
  }
  if (!done) fam = find_k_bounded_stars(col, requests, forbidden_vertices, forbidden_colours, budget, 1);
  if (!fam.complete() && small)
    if (auto f = exhaustive_rainbow_stars(col, requests, forbidden_vertices, forbidden_colours, budget.node_budget))
      return *f;
  return fam;
}

}  // namespace rainbow
