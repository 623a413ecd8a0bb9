#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "rainbow/colouring_gen.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"

using namespace rainbow;

namespace {

// Bipartite colouring between A = [0,r) and X = [r,2r) given by f(i,j); pairs
// inside a side all get one extra colour.
EdgeColouring bipartite(std::uint32_t r, std::uint32_t (*f)(std::uint32_t, std::uint32_t, std::uint32_t)) {
  std::uint32_t n = 2 * r;
  std::vector<std::uint32_t> up;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) up.push_back(u < r && v >= r ? f(u, v - r, r) : 1000);
  return EdgeColouring::explicit_table(n, n, up);
}

std::uint32_t cyclic_latin(std::uint32_t i, std::uint32_t j, std::uint32_t r) { return (i + j) % r; }
std::uint32_t parity(std::uint32_t i, std::uint32_t j, std::uint32_t) { return (i + j) % 2; }

VertexSet range(std::uint32_t n, std::uint32_t lo, std::uint32_t hi) {
  VertexSet s(n);
  for (std::uint32_t v = lo; v < hi; ++v) s.insert(v);
  return s;
}

// Independent optimum: try every injective assignment pattern.
std::size_t oracle_opt(const EdgeColouring& col, const std::vector<VertexId>& A, const std::vector<VertexId>& X,
                       const ColourSet& C, std::size_t i, std::vector<char>& ux, std::vector<char>& uc) {
  if (i == A.size()) return 0;
  std::size_t best = oracle_opt(col, A, X, C, i + 1, ux, uc);
  for (std::size_t j = 0; j < X.size(); ++j) {
    ColourId c = col.colour(A[i], X[j]);
    if (ux[j] || uc[c] || !C.contains(c)) continue;
    ux[j] = uc[c] = 1;
    best = std::max(best, 1 + oracle_opt(col, A, X, C, i + 1, ux, uc));
    ux[j] = uc[c] = 0;
  }
  return best;
}

}  // namespace

TEST_CASE("greedy examples") {
  auto z7 = group_sum_colouring(GroupSpec::cyclic(7));
  auto all = ColourSet::all(z7.num_colours());
  CHECK(greedy_rainbow_matching(z7, VertexSet::of(7, {0}), VertexSet::of(7, {1}), all).size() == 1);
  CHECK(greedy_rainbow_matching(z7, VertexSet::of(7, {0}), VertexSet::of(7, {1}), ColourSet(7)).size() == 0);
  auto z4 = group_sum_colouring(GroupSpec::cyclic(4));
  auto m = greedy_rainbow_matching(z4, VertexSet::of(4, {0, 1}), VertexSet::of(4, {2, 3}), ColourSet::all(4));
  REQUIRE(m.size() == 2);
  CHECK(m.edges[0] == MatchEdge{0, 2, 2});
  CHECK(m.edges[1] == MatchEdge{1, 3, 0});
  CHECK_THROWS_AS(greedy_rainbow_matching(z4, VertexSet::of(4, {0, 1}), VertexSet::of(4, {1, 3}), ColourSet::all(4)),
                  ParameterError);
}

TEST_CASE("known optima") {
  auto par = bipartite(2, parity);
  auto C = ColourSet::all(par.num_colours());
  CHECK(brute_force_rainbow_matching(par, range(4, 0, 2), range(4, 2, 4), C).size() == 1);
  CHECK(switching_rainbow_matching(par, range(4, 0, 2), range(4, 2, 4), C).size() == 1);
  auto l4 = bipartite(4, cyclic_latin);
  auto C4 = ColourSet::all(l4.num_colours());
  CHECK(brute_force_rainbow_matching(l4, range(8, 0, 4), range(8, 4, 8), C4).size() == 3);
  CHECK(switching_rainbow_matching(l4, range(8, 0, 4), range(8, 4, 8), C4).size() == 3);
  auto l3 = bipartite(3, cyclic_latin);
  CHECK(brute_force_rainbow_matching(l3, range(6, 0, 3), range(6, 3, 6), ColourSet::all(l3.num_colours())).size() ==
        3);
  CHECK(brute_force_rainbow_matching(l3, VertexSet(6), range(6, 3, 6), ColourSet::all(l3.num_colours())).size() == 0);
  auto z7 = group_sum_colouring(GroupSpec::cyclic(7));
  CHECK(switching_rainbow_matching(z7, VertexSet::of(7, {0}), VertexSet::of(7, {1}), ColourSet::all(7)).size() == 1);
  auto big = group_sum_colouring(GroupSpec::cyclic(30));
  CHECK_THROWS_AS(brute_force_rainbow_matching(big, range(30, 0, 11), range(30, 11, 20), ColourSet::all(30)),
                  SizeError);
}

TEST_CASE("brute force matches an independent oracle") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng r(s, "bf");
    auto col = random_locally_k_bounded(14, 2, s);
    std::vector<VertexId> perm(14);
    std::iota(perm.begin(), perm.end(), 0);
    r.shuffle(perm);
    std::uint32_t na = 1 + r.below(6), nx = 1 + r.below(8);
    VertexSet A(14), X(14);
    for (std::uint32_t i = 0; i < na; ++i) A.insert(perm[i]);
    for (std::uint32_t i = 0; i < nx; ++i) X.insert(perm[na + i]);
    ColourSet C(col.num_colours());
    for (ColourId c = 0; c < col.num_colours(); ++c)
      if (r.bernoulli(0.7)) C.insert(c);
    std::vector<char> ux(nx, 0), uc(col.num_colours(), 0);
    auto bf = brute_force_rainbow_matching(col, A, X, C);
    CHECK(!validate_matching(col, bf, A, X, C));
    CHECK(bf.size() == oracle_opt(col, A.members(), X.members(), C, 0, ux, uc));
  }
}

TEST_CASE("switching soundness and quality on random instances") {
  std::size_t close = 0, trials = 100;
  double gap = 0;
  for (std::uint64_t s = 0; s < trials; ++s) {
    Rng r(s, "sw");
    auto col = random_locally_k_bounded(20, 2, 1000 + s);
    std::vector<VertexId> perm(20);
    std::iota(perm.begin(), perm.end(), 0);
    r.shuffle(perm);
    std::uint32_t na = 2 + r.below(7), nx = 4 + r.below(9);
    VertexSet A(20), X(20);
    for (std::uint32_t i = 0; i < na; ++i) A.insert(perm[i]);
    for (std::uint32_t i = 0; i < nx; ++i) X.insert(perm[na + i]);
    ColourSet C = ColourSet::all(col.num_colours());
    auto g = greedy_rainbow_matching(col, A, X, C);
    auto sw = switching_rainbow_matching(col, A, X, C);
    auto bf = brute_force_rainbow_matching(col, A, X, C);
    CHECK(!validate_matching(col, g, A, X, C));
    CHECK(!validate_matching(col, sw, A, X, C));
    CHECK(sw.size() >= g.size());
    CHECK(sw.size() <= bf.size());
    close += sw.size() + 1 >= bf.size();
    gap += static_cast<double>(bf.size() - sw.size());
  }
  CHECK(close >= 95);
  CHECK(gap / trials <= 0.3);
}

TEST_CASE("switching on a larger instance beats or ties greedy") {
  auto col = group_sum_colouring(GroupSpec::cyclic(401));
  Rng r(1, "big");
  VertexSet A(401), X(401);
  ColourSet C(401);
  for (VertexId v = 0; v < 401; ++v) {
    double u = r.unit();
    if (u < 0.25) A.insert(v);
    else if (u < 0.5) X.insert(v);
  }
  for (ColourId c = 0; c < 401; ++c)
    if (r.bernoulli(0.25)) C.insert(c);
  auto g = greedy_rainbow_matching(col, A, X, C);
  auto sw = switching_rainbow_matching(col, A, X, C);
  CHECK(!validate_matching(col, sw, A, X, C));
  CHECK(sw.size() >= g.size());
  MESSAGE("greedy " << g.size() << " switching " << sw.size() << " |A| " << A.size() << " |C| " << C.size());
}

TEST_CASE("complete_matching_greedy") {
  auto z7 = group_sum_colouring(GroupSpec::cyclic(7));
  RainbowMatching empty;
  auto Z = range(7, 1, 7);
  auto all = ColourSet::all(7);
  CHECK(complete_matching_greedy(z7, empty, VertexSet(7), Z, all).size() == 0);
  auto m = complete_matching_greedy(z7, empty, VertexSet::of(7, {0}), Z, all);
  REQUIRE(m.size() == 1);
  CHECK(m.edges[0].c == m.edges[0].x);
  RainbowMatching part;
  part.edges.push_back({0, 1, 1});
  auto m2 = complete_matching_greedy(z7, part, VertexSet::of(7, {2}), range(7, 3, 7), all);
  CHECK(m2.size() == 2);
  CHECK(!validate_matching(z7, m2, VertexSet::of(7, {0, 2}), range(7, 1, 7), all));
  try {
    complete_matching_greedy(z7, empty, VertexSet::of(7, {0}), Z, ColourSet(7));
    CHECK(false);
  } catch (const CompletionError& e) {
    CHECK(e.stuck == 0);
  }
}
