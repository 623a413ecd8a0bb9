#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "rainbow/rng.hpp"
#include "rainbow/tree.hpp"

using namespace rainbow;

namespace {

// Labelled-tree oracle: decode every Pruefer sequence and count classes by a
// brute-force isomorphism test over all vertex permutations.
bool isomorphic(const Tree& a, const Tree& b) {
  std::uint32_t n = a.size();
  if (n != b.size()) return false;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : b.edges()) adj[u][v] = adj[v][u] = 1;
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (auto [u, v] : a.edges())
      if (!adj[perm[u]][perm[v]]) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::size_t count_classes_by_pruefer(std::uint32_t n) {
  std::vector<Tree> reps;
  if (n <= 2) return 1;
  std::vector<VertexId> seq(n - 2, 0);
  while (true) {
    Tree t = tree_from_pruefer(n, seq);
    bool found = false;
    for (auto& r : reps)
      if (isomorphic(t, r)) {
        found = true;
        break;
      }
    if (!found) reps.push_back(t);
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return reps.size();
}

std::uint64_t automorphisms(const Tree& t) {
  std::uint32_t n = t.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : t.edges()) adj[u][v] = adj[v][u] = 1;
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (auto [u, v] : t.edges())
      if (!adj[perm[u]][perm[v]]) {
        ok = false;
        break;
      }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::vector<Tree> small_trees() {
  std::vector<Tree> out;
  for (std::uint32_t n = 1; n <= 10; ++n)
    for (auto& t : enumerate_trees(n)) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("tree construction errors") {
  CHECK_THROWS_AS(Tree(0, {}), SizeError);
  CHECK_THROWS_AS(Tree(3, {{0, 1}}), SchemaError);
  CHECK_THROWS_AS(Tree(3, {{0, 1}, {0, 3}}), BoundsError);
  CHECK_THROWS_AS(Tree(3, {{0, 0}, {1, 2}}), SchemaError);
  CHECK_THROWS_AS(Tree(4, {{0, 1}, {1, 0}, {2, 3}}), SchemaError);
  CHECK_THROWS_AS(Tree(4, {{0, 1}, {1, 2}, {0, 2}}), SchemaError);
}

TEST_CASE("maximal bare paths") {
  CHECK(find_maximal_bare_paths(Tree()).empty());
  auto p = find_maximal_bare_paths(path_tree(5));
  REQUIRE(p.size() == 1);
  CHECK(p[0].size() == 5);
  auto s = find_maximal_bare_paths(star_tree(3));
  CHECK(s.size() == 3);
  for (auto& q : s) CHECK(q.size() == 2);
  auto sp = find_maximal_bare_paths(spider_tree(3, 2));
  CHECK(sp.size() == 3);
  for (auto& q : sp) {
    CHECK(q.size() == 3);
    CHECK((q.front() == 0 || q.back() == 0));
  }
}

TEST_CASE("maximal bare paths partition the edges") {
  for (const Tree& t : small_trees()) {
    if (t.size() < 2) continue;
    std::set<std::pair<VertexId, VertexId>> edges;
    std::size_t total = 0;
    for (auto& q : find_maximal_bare_paths(t)) {
      for (std::size_t i = 1; i + 1 < q.size(); ++i) CHECK(t.degree(q[i]) == 2);
      CHECK(t.degree(q.front()) != 2);
      CHECK(t.degree(q.back()) != 2);
      for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        edges.insert({std::min(q[i], q[i + 1]), std::max(q[i], q[i + 1])});
        ++total;
      }
    }
    CHECK(total == t.size() - 1);
    CHECK(edges.size() == t.size() - 1);
  }
}

TEST_CASE("extract bare subpaths") {
  CHECK(extract_bare_subpaths(path_tree(10), 3).size() == 2);
  CHECK(extract_bare_subpaths(star_tree(5), 3).empty());
  CHECK(extract_bare_subpaths(path_tree(6), 3).size() == 1);
  CHECK_THROWS_AS(extract_bare_subpaths(path_tree(6), 1), ParameterError);
}

TEST_CASE("leftover bound on all trees up to 10 vertices") {
  for (const Tree& t : small_trees()) {
    if (t.size() < 2) continue;
    auto maximal = find_maximal_bare_paths(t);
    for (std::uint32_t m : {2u, 3u, 4u}) {
      auto ps = extract_bare_subpaths(t, m);
      std::set<VertexId> used;
      for (auto& p : ps) {
        CHECK(p.size() == m + 1);
        for (VertexId v : p) CHECK(used.insert(v).second);
        for (std::size_t i = 1; i + 1 < p.size(); ++i) CHECK(t.degree(p[i]) == 2);
      }
      std::size_t expected = 0;
      for (auto& q : maximal) expected += (q.size() - 2) / (m + 1);
      CHECK(ps.size() >= expected);
      double ell = std::max<double>(t.leaf_count(), 2.0);
      double bound = 6.0 * m * ell + 2.0 * t.size() / (m + 1);
      CHECK(leftover_after_paths(t, ps) <= bound);
    }
  }
}

TEST_CASE("enumeration counts") {
  const std::size_t known[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (std::uint32_t n = 1; n <= 10; ++n) CHECK(enumerate_trees(n).size() == known[n - 1]);
  for (std::uint32_t n = 1; n <= 6; ++n) CHECK(enumerate_trees(n).size() == count_classes_by_pruefer(n));
  // Orbit counting: labelled copies of all classes add up to n^(n-2).
  for (std::uint32_t n = 2; n <= 8; ++n) {
    std::uint64_t fact = 1, cayley = 1;
    for (std::uint32_t i = 2; i <= n; ++i) fact *= i;
    for (std::uint32_t i = 0; i + 2 < n; ++i) cayley *= n;
    std::uint64_t total = 0;
    for (auto& t : enumerate_trees(n)) total += fact / automorphisms(t);
    CHECK(total == cayley);
  }
  CHECK_THROWS_AS(enumerate_trees(11), SizeError);
  for (std::uint32_t n = 1; n <= 7; ++n) {
    auto ts = enumerate_trees(n);
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) CHECK_FALSE(isomorphic(ts[i], ts[j]));
  }
}

TEST_CASE("random tree determinism") {
  CHECK(random_tree(5, 17).edges() == random_tree(5, 17).edges());
  CHECK(random_tree(500, 3).size() == 500);
  CHECK(canonical_form(random_tree(9, 4)) == canonical_form(tree_from_pruefer(9, [] {
          Rng r(4, "random_tree");
          std::vector<VertexId> s(7);
          for (auto& x : s) x = r.below(9);
          return s;
        }())));
}

TEST_CASE("split star and small path") {
  auto s = split_tree(star_tree(100), 10, 0.01, 101);
  CHECK(!validate_decomposition(star_tree(100), s));
  CHECK(s.layers[0].vertices == std::vector<VertexId>{0});
  REQUIRE(s.layers[1].stars.size() == 1);
  CHECK(s.layers[1].stars[0].leaves.size() == 100);
  for (std::uint32_t i = 2; i <= s.ell; ++i) CHECK(s.layer_size(i) == 0);

  auto p = split_tree(path_tree(4), 10, 0.5, 8);
  CHECK(p.layers[0].vertices.size() == 4);
  for (std::uint32_t i = 1; i <= p.ell; ++i) CHECK(p.layer_size(i) == 0);

  CHECK_THROWS_AS(split_tree(path_tree(4), 10, 0.01, 50), ParameterError);
  CHECK_THROWS_AS(split_tree(path_tree(4), 0, 0.5, 8), ParameterError);
  CHECK_THROWS_AS(split_tree(path_tree(9), 2, 0.5, 8), ParameterError);
}

TEST_CASE("split validator on all small trees") {
  for (const Tree& t : small_trees())
    for (double mu : {0.1, 0.25, 0.5}) {
      std::uint32_t nt = 2 * t.size() + 10;
      auto d = split_tree(t, 2, mu, nt);
      auto err = validate_decomposition(t, d);
      CHECK_MESSAGE(!err, *err);
    }
}

TEST_CASE("split validator on random trees") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng r(s, "sizes");
    std::uint32_t n = 2 + r.below(499);
    Tree t = random_tree(n, s);
    double mu = 0.05;
    std::uint32_t nt = std::max<std::uint32_t>(n, 40);
    auto d = split_tree(t, default_star_threshold(n), mu, nt);
    auto err = validate_decomposition(t, d);
    CHECK_MESSAGE(!err, *err);
    CHECK(d.ell <= 1e4 * d.D / (mu * mu));
  }
  auto t = random_tree(1000, 1);
  auto d = split_tree(t, default_star_threshold(1000), 0.05, 1000);
  CHECK(!validate_decomposition(t, d));
}

TEST_CASE("split on adversarial shapes") {
  std::vector<Tree> shapes{broom_tree(2000, 2000), spider_tree(40, 100), caterpillar_tree(4000, 1000, 1),
                           double_star_tree(1999, 1999), random_recursive_tree(4000, 2), path_tree(4000)};
  for (auto& t : shapes) {
    auto d = split_tree(t, default_star_threshold(5000), 0.01, 5000);
    auto err = validate_decomposition(t, d);
    CHECK_MESSAGE(!err, *err);
    CHECK(d.layer_size(0) <= 50);
  }
}

TEST_CASE("validator rejects broken decompositions") {
  Tree t = path_tree(10);
  auto d = split_tree(t, 2, 0.2, 20);
  REQUIRE(!validate_decomposition(t, d));
  auto bad = d;
  bad.layers[0].vertices.pop_back();
  CHECK(validate_decomposition(t, bad));
  bad = d;
  bad.layers[0].vertices.push_back(bad.layers.back().vertices.empty() ? 0 : bad.layers.back().vertices[0]);
  CHECK(validate_decomposition(t, bad));
}
