#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "rainbow/applications.hpp"
#include "rainbow/colouring_gen.hpp"

using namespace rainbow;

namespace {

std::set<std::pair<VertexId, VertexId>> image_edges(const Tree& t, const std::vector<VertexId>& map) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (auto [u, v] : t.edges()) out.insert(std::minmax(map[u], map[v]));
  return out;
}

// Independent harmonious check: brute recount of sums.
bool harmonious_oracle(const Tree& t, std::uint32_t m, const std::vector<std::uint32_t>& labels) {
  if (std::set<std::uint32_t>(labels.begin(), labels.end()).size() != labels.size()) return false;
  std::set<std::uint32_t> sums;
  for (auto [u, v] : t.edges())
    if (!sums.insert((labels[u] + labels[v]) % m).second) return false;
  return true;
}

}  // namespace

TEST_CASE("translate_copy examples") {
  std::vector<VertexId> map{0, 1, 3};
  CHECK(translate_copy(map, 0, 5) == map);
  CHECK(translate_copy(map, 1, 5) == std::vector<VertexId>{1, 2, 4});
  CHECK(translate_copy(map, 4, 5) == std::vector<VertexId>{4, 0, 2});
  CHECK_THROWS_AS(translate_copy(map, 1, 0), ParameterError);

  auto g = GroupSpec::elementary_two(2);
  auto col = group_host(g);
  std::vector<VertexId> e{0b00, 0b01};
  auto moved = translate_copy(e, 0b11, g);
  CHECK(moved == std::vector<VertexId>{0b11, 0b10});
  CHECK(col.colour(moved[0], moved[1]) == col.colour(e[0], e[1]));
  CHECK(col.colour(e[0], e[1]) + col.colour_offset() == 0b01);
}

TEST_CASE("translation preserves colours on nd hosts") {
  for (std::uint32_t m = 1; m <= 50; ++m) {
    auto col = nd_colouring(m);
    const std::uint32_t n = col.n();
    bool ok = true;
    for (VertexId v = 0; v < n && ok; ++v)
      for (VertexId w = v + 1; w < n; ++w)
        if (col.colour((v + 1) % n, (w + 1) % n) != col.colour(v, w)) {
          ok = false;
          break;
        }
    CHECK_MESSAGE(ok, "m=", m);
  }
}

TEST_CASE("translation preserves colours on elementary two-groups") {
  for (std::uint32_t k = 1; k <= 6; ++k) {
    auto g = GroupSpec::elementary_two(k);
    auto col = group_host(g);
    const std::uint32_t n = col.n();
    bool ok = true;
    for (VertexId x = 0; x < n; ++x)
      for (VertexId v = 0; v < n; ++v)
        for (VertexId w = v + 1; w < n; ++w)
          if (col.colour(x ^ v, x ^ w) != col.colour(v, w)) ok = false;
    CHECK_MESSAGE(ok, "k=", k);
  }
}

TEST_CASE("ringel packing of P3 decomposes K5") {
  auto pk = ringel_pack(path_tree(3), 0.2, true);
  CHECK(pk.ell == 2);
  CHECK(pk.n == 5);
  CHECK(pk.exact);
  REQUIRE(pk.copies.size() == 5);
  CHECK(pk.validation);

  // Fixed copy 0-1, 1-3: the 5 translates cover the 10 edges of K5 once each.
  std::map<std::pair<VertexId, VertexId>, int> cover;
  for (std::uint32_t s = 0; s < 5; ++s)
    for (auto e : image_edges(path_tree(3), translate_copy({0, 1, 3}, s, 5))) ++cover[e];
  CHECK(cover.size() == 10);
  for (auto& [e, c] : cover) CHECK(c == 1);
  CHECK(check_packing(5, path_tree(3), [] {
          std::vector<std::vector<VertexId>> c;
          for (std::uint32_t s = 0; s < 5; ++s) c.push_back(translate_copy({0, 1, 3}, s, 5));
          return c;
        }(), true));
}

TEST_CASE("ringel packing of a single edge decomposes K3") {
  auto pk = ringel_pack(path_tree(2), 0.2, true);
  CHECK(pk.ell == 1);
  CHECK(pk.copies.size() == 3);
  CHECK(pk.validation);
  CHECK_THROWS_AS(ringel_pack(Tree(), 0.2, true), ParameterError);
}

TEST_CASE("exact decompositions for every tree on at most 8 vertices") {
  for (std::uint32_t t = 2; t <= 8; ++t) {
    for (const auto& tree : enumerate_trees(t)) {
      auto pk = ringel_pack(tree, 0.2, true);
      REQUIRE(pk.n == 2 * t - 1);
      CHECK_MESSAGE(pk.validation, canonical_form(tree), " ", pk.validation.reason);
      // Independent recount: every edge of K_n exactly once.
      std::map<std::pair<VertexId, VertexId>, int> cover;
      for (const auto& c : pk.copies)
        for (auto e : image_edges(tree, c)) ++cover[e];
      CHECK(cover.size() == std::size_t(pk.n) * (pk.n - 1) / 2);
      CHECK(std::all_of(cover.begin(), cover.end(), [](auto& kv) { return kv.second == 1; }));
    }
  }
  CHECK(enumerate_trees(8).size() == 23);
}

TEST_CASE("asymptotic packing copies are pairwise edge-disjoint") {
  for (auto tree : {path_tree(40), star_tree(30), random_tree(45, 3)}) {
    auto pk = ringel_pack(tree, 0.2, false);
    CHECK(2 * pk.ell + 1 >= (2 + 0.2) * (tree.size() - 1) + 1 - 1e-9);
    CHECK(pk.copies.size() == pk.n);
    CHECK(pk.validation);
    std::set<std::pair<VertexId, VertexId>> seen;
    std::size_t total = 0;
    for (const auto& c : pk.copies) {
      auto es = image_edges(tree, c);
      total += es.size();
      seen.insert(es.begin(), es.end());
    }
    CHECK(seen.size() == total);
  }
}

TEST_CASE("harmonious labelling examples") {
  auto p4 = path_tree(4);
  std::vector<std::uint32_t> given{0, 2, 1, 3};
  CHECK(harmonious_oracle(p4, 4, given));
  CHECK(check_harmonious(p4, GroupSpec::cyclic(4), given));

  // Exhaustive over Z4 labellings of P4.
  std::vector<std::uint32_t> perm{0, 1, 2, 3};
  int found = 0, agree = 0;
  do {
    bool o = harmonious_oracle(p4, 4, perm);
    found += o;
    agree += o == bool(check_harmonious(p4, GroupSpec::cyclic(4), perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(found == 8);
  CHECK(agree == 24);

  auto h = harmonious_label(p4, GroupSpec::cyclic(4));
  CHECK(h.validation);
  CHECK(harmonious_oracle(p4, 4, h.labels));

  auto e = harmonious_label(path_tree(2), GroupSpec::cyclic(2));
  CHECK(e.validation);
  CHECK(std::set<std::uint32_t>(e.labels.begin(), e.labels.end()) == std::set<std::uint32_t>{0, 1});

  CHECK_THROWS_AS(harmonious_label(path_tree(5), GroupSpec::cyclic(4)), SizeError);
}

TEST_CASE("harmonious labels and rainbow embeddings coincide") {
  for (auto tree : enumerate_trees(6)) {
    for (std::uint32_t m = 6; m <= 8; ++m) {
      auto g = GroupSpec::cyclic(m);
      try {
        auto h = harmonious_label(tree, g);
        CHECK(h.validation);
        CHECK(check_rainbow_embedding(group_host(g), tree, h.labels));
        CHECK(harmonious_oracle(tree, m, h.labels));
      } catch (const EmbeddingFailedError& err) {
        CHECK(err.outcome.failure == "proven absent");
      }
    }
  }
}

TEST_CASE("every tree on at most 8 vertices has a small cyclic harmonious labelling") {
  for (std::uint32_t t = 1; t <= 8; ++t) {
    auto cap = static_cast<std::uint32_t>(std::ceil(1.25 * t));
    for (const auto& tree : enumerate_trees(t)) {
      auto h = smallest_harmonious(tree, cap);
      REQUIRE_MESSAGE(h.has_value(), canonical_form(tree));
      CHECK(h->validation);
      CHECK(h->group.order() <= cap);
      CHECK(harmonious_oracle(tree, h->group.order(), h->labels));
    }
  }
}

TEST_CASE("double cover examples") {
  auto g = GroupSpec::elementary_two(2);
  Tree path(3, {{0, 1}, {1, 2}});
  std::vector<VertexId> base{0b00, 0b01, 0b11};
  REQUIRE(check_rainbow_embedding(group_host(g), path, base));
  std::vector<std::vector<VertexId>> copies;
  for (std::uint32_t x = 0; x < 4; ++x) copies.push_back(translate_copy(base, x, g));
  int holding = 0;
  for (const auto& c : copies) holding += image_edges(path, c).count({0b00, 0b01});
  CHECK(holding == 2);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      auto ea = image_edges(path, copies[a]), eb = image_edges(path, copies[b]);
      std::vector<std::pair<VertexId, VertexId>> common;
      std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(common));
      CHECK(common.size() <= 1);
    }
  CHECK(check_odc(4, path, copies));

  auto dc = odc_construct(path, 2);
  CHECK(dc.copies.size() == 4);
  CHECK(dc.validation);

  auto single = odc_construct(path_tree(2), 1);
  REQUIRE(single.copies.size() == 2);
  CHECK(image_edges(path_tree(2), single.copies[0]) == image_edges(path_tree(2), single.copies[1]));
  CHECK(single.validation);

  CHECK_THROWS_AS(odc_construct(path_tree(5), 2), SizeError);
}

TEST_CASE("double covers for every small tree and the shared-edge colour rule") {
  int direct = 0;
  for (std::uint32_t k = 2; k <= 3; ++k) {
    auto g = GroupSpec::elementary_two(k);
    auto col = group_host(g);
    for (std::uint32_t t = 1; t < (1u << k); ++t) {
      for (const auto& tree : enumerate_trees(t)) {
        auto dc = odc_construct(tree, k);
        CHECK_MESSAGE(dc.validation, canonical_form(tree), " ", dc.validation.reason);
        CHECK(dc.copies.size() == (1u << k));
        if (dc.method == "direct_search") {
          CHECK_FALSE(brute_force_embed(col, tree).embedding.has_value());
          std::vector<VertexId> perm(col.n());
          std::iota(perm.begin(), perm.end(), 0);
          bool any = false;
          do {
            std::set<VertexId> cs;
            for (auto [u, v] : tree.edges()) cs.insert(perm[u] ^ perm[v]);
            any = any || cs.size() == tree.size() - 1;
          } while (!any && std::next_permutation(perm.begin(), perm.end()));
          CHECK_FALSE(any);
          ++direct;
          continue;
        }
        CHECK(check_rainbow_embedding(col, tree, dc.base));
        for (std::uint32_t x = 0; x < dc.copies.size(); ++x)
          for (std::uint32_t y = x + 1; y < dc.copies.size(); ++y) {
            auto ex = image_edges(tree, dc.copies[x]), ey = image_edges(tree, dc.copies[y]);
            for (auto e : ex)
              if (ey.count(e)) CHECK((x ^ y) == col.colour(e.first, e.second) + col.colour_offset());
          }
      }
    }
  }
  // One 7-vertex tree has no rainbow copy in Z2^3 (checked over all 8! maps).
  CHECK(direct == 1);
}

TEST_CASE("embed_any falls back to search when the pipeline has no headroom") {
  auto col = nd_colouring(30);
  auto out = embed_any(col, path_tree(30));
  REQUIRE(out.ok());
  CHECK(check_rainbow_embedding(col, path_tree(30), *out.embedding));
}
