#include <chrono>
#include <set>

#include "doctest.h"
#include "rainbow/colouring_gen.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/stars.hpp"

using namespace rainbow;

TEST_CASE("single rainbow star in nd(2)") {
  auto c = nd_colouring(2);
  std::vector<StarRequest> req{{0, 2}};
  auto f = find_k_bounded_stars(c, req, VertexSet(5), ColourSet(2), {}, 1);
  REQUIRE(f.complete());
  CHECK(f.stars[0].leaves == std::vector<VertexId>{1, 2});
  CHECK(c.colour(0, 1) != c.colour(0, 2));
  auto g = find_disjoint_rainbow_stars(c, req, VertexSet(5), ColourSet(2), 0.1);
  CHECK(g.complete());
  CHECK(!validate_star_family(c, g, 1, nullptr, nullptr, &req));
}

TEST_CASE("degree one requests in a proper colouring") {
  auto c = group_sum_colouring(GroupSpec::cyclic(31));
  std::vector<StarRequest> req;
  for (VertexId r = 0; r < 10; ++r) req.push_back({r * 3, 1});
  auto f = find_k_bounded_stars(c, req, VertexSet(31), ColourSet(31), {}, 1);
  CHECK(f.complete());
  CHECK(!validate_star_family(c, f, 1, nullptr, nullptr, &req));
  CHECK(find_disjoint_rainbow_stars(c, {}, VertexSet(31), ColourSet(31), 0.1).stars.empty());
}

TEST_CASE("hall selection") {
  auto c = nd_colouring(2);
  StarFamily f;
  f.stars.push_back({0, {1, 2, 3, 4}});
  auto h = hall_select_rainbow_substars(c, f, {2});
  REQUIRE(h.stars[0].leaves.size() == 2);
  CHECK(c.colour(0, h.stars[0].leaves[0]) != c.colour(0, h.stars[0].leaves[1]));

  auto z = group_sum_colouring(GroupSpec::cyclic(11));
  StarFamily two;
  two.stars.push_back({0, {1, 2}});
  two.stars.push_back({5, {3, 4}});
  auto t = hall_select_rainbow_substars(z, two, {1, 1});
  CHECK(t.stars[0].leaves.size() == 1);
  CHECK(t.stars[1].leaves.size() == 1);
  CHECK(!validate_star_family(z, t, 1, nullptr, nullptr));

  auto id = hall_select_rainbow_substars(z, two, {2, 2});
  CHECK(id.stars[0].leaves == two.stars[0].leaves);
  CHECK(id.stars[1].leaves == two.stars[1].leaves);

  StarFamily mono;
  mono.stars.push_back({0, {1, 4}});
  CHECK_THROWS_AS(hall_select_rainbow_substars(c, mono, {2}), InternalError);
}

TEST_CASE("k-bounded family respects multiplicity") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto c = random_locally_k_bounded(60, 2, s);
    Rng r(s, "kb");
    std::vector<StarRequest> req;
    auto roots = r.sample(60, 4);
    for (VertexId v : roots) req.push_back({v, 2 + r.below(4)});
    VertexSet fv(60);
    ColourSet fc(c.num_colours());
    fv.insert((roots[0] + 1) % 60);
    auto f = find_k_bounded_stars(c, req, fv, fc, {}, 2);
    CHECK(!validate_star_family(c, f, 2, &fv, &fc));
    CHECK(f.complete());
    auto rb = find_disjoint_rainbow_stars(c, req, fv, fc, 0.05);
    CHECK(rb.complete());
    CHECK(!validate_star_family(c, rb, 1, &fv, &fc, &req));
  }
}

TEST_CASE("switching raises the leaf count") {
  // 376 leaves out of 392 free vertices: greedy alone stalls here.
  auto c = random_locally_k_bounded(400, 1, 3);
  Rng r(7, "t");
  std::vector<StarRequest> req;
  for (VertexId v : r.sample(400, 8)) req.push_back({v, 47});
  auto f = find_k_bounded_stars(c, req, VertexSet(400), ColourSet(c.num_colours()), {}, 1);
  CHECK(!validate_star_family(c, f, 1, nullptr, nullptr));
  CHECK(f.augmentations > 0);
  CHECK(f.deficiency <= 8);
}

TEST_CASE("fallback on tiny hosts") {
  for (std::uint32_t m = 2; m <= 6; ++m) {
    auto c = nd_colouring(m);
    std::vector<StarRequest> req{{0, m}};
    auto f = find_disjoint_rainbow_stars(c, req, VertexSet(c.n()), ColourSet(m), 0.2);
    CHECK(f.complete());
    CHECK(!validate_star_family(c, f, 1, nullptr, nullptr, &req));
  }
  auto c = nd_colouring(4);
  std::vector<StarRequest> req{{0, 2}, {1, 2}};
  auto f = find_disjoint_rainbow_stars(c, req, VertexSet(9), ColourSet(4), 0.2);
  CHECK(f.complete());
  CHECK(!validate_star_family(c, f, 1, nullptr, nullptr, &req));
}

TEST_CASE("ten large rainbow stars in Z_10000") {
  auto c = group_sum_colouring(GroupSpec::cyclic(10000));
  std::vector<StarRequest> req;
  for (VertexId i = 0; i < 10; ++i) req.push_back({i * 997, 850});
  auto t0 = std::chrono::steady_clock::now();
  auto f = find_disjoint_rainbow_stars(c, req, VertexSet(10000), ColourSet(10000), 0.05);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(f.complete());
  CHECK(!validate_star_family(c, f, 1, nullptr, nullptr, &req));
  MESSAGE("seconds " << secs << " augmentations " << f.augmentations);
}
