#include "doctest.h"

#include "qeq/catalog.hpp"
#include "qeq/game.hpp"
#include "qeq/operator.hpp"
#include "qeq/region.hpp"
#include "qeq/set_map.hpp"

#include <cmath>
#include <utility>
#include <variant>

using namespace qeq;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("box projection clamps coordinatewise") {
  const ConvexRegion box = ConvexRegion::box(v2(0, 0), v2(1, 1));
  CHECK((box.project(v2(2, -1)) - v2(1, 0)).norm() == doctest::Approx(0.0));
  CHECK((box.project(v2(0.3, 0.4)) - v2(0.3, 0.4)).norm() == doctest::Approx(0.0));
}

TEST_CASE("projection onto a box cut by a halfspace") {
  ConvexRegion r = ConvexRegion::box(v2(0, 0), v2(1, 1));
  r.add_halfspace(v2(1, 1), 1.0);
  const Vec p = r.project(v2(1, 1));
  CHECK((p - v2(0.5, 0.5)).norm() < 1e-6);
  CHECK(r.contains(p, 1e-6));
}

TEST_CASE("ball projection lands on the sphere") {
  const ConvexRegion ball = ConvexRegion::closed_ball(v2(0, 0), 1.0);
  const Vec p = ball.project(v2(3, 4));
  CHECK(p.norm() == doctest::Approx(1.0));
  CHECK((p - v2(0.6, 0.8)).norm() < 1e-9);
}

TEST_CASE("grid points are origin anchored and lexicographic") {
  const auto pts = ConvexRegion::interval(-1, 1).grid_points(0.5, 10);
  REQUIRE(pts.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(pts[static_cast<std::size_t>(i)][0] ==
                                    doctest::Approx(-1.0 + 0.5 * i));
  // An interval that misses the lattice offsets keeps only lattice points.
  const auto inner = ConvexRegion::interval(0.3, 0.7).grid_points(0.5, 10);
  REQUIRE(inner.size() == 1);
  CHECK(inner[0][0] == doctest::Approx(0.5));
}

TEST_CASE("grid enumeration refuses to explode") {
  CHECK_THROWS_AS(ConvexRegion::whole_space(2).grid_points(1e-4, 1e4),
                  ExplosionGuard);
}

TEST_CASE("empty region rejects membership and projection") {
  const ConvexRegion e = ConvexRegion::empty(1);
  CHECK_FALSE(e.contains(v1(0)));
  CHECK_THROWS_AS(e.project(v1(0)), EmptyRegion);
}

TEST_CASE("origin ball intersection bounds the region") {
  const ConvexRegion r = ConvexRegion::box(v2(0, 0), v2(4, 4)).intersect_origin_ball(2.0);
  CHECK(r.contains(v2(1, 1)));
  CHECK_FALSE(r.contains(v2(2, 2)));
  CHECK(r.bounded());
  // outer_radius covers the region via its bounding box corner
  CHECK(r.outer_radius() >= 2.0 - 1e-9);
  CHECK(r.outer_radius() <= std::sqrt(8.0) + 1e-9);
  for (const Vec& p : r.grid_points(0.25, 10.0)) CHECK(p.norm() <= r.outer_radius() + 1e-9);
}

TEST_CASE("unbounded regions report themselves") {
  const ConvexRegion w = ConvexRegion::whole_space(1);
  CHECK_FALSE(w.bounded());
  CHECK_THROWS_AS(w.outer_radius(), Error);
}

TEST_CASE("restricted map values stay in the ball and the original set") {
  const ProblemInstance e3 = catalog_get("e3-moving");
  const SetValuedMap K1 = restrict_to_ball(e3.K, 1.0);
  for (double x : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const MapValue orig = e3.K.evaluate(v1(x));
    for (const Vec& y : value_grid(K1.evaluate(v1(x)), 0.1, 10.0)) {
      CHECK(y.norm() <= 1.0 + 1e-9);
      CHECK(value_contains(orig, y, 1e-9));
    }
  }
}

TEST_CASE("glued map switches exactly on the membership test") {
  const ProblemInstance gj = catalog_get("graph-jump");
  const MapValue on = gj.K.evaluate(v1(0.0));
  CHECK(value_contains(on, v1(0.5)));
  CHECK_FALSE(value_contains(on, v1(0.25)));
  const MapValue off = gj.K.evaluate(v1(-0.01));
  CHECK(value_contains(off, v1(0.25)));
  CHECK(value_contains(off, v1(0.0)));
}

TEST_CASE("glue rejects an inner piece escaping the outer piece") {
  ConvexRegion A = ConvexRegion::whole_space(1);
  A.add_halfspace(v1(-1), 0.0);
  const SetValuedMap inner = SetValuedMap::constant(ConvexRegion::interval(0, 2), 1);
  const SetValuedMap outer = SetValuedMap::constant(ConvexRegion::interval(0, 1), 1);
  CHECK_THROWS_AS(glue_maps(A, inner, outer), Error);
}

TEST_CASE("moving box clamps its endpoints") {
  const ProblemInstance e3 = catalog_get("e3-moving");
  auto bounds = [&](double x) {
    const MapValue value = e3.K.evaluate(v1(x));
    const auto& r = std::get<ConvexRegion>(value);
    return std::pair<double, double>{r.box_lo()[0], r.box_hi()[0]};
  };
  auto [lo0, hi0] = bounds(0.0);
  CHECK(lo0 == doctest::Approx(0.0));
  CHECK(hi0 == doctest::Approx(1.0));
  auto [lo2, hi2] = bounds(2.0);
  CHECK(lo2 == doctest::Approx(1.0));
  CHECK(hi2 == doctest::Approx(2.0));
  auto [lo3, hi3] = bounds(3.0);  // clamp saturates past x = 2
  CHECK(lo3 == doctest::Approx(1.0));
  CHECK(hi3 == doctest::Approx(2.0));
}

TEST_CASE("finite point map evaluates its affine images") {
  Mat m = Mat::Identity(1, 1);
  const SetValuedMap T =
      SetValuedMap::finite_points({AffineMap{m, v1(-2)}, AffineMap{m, v1(2)}});
  const MapValue v = T.evaluate(v1(0.5));
  CHECK(value_dist(v, v1(-1.5)) == doctest::Approx(0.0));
  CHECK(value_dist(v, v1(2.5)) == doctest::Approx(0.0));
  CHECK(value_dist(v, v1(0.0)) == doctest::Approx(1.5));
  CHECK(value_grid(v, 0.01, 10).size() == 2);
}

TEST_CASE("hull sampler returns convex certificates") {
  const std::vector<Vec> verts = {v2(0, 0), v2(1, 0), v2(0, 1)};
  for (const auto& [p, w] : co_sample_with_weights(verts, 8, 3)) {
    REQUIRE(w.size() == 3);
    double sum = 0.0;
    Vec rebuilt = Vec::Zero(2);
    for (Eigen::Index i = 0; i < 3; ++i) {
      CHECK(w[i] >= -1e-12);
      sum += w[i];
      rebuilt += w[i] * verts[static_cast<std::size_t>(i)];
    }
    CHECK(sum == doctest::Approx(1.0));
    CHECK((rebuilt - p).norm() < 1e-9);
  }
}

TEST_CASE("operator vertices switch across the step") {
  const ProblemInstance qs = catalog_get("qvi-step");
  REQUIRE(qs.op);
  const auto at0 = qs.op->vertices_at(v1(0.0));
  REQUIRE(at0.size() == 1);
  CHECK(at0[0][0] == doctest::Approx(1.0));
  const auto below = qs.op->vertices_at(v1(-0.1));
  REQUIRE(below.size() == 1);
  CHECK(below[0][0] == doctest::Approx(-1.0));
  CHECK(qs.op->support(v1(0.0), v1(1)) == doctest::Approx(1.0));
  CHECK(qs.op->inf_support(v1(-0.1), v1(1)) == doctest::Approx(-1.0));
}

TEST_CASE("support of a two vertex operator picks the max vertex") {
  Mat m1 = Mat::Identity(1, 1), m2 = 2 * Mat::Identity(1, 1);
  const PolytopeOperator T{{AffineMap{m1, v1(0)}, AffineMap{m2, v1(0)}}, std::nullopt};
  // T(1) = {1, 2}; direction 2 scores 2 and 4.
  CHECK(T.support(v1(1), v1(2)) == doctest::Approx(4.0));
  CHECK(T.inf_support(v1(1), v1(2)) == doctest::Approx(2.0));
}

TEST_CASE("player regions and block composition") {
  const ProblemInstance e5 = catalog_get("e5-gnep");
  REQUIRE(e5.game);
  const Game& game = *e5.game;
  const ConvexRegion r0 = game.player_region(0, v2(0, 1));
  CHECK(r0.box_lo()[0] == doctest::Approx(0.0));
  CHECK(r0.box_hi()[0] == doctest::Approx(0.5));
  const Vec composed = game.compose(v2(0.2, 0.3), 1, v1(0.9));
  CHECK((composed - v2(0.2, 0.9)).norm() == doctest::Approx(0.0));
  CHECK(game.own_block(v2(0.2, 0.3), 1)[0] == doctest::Approx(0.3));
}

TEST_CASE("block gradient extracts the owner rows") {
  Mat A(2, 2);
  A << 1, -0.5, -0.5, 0;
  const QuadraticCost cost{A, Vec::Zero(2), 0.0};
  const Vec g = cost.block_gradient(v2(1, 1), 0, 1);
  REQUIRE(g.size() == 1);
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(cost(v2(1, 1)) == doctest::Approx(0.0));
}
