#include "doctest.h"

#include "qeq/bifunction.hpp"
#include "qeq/catalog.hpp"
#include "qeq/properties.hpp"

#include <cmath>
#include <vector>

using namespace qeq;
using namespace qeq::properties;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

// f(x, y) = g(y) - g(x) for a convex quadratic g.
Bifunction convex_difference(const Mat& A, const Vec& b) {
  QuadraticBifunction q;
  q.P = -A;
  q.Q = A;
  q.R = Mat::Zero(A.rows(), A.cols());
  q.c = -b;
  q.d = b;
  q.e = 0.0;
  return Bifunction::quadratic(std::move(q));
}

Bifunction quad1(double P, double Q, double R, double c = 0, double d = 0,
                 double e = 0) {
  QuadraticBifunction q;
  q.P = P * Mat::Identity(1, 1);
  q.Q = Q * Mat::Identity(1, 1);
  q.R = R * Mat::Identity(1, 1);
  q.c = v1(c);
  q.d = v1(d);
  q.e = e;
  return Bifunction::quadratic(std::move(q));
}

}  // namespace

TEST_CASE("convex difference family passes the full battery") {
  const ConvexRegion box = ConvexRegion::interval(-2, 2);
  const Bifunction f = convex_difference(Mat::Identity(1, 1), v1(0.5));
  const long budget = 2000;
  for (int which = 0; which < 5; ++which) {
    PropertyVerdict v;
    switch (which) {
      case 0: v = check_pseudo_monotone(f, box, budget, 11); break;
      case 1: v = check_properly_quasi_monotone(f, box, 3, budget, 11); break;
      case 2: v = check_quasi_monotone(f, box, budget, 11); break;
      case 3: v = check_upper_sign(f, box, budget, 11); break;
      default: v = check_quasiconvex_y(f, box, budget, 11); break;
    }
    CHECK(v.pass);
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.samples_used == budget);
  }
}

TEST_CASE("constant positive bifunction fails the sign checks with live witnesses") {
  const ConvexRegion box = ConvexRegion::interval(-2, 2);
  const Bifunction one = Bifunction::constant(1, 1.0);

  const PropertyVerdict ps = check_pseudo_monotone(one, box, 10000, 5);
  REQUIRE_FALSE(ps.pass);
  REQUIRE(ps.witness.has_value());
  const auto& pw = *ps.witness;
  REQUIRE(pw.points.size() == 2);
  REQUIRE(pw.scalars.size() == 2);
  CHECK(one(pw.points[0], pw.points[1]) == doctest::Approx(pw.scalars[0]));
  CHECK(pw.scalars[0] >= -1e-12);
  CHECK(one(pw.points[1], pw.points[0]) == doctest::Approx(pw.scalars[1]));
  CHECK(pw.scalars[1] > 1e-9);

  const PropertyVerdict pq = check_properly_quasi_monotone(one, box, 3, 10000, 5);
  REQUIRE_FALSE(pq.pass);
  REQUIRE(pq.witness.has_value());
  const auto& qw = *pq.witness;
  REQUIRE(qw.points.size() >= 2);  // simplex plus the hull point
  const Vec& hull = qw.points.back();
  const std::size_t m = qw.points.size() - 1;
  REQUIRE(qw.scalars.size() == m + 1);
  double minval = kInf, wsum = 0.0;
  Vec rebuilt = Vec::Zero(hull.size());
  for (std::size_t i = 0; i < m; ++i) {
    minval = std::min(minval, one(qw.points[i], hull));
    CHECK(qw.scalars[i] >= -1e-12);
    wsum += qw.scalars[i];
    rebuilt += qw.scalars[i] * qw.points[i];
  }
  CHECK(wsum == doctest::Approx(1.0));
  CHECK((rebuilt - hull).norm() < 1e-9);
  CHECK(minval == doctest::Approx(qw.scalars.back()));
  CHECK(minval > 1e-9);

  CHECK_FALSE(check_quasi_monotone(one, box, 10000, 5).pass);
}

TEST_CASE("even concave bifunction is not quasiconvex in y") {
  const ConvexRegion box = ConvexRegion::interval(-2, 2);
  const Bifunction f = quad1(0, -1, 0);  // f(x, y) = -y^2
  const PropertyVerdict v = check_quasiconvex_y(f, box, 5000, 7);
  REQUIRE_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  const auto& w = *v.witness;
  REQUIRE(w.points.size() == 4);
  REQUIRE(w.scalars.size() == 4);
  const double t = w.scalars[0];
  CHECK((t * w.points[1] + (1 - t) * w.points[2] - w.points[3]).norm() < 1e-12);
  CHECK(f(w.points[0], w.points[3]) == doctest::Approx(w.scalars[3]));
  CHECK(w.scalars[3] > std::max(w.scalars[1], w.scalars[2]) + 1e-9);
}

TEST_CASE("flat shelf breaks the strict interior drop") {
  const ConvexRegion box = ConvexRegion::interval(-3, 3);
  const ProblemInstance inst = catalog_get("semistrict-break");
  CHECK(check_quasiconvex_y(inst.f, box, 5000, 7).pass);
  const PropertyVerdict v = check_semistrict_quasiconvex_y(inst.f, box, 5000, 7);
  REQUIRE_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  // Unequal endpoint values with an interior point pinned to the larger one.
  const auto& w = *v.witness;
  REQUIRE(w.points.size() == 4);
  const double f1 = inst.f(w.points[0], w.points[1]);
  const double f2 = inst.f(w.points[0], w.points[2]);
  const double fm = inst.f(w.points[0], w.points[3]);
  CHECK(std::abs(f1 - f2) > 1e-9);
  CHECK(fm > std::max(f1, f2) - 1e-12);
}

TEST_CASE("negative squared gap defeats upper sign continuity") {
  const ConvexRegion box = ConvexRegion::interval(-2, 2);
  const Bifunction f = quad1(-1, -1, 2);  // f(x, y) = -(x - y)^2
  const PropertyVerdict v = check_upper_sign(f, box, 5000, 7);
  REQUIRE_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  const auto& w = *v.witness;
  REQUIRE(w.points.size() == 2);
  CHECK(f(w.points[0], w.points[1]) == doctest::Approx(w.scalars[0]));
  CHECK(w.scalars[0] < -1e-9);
  // The premise the witness relied on: segment values against x stay <= 0.
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    const Vec xt = t * w.points[0] + (1 - t) * w.points[1];
    CHECK(f(xt, w.points[0]) <= 1e-12);
  }
}

TEST_CASE("pseudo monotone passes imply quasi monotone passes samplewise") {
  const ConvexRegion box = ConvexRegion::interval(-2, 2);
  const std::vector<Bifunction> fs = {
      catalog_get("e2-even").f, catalog_get("pm-not-pqm").f,
      Bifunction::constant(1, 0.0), convex_difference(2 * Mat::Identity(1, 1), v1(-1))};
  for (const auto& f : fs) {
    const PropertyVerdict p = check_pseudo_monotone(f, box, 3000, 13);
    const PropertyVerdict q = check_quasi_monotone(f, box, 3000, 13);
    const bool implication_broken = p.pass && !q.pass;
    CHECK_FALSE(implication_broken);
  }
}

TEST_CASE("even flip is pseudo but not properly quasi monotone") {
  const ProblemInstance inst = catalog_get("pm-not-pqm");
  const ConvexRegion box = ConvexRegion::interval(-2, 2);
  CHECK(check_pseudo_monotone(inst.f, box, 10000, 3).pass);
  const PropertyVerdict v = check_properly_quasi_monotone(inst.f, box, 3, 10000, 3);
  REQUIRE_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  const Vec& hull = v.witness->points.back();
  double best = kInf;
  for (std::size_t i = 0; i + 1 < v.witness->points.size(); ++i)
    best = std::min(best, inst.f(v.witness->points[i], hull));
  CHECK(best > 1e-9);
}

TEST_CASE("sample pool is deterministic per seed") {
  const ConvexRegion box = ConvexRegion::interval(-1, 1);
  const auto a = sample_pool(box, 500, 9);
  const auto b = sample_pool(box, 500, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0.0);
  const auto c = sample_pool(box, 500, 10);
  bool same = a.size() == c.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = (a[i] - c[i]).norm() == 0.0;
  CHECK_FALSE(same);
}

TEST_CASE("steep ramp fails the lower semicontinuity falsifier") {
  const ProblemInstance lb = catalog_get("lsc-break");
  const PropertyVerdict v = falsify_lsc(lb.K, lb.C, 0.01);
  CHECK_FALSE(v.pass);
  CHECK(v.witness.has_value());
}

TEST_CASE("clamped moving box is lower semicontinuous") {
  const ProblemInstance e3 = catalog_get("e3-moving");
  CHECK(falsify_lsc(e3.K, e3.C, 0.01).pass);
}

TEST_CASE("constant map passes both set falsifiers") {
  const ProblemInstance e2 = catalog_get("e2-even");
  CHECK(falsify_lsc(e2.K, e2.C, 0.01).pass);
  CHECK(falsify_closed_graph(e2.K, e2.C, 0.01).pass);
}

TEST_CASE("glued jump fails the closed graph falsifier") {
  const ProblemInstance gj = catalog_get("graph-jump");
  const PropertyVerdict v = falsify_closed_graph(gj.K, gj.C, 0.01);
  CHECK_FALSE(v.pass);
  CHECK(v.witness.has_value());
  const ProblemInstance e3 = catalog_get("e3-moving");
  CHECK(falsify_closed_graph(e3.K, e3.C, 0.01).pass);
}

TEST_CASE("value spike fails upper semicontinuity in the first slot") {
  const ProblemInstance spike = catalog_get("d-not-open");
  const PropertyVerdict v =
      falsify_usc_first_arg(spike.f, spike.C, 0.01, 4000, 1);
  CHECK_FALSE(v.pass);
  const ProblemInstance e2 = catalog_get("e2-even");
  CHECK(falsify_usc_first_arg(e2.f, e2.C, 0.01, 4000, 1).pass);
}
