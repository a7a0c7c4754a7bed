#include "doctest.h"

#include "qeq/catalog.hpp"
#include "qeq/reductions.hpp"

#include <cmath>
#include <memory>

using namespace qeq;
using namespace qeq::reductions;

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

std::shared_ptr<const PolytopeOperator> shift_op(double q) {
  PolytopeOperator op;
  op.vertices = {AffineMap{Mat::Identity(1, 1), v1(q)}};
  return std::make_shared<const PolytopeOperator>(std::move(op));
}

}  // namespace

TEST_CASE("support bifunction evaluates the vertex maximum") {
  const Bifunction f = qvi_to_qep(shift_op(-2.0));  // T(x) = {x - 2}
  CHECK(f(v1(1), v1(2)) == doctest::Approx(-1.0));
  CHECK(f(v1(3), v1(3)) == doctest::Approx(0.0));

  PolytopeOperator two;
  two.vertices = {AffineMap{Mat::Identity(1, 1), v1(0)},
                  AffineMap{2 * Mat::Identity(1, 1), v1(0)}};
  const Bifunction g = qvi_to_qep(std::make_shared<const PolytopeOperator>(two));
  CHECK(g(v1(1), v1(3)) == doctest::Approx(4.0));  // max(1*2, 2*2)
}

TEST_CASE("support bifunction is positively homogeneous along rays") {
  const ProblemInstance band = catalog_get("qvi-band");
  const Bifunction& f = band.f;
  const Vec x = v1(0.3), y = v1(-0.9);
  const double base = f(x, y);
  for (double s : {0.25, 0.5, 2.0, 3.5}) {
    const Vec ys = x + s * (y - x);
    CHECK(f(x, ys) == doctest::Approx(s * base));
  }
}

TEST_CASE("multiplier search certifies the shifted solution") {
  const ProblemInstance e4 = catalog_get("e4-qvi");
  const ConvexRegion window = ConvexRegion::closed_ball(Vec::Zero(1), 8.0);
  const QviCheck good = check_qvi_solution(*e4.op, e4.K, v1(2.0), window, 0.01, 1e-6);
  CHECK(good.ok);
  CHECK(good.feasible);
  CHECK(good.star_found);
  CHECK(std::abs(good.star[0]) < 1e-9);  // T(2) = {0}
  CHECK(good.star_min >= -1e-6);

  const QviCheck bad = check_qvi_solution(*e4.op, e4.K, v1(0.0), window, 0.01, 1e-6);
  CHECK_FALSE(bad.ok);
  CHECK(bad.feasible);
  CHECK(bad.refuted_via_ft);
  CHECK(bad.ft.certificate.value < -1e-6);
}

TEST_CASE("opposed vertices admit the zero multiplier") {
  const ProblemInstance band = catalog_get("qvi-band");
  const ConvexRegion window = ConvexRegion::closed_ball(Vec::Zero(1), 4.0);
  for (double x : {-1.0, 0.0, 0.5}) {
    const QviCheck chk = check_qvi_solution(*band.op, band.K, v1(x), window, 0.01, 1e-6);
    CAPTURE(x);
    CHECK(chk.ok);
    CHECK(chk.star_found);
  }
}

TEST_CASE("operator monotonicity probes match the bifunction forms") {
  const ConvexRegion box = ConvexRegion::interval(-1, 1);
  // The identity operator is monotone, hence properly quasi-monotone.
  CHECK(check_operator_properly_quasi_monotone(*shift_op(0.0), box, 3, 4000, 0).pass);
  // The band operator's support is positive off the diagonal, so the
  // simplex test finds a violation while sign continuity still holds.
  const ProblemInstance band = catalog_get("qvi-band");
  CHECK_FALSE(check_operator_properly_quasi_monotone(*band.op, box, 3, 4000, 0).pass);
  CHECK(check_operator_upper_sign_continuous(*band.op, box, 4000, 9, 0).pass);
  const ProblemInstance step = catalog_get("qvi-step");
  CHECK_FALSE(check_operator_upper_sign_continuous(*step.op, box, 4000, 9, 0).pass);
}

TEST_CASE("aggregate game bifunction telescopes to zero on the diagonal") {
  const ProblemInstance e5 = catalog_get("e5-gnep");
  const Bifunction f = nikaido_isoda(e5.game);
  for (const Vec& x : {v2(0, 0), v2(0.3, 0.7), v2(1, 1), v2(0.25, 0.5)})
    CHECK(f(x, x) == 0.0);
  CHECK(f(v2(0, 0), v2(1, 1)) == doctest::Approx(2.0));
}

TEST_CASE("product map reads only the rivals blocks") {
  const ProblemInstance e5 = catalog_get("e5-gnep");
  const SetValuedMap K = product_map(*e5.game);
  const MapValue val0 = K.evaluate(v2(0, 0));
  const auto& at0 = std::get<ConvexRegion>(val0);
  CHECK(at0.box_lo().norm() == 0.0);
  CHECK((at0.box_hi() - v2(1, 1)).norm() < 1e-12);
  const MapValue val1 = K.evaluate(v2(1, 1));
  const auto& at1 = std::get<ConvexRegion>(val1);
  CHECK((at1.box_hi() - v2(0.5, 0.5)).norm() < 1e-12);
}

TEST_CASE("best response polishes to the interior minimizer") {
  const ProblemInstance e5 = catalog_get("e5-gnep");
  const BestResponse br = best_response(*e5.game, 0, v2(0.0, 1.0), 0.05, 1e-6);
  REQUIRE_FALSE(br.argmins.empty());
  CHECK(br.polished[0] == doctest::Approx(0.5));  // theta_1 = y^2 - y on [0, 0.5]
  CHECK(br.min_value == doctest::Approx(-0.25));
  const BestResponse corner = best_response(*e5.game, 0, v2(0.0, 0.0), 0.05, 1e-6);
  CHECK(corner.polished[0] == doctest::Approx(0.0));
  CHECK(corner.min_value == doctest::Approx(0.0));
}

TEST_CASE("equilibrium check separates the origin from the diagonal") {
  const ProblemInstance e5 = catalog_get("e5-gnep");
  const GnepCheck good = check_gnep_equilibrium(*e5.game, v2(0, 0), 0.05, 1e-6);
  CHECK(good.ok);
  CHECK(good.feasible);
  REQUIRE(good.players.size() == 2);
  for (const auto& p : good.players) CHECK(p.cost <= p.best_cost + 1e-6);

  const GnepCheck bad = check_gnep_equilibrium(*e5.game, v2(0.5, 0.5), 0.05, 1e-6);
  CHECK_FALSE(bad.ok);
  CHECK(bad.feasible);
}

TEST_CASE("own block convexity flags a concave player") {
  const ProblemInstance e5 = catalog_get("e5-gnep");
  CHECK(check_own_block_convexity(*e5.game).pass);

  auto bent = std::make_shared<Game>(*e5.game);
  Mat A(2, 2);
  A << -1, 0, 0, 0;
  bent->players[0].cost = QuadraticCost{A, Vec::Zero(2), 0.0};
  const auto verdict = check_own_block_convexity(*bent);
  CHECK_FALSE(verdict.pass);
  CHECK(verdict.witness.has_value());
}

TEST_CASE("instance factories wire the generating data") {
  const ProblemInstance e4 = catalog_get("e4-qvi");
  CHECK(e4.kind == ProblemKind::qvi);
  REQUIRE(e4.op);
  // The instance bifunction is the operator's support form.
  const Bifunction direct = qvi_to_qep(e4.op);
  for (double x : {0.0, 1.0, 2.5})
    for (double y : {0.5, 2.0, 3.0}) CHECK(e4.f(v1(x), v1(y)) == direct(v1(x), v1(y)));

  const ProblemInstance e5 = catalog_get("e5-gnep");
  CHECK(e5.kind == ProblemKind::gnep);
  REQUIRE(e5.game);
  const Bifunction ni = nikaido_isoda(e5.game);
  for (const Vec& x : {v2(0, 0), v2(0.4, 0.2)})
    for (const Vec& y : {v2(0.1, 0.1), v2(1, 0)}) CHECK(e5.f(x, y) == ni(x, y));
}

TEST_CASE("gnep solve validates its solutions on both routes") {
  const ProblemInstance e5 = catalog_get("e5-gnep");
  for (auto route : {GnepRoute::a1, GnepRoute::a2}) {
    const GnepSolveReport rep =
        gnep_solve(e5.game, route, e5.numerics.rho, 0.05, 1e-6, 0);
    CAPTURE(gnep_route_name(route));
    REQUIRE(rep.report.solutions.size() == 1);
    CHECK(rep.report.solutions[0].norm() <= 0.05 + 1e-9);
    CHECK(rep.all_validated);
    REQUIRE(rep.validations.size() == 1);
    CHECK(rep.validations[0].ok);
  }
}

TEST_CASE("route names round trip") {
  CHECK(gnep_route_from_name(gnep_route_name(GnepRoute::a1)) == GnepRoute::a1);
  CHECK(gnep_route_from_name(gnep_route_name(GnepRoute::a2)) == GnepRoute::a2);
  CHECK_THROWS_AS(gnep_route_from_name("a3"), UnknownName);
}
