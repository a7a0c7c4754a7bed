#include "doctest.h"

#include "qeq/catalog.hpp"
#include "qeq/coercivity.hpp"

#include <cmath>

using namespace qeq;
using namespace qeq::coercivity;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

constexpr long kBudget = 4000;

DescentPredicate value_descent(const ProblemInstance& inst) {
  const Bifunction& f = inst.f;
  return [&f](const Vec& x, const Vec& y) { return f(x, y) <= 1e-9; };
}

}  // namespace

TEST_CASE("even instance is coercive at radius two with an empty annulus") {
  const ProblemInstance e2 = catalog_get("e2-even");
  const UccReport rep = ucc_verify(e2, 2.0, kBudget, 0);
  CHECK(rep.pass);
  CHECK(rep.cond1.pass);
  REQUIRE_FALSE(rep.cond2.empty());
  for (const auto& e : rep.cond2) {
    CHECK(e.vacuous);  // values fill [-1,1], inside the half-radius ball
    CHECK(e.pass);
  }
}

TEST_CASE("even instance scan is live at radius one") {
  const ProblemInstance e2 = catalog_get("e2-even");
  const UccReport rep = ucc_verify(e2, 1.0, kBudget, 0);
  CHECK(rep.pass);
  REQUIRE_FALSE(rep.cond2.empty());
  const Cond2Entry& e = rep.cond2.front();
  CHECK_FALSE(e.vacuous);
  REQUIRE(e.rho_z.has_value());
  CHECK(*e.rho_z == doctest::Approx(0.01));
  CHECK(e.scanned == 201);
  // y = 0 witnesses every other point: f(x, 0) = -x^2 <= 0.
  for (const auto& [x, y] : e.witnesses) CHECK(y.norm() <= 1e-12);
}

TEST_CASE("counterexample is coercive at radius two") {
  const ProblemInstance tz = catalog_get("tz-counterexample");
  const UccReport rep = ucc_verify(tz, 2.0, kBudget, 0);
  CHECK(rep.pass);
  CHECK(rep.cond1.pass);
  REQUIRE_FALSE(rep.cond2.empty());
  for (const auto& e : rep.cond2) {
    REQUIRE(e.rho_z.has_value());
    CHECK(*e.rho_z == doctest::Approx(1.01));  // only x = 1 lacks a lower witness
    CHECK(e.pass);
  }
}

TEST_CASE("far violation fails condition two at radius one") {
  const ProblemInstance fv = catalog_get("far-violation");
  const UccReport rep = ucc_verify(fv, 1.0, kBudget, 0);
  CHECK(rep.cond1.pass);
  CHECK_FALSE(rep.pass);
  bool found = false;
  for (const auto& e : rep.cond2) {
    if (e.pass) continue;
    found = true;
    REQUIRE_FALSE(e.witness_free.empty());
    // Re-check the reported violation: no grid y below it is accepted.
    const Vec& x = e.witness_free.front();
    const MapValue value = fv.K.evaluate(e.z);
    const auto pred = value_descent(fv);
    for (const Vec& y : value_grid(value, fv.numerics.grid_h, 1.0)) {
      if (y.norm() >= x.norm() - 1e-12) continue;
      CHECK_FALSE(pred(x, y));
    }
    break;
  }
  CHECK(found);
}

TEST_CASE("radius search doubles until the moving instance passes") {
  const ProblemInstance e3 = catalog_get("e3-moving");
  const RadiusSearch rs = find_coercive_radius(e3, 64.0, kBudget, 0);
  REQUIRE(rs.rho.has_value());
  CHECK(*rs.rho == doctest::Approx(2.0));
  REQUIRE(rs.tried.size() == 2);
  CHECK(rs.tried[0] == doctest::Approx(1.0));
  CHECK(rs.tried[1] == doctest::Approx(2.0));
  REQUIRE(rs.report.has_value());
  CHECK(rs.report->pass);
  // Monotone in the doubling sequence: the next radius also passes.
  CHECK(ucc_verify(e3, 4.0, kBudget, 0).pass);
}

TEST_CASE("counterexample needs radius two in the search") {
  const RadiusSearch rs =
      find_coercive_radius(catalog_get("tz-counterexample"), 64.0, kBudget, 0);
  REQUIRE(rs.rho.has_value());
  CHECK(*rs.rho == doctest::Approx(2.0));  // radius one misses K entirely
}

TEST_CASE("radius search reports failure on always empty values") {
  const RadiusSearch rs =
      find_coercive_radius(catalog_get("empty-values"), 64.0, kBudget, 0);
  CHECK_FALSE(rs.rho.has_value());
  CHECK(rs.tried.size() == 7);  // 1, 2, 4, ..., 64
  CHECK_FALSE(rs.report.has_value());
}

TEST_CASE("variational coercivity accepts the catalog operators") {
  CHECK(qvi_ucc_verify(catalog_get("e4-qvi"), 4.0, kBudget, 0).pass);
  CHECK(qvi_ucc_verify(catalog_get("qvi-band"), 2.0, kBudget, 0).pass);
}

TEST_CASE("game coercivity is vacuous at radius three on the shared boxes") {
  const ProblemInstance e5 = catalog_get("e5-gnep");
  const UccReport rep =
      gnep_coercivity_verify(*e5.game, e5.numerics, 3.0, kBudget, 0);
  CHECK(rep.pass);
  REQUIRE_FALSE(rep.cond2.empty());
  for (const auto& e : rep.cond2) CHECK(e.vacuous);
}

TEST_CASE("single player transfer preserves the witness lists") {
  const ProblemInstance solo = catalog_get("gnep-solo");
  const double rho = *solo.numerics.rho;
  const UccReport game = gnep_coercivity_verify(*solo.game, solo.numerics, rho,
                                                kBudget, 0);
  const UccReport qep = ucc_verify(solo, rho, kBudget, 0);
  CHECK(game.pass);
  CHECK(qep.pass);
  REQUIRE(game.cond2.size() == qep.cond2.size());
  bool live = false;
  for (std::size_t i = 0; i < game.cond2.size(); ++i) {
    const Cond2Entry &a = game.cond2[i], &b = qep.cond2[i];
    CHECK((a.z - b.z).norm() == 0.0);
    CHECK(a.vacuous == b.vacuous);
    CHECK(a.witness_count == b.witness_count);
    CHECK(a.witness_free_count == b.witness_free_count);
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (std::size_t k = 0; k < a.witnesses.size(); ++k) {
      CHECK((a.witnesses[k].first - b.witnesses[k].first).norm() == 0.0);
      CHECK((a.witnesses[k].second - b.witnesses[k].second).norm() == 0.0);
    }
    REQUIRE(a.witness_free.size() == b.witness_free.size());
    for (std::size_t k = 0; k < a.witness_free.size(); ++k)
      CHECK((a.witness_free[k] - b.witness_free[k]).norm() == 0.0);
    if (a.rho_z.has_value()) {
      REQUIRE(b.rho_z.has_value());
      CHECK(*a.rho_z == doctest::Approx(*b.rho_z));
    }
    if (!a.vacuous) live = true;
  }
  CHECK(live);  // the scan actually ran somewhere
}

TEST_CASE("localization candidates double and fail on the counterexample") {
  const ProblemInstance tz = catalog_get("tz-counterexample");
  const auto cands = default_tz_candidates(tz.C, 20);
  REQUIRE(cands.size() == 20);
  const TzReport rep = tz_coercivity_check(tz, cands, kBudget, 0);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.note.empty());
  REQUIRE(rep.candidates.size() == 20);
  for (const auto& c : rep.candidates) {
    CHECK_FALSE(c.pass);
    CHECK(c.failed_condition == "values_escape");
    CHECK(c.witness_x.has_value());
  }
}

TEST_CASE("hand built localization candidate passes on the moving instance") {
  const ProblemInstance e3 = catalog_get("e3-moving");
  const TzCandidate cand{ConvexRegion::interval(0, 3), ConvexRegion::interval(0, 2.5)};
  const TzReport rep = tz_coercivity_check(e3, {cand}, kBudget, 0);
  CHECK(rep.pass);
  REQUIRE(rep.candidates.size() == 1);
  CHECK(rep.candidates[0].pass);
}

TEST_CASE("full cover candidate passes trivially on constant data") {
  const ProblemInstance fz = catalog_get("f-zero");
  const TzCandidate cand{fz.C, fz.C};  // Z = W leaves nothing outside
  CHECK(tz_coercivity_check(fz, {cand}, kBudget, 0).pass);
}

TEST_CASE("scan at the known solution yields the zero witness") {
  const ProblemInstance e2u = catalog_get("e2-unbounded");
  const Cond2Entry entry = scan_fixed_point(e2u.K, value_descent(e2u), v1(0.0), 1.0,
                                            0.01, e2u.numerics.probe_or(1.0));
  CHECK_FALSE(entry.vacuous);
  CHECK(entry.pass);
  CHECK(entry.scanned == 201);
  CHECK(entry.witness_count == 200);
  REQUIRE(entry.witness_free.size() == 1);
  CHECK(entry.witness_free[0].norm() <= 1e-12);  // only the origin itself
  for (const auto& [x, y] : entry.witnesses) CHECK(y.norm() <= 1e-12);
}
