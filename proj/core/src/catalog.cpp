#include "qeq/catalog.hpp"

#include "qeq/reductions.hpp"

#include <utility>

namespace qeq {
namespace {

Mat m1(double v) {
  Mat m(1, 1);
  m << v;
  return m;
}

Vec v1(double v) {
  Vec x(1);
  x << v;
  return x;
}

Vec v2(double a, double b) {
  Vec x(2);
  x << a, b;
  return x;
}

Mat m2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

/// f(x, y) = P x^2 + Q y^2 + R x y + c x + d y + e on the line.
Bifunction quad1(double P, double Q, double R, double c, double d, double e) {
  QuadraticBifunction q;
  q.P = m1(P);
  q.Q = m1(Q);
  q.R = m1(R);
  q.c = v1(c);
  q.d = v1(d);
  q.e = e;
  return Bifunction::quadratic(std::move(q));
}

ClampedAffine bound1(double a, double b, double lo = -kInf, double hi = kInf) {
  ClampedAffine c;
  c.a = v1(a);
  c.b = b;
  c.lo = lo;
  c.hi = hi;
  return c;
}

ClampedAffine bound2(double a0, double a1, double b, double lo = -kInf,
                     double hi = kInf) {
  ClampedAffine c;
  c.a = v2(a0, a1);
  c.b = b;
  c.lo = lo;
  c.hi = hi;
  return c;
}

Numerics numerics(double h, std::optional<double> rho,
                  double probe_radius = 0) {
  Numerics num;
  num.grid_h = h;
  num.rho = rho;
  num.probe_radius = probe_radius;
  return num;
}

ProblemInstance qep(std::string name, std::string description, ConvexRegion C,
                    SetValuedMap K, Bifunction f, Numerics num) {
  ProblemInstance inst;
  inst.name = std::move(name);
  inst.description = std::move(description);
  inst.kind = ProblemKind::qep;
  inst.n = C.dim();
  inst.C = std::move(C);
  inst.K = std::move(K);
  inst.f = std::move(f);
  inst.numerics = num;
  return inst;
}

ProblemInstance tz_counterexample() {
  return qep("tz-counterexample",
             "Half-line problem whose constraint values escape every bounded "
             "comparison pair while the radius-2 coercivity check passes.",
             ConvexRegion::interval(0, kInf),
             SetValuedMap::constant(ConvexRegion::interval(1, kInf), 1),
             quad1(0, 0, 0, -1, 1, 0), numerics(0.01, 2.0));
}

ProblemInstance e2_even() {
  return qep("e2-even",
             "Even quadratic gap on a fixed interval; the origin solves both "
             "the problem and its dual form.",
             ConvexRegion::interval(-1, 1),
             SetValuedMap::constant(ConvexRegion::interval(-1, 1), 1),
             quad1(-1, 1, 0, 0, 0, 0), numerics(0.01, 2.0));
}

ProblemInstance e2_unbounded() {
  return qep("e2-unbounded",
             "Even quadratic gap with an unrestricted outer domain; descent "
             "toward the origin appears at every scanned radius.",
             ConvexRegion::whole_space(1),
             SetValuedMap::constant(ConvexRegion::interval(-1, 1), 1),
             quad1(-1, 1, 0, 0, 0, 0), numerics(0.01, 2.0, 10.0));
}

ProblemInstance e3_moving() {
  std::vector<ClampedAffine> lo{bound1(0.5, 0, 0, 1)};
  std::vector<ClampedAffine> hi{bound1(0.5, 1, 1, 2)};
  return qep("e3-moving",
             "Moving window on an interval with a product-form gap; the "
             "unique solution sits at 1.",
             ConvexRegion::interval(0, 3),
             SetValuedMap::moving_box(std::move(lo), std::move(hi), 1),
             quad1(-1, 0, 1, 1, -1, 0), numerics(0.01, std::nullopt));
}

ProblemInstance f_zero() {
  return qep("f-zero",
             "Identically zero gap; every fixed point of the constraint map "
             "solves.",
             ConvexRegion::interval(-1, 1),
             SetValuedMap::constant(ConvexRegion::interval(-1, 1), 1),
             Bifunction::constant(1, 0.0), numerics(0.01, 2.0));
}

ProblemInstance f_one() {
  return qep("f-one",
             "Identically one gap, the stock counterexample for the "
             "monotonicity checkers.",
             ConvexRegion::interval(-1, 1),
             SetValuedMap::constant(ConvexRegion::interval(-1, 1), 1),
             Bifunction::constant(1, 1.0), numerics(0.01, 2.0));
}

ProblemInstance far_violation() {
  return qep("far-violation",
             "Gap that stays positive on small balls but turns negative far "
             "out; the restricted problem passes, the unrestricted "
             "verification sweep refutes.",
             ConvexRegion::interval(-1, 1),
             SetValuedMap::constant(ConvexRegion::whole_space(1), 1),
             quad1(0, -1, 0, 0, 0, 4), numerics(0.01, 1.0));
}

ProblemInstance pm_not_pqm() {
  return qep("pm-not-pqm",
             "Sign-antisymmetric quadratic that is pseudo-monotone yet fails "
             "the simplex test for proper quasi-monotonicity.",
             ConvexRegion::interval(-2, 2),
             SetValuedMap::constant(ConvexRegion::interval(-2, 2), 1),
             quad1(1, -1, 0, 0, 0, 0), numerics(0.01, 3.0));
}

ProblemInstance graph_jump() {
  ConvexRegion right(1);
  right.add_halfspace(v1(-1), 0);  // x >= 0
  SetValuedMap inner =
      SetValuedMap::constant(ConvexRegion::interval(0.5, 1), 1);
  SetValuedMap outer = SetValuedMap::constant(ConvexRegion::interval(0, 1), 1);
  return qep("graph-jump",
             "Constraint values jump down across zero, breaking graph "
             "closedness while staying lower semicontinuous.",
             ConvexRegion::interval(-1, 1), glue_maps(right, inner, outer),
             quad1(-1, 1, 0, 0, 0, 0), numerics(0.01, 2.0));
}

ProblemInstance lsc_break() {
  std::vector<ClampedAffine> lo{bound1(1e6, 0, 0, 1)};
  std::vector<ClampedAffine> hi{bound1(0, 1)};
  return qep("lsc-break",
             "A steep ramp in the lower bound collapses the constraint box "
             "and breaks lower semicontinuity at the origin.",
             ConvexRegion::interval(-1, 1),
             SetValuedMap::moving_box(std::move(lo), std::move(hi), 1),
             quad1(-1, 1, 0, 0, 0, 0), numerics(0.01, 2.0));
}

ProblemInstance fix_gap() {
  ConvexRegion left(1);
  left.add_halfspace(v1(1), 0);  // x <= 0
  SetValuedMap inner = SetValuedMap::constant(ConvexRegion::interval(1, 2), 1);
  SetValuedMap outer =
      SetValuedMap::constant(ConvexRegion::interval(-3, 3), 1);
  return qep("fix-gap",
             "Glued constraint whose fixed-point set is a half-open interval, "
             "so closedness of the fixed-point set fails.",
             ConvexRegion::interval(-3, 3), glue_maps(left, inner, outer),
             quad1(-1, 1, 0, 0, 0, 0), numerics(0.01, 4.0));
}

ProblemInstance semistrict_break() {
  return qep("semistrict-break",
             "Clamped absolute-value gap: quasiconvex in the second argument "
             "but not semi-strictly so.",
             ConvexRegion::interval(-3, 3),
             SetValuedMap::constant(ConvexRegion::interval(-3, 3), 1),
             Bifunction::builtin(1, BuiltinBifunction::min_abs_one),
             numerics(0.01, 4.0));
}

ProblemInstance d_not_open() {
  return qep("d-not-open",
             "Negative spike at the origin only, so the strict-infimum region "
             "is a single point and fails the openness probe.",
             ConvexRegion::interval(-2, 2),
             SetValuedMap::constant(ConvexRegion::interval(-2, 2), 1),
             Bifunction::builtin(1, BuiltinBifunction::neg_spike_origin),
             numerics(0.01, 4.0));
}

ProblemInstance no_fixed_point() {
  return qep("no-fixed-point",
             "Constraint values never contain their argument, so the "
             "fixed-point set is empty and nothing can solve.",
             ConvexRegion::interval(2, 3),
             SetValuedMap::constant(ConvexRegion::interval(0, 1), 1),
             quad1(-1, 1, 0, 0, 0, 0), numerics(0.01, 4.0));
}

ProblemInstance empty_values() {
  SetValuedMap inner =
      SetValuedMap::constant(ConvexRegion::interval(1.5, 3), 1);
  return qep("empty-values",
             "Constraint values are always empty, so no restriction radius "
             "can work.",
             ConvexRegion::interval(0, 1), restrict_to_ball(inner, 0.5),
             quad1(0, 0, 0, -1, 1, 0), numerics(0.01, std::nullopt));
}

ProblemInstance e4_qvi() {
  auto op = std::make_shared<PolytopeOperator>();
  op->vertices = {AffineMap{m1(1), v1(-2)}};
  std::vector<ClampedAffine> lo{bound1(0, 0)};
  std::vector<ClampedAffine> hi{bound1(0.5, 1, 1, 3)};
  return reductions::make_qvi_instance(
      "e4-qvi",
      "Variational problem with a single shifted-identity vertex and a "
      "growing box; the unique solution sits at 2.",
      ConvexRegion::interval(0, 4),
      SetValuedMap::moving_box(std::move(lo), std::move(hi), 1), std::move(op),
      numerics(0.01, 4.0));
}

ProblemInstance qvi_band() {
  auto op = std::make_shared<PolytopeOperator>();
  op->vertices = {AffineMap{m1(1), v1(-2)}, AffineMap{m1(1), v1(2)}};
  return reductions::make_qvi_instance(
      "qvi-band",
      "Interval-valued operator centered on the identity; every fixed point "
      "admits a flat multiplier.",
      ConvexRegion::interval(-2, 2),
      SetValuedMap::constant(ConvexRegion::interval(-1, 1), 1), std::move(op),
      numerics(0.01, 2.0));
}

ProblemInstance qvi_step() {
  auto op = std::make_shared<PolytopeOperator>();
  op->vertices = {AffineMap{m1(0), v1(-1)}, AffineMap{m1(0), v1(1)}};
  PolytopeOperator::Step step;
  step.a = v1(-1);
  step.b = 0;  // -x <= 0, so points with x >= 0 take the `below` list
  step.below = {AffineMap{m1(0), v1(1)}};
  step.above = {AffineMap{m1(0), v1(-1)}};
  op->step = std::move(step);
  return reductions::make_qvi_instance(
      "qvi-step",
      "Sign-flip step operator, discontinuous at zero; no point solves and "
      "the operator sign-continuity probe fails.",
      ConvexRegion::interval(-2, 2),
      SetValuedMap::constant(ConvexRegion::interval(-1, 1), 1), std::move(op),
      numerics(0.01, 2.0));
}

ProblemInstance e5_gnep() {
  auto game = std::make_shared<Game>();
  Game::Player p1;
  p1.offset = 0;
  p1.size = 1;
  p1.cost = QuadraticCost{m2(1, -0.5, -0.5, 0), v2(0, 0), 0.0};
  p1.box_lo = {bound2(0, 0, 0)};
  p1.box_hi = {bound2(0, -0.5, 1)};
  p1.domain = ConvexRegion::interval(0, 1);
  Game::Player p2;
  p2.offset = 1;
  p2.size = 1;
  p2.cost = QuadraticCost{m2(0, -0.5, -0.5, 1), v2(0, 0), 0.0};
  p2.box_lo = {bound2(0, 0, 0)};
  p2.box_hi = {bound2(-0.5, 0, 1)};
  p2.domain = ConvexRegion::interval(0, 1);
  game->players = {std::move(p1), std::move(p2)};
  return reductions::make_gnep_instance(
      "e5-gnep",
      "Two players with bilinear losses and shared linear budgets; the only "
      "equilibrium is the origin.",
      std::move(game), numerics(0.05, 3.0));
}

ProblemInstance gnep_const() {
  auto game = std::make_shared<Game>();
  Game::Player p1;
  p1.offset = 0;
  p1.size = 1;
  p1.cost = QuadraticCost{m2(1, 0, 0, 0), v2(-0.8, 0), 0.16};
  p1.box_lo = {bound2(0, 0, 0)};
  p1.box_hi = {bound2(0, 0, 1)};
  p1.domain = ConvexRegion::interval(0, 1);
  Game::Player p2;
  p2.offset = 1;
  p2.size = 1;
  p2.cost = QuadraticCost{m2(0, 0, 0, 1), v2(0, -1.2), 0.36};
  p2.box_lo = {bound2(0, 0, 0)};
  p2.box_hi = {bound2(0, 0, 1)};
  p2.domain = ConvexRegion::interval(0, 1);
  game->players = {std::move(p1), std::move(p2)};
  return reductions::make_gnep_instance(
      "gnep-const",
      "Decoupled two-player game with fixed boxes and separated quadratic "
      "targets.",
      std::move(game), numerics(0.05, 3));
}

ProblemInstance gnep_solo() {
  auto game = std::make_shared<Game>();
  Game::Player p1;
  p1.offset = 0;
  p1.size = 2;
  p1.cost = QuadraticCost{m2(1, 0, 0, 1), v2(-0.6, -0.6), 0.18};
  p1.box_lo = {bound2(0, 0, 0), bound2(0, 0, 0)};
  p1.box_hi = {bound2(0, 0, 1), bound2(0, 0, 1)};
  p1.domain = ConvexRegion::box(v2(0, 0), v2(1, 1));
  game->players = {std::move(p1)};
  return reductions::make_gnep_instance(
      "gnep-solo",
      "Single-player game over a fixed box; its aggregate form shares the "
      "per-player descent acceptance verbatim.",
      std::move(game), numerics(0.05, 1.2));
}

using Builder = ProblemInstance (*)();

const std::vector<std::pair<std::string, Builder>>& builders() {
  static const std::vector<std::pair<std::string, Builder>> list = {
      {"tz-counterexample", &tz_counterexample},
      {"e2-even", &e2_even},
      {"e2-unbounded", &e2_unbounded},
      {"e3-moving", &e3_moving},
      {"e4-qvi", &e4_qvi},
      {"e5-gnep", &e5_gnep},
      {"gnep-const", &gnep_const},
      {"gnep-solo", &gnep_solo},
      {"qvi-band", &qvi_band},
      {"qvi-step", &qvi_step},
      {"f-zero", &f_zero},
      {"f-one", &f_one},
      {"far-violation", &far_violation},
      {"pm-not-pqm", &pm_not_pqm},
      {"graph-jump", &graph_jump},
      {"lsc-break", &lsc_break},
      {"fix-gap", &fix_gap},
      {"semistrict-break", &semistrict_break},
      {"d-not-open", &d_not_open},
      {"no-fixed-point", &no_fixed_point},
      {"empty-values", &empty_values},
  };
  return list;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  names.reserve(builders().size());
  for (const auto& [name, build] : builders()) names.push_back(name);
  return names;
}

ProblemInstance catalog_get(const std::string& name) {
  for (const auto& [key, build] : builders())
    if (key == name) return build();
  throw UnknownName("no catalog instance named " + name);
}

std::string catalog_description(const std::string& name) {
  return catalog_get(name).description;
}

}  // namespace qeq
