#include "qeq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace qeq::solver {

namespace {

using properties::PropertyVerdict;
using properties::Witness;

// Nearest point of a map value, when one can be computed.
std::optional<Vec> nearest_point(const MapValue& v, const Vec& p) {
  if (const auto* fin = std::get_if<FinitePointSet>(&v)) {
    std::optional<Vec> best;
    double bd = kInf;
    for (const auto& q : fin->points) {
      double d = (q - p).norm();
      if (d < bd) {
        bd = d;
        best = q;
      }
    }
    return best;
  }
  const auto& region = std::get<ConvexRegion>(v);
  if (region.certified_empty()) return std::nullopt;
  try {
    return region.project(p);
  } catch (const NonConvergence&) {
    return std::nullopt;
  }
}

// Minimize g over the region by projected descent from y0. grad(y) is the
// gradient of g at y. 20 outer steps with adaptive step length.
void polish_descent(const ConvexRegion& region, const std::function<double(const Vec&)>& g,
                    const std::function<Vec(const Vec&)>& grad, Vec& y, double& gy) {
  double t = 1.0;
  for (int it = 0; it < 20; ++it) {
    Vec d = grad(y);
    if (d.norm() < 1e-14) break;
    Vec cand;
    try {
      cand = region.project(y - t * d);
    } catch (const NonConvergence&) {
      break;
    }
    double gc = g(cand);
    if (gc < gy - 1e-15) {
      y = cand;
      gy = gc;
      t = std::min(t * 2.0, 1e3);
    } else {
      t *= 0.5;
      if (t < 1e-12) break;
    }
  }
}

// Shared body of the direct and dual checks. g(y) is the objective to
// minimize over K(x0) cap window; the caller flips signs for the dual form.
SolutionCheck check_common(const ProblemInstance& inst, const Vec& x0,
                           const ConvexRegion& window, double tol, double feas_tol,
                           const std::function<double(const Vec&)>& g,
                           const std::function<Vec(const Vec&)>& grad) {
  SolutionCheck out;
  double feas = feas_tol < 0 ? tol : feas_tol;
  MapValue value = evaluate_map(inst.K, x0);
  out.feasible = value_dist(value, x0) <= feas;
  out.certificate.argbest = x0;
  out.certificate.value = kInf;

  double h = inst.numerics.grid_h;
  if (const auto* fin = std::get_if<FinitePointSet>(&value)) {
    for (const auto& y : fin->points) {
      if (!window.contains(y, 1e-9)) continue;
      double gy = g(y);
      if (gy < out.certificate.value) {
        out.certificate.value = gy;
        out.certificate.argbest = y;
      }
    }
    out.ok = out.feasible && out.certificate.value >= -tol;
    return out;
  }

  ConvexRegion search = std::get<ConvexRegion>(value).intersect(window);
  std::vector<Vec> candidates;
  if (!search.certified_empty()) {
    double bound = search.bounded() ? search.outer_radius() + h : window.outer_radius() + h;
    candidates = search.grid_points(h, bound);
    try {
      candidates.push_back(search.project(x0));
    } catch (const NonConvergence&) {
    }
  }
  if (candidates.empty()) {
    out.ok = out.feasible;  // empty feasible set in the window: nothing to violate
    return out;
  }
  for (const auto& y : candidates) {
    double gy = g(y);
    if (gy < out.certificate.value) {
      out.certificate.value = gy;
      out.certificate.argbest = y;
    }
  }
  polish_descent(search, g, grad, out.certificate.argbest, out.certificate.value);
  out.ok = out.feasible && out.certificate.value >= -tol;
  return out;
}

std::vector<Vec> lattice_offsets(Eigen::Index n, double h, int steps) {
  std::vector<Vec> offs;
  Vec idx = Vec::Constant(n, -steps);
  while (true) {
    if (idx.cwiseAbs().maxCoeff() > 0.5) offs.push_back(idx * h);
    Eigen::Index k = n - 1;
    while (k >= 0) {
      idx[k] += 1;
      if (idx[k] <= steps + 0.5) break;
      idx[k] = -steps;
      --k;
    }
    if (k < 0) break;
  }
  return offs;
}

std::vector<Vec> thin(const std::vector<Vec>& v, std::size_t cap) {
  if (v.size() <= cap) return v;
  std::vector<Vec> out;
  out.reserve(cap);
  double stride = static_cast<double>(v.size()) / static_cast<double>(cap);
  for (std::size_t i = 0; i < cap; ++i)
    out.push_back(v[static_cast<std::size_t>(i * stride)]);
  return out;
}

std::vector<Vec> fixed_grid_points(const ProblemInstance& inst, double radius) {
  ConvexRegion dom = inst.C.intersect_origin_ball(radius);
  auto fps = fixed_point_set(inst.K, dom, inst.numerics.grid_h);
  std::vector<Vec> out;
  out.reserve(fps.points.size());
  for (const auto& fp : fps.points) out.push_back(fp.grid);
  return out;
}

// Closedness probe for the fixed-point set: an exactly fixed grid point next
// to a point whose fixed-point residual jumps far above the Lipschitz budget
// kappa marks a non-closed set at grid scale.
PropertyVerdict falsify_fix_closed(const SetValuedMap& K, const ConvexRegion& region,
                                   double h, double kappa = 10.0) {
  auto xs = region.grid_points(h, region.outer_radius() + h);
  std::unordered_map<std::string, double> residual;
  auto key = [&](const Vec& p) {
    std::string s;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      long k = std::lround(p[i] / h);
      s += std::to_string(k);
      s += ',';
    }
    return s;
  };
  for (const auto& x : xs) residual[key(x)] = value_dist(evaluate_map(K, x), x);
  auto offs = lattice_offsets(region.dim(), h, 2);
  long samples = 0;
  for (const auto& z : xs) {
    double rz = residual[key(z)];
    if (rz > 1e-9) continue;  // probe from exactly fixed points only
    for (const auto& d : offs) {
      Vec x = z + d;
      auto it = residual.find(key(x));
      if (it == residual.end()) continue;
      ++samples;
      if (it->second > kappa * 2.0 * h + h) {
        Witness w;
        w.points = {x, z};
        w.scalars = {it->second, rz};
        w.note = "residual jump beside an exactly fixed point";
        return PropertyVerdict::failed(std::move(w), samples);
      }
    }
  }
  return PropertyVerdict::passed(samples);
}

// Sampled non-emptiness plus structural convexity of the values of K.
PropertyVerdict check_k_values(const SetValuedMap& K, const ConvexRegion& region,
                               double h) {
  if (!K.convex_valued()) {
    Witness w;
    w.note = "a value is a finite point set with several generators";
    return PropertyVerdict::failed(std::move(w), 0);
  }
  auto xs = thin(region.grid_points(h, region.outer_radius() + h), 256);
  long samples = 0;
  for (const auto& x : xs) {
    ++samples;
    if (value_is_empty(evaluate_map(K, x))) {
      Witness w;
      w.points = {x};
      w.note = "empty value";
      return PropertyVerdict::failed(std::move(w), samples);
    }
  }
  return PropertyVerdict::passed(samples);
}

struct ImplicationResult {
  PropertyVerdict verdict;
  std::string note;
};

// Implication condition at fixed points: f(x,y) <= 0 and f(x,z) < 0 force
// f < 0 on the open segment between y and z. Checked first through its
// sufficient condition (semi-strict quasi-convexity in y), then directly on
// sampled value grids when the sufficient condition fails.
ImplicationResult check_implication(const ProblemInstance& inst, double rho,
                                    double probe, long budget, std::uint64_t seed) {
  ImplicationResult out;
  ConvexRegion pool_region = inst.C.intersect_origin_ball(probe);
  PropertyVerdict ss =
      properties::check_semistrict_quasiconvex_y(inst.f, pool_region, budget, seed);
  if (ss.pass) {
    out.verdict = ss;
    out.note = "implication holds via semi-strict quasi-convexity in the second argument";
    return out;
  }

  double h = inst.numerics.grid_h;
  auto zs = thin(fixed_grid_points(inst, rho), 64);
  long samples = ss.samples_used;
  const int t_grid = 9;
  for (const auto& x : zs) {
    auto ys = thin(value_grid(evaluate_map(inst.K, x), h, probe), 40);
    for (const auto& y : ys) {
      if (inst.f(x, y) > tol::premise) continue;
      for (const auto& z : ys) {
        if (inst.f(x, z) > -tol::violation) continue;
        for (int k = 1; k <= t_grid; ++k) {
          double t = static_cast<double>(k) / (t_grid + 1);
          Vec mid = t * y + (1.0 - t) * z;
          ++samples;
          double fm = inst.f(x, mid);
          if (fm > tol::violation) {
            Witness w;
            w.points = {x, y, z, mid};
            w.scalars = {t, inst.f(x, y), inst.f(x, z), fm};
            w.note = "segment point escapes the negative level set";
            out.verdict = PropertyVerdict::failed(std::move(w), samples);
            out.note = "implication fails directly (and the sufficient condition failed)";
            return out;
          }
        }
      }
    }
  }
  out.verdict = PropertyVerdict::passed(samples);
  out.note =
      "implication verified by direct sampling; the semi-strict sufficient condition failed";
  return out;
}

PropertyVerdict diagonal_check(const ProblemInstance& inst, const std::vector<Vec>& xs,
                               bool require_zero, double tol) {
  long samples = 0;
  for (const auto& z : xs) {
    ++samples;
    double v = inst.f(z, z);
    bool bad = require_zero ? std::abs(v) > tol : v < -tol;
    if (bad) {
      Witness w;
      w.points = {z};
      w.scalars = {v};
      w.note = require_zero ? "diagonal value away from zero" : "negative diagonal value";
      return PropertyVerdict::failed(std::move(w), samples);
    }
  }
  return PropertyVerdict::passed(samples);
}

// Openness falsifier for D = {x : inf over y in K(x) cap B_rho of f(x,y) < 0}
// inside the region: a robust member of D whose full lattice neighborhood is
// robustly outside D. Points with truncated neighborhoods are skipped.
PropertyVerdict falsify_d_open(const ProblemInstance& inst, double rho, long budget,
                               long* boundary_skips) {
  double h = inst.numerics.grid_h;
  ConvexRegion region = inst.C.intersect_origin_ball(rho);
  auto xs = region.grid_points(h, region.outer_radius() + h);
  std::unordered_map<std::string, double> memo;
  auto key = [&](const Vec& p) {
    std::string s;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      s += std::to_string(std::lround(p[i] / h));
      s += ',';
    }
    return s;
  };
  auto min_value = [&](const Vec& x) {
    auto k = key(x);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    double best = kInf;
    for (const auto& y : value_grid(evaluate_map(inst.K, x), h, rho))
      best = std::min(best, inst.f(x, y));
    memo[k] = best;
    return best;
  };

  auto centers = thin(xs, static_cast<std::size_t>(std::max<long>(budget / 16, 64)));
  auto offs = lattice_offsets(region.dim(), h, 1);
  long samples = 0;
  long skips = 0;
  for (const auto& x : centers) {
    ++samples;
    if (min_value(x) >= -tol::violation) continue;  // not robustly in D
    bool boundary = false;
    bool isolated = true;
    for (const auto& d : offs) {
      Vec nb = x + d;
      if (!region.contains(nb, 1e-9)) {
        boundary = true;
        break;
      }
      if (min_value(nb) < tol::premise) {  // neighbor not clearly outside D
        isolated = false;
        break;
      }
    }
    if (boundary) {
      ++skips;
      continue;
    }
    if (isolated) {
      Witness w;
      w.points = {x};
      w.scalars = {min_value(x)};
      w.note = "negative-infimum point with a nonnegative lattice neighborhood";
      if (boundary_skips) *boundary_skips = skips;
      return PropertyVerdict::failed(std::move(w), samples);
    }
  }
  if (boundary_skips) *boundary_skips = skips;
  return PropertyVerdict::passed(samples);
}

}  // namespace

FixedPointSet fixed_point_set(const SetValuedMap& K, const ConvexRegion& region,
                              double h) {
  if (!region.bounded())
    throw Error("fixed point enumeration needs a bounded region");
  FixedPointSet out;
  out.h = h;
  const double tol_fp = out.tol;
  auto xs = region.grid_points(h, region.outer_radius() + h);
  for (const auto& x : xs) {
    MapValue value = K.evaluate(x);
    if (value_dist(value, x) > h + tol_fp) continue;
    FixedPoint fp{x, x};
    if (auto p = nearest_point(value, x)) {
      if (value_dist(K.evaluate(*p), *p) <= h + tol_fp) fp.refined = *p;
    }
    out.points.push_back(std::move(fp));
  }
  return out;
}

SolutionCheck check_qep_solution(const ProblemInstance& inst, const Vec& x0,
                                 const ConvexRegion& window, double tol,
                                 double feas_tol) {
  auto g = [&](const Vec& y) { return inst.f(x0, y); };
  auto grad = [&](const Vec& y) { return inst.f.grad_y(x0, y); };
  return check_common(inst, x0, window, tol, feas_tol, g, grad);
}

SolutionCheck check_mqep_solution(const ProblemInstance& inst, const Vec& x0,
                                  const ConvexRegion& window, double tol,
                                  double feas_tol) {
  // Maximize f(y, x0): minimize its negative, then flip the certificate back.
  auto g = [&](const Vec& y) { return -inst.f(y, x0); };
  auto grad = [&](const Vec& y) { return Vec(-inst.f.grad_x(y, x0)); };
  SolutionCheck out = check_common(inst, x0, window, tol, feas_tol, g, grad);
  if (std::isfinite(out.certificate.value))
    out.certificate.value = -out.certificate.value;
  else
    out.certificate.value = -kInf;
  out.ok = out.feasible && out.certificate.value <= tol;
  return out;
}

RestrictedSolve solve_restricted(const ProblemInstance& inst, double rho, double h,
                                 double tol) {
  ProblemInstance rinst = inst.restricted(rho);
  rinst.numerics.grid_h = h;
  ConvexRegion domain = inst.C.intersect_origin_ball(rho);
  auto fps = fixed_point_set(rinst.K, domain, h);
  ConvexRegion window =
      ConvexRegion::closed_ball(Vec::Zero(inst.K.dim_out()), 2.0 * rho);
  RestrictedSolve out;
  out.fixed_point_count = fps.points.size();
  for (const auto& fp : fps.points) {
    auto chk = check_qep_solution(rinst, fp.grid, window, tol, h + tol);
    if (chk.ok) out.solutions.push_back(fp.grid);
  }
  return out;
}

std::string lift_status_name(LiftStatus s) {
  switch (s) {
    case LiftStatus::certified_by_theorem: return "certified_by_theorem";
    case LiftStatus::verified_on_ball: return "verified_on_ball";
    case LiftStatus::refuted: return "refuted";
  }
  throw Error("unreachable lift status");
}

LiftReport lift_solution(const ProblemInstance& inst, const Vec& x0, double rho,
                         double verify_factor, double tol, long budget,
                         std::uint64_t seed, bool ucc_passed) {
  LiftReport rep;
  rep.x0 = x0;
  double radius = verify_factor * rho;
  rep.checked_radius = radius;
  rep.conditions.variant = "lifting";

  double h = inst.numerics.grid_h;
  ConvexRegion window = ConvexRegion::closed_ball(Vec::Zero(inst.K.dim_out()), radius);
  auto sweep = check_qep_solution(inst, x0, window, tol, h + tol);

  rep.conditions.checks.push_back(
      {"value-convex", check_k_values(inst.K, inst.C.intersect_origin_ball(rho), h)});
  rep.conditions.checks.push_back(
      {"diagonal-zero",
       diagonal_check(inst, thin(fixed_grid_points(inst, radius), 256), true,
                      tol::violation)});
  auto impl = check_implication(inst, rho, radius, budget, seed);
  rep.conditions.checks.push_back({"implication", impl.verdict});
  rep.conditions.notes.push_back(impl.note);

  if (!sweep.feasible) {
    rep.status = LiftStatus::refuted;
    rep.refutation = sweep.certificate.argbest;
    rep.conditions.notes.push_back("candidate is not feasible for the unrestricted map");
    return rep;
  }
  if (!sweep.ok) {
    rep.status = LiftStatus::refuted;
    rep.refutation = sweep.certificate.argbest;
    return rep;
  }
  rep.status = (ucc_passed && rep.conditions.all_pass())
                   ? LiftStatus::certified_by_theorem
                   : LiftStatus::verified_on_ball;
  return rep;
}

std::string variant_name(TheoremVariant v) {
  switch (v) {
    case TheoremVariant::case1: return "case1";
    case TheoremVariant::case2: return "case2";
    case TheoremVariant::lassonde: return "lassonde";
  }
  throw Error("unreachable variant");
}

TheoremVariant variant_from_name(const std::string& name) {
  if (name == "case1") return TheoremVariant::case1;
  if (name == "case2") return TheoremVariant::case2;
  if (name == "lassonde") return TheoremVariant::lassonde;
  throw UnknownName("unknown solve variant: " + name);
}

HypothesisReport verify_theorem_hypotheses(const ProblemInstance& inst,
                                           TheoremVariant variant, double rho,
                                           long budget, std::uint64_t seed) {
  HypothesisReport rep;
  rep.variant = variant_name(variant);
  double h = inst.numerics.grid_h;
  double probe = inst.numerics.probe_or(rho);
  ConvexRegion ball_rho = inst.C.intersect_origin_ball(rho);
  ConvexRegion ball_probe = inst.C.intersect_origin_ball(probe);

  rep.checks.push_back({"k-values", check_k_values(inst.K, ball_rho, h)});

  if (variant == TheoremVariant::case1 || variant == TheoremVariant::case2) {
    rep.checks.push_back({"k-lsc", properties::falsify_lsc(inst.K, ball_rho, h)});
    rep.checks.push_back({"fix-closed", falsify_fix_closed(inst.K, ball_rho, h)});
    auto impl = check_implication(inst, rho, probe, budget, seed);
    rep.checks.push_back({"implication", impl.verdict});
    rep.notes.push_back(impl.note);
  }

  auto fix_pts = fixed_grid_points(inst, rho);
  auto fix_domain = thin(fix_pts, 128);

  if (variant == TheoremVariant::case1) {
    rep.checks.push_back(
        {"properly-quasi-monotone",
         properties::check_properly_quasi_monotone(inst.f, ball_probe, 3, budget, seed)});
    rep.checks.push_back(
        {"upper-sign", properties::check_upper_sign(inst.f, ball_probe, budget, seed)});
    auto g_value = [&](const Vec& z) -> MapValue {
      FinitePointSet fs;
      for (const auto& y : value_grid(evaluate_map(inst.K, z), h, rho))
        if (inst.f(y, z) > tol::violation) fs.points.push_back(y);
      return fs;
    };
    rep.checks.push_back({"g-lsc", properties::falsify_lsc_points(fix_domain, g_value, h)});
  } else if (variant == TheoremVariant::case2) {
    rep.checks.push_back(
        {"diagonal-nonnegative",
         diagonal_check(inst, thin(fix_pts, 256), false, tol::violation)});
    auto r_value = [&](const Vec& z) -> MapValue {
      FinitePointSet fs;
      for (const auto& y : value_grid(evaluate_map(inst.K, z), h, probe))
        if (inst.f(z, y) < -tol::violation) fs.points.push_back(y);
      return fs;
    };
    rep.checks.push_back({"r-lsc", properties::falsify_lsc_points(fix_domain, r_value, h)});

    // Convexity probe of the negative level selection: midpoints of robust
    // members must not escape.
    {
      long samples = 0;
      PropertyVerdict verdict = PropertyVerdict::passed(0);
      const int t_grid = 5;
      for (const auto& z : fix_domain) {
        auto ys = thin(value_grid(evaluate_map(inst.K, z), h, probe), 32);
        std::vector<Vec> members;
        for (const auto& y : ys)
          if (inst.f(z, y) < -tol::violation) members.push_back(y);
        for (std::size_t i = 0; i < members.size() && verdict.pass; ++i)
          for (std::size_t j = i + 1; j < members.size() && verdict.pass; ++j)
            for (int k = 1; k <= t_grid; ++k) {
              double t = static_cast<double>(k) / (t_grid + 1);
              Vec mid = t * members[i] + (1.0 - t) * members[j];
              ++samples;
              double fm = inst.f(z, mid);
              if (fm > tol::violation) {
                Witness w;
                w.points = {z, members[i], members[j], mid};
                w.scalars = {t, fm};
                w.note = "segment point leaves the negative level set";
                verdict = PropertyVerdict::failed(std::move(w), samples);
                break;
              }
            }
        if (!verdict.pass) break;
      }
      if (verdict.pass) verdict.samples_used = samples;
      rep.checks.push_back({"r-convex", verdict});
    }
  } else {
    rep.checks.push_back(
        {"k-closed-graph",
         properties::falsify_closed_graph(inst.K, ball_rho, h, seed, rho)});
    rep.checks.push_back(
        {"f-usc-x", properties::falsify_usc_first_arg(inst.f, ball_rho, h, budget, seed)});
    rep.checks.push_back(
        {"quasiconvex-y",
         properties::check_quasiconvex_y(inst.f, ball_probe, budget, seed)});
    long skips = 0;
    rep.checks.push_back({"d-open", falsify_d_open(inst, rho, budget, &skips)});
    if (skips > 0)
      rep.notes.push_back("d-open: " + std::to_string(skips) +
                          " boundary points with truncated neighborhoods skipped");
    auto pool = properties::sample_pool(ball_probe, std::min<long>(budget, 512), seed);
    rep.checks.push_back(
        {"diagonal-zero", diagonal_check(inst, pool, true, tol::violation)});
    auto impl = check_implication(inst, rho, probe, budget, seed);
    rep.checks.push_back({"implication", impl.verdict});
    rep.notes.push_back(impl.note);
  }
  return rep;
}

SolveReport solve(const ProblemInstance& inst, TheoremVariant variant,
                  std::optional<double> rho_opt, double h, double tol,
                  std::uint64_t seed) {
  constexpr long kBudget = 4000;
  SolveReport rep;
  rep.mode = variant_name(variant);
  rep.grid_h = h;
  rep.tol = tol;
  rep.seed = seed;

  ProblemInstance work = inst;
  work.numerics.grid_h = h;

  double rho = 1.0;
  if (rho_opt) {
    rho = *rho_opt;
    rep.rho_tried = {rho};
    rep.ucc = coercivity::ucc_verify(work, rho, kBudget, seed);
    rep.radius_found = rep.ucc->pass;
  } else {
    auto search = coercivity::find_coercive_radius(work, 64.0, kBudget, seed);
    rep.rho_tried = search.tried;
    if (search.rho) {
      rho = *search.rho;
      rep.ucc = search.report;
      rep.radius_found = true;
    } else {
      rho = search.tried.empty() ? 1.0 : search.tried.back();
      rep.notes.push_back("no coercive radius found up to 64; proceeding at the last try");
    }
  }
  rep.rho = rho;

  rep.hypotheses = verify_theorem_hypotheses(work, variant, rho, kBudget, seed);

  auto rs = solve_restricted(work, rho, h, tol);
  rep.solutions = rs.solutions;
  rep.empty_fixed_point_set = rs.fixed_point_count == 0;
  if (rep.empty_fixed_point_set)
    rep.notes.push_back("the restricted map has no grid fixed points");

  bool ucc_ok = rep.ucc && rep.ucc->pass;
  for (const auto& x : rep.solutions)
    rep.lifts.push_back(lift_solution(work, x, rho, 4.0, tol, kBudget, seed, ucc_ok));
  return rep;
}

std::vector<Vec> oracle_enumerate(const ProblemInstance& inst,
                                  const ConvexRegion& region, double h, double tol) {
  if (!region.bounded()) throw Error("oracle enumeration needs a bounded region");
  double bound = region.outer_radius() + h;
  std::vector<Vec> out;
  for (const auto& x : region.grid_points(h, bound)) {
    MapValue value = evaluate_map(inst.K, x);
    if (value_dist(value, x) > h + tol) continue;
    bool ok = true;
    for (const auto& y : value_grid(value, h, bound)) {
      if (!region.contains(y, tol::contains)) continue;
      if (inst.f(x, y) < -tol) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<Vec> oracle_enumerate_dual(const ProblemInstance& inst,
                                       const ConvexRegion& region, double h,
                                       double tol) {
  if (!region.bounded()) throw Error("oracle enumeration needs a bounded region");
  double bound = region.outer_radius() + h;
  std::vector<Vec> out;
  for (const auto& x : region.grid_points(h, bound)) {
    MapValue value = evaluate_map(inst.K, x);
    if (value_dist(value, x) > h + tol) continue;
    bool ok = true;
    for (const auto& y : value_grid(value, h, bound)) {
      if (!region.contains(y, tol::contains)) continue;
      if (inst.f(y, x) > tol) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace qeq::solver
