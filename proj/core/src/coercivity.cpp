#include "qeq/coercivity.hpp"

#include "qeq/reductions.hpp"
#include "qeq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

namespace qeq::coercivity {

namespace {

/// Structural key of a map value, used to scan identical values only once
/// (constant maps make every fixed point share one scan).
std::string value_key(const MapValue& v) {
  std::string key;
  auto push = [&key](double d) {
    char buf[sizeof(double)];
    std::memcpy(buf, &d, sizeof(double));
    key.append(buf, sizeof(double));
  };
  if (const auto* fin = std::get_if<FinitePointSet>(&v)) {
    key.push_back('F');
    for (const auto& p : fin->points)
      for (Eigen::Index i = 0; i < p.size(); ++i) push(p[i]);
    return key;
  }
  const auto& r = std::get<ConvexRegion>(v);
  key.push_back('R');
  key.push_back(r.certified_empty() ? '1' : '0');
  for (Eigen::Index i = 0; i < r.dim(); ++i) {
    push(r.box_lo()[i]);
    push(r.box_hi()[i]);
  }
  for (const auto& hs : r.halfspaces()) {
    for (Eigen::Index i = 0; i < hs.a.size(); ++i) push(hs.a[i]);
    push(hs.b);
  }
  for (const auto& ball : r.balls()) {
    for (Eigen::Index i = 0; i < ball.center.size(); ++i) push(ball.center[i]);
    push(ball.radius);
  }
  return key;
}

struct ScanResult {
  bool vacuous = false;
  std::optional<double> rho_z;
  bool pass = true;
  long scanned = 0;
  std::vector<Vec> witness_free;
  std::vector<std::pair<Vec, Vec>> witnesses;
};

ScanResult scan_value(const MapValue& value, const DescentPredicate& accepts,
                      double rho, double h, double probe_radius) {
  ScanResult out;
  std::vector<Vec> xs = value_grid(value, h, rho);
  if (xs.empty()) {
    out.vacuous = true;  // nothing of K(z) inside the ball: empty annulus
    return out;
  }
  double max_norm = 0.0;
  for (const auto& x : xs) max_norm = std::max(max_norm, x.norm());
  if (max_norm <= rho / 2 + tol::contains) {
    out.vacuous = true;  // rho_z = rho/2 empties the annulus
    return out;
  }

  // Candidates scanned outward-in; witnesses tried inward-out.
  std::sort(xs.begin(), xs.end(), [](const Vec& a, const Vec& b) {
    const double na = a.norm(), nb = b.norm();
    if (na != nb) return na > nb;
    return lex_less(a, b);
  });
  std::vector<Vec> ys = value_grid(value, h, std::min(probe_radius, max_norm + h));
  std::sort(ys.begin(), ys.end(), [](const Vec& a, const Vec& b) {
    const double na = a.norm(), nb = b.norm();
    if (na != nb) return na < nb;
    return lex_less(a, b);
  });

  double worst_free = 0.0;
  for (const Vec& x : xs) {
    ++out.scanned;
    const double xn = x.norm();
    bool found = false;
    for (const Vec& y : ys) {
      if (y.norm() >= xn - tol::strict_margin) break;  // ys sorted by norm
      if (accepts(x, y)) {
        out.witnesses.emplace_back(x, y);
        found = true;
        break;
      }
    }
    if (!found) {
      out.witness_free.push_back(x);
      worst_free = std::max(worst_free, xn);
    }
  }
  out.rho_z = worst_free + h;
  out.pass = *out.rho_z < rho;
  return out;
}

}  // namespace

UccReport ucc_verify_map(const ConvexRegion& C, const SetValuedMap& K,
                         const DescentPredicate& accepts, double rho, double h,
                         double probe_radius, long budget, std::uint64_t seed) {
  if (!(rho > 0)) throw Error("verification radius must be positive");
  UccReport report;
  report.rho = rho;
  report.grid_h = h;
  report.probe_radius = probe_radius;

  // Condition 1: K(w) must meet the open ball B_rho for all w in C. Probe
  // the grid window plus seeded far samples.
  {
    std::vector<Vec> ws = C.grid_points(std::max(h, probe_radius / 512), probe_radius);
    Rng rng(seed);
    auto [lo, hi] = C.outer_box();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double far = 10 * probe_radius;
    for (int s = 0; s < 100; ++s) {
      Vec p(C.dim());
      for (Eigen::Index i = 0; i < C.dim(); ++i) {
        const double a = std::max(lo[i], -far), b = std::min(hi[i], far);
        p[i] = a + (b - a) * unit(rng);
      }
      if (C.contains(p, tol::violation)) {
        ws.push_back(p);
        continue;
      }
      try {
        const Vec q = C.project(p);
        if (C.contains(q, tol::violation)) ws.push_back(q);
      } catch (const Error&) {
      }
    }
    for (const Vec& w : ws) {
      ++report.cond1.probed;
      const double min_norm = value_dist(K.evaluate(w), Vec::Zero(C.dim()));
      if (!(min_norm < rho - tol::strict_margin)) {
        report.cond1.pass = false;
        report.cond1.witness = w;
        break;
      }
    }
  }

  // Condition 2 over the grid fixed points of K within the rho-ball.
  const ConvexRegion domain = C.intersect_origin_ball(rho);
  const auto fps = solver::fixed_point_set(K, domain, h);
  std::map<std::string, ScanResult> memo;
  bool all_pass = true;
  (void)budget;
  for (const auto& fp : fps.points) {
    const MapValue value = K.evaluate(fp.grid);
    const std::string key = value_key(value);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, scan_value(value, accepts, rho, h, probe_radius)).first;
    const ScanResult& res = it->second;
    Cond2Entry entry;
    entry.z = fp.grid;
    entry.vacuous = res.vacuous;
    entry.rho_z = res.rho_z;
    entry.pass = res.vacuous || res.pass;
    entry.scanned = res.scanned;
    entry.witness_count = static_cast<long>(res.witnesses.size());
    entry.witness_free_count = static_cast<long>(res.witness_free.size());
    entry.witness_free.assign(
        res.witness_free.begin(),
        res.witness_free.begin() +
            static_cast<long>(std::min(res.witness_free.size(), kEntryCap)));
    entry.witnesses.assign(
        res.witnesses.begin(),
        res.witnesses.begin() +
            static_cast<long>(std::min(res.witnesses.size(), kEntryCap)));
    all_pass = all_pass && entry.pass;
    report.cond2.push_back(std::move(entry));
  }

  report.pass = report.cond1.pass && all_pass;
  return report;
}

Cond2Entry scan_fixed_point(const SetValuedMap& K, const DescentPredicate& accepts,
                            const Vec& z, double rho, double h, double probe_radius) {
  const ScanResult res = scan_value(K.evaluate(z), accepts, rho, h, probe_radius);
  Cond2Entry entry;
  entry.z = z;
  entry.vacuous = res.vacuous;
  entry.rho_z = res.rho_z;
  entry.pass = res.vacuous || res.pass;
  entry.scanned = res.scanned;
  entry.witness_count = static_cast<long>(res.witnesses.size());
  entry.witness_free_count = static_cast<long>(res.witness_free.size());
  entry.witness_free = res.witness_free;
  entry.witnesses = res.witnesses;
  return entry;
}

UccReport ucc_verify(const ProblemInstance& inst, double rho, long budget,
                     std::uint64_t seed) {
  const Bifunction& f = inst.f;
  return ucc_verify_map(
      inst.C, inst.K,
      [&f](const Vec& x, const Vec& y) { return f(x, y) <= tol::violation; }, rho,
      inst.numerics.grid_h, inst.numerics.probe_or(rho), budget, seed);
}

UccReport qvi_ucc_verify(const ProblemInstance& inst, double rho, long budget,
                         std::uint64_t seed) {
  if (!inst.op) throw Error("variational verification needs an operator instance");
  const PolytopeOperator& T = *inst.op;
  return ucc_verify_map(
      inst.C, inst.K,
      [&T](const Vec& x, const Vec& y) { return T.support(x, y - x) <= tol::violation; },
      rho, inst.numerics.grid_h, inst.numerics.probe_or(rho), budget, seed);
}

UccReport gnep_coercivity_verify(const Game& game, const Numerics& numerics,
                                 double rho, long budget, std::uint64_t seed) {
  const ConvexRegion C = game.joint_domain();
  const SetValuedMap K = reductions::product_map(game);
  auto accepts = [&game](const Vec& x, const Vec& y) {
    for (std::size_t nu = 0; nu < game.players.size(); ++nu) {
      const Vec swapped = game.compose(x, nu, game.own_block(y, nu));
      if (game.players[nu].cost(swapped) > game.players[nu].cost(x) + tol::violation)
        return false;
    }
    return true;
  };
  return ucc_verify_map(C, K, accepts, rho, numerics.grid_h, numerics.probe_or(rho),
                        budget, seed);
}

RadiusSearch find_coercive_radius(const ProblemInstance& inst, double rho_max,
                                  long budget, std::uint64_t seed) {
  RadiusSearch out;
  for (double rho = 1.0; rho <= rho_max * (1 + 1e-12); rho *= 2) {
    out.tried.push_back(rho);
    UccReport report = ucc_verify(inst, rho, budget, seed);
    if (report.pass) {
      out.rho = rho;
      out.report = std::move(report);
      return out;
    }
  }
  return out;
}

std::vector<TzCandidate> default_tz_candidates(const ConvexRegion& C, int count) {
  std::vector<TzCandidate> out;
  const Eigen::Index n = C.dim();
  for (int k = 0; k < count; ++k) {
    const double m = std::ldexp(1.0, k);  // 2^k
    TzCandidate cand{
        C.intersect(ConvexRegion::box(Vec::Constant(n, -m), Vec::Constant(n, m))),
        C.intersect(ConvexRegion::box(Vec::Constant(n, -m / 2), Vec::Constant(n, m / 2)))};
    out.push_back(std::move(cand));
  }
  return out;
}

TzReport tz_coercivity_check(const ProblemInstance& inst,
                             const std::vector<TzCandidate>& candidates,
                             long budget, std::uint64_t seed) {
  (void)budget;
  (void)seed;
  TzReport report;
  report.note = "closedness of K(x) within Z is assumed, not machine-checked";
  const Bifunction& f = inst.f;

  for (const auto& cand : candidates) {
    TzCandidateReport cr;
    const auto [zlo, zhi] = cand.Z.outer_box();
    double span = 0.0;
    for (Eigen::Index i = 0; i < cand.Z.dim(); ++i)
      span = std::max(span, zhi[i] - zlo[i]);
    const double hz = std::max(inst.numerics.grid_h, span / 128);
    const double z_radius = cand.Z.bounded() ? cand.Z.outer_radius() : 1e9;

    // Values over W stay inside Z.
    bool ok = true;
    for (const Vec& w : cand.W.grid_points(hz, z_radius + 1.0)) {
      const MapValue value = inst.K.evaluate(w);
      if (!std::isfinite(value_norm_sup(value))) {
        cr.failed_condition = "values_escape";
        cr.witness_x = w;
        ok = false;
        break;
      }
      for (const Vec& y : value_grid(value, hz, value_norm_sup(value) + 1.0)) {
        if (!cand.Z.contains(y, tol::violation)) {
          cr.failed_condition = "values_escape";
          cr.witness_x = w;
          cr.witness_y = y;
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }

    // K(x) meets Z for every x in Z.
    std::vector<Vec> z_grid;
    if (ok) {
      z_grid = cand.Z.grid_points(hz, z_radius + 1.0);
      for (const Vec& x : z_grid) {
        const MapValue value = inst.K.evaluate(x);
        bool meets = false;
        for (const Vec& y : value_grid(value, hz, z_radius + 1.0)) {
          if (cand.Z.contains(y, tol::violation)) {
            meets = true;
            break;
          }
        }
        if (!meets) {
          cr.failed_condition = "intersection_empty";
          cr.witness_x = x;
          ok = false;
          break;
        }
      }
    }

    // Strict descent for x in Z outside W.
    if (ok) {
      for (const Vec& x : z_grid) {
        if (cand.W.contains(x, tol::contains)) continue;
        bool descent = false;
        for (const Vec& y : value_grid(inst.K.evaluate(x), hz, z_radius + 1.0)) {
          if (!cand.Z.contains(y, tol::violation)) continue;
          if (f(x, y) < -tol::violation) {
            descent = true;
            break;
          }
        }
        if (!descent) {
          cr.failed_condition = "no_descent";
          cr.witness_x = x;
          ok = false;
          break;
        }
      }
    }

    cr.pass = ok;
    report.pass = report.pass || ok;
    report.candidates.push_back(std::move(cr));
  }
  return report;
}

}  // namespace qeq::coercivity
