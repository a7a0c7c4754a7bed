#include "qeq/reductions.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

namespace qeq::reductions {

namespace {

using properties::PropertyVerdict;
using properties::Witness;

// Euclidean projection onto the probability simplex (descending-sort
// threshold rule).
Vec project_simplex(const Vec& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0, theta = 0;
  int k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    cum += u[static_cast<std::size_t>(i)];
    double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[static_cast<std::size_t>(i)] - t > 0) {
      theta = t;
      k = static_cast<int>(i) + 1;
    }
  }
  (void)k;
  Vec out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

}  // namespace

Bifunction qvi_to_qep(std::shared_ptr<const PolytopeOperator> op) {
  return Bifunction::from_operator(std::move(op));
}

QviCheck check_qvi_solution(const PolytopeOperator& T, const SetValuedMap& K,
                            const Vec& x0, const ConvexRegion& window, double h,
                            double tol, double feas_tol) {
  QviCheck out;
  double feas = feas_tol < 0 ? tol : feas_tol;
  MapValue value = evaluate_map(K, x0);
  out.feasible = value_dist(value, x0) <= feas;

  // Aggregate form first: it bounds what any single multiplier can achieve.
  ProblemInstance agg;
  agg.n = x0.size();
  agg.C = ConvexRegion::whole_space(x0.size());
  agg.K = K;
  agg.f = Bifunction::from_operator(std::shared_ptr<const PolytopeOperator>(
      std::shared_ptr<void>(), &T));
  agg.numerics.grid_h = h;
  out.ft = solver::check_qep_solution(agg, x0, window, tol, feas);

  std::vector<Vec> ys = value_grid(value, h, window.outer_radius() + h);
  std::erase_if(ys, [&](const Vec& y) { return !window.contains(y, 1e-9); });

  // Region values also get the projection of x0 as a seed, and later a
  // boundary polish, so the check matches the aggregate sweep in power.
  std::optional<ConvexRegion> search;
  if (const auto* region = std::get_if<ConvexRegion>(&value)) {
    ConvexRegion s = region->intersect(window);
    if (!s.certified_empty()) {
      try {
        Vec seed = s.project(x0);
        if (window.contains(seed, 1e-9)) ys.push_back(seed);
      } catch (const NonConvergence&) {
      }
      search = std::move(s);
    }
  }

  // Minimum of the linear map y -> <star, y - x0>: grid sweep, then
  // projected descent onto the supporting face.
  struct LinMin {
    double val = kInf;
    Vec arg;
  };
  auto lin_min = [&](const Vec& star) {
    LinMin best;
    best.arg = x0;
    for (const auto& y : ys) {
      double v = star.dot(y - x0);
      if (v < best.val) {
        best.val = v;
        best.arg = y;
      }
    }
    if (search && star.norm() > 1e-14) {
      double t = 1.0;
      Vec y = best.arg;
      for (int it = 0; it < 20; ++it) {
        Vec cand;
        try {
          cand = search->project(y - t * star);
        } catch (const NonConvergence&) {
          break;
        }
        double v = star.dot(cand - x0);
        if (v < best.val - 1e-15) {
          best.val = v;
          best.arg = cand;
          y = cand;
          t = std::min(t * 2.0, 1e3);
        } else {
          t *= 0.5;
          if (t < 1e-12) break;
        }
      }
    }
    return best;
  };

  const std::vector<Vec> images = T.vertices_at(x0);

  if (ys.empty() || images.empty()) {
    // Nothing to dominate in the window: vacuously solved when feasible.
    out.star_found = !images.empty();
    if (out.star_found) out.star = images.front();
    out.star_min = kInf;
    out.ok = out.feasible && (ys.empty() || out.star_found);
    return out;
  }

  const Eigen::Index m = static_cast<Eigen::Index>(images.size());
  auto combine = [&](const Vec& w) {
    Vec star = Vec::Zero(x0.size());
    for (Eigen::Index i = 0; i < m; ++i)
      star += w[i] * images[static_cast<std::size_t>(i)];
    return star;
  };

  Vec best_w = Vec::Zero(m);
  out.star_min = -kInf;
  auto consider = [&](const Vec& w) {
    Vec star = combine(w);
    double v = lin_min(star).val;
    if (v > out.star_min) {
      out.star_min = v;
      out.star = star;
      best_w = w;
    }
    return v;
  };

  for (Eigen::Index i = 0; i < m; ++i) {
    Vec w = Vec::Zero(m);
    w[i] = 1.0;
    consider(w);
  }

  if (m == 2) {
    // The weight objective is concave in the mixing parameter; a ternary
    // search localizes its maximum to machine precision.
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double l1 = a + (b - a) / 3.0, l2 = b - (b - a) / 3.0;
      Vec w1(2), w2(2);
      w1 << 1.0 - l1, l1;
      w2 << 1.0 - l2, l2;
      if (consider(w1) >= consider(w2))
        b = l2;
      else
        a = l1;
    }
  } else if (m > 2) {
    // Dense sweep of the weight simplex at a coarse resolution.
    const int steps = 6;
    Vec w = Vec::Zero(m);
    std::function<void(Eigen::Index, int)> sweep = [&](Eigen::Index i, int left) {
      if (i + 1 == m) {
        w[i] = static_cast<double>(left) / steps;
        consider(w);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        w[i] = static_cast<double>(k) / steps;
        sweep(i + 1, left - k);
      }
    };
    sweep(0, steps);
  }

  // Supergradient ascent on the concave weight objective from the best
  // seed found so far.
  if (m > 1) {
    Vec w = best_w;
    double t = 0.5;
    for (int it = 0; it < 60; ++it) {
      const LinMin cur = lin_min(combine(w));
      Vec g(m);
      for (Eigen::Index i = 0; i < m; ++i)
        g[i] = images[static_cast<std::size_t>(i)].dot(cur.arg - x0);
      Vec wn = project_simplex(w + t * g);
      if (consider(wn) > cur.val + 1e-15) {
        w = wn;
        t = std::min(t * 2.0, 1e3);
      } else {
        t *= 0.5;
        if (t < 1e-12) break;
      }
    }
  }

  out.star_found = out.star_min >= -tol;
  out.ok = out.feasible && out.star_found;
  if (!out.ok && out.ft.ok)
    out.note = "no multiplier found within search; the aggregate check passes";
  out.refuted_via_ft = out.feasible && !out.ft.ok;
  return out;
}

properties::PropertyVerdict check_operator_properly_quasi_monotone(
    const PolytopeOperator& T, const ConvexRegion& R, int m_max, long budget,
    std::uint64_t seed, const properties::CheckOptions& opts) {
  Bifunction ft = Bifunction::from_operator(
      std::shared_ptr<const PolytopeOperator>(std::shared_ptr<void>(), &T));
  return properties::check_properly_quasi_monotone(ft, R, m_max, budget, seed, opts);
}

properties::PropertyVerdict check_operator_upper_sign_continuous(
    const PolytopeOperator& T, const ConvexRegion& R, long budget, int t_grid,
    std::uint64_t seed, const properties::CheckOptions& opts) {
  auto pool = properties::sample_pool(R, budget, seed, opts);
  if (pool.empty()) return properties::PropertyVerdict::passed(0);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  long samples = 0;
  for (long k = 0; k < budget; ++k) {
    const Vec& x = pool[pick(rng)];
    const Vec& y = pool[pick(rng)];
    Vec d = y - x;
    if (d.norm() < 1e-12) continue;
    ++samples;
    bool premise = true;
    for (int s = 1; s <= t_grid; ++s) {
      double t = static_cast<double>(s) / (t_grid + 1);
      Vec xt = t * x + (1.0 - t) * y;
      if (T.inf_support(xt, d) < -opts.premise_tol) {
        premise = false;
        break;
      }
    }
    if (!premise) continue;
    double sup = T.support(x, d);
    if (sup < -opts.tol) {
      Witness w;
      w.points = {x, y};
      w.scalars = {sup};
      w.note = "interior infima nonnegative but endpoint supremum negative";
      return PropertyVerdict::failed(std::move(w), samples);
    }
  }
  return PropertyVerdict::passed(samples);
}

Bifunction nikaido_isoda(std::shared_ptr<const Game> game) {
  return Bifunction::from_game(std::move(game));
}

SetValuedMap product_map(const Game& game) {
  SetValuedMap::Product prod;
  const Eigen::Index n = game.dim();
  for (const auto& p : game.players) {
    auto block = std::make_shared<SetValuedMap>(
        SetValuedMap::moving_box(p.box_lo, p.box_hi, n));
    prod.blocks.push_back({p.offset, p.size, std::move(block)});
  }
  return SetValuedMap(std::move(prod), n, n);
}

BestResponse best_response(const Game& game, std::size_t nu, const Vec& x, double h,
                           double tol) {
  const auto& player = game.players[nu];
  ConvexRegion region = game.player_region(nu, x);
  if (region.is_empty()) throw EmptyConstraint("player constraint set is empty");

  auto cost_at = [&](const Vec& own) { return player.cost(game.compose(x, nu, own)); };

  BestResponse out;
  std::vector<Vec> grid = region.grid_points(h, region.outer_radius() + h);
  if (grid.empty()) grid.push_back(region.project(game.own_block(x, nu)));

  std::vector<double> values;
  values.reserve(grid.size());
  for (const auto& own : grid) {
    double v = cost_at(own);
    values.push_back(v);
    if (v < out.min_value) {
      out.min_value = v;
      out.polished = own;
    }
  }

  // Projected descent polish with the analytic own-block gradient.
  {
    Vec y = out.polished;
    double fy = out.min_value;
    double t = 1.0;
    for (int it = 0; it < 20; ++it) {
      Vec g = player.cost.block_gradient(game.compose(x, nu, y), player.offset,
                                         player.size);
      if (g.norm() < 1e-14) break;
      Vec cand = region.project(y - t * g);
      double fc = cost_at(cand);
      if (fc < fy - 1e-15) {
        y = cand;
        fy = fc;
        t = std::min(t * 2.0, 1e3);
      } else {
        t *= 0.5;
        if (t < 1e-12) break;
      }
    }
    if (fy < out.min_value) {
      out.min_value = fy;
      out.polished = y;
    }
  }

  for (std::size_t i = 0; i < grid.size(); ++i)
    if (values[i] <= out.min_value + tol) out.argmins.push_back(grid[i]);
  return out;
}

GnepCheck check_gnep_equilibrium(const Game& game, const Vec& xhat, double h,
                                 double tol) {
  GnepCheck out;
  double sq = 0;
  for (std::size_t nu = 0; nu < game.players.size(); ++nu) {
    PlayerCertificate cert;
    cert.player = nu;
    Vec own = game.own_block(xhat, nu);
    ConvexRegion region = game.player_region(nu, xhat);
    cert.own_dist = region.certified_empty() ? kInf : (region.project(own) - own).norm();
    sq += cert.own_dist * cert.own_dist;
    cert.cost = game.players[nu].cost(xhat);
    auto br = best_response(game, nu, xhat, h, tol);
    cert.best_cost = br.min_value;
    cert.feasible = cert.own_dist <= h + tol;
    out.players.push_back(cert);
  }
  out.feasible = std::sqrt(sq) <= h + tol;
  out.ok = out.feasible;
  for (const auto& c : out.players)
    if (c.cost > c.best_cost + tol) out.ok = false;
  return out;
}

properties::PropertyVerdict check_own_block_convexity(const Game& game) {
  long samples = 0;
  for (std::size_t nu = 0; nu < game.players.size(); ++nu) {
    const auto& p = game.players[nu];
    Mat H = p.cost.A + p.cost.A.transpose();
    Mat own = H.block(p.offset, p.offset, p.size, p.size);
    Eigen::SelfAdjointEigenSolver<Mat> eig(own);
    ++samples;
    double lmin = eig.eigenvalues().minCoeff();
    if (lmin < -1e-9) {
      Witness w;
      w.scalars = {static_cast<double>(nu), lmin};
      w.note = "own-block cost Hessian has a negative eigenvalue";
      return PropertyVerdict::failed(std::move(w), samples);
    }
  }
  return PropertyVerdict::passed(samples);
}

ProblemInstance make_qvi_instance(std::string name, std::string description,
                                  ConvexRegion C, SetValuedMap K,
                                  std::shared_ptr<const PolytopeOperator> op,
                                  Numerics numerics) {
  ProblemInstance inst;
  inst.name = std::move(name);
  inst.description = std::move(description);
  inst.kind = ProblemKind::qvi;
  inst.n = C.dim();
  inst.C = std::move(C);
  inst.K = std::move(K);
  inst.f = Bifunction::from_operator(op);
  inst.op = std::move(op);
  inst.numerics = numerics;
  return inst;
}

ProblemInstance make_gnep_instance(std::string name, std::string description,
                                   std::shared_ptr<const Game> game,
                                   Numerics numerics) {
  ProblemInstance inst;
  inst.name = std::move(name);
  inst.description = std::move(description);
  inst.kind = ProblemKind::gnep;
  inst.n = game->dim();
  inst.C = game->joint_domain();
  inst.K = product_map(*game);
  inst.f = Bifunction::from_game(game);
  inst.game = std::move(game);
  inst.numerics = numerics;
  return inst;
}

std::string gnep_route_name(GnepRoute r) {
  return r == GnepRoute::a1 ? "a1" : "a2";
}

GnepRoute gnep_route_from_name(const std::string& name) {
  if (name == "a1") return GnepRoute::a1;
  if (name == "a2") return GnepRoute::a2;
  throw UnknownName("unknown game solve route: " + name);
}

GnepSolveReport gnep_solve(std::shared_ptr<const Game> game, GnepRoute route,
                           std::optional<double> rho, double h, double tol,
                           std::uint64_t seed) {
  Numerics numerics;
  numerics.grid_h = h;
  ProblemInstance inst = make_gnep_instance("game", "", game, numerics);
  auto variant = route == GnepRoute::a1 ? solver::TheoremVariant::case2
                                        : solver::TheoremVariant::lassonde;
  GnepSolveReport out;
  out.report = solver::solve(inst, variant, rho, h, tol, seed);
  out.report.hypotheses.checks.push_back(
      {"own-convex", check_own_block_convexity(*game)});
  for (const auto& x : out.report.solutions) {
    auto chk = check_gnep_equilibrium(*game, x, h, tol);
    out.all_validated = out.all_validated && chk.ok;
    out.validations.push_back(std::move(chk));
  }
  if (!out.report.solutions.empty())
    out.report.notes.push_back(out.all_validated
                                   ? "all solutions re-validated as equilibria"
                                   : "a reported solution failed re-validation");
  return out;
}

}  // namespace qeq::reductions
