#include "qeq/properties.hpp"

#include <algorithm>
#include <cmath>

namespace qeq::properties {

namespace {

/// Pool spacing targeting a few thousand grid points at most.
double auto_spacing(const Vec& lo, const Vec& hi) {
  const Eigen::Index n = lo.size();
  double span = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) span = std::max(span, hi[i] - lo[i]);
  const double per_dim = n == 1 ? 64.0 : (n == 2 ? 24.0 : (n == 3 ? 10.0 : 6.0));
  return std::max(span / per_dim, 1e-6);
}

}  // namespace

std::vector<Vec> sample_pool(const ConvexRegion& R, long budget, std::uint64_t seed,
                             const CheckOptions& opts) {
  auto [lo, hi] = R.outer_box();
  const Eigen::Index n = R.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    lo[i] = std::max(lo[i], -opts.probe_radius);
    hi[i] = std::min(hi[i], opts.probe_radius);
  }
  std::vector<Vec> pool = R.grid_points(auto_spacing(lo, hi), opts.probe_radius);

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long fill = std::min<long>(std::max<long>(budget / 8, 16), 512);
  Vec p(n);
  for (long s = 0; s < fill; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    if (R.contains(p, tol::violation)) {
      pool.push_back(p);
      continue;
    }
    try {
      const Vec q = R.project(p);
      if (R.contains(q, tol::violation)) pool.push_back(q);
    } catch (const Error&) {
      // unprojectable sample: skip
    }
  }
  return pool;
}

namespace {

struct PairSampler {
  const std::vector<Vec>& pool;
  Rng rng;
  std::uniform_int_distribution<std::size_t> pick;

  PairSampler(const std::vector<Vec>& pool_, std::uint64_t seed)
      : pool(pool_), rng(seed ^ 0x9e3779b97f4a7c15ull), pick(0, pool_.size() - 1) {}

  const Vec& one() { return pool[pick(rng)]; }
};

std::vector<double> interior_ts(int t_grid) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(t_grid));
  for (int k = 1; k <= t_grid; ++k)
    ts.push_back(static_cast<double>(k) / (t_grid + 1));
  return ts;
}

}  // namespace

PropertyVerdict check_quasiconvex_y(const Bifunction& f, const ConvexRegion& R,
                                    long budget, std::uint64_t seed,
                                    const CheckOptions& opts) {
  const auto pool = sample_pool(R, budget, seed, opts);
  if (pool.empty()) return PropertyVerdict::passed(0);
  PairSampler gen(pool, seed);
  const auto ts = interior_ts(opts.t_grid);
  long used = 0;
  for (long s = 0; s < budget; ++s) {
    const Vec& x = gen.one();
    const Vec& y1 = gen.one();
    const Vec& y2 = gen.one();
    ++used;
    const double f1 = f(x, y1), f2 = f(x, y2);
    const double cap = std::max(f1, f2);
    for (double t : ts) {
      const Vec mid = t * y1 + (1 - t) * y2;
      const double fm = f(x, mid);
      if (fm > cap + opts.tol) {
        return PropertyVerdict::failed(
            {{x, y1, y2, mid}, {t, f1, f2, fm}, "interior value exceeds endpoint max"},
            used);
      }
    }
  }
  return PropertyVerdict::passed(used);
}

PropertyVerdict check_semistrict_quasiconvex_y(const Bifunction& f,
                                               const ConvexRegion& R, long budget,
                                               std::uint64_t seed,
                                               const CheckOptions& opts) {
  const auto pool = sample_pool(R, budget, seed, opts);
  if (pool.empty()) return PropertyVerdict::passed(0);
  PairSampler gen(pool, seed);
  const auto ts = interior_ts(opts.t_grid);
  long used = 0;
  for (long s = 0; s < budget; ++s) {
    const Vec& x = gen.one();
    const Vec& y1 = gen.one();
    const Vec& y2 = gen.one();
    ++used;
    const double f1 = f(x, y1), f2 = f(x, y2);
    const double cap = std::max(f1, f2);
    const bool unequal = std::abs(f1 - f2) > opts.tol;
    for (double t : ts) {
      const Vec mid = t * y1 + (1 - t) * y2;
      const double fm = f(x, mid);
      if (fm > cap + opts.tol) {
        return PropertyVerdict::failed(
            {{x, y1, y2, mid}, {t, f1, f2, fm}, "interior value exceeds endpoint max"},
            used);
      }
      if (unequal && fm > cap - opts.premise_tol) {
        return PropertyVerdict::failed(
            {{x, y1, y2, mid},
             {t, f1, f2, fm},
             "unequal endpoints but no strict interior drop"},
            used);
      }
    }
  }
  return PropertyVerdict::passed(used);
}

PropertyVerdict check_pseudo_monotone(const Bifunction& f, const ConvexRegion& R,
                                      long budget, std::uint64_t seed,
                                      const CheckOptions& opts) {
  const auto pool = sample_pool(R, budget, seed, opts);
  if (pool.empty()) return PropertyVerdict::passed(0);
  PairSampler gen(pool, seed);
  long used = 0;
  for (long s = 0; s < budget; ++s) {
    const Vec& x = gen.one();
    const Vec& y = gen.one();
    ++used;
    const double fxy = f(x, y);
    if (fxy >= -opts.premise_tol) {
      const double fyx = f(y, x);
      if (fyx > opts.tol) {
        return PropertyVerdict::failed(
            {{x, y}, {fxy, fyx}, "f(x,y) >= 0 with f(y,x) > 0"}, used);
      }
    }
  }
  return PropertyVerdict::passed(used);
}

PropertyVerdict check_quasi_monotone(const Bifunction& f, const ConvexRegion& R,
                                     long budget, std::uint64_t seed,
                                     const CheckOptions& opts) {
  const auto pool = sample_pool(R, budget, seed, opts);
  if (pool.empty()) return PropertyVerdict::passed(0);
  PairSampler gen(pool, seed);
  long used = 0;
  for (long s = 0; s < budget; ++s) {
    const Vec& x = gen.one();
    const Vec& y = gen.one();
    ++used;
    const double fxy = f(x, y);
    if (fxy > opts.tol) {
      const double fyx = f(y, x);
      if (fyx > opts.tol) {
        return PropertyVerdict::failed(
            {{x, y}, {fxy, fyx}, "f(x,y) > 0 with f(y,x) > 0"}, used);
      }
    }
  }
  return PropertyVerdict::passed(used);
}

PropertyVerdict check_properly_quasi_monotone(const Bifunction& f,
                                              const ConvexRegion& R, int m_max,
                                              long budget, std::uint64_t seed,
                                              const CheckOptions& opts) {
  if (m_max < 2) throw Error("properly-quasi-monotone check needs m_max >= 2");
  const auto pool = sample_pool(R, budget, seed, opts);
  if (pool.empty()) return PropertyVerdict::passed(0);
  PairSampler gen(pool, seed);
  Rng mix(seed ^ 0xda942042e4dd58b5ull);
  // Sizes start at 1: a singleton simplex probes the diagonal sign.
  std::uniform_int_distribution<int> size_pick(1, m_max);
  std::uniform_int_distribution<std::uint64_t> seed_pick;
  long used = 0;
  for (long s = 0; s < budget; ++s) {
    const int m = size_pick(mix);
    std::vector<Vec> simplex;
    simplex.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) simplex.push_back(gen.one());
    const auto hull = co_sample_with_weights(simplex, 1, seed_pick(mix));
    const Vec& x = hull.front().first;
    ++used;
    double best = kInf;
    for (const auto& xi : simplex) best = std::min(best, f(xi, x));
    if (best > opts.tol) {
      Witness w;
      w.points = simplex;
      w.points.push_back(x);
      w.scalars.assign(hull.front().second.data(),
                       hull.front().second.data() + hull.front().second.size());
      w.scalars.push_back(best);
      w.note = "hull point with min_i f(x_i, x) > 0; trailing scalar is that min";
      return PropertyVerdict::failed(std::move(w), used);
    }
  }
  return PropertyVerdict::passed(used);
}

PropertyVerdict check_upper_sign(const Bifunction& f, const ConvexRegion& R,
                                 long budget, std::uint64_t seed,
                                 const CheckOptions& opts) {
  const auto pool = sample_pool(R, budget, seed, opts);
  if (pool.empty()) return PropertyVerdict::passed(0);
  PairSampler gen(pool, seed);
  const auto ts = interior_ts(opts.t_grid);
  long used = 0;
  for (long s = 0; s < budget; ++s) {
    const Vec& x = gen.one();
    const Vec& y = gen.one();
    ++used;
    bool premise = true;
    for (double t : ts) {
      const Vec xt = t * x + (1 - t) * y;
      if (f(xt, x) > opts.premise_tol) {
        premise = false;
        break;
      }
    }
    if (!premise) continue;
    const double fxy = f(x, y);
    if (fxy < -opts.tol) {
      return PropertyVerdict::failed(
          {{x, y}, {fxy}, "segment premise holds but f(x,y) < 0"}, used);
    }
  }
  return PropertyVerdict::passed(used);
}

namespace {

std::vector<Vec> neighbor_offsets(Eigen::Index n, double h) {
  // All lattice offsets with infinity-norm <= 2h, excluding the origin.
  std::vector<Vec> out;
  std::vector<int> k(static_cast<std::size_t>(n), -2);
  while (true) {
    Vec d(n);
    bool zero = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      d[i] = k[static_cast<std::size_t>(i)] * h;
      if (k[static_cast<std::size_t>(i)] != 0) zero = false;
    }
    if (!zero) out.push_back(d);
    Eigen::Index j = n - 1;
    while (j >= 0) {
      if (++k[static_cast<std::size_t>(j)] <= 2) break;
      k[static_cast<std::size_t>(j)] = -2;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

}  // namespace

PropertyVerdict falsify_lsc_points(const std::vector<Vec>& domain,
                                   const std::function<MapValue(const Vec&)>& value_at,
                                   double h, double kappa, double value_bound) {
  if (domain.empty()) return PropertyVerdict::passed(0);
  const Eigen::Index n = domain.front().size();
  const auto offsets = neighbor_offsets(n, h);

  // Index domain points for O(1) neighbor lookup on the lattice.
  std::vector<Vec> sorted = domain;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  auto in_domain = [&](const Vec& p) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p,
                               [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    return it != sorted.end() && approx_equal(*it, p, h * 1e-6);
  };

  long used = 0;
  for (const Vec& x0 : sorted) {
    const MapValue v0 = value_at(x0);
    const double bound = std::min(value_norm_sup(v0) + 1.0, value_bound);
    std::vector<Vec> targets = value_grid(v0, h, bound);
    if (targets.size() > 64) {
      // deterministic thinning: keep a spread of at most 64 points
      std::vector<Vec> kept;
      const std::size_t stride = targets.size() / 64 + 1;
      for (std::size_t i = 0; i < targets.size(); i += stride) kept.push_back(targets[i]);
      targets.swap(kept);
    }
    for (const Vec& d : offsets) {
      const Vec x = x0 + d;
      if (!in_domain(x)) continue;
      const MapValue vx = value_at(x);
      for (const Vec& y0 : targets) {
        ++used;
        const double dist = value_dist(vx, y0);
        if (dist <= kappa * d.norm() + h) continue;
        // Grid-scale violation. Values may legitimately deform fast or thin
        // out at isolated points, so confirm the tear at shrinking scales
        // before declaring failure.
        bool confirmed = true;
        for (int k = 1; k <= 3 && confirmed; ++k) {
          const Vec step = d / std::pow(2.0, k);
          const double fine = value_dist(value_at(x0 + step), y0);
          if (fine <= kappa * step.norm() + h) confirmed = false;
        }
        if (confirmed) {
          return PropertyVerdict::failed(
              {{x0, y0, x}, {dist}, "value point torn away from nearby values"}, used);
        }
      }
    }
  }
  return PropertyVerdict::passed(used);
}

PropertyVerdict falsify_lsc(const SetValuedMap& K, const ConvexRegion& R, double h,
                            double kappa, std::uint64_t seed) {
  (void)seed;  // the scan is exhaustive over the grid, no sampling involved
  if (!R.bounded()) throw Error("lsc falsifier needs a bounded probe region");
  const double probe = R.outer_radius() + 1.0;
  const auto domain = R.grid_points(h, probe);
  return falsify_lsc_points(
      domain, [&](const Vec& x) { return K.evaluate(x); }, h, kappa,
      std::max(probe, 8.0));
}

PropertyVerdict falsify_closed_graph(const SetValuedMap& K, const ConvexRegion& R,
                                     double h, std::uint64_t seed,
                                     double probe_radius) {
  (void)seed;
  if (!R.bounded()) throw Error("closed-graph falsifier needs a bounded probe region");
  const auto domain = R.grid_points(h, R.outer_radius() + 1.0);
  if (domain.empty()) return PropertyVerdict::passed(0);
  const Eigen::Index n = domain.front().size();
  const auto offsets = neighbor_offsets(n, h);

  std::vector<Vec> sorted = domain;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  auto in_domain = [&](const Vec& p) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p,
                               [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    return it != sorted.end() && approx_equal(*it, p, h * 1e-6);
  };

  long used = 0;
  for (const Vec& x0 : sorted) {
    const MapValue v0 = K.evaluate(x0);
    for (const Vec& d : offsets) {
      const Vec x = x0 + d;
      if (!in_domain(x)) continue;
      const MapValue vx = K.evaluate(x);
      const double cap = std::max(R.outer_radius() + 1.0, 8.0);
      double bound = probe_radius > 0 ? probe_radius
                                      : std::min(value_norm_sup(vx) + 1.0, cap);
      for (const Vec& y : value_grid(vx, h, bound)) {
        ++used;
        if (value_dist(v0, y) > 2 * h) {
          return PropertyVerdict::failed(
              {{x0, y, x}, {value_dist(v0, y)}, "graph point near x0 far from K(x0)"},
              used);
        }
      }
    }
  }
  return PropertyVerdict::passed(used);
}

PropertyVerdict falsify_usc_first_arg(const Bifunction& f, const ConvexRegion& R,
                                      double h, long budget, std::uint64_t seed) {
  if (!R.bounded()) throw Error("usc falsifier needs a bounded probe region");
  const double radius = R.outer_radius() + 1.0;
  const auto domain = R.grid_points(h, radius);
  if (domain.size() < 2) return PropertyVerdict::passed(0);

  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, domain.size() - 1);

  // Coarse-scale slope estimate over well-separated pairs.
  double coarse = 0.0;
  const long probes = std::min<long>(budget, 2000);
  for (long s = 0; s < probes; ++s) {
    const Vec& a = domain[pick(rng)];
    const Vec& b = domain[pick(rng)];
    const Vec& y = domain[pick(rng)];
    const double sep = (a - b).norm();
    if (sep < 0.25) continue;
    coarse = std::max(coarse, std::abs(f(a, y) - f(b, y)) / sep);
  }
  const double slope_cap = 4.0 * coarse + 1.0;

  const Eigen::Index n = domain.front().size();
  const auto offsets = neighbor_offsets(n, h);
  std::vector<Vec> sorted = domain;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  auto in_domain = [&](const Vec& p) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p,
                               [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    return it != sorted.end() && approx_equal(*it, p, h * 1e-6);
  };

  std::vector<Vec> y_samples = {domain.front(), domain[domain.size() / 2],
                                domain.back()};
  for (int s = 0; s < 3; ++s) y_samples.push_back(domain[pick(rng)]);

  long used = 0;
  for (const Vec& x0 : sorted) {
    for (const Vec& d : offsets) {
      const Vec x = x0 + d;
      if (!in_domain(x)) continue;
      for (const Vec& y : y_samples) {
        ++used;
        // usc violated when values jump UP when leaving x0
        const double rise = f(x, y) - f(x0, y);
        if (rise > slope_cap * d.norm() + tol::violation) {
          return PropertyVerdict::failed(
              {{x0, y, x}, {rise, slope_cap}, "upward jump of f(., y) at fine scale"},
              used);
        }
      }
    }
  }
  return PropertyVerdict::passed(used);
}

}  // namespace qeq::properties
