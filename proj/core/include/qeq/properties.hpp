#pragma once

#include "qeq/bifunction.hpp"
#include "qeq/region.hpp"
#include "qeq/set_map.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qeq::properties {

/// Outcome of a sampled check. A fail always carries a witness tuple that
/// re-evaluates as a violation; a pass only says the sampling budget found
/// nothing and never certifies the property.
struct Witness {
  std::vector<Vec> points;
  std::vector<double> scalars;
  std::string note;
};

struct PropertyVerdict {
  bool pass = true;
  std::optional<Witness> witness;
  long samples_used = 0;

  static PropertyVerdict passed(long samples) { return {true, std::nullopt, samples}; }
  static PropertyVerdict failed(Witness w, long samples) {
    return {false, std::move(w), samples};
  }
};

struct CheckOptions {
  double probe_radius = 4.0;  // sampling window for unbounded regions
  int t_grid = 9;             // interior parameters t = k/(t_grid+1)
  double tol = tol::violation;
  double premise_tol = tol::premise;
};

/// f(x, t y1 + (1-t) y2) <= max(f(x,y1), f(x,y2)) + tol on sampled triples.
PropertyVerdict check_quasiconvex_y(const Bifunction& f, const ConvexRegion& R,
                                    long budget, std::uint64_t seed,
                                    const CheckOptions& opts = {});

/// Quasi-convexity plus: unequal endpoint values force a strict interior
/// drop below the larger one.
PropertyVerdict check_semistrict_quasiconvex_y(const Bifunction& f,
                                               const ConvexRegion& R, long budget,
                                               std::uint64_t seed,
                                               const CheckOptions& opts = {});

/// f(x,y) >= 0 implies f(y,x) <= 0 on sampled pairs.
PropertyVerdict check_pseudo_monotone(const Bifunction& f, const ConvexRegion& R,
                                      long budget, std::uint64_t seed,
                                      const CheckOptions& opts = {});

/// f(x,y) > 0 implies f(y,x) <= 0 on sampled pairs.
PropertyVerdict check_quasi_monotone(const Bifunction& f, const ConvexRegion& R,
                                     long budget, std::uint64_t seed,
                                     const CheckOptions& opts = {});

/// On sampled simplices {x_1..x_m} and hull points x: some i has
/// f(x_i, x) <= 0. Simplex sizes run from 1 to m_max.
PropertyVerdict check_properly_quasi_monotone(const Bifunction& f,
                                              const ConvexRegion& R, int m_max,
                                              long budget, std::uint64_t seed,
                                              const CheckOptions& opts = {});

/// If f(t x + (1-t) y, x) <= 0 for every interior t then f(x, y) >= 0.
PropertyVerdict check_upper_sign(const Bifunction& f, const ConvexRegion& R,
                                 long budget, std::uint64_t seed,
                                 const CheckOptions& opts = {});

/// Lower-semicontinuity falsifier for K on the grid of R: a value point of
/// K(x0) must stay within kappa * |x - x0| + h of K(x) for close x.
PropertyVerdict falsify_lsc(const SetValuedMap& K, const ConvexRegion& R, double h,
                            double kappa = 10.0, std::uint64_t seed = 0);

/// Same falsifier over an explicit point domain and callable values; used
/// for maps synthesized from grid filtrations. Value points are sampled
/// within `value_bound` of the origin.
PropertyVerdict falsify_lsc_points(const std::vector<Vec>& domain,
                                   const std::function<MapValue(const Vec&)>& value_at,
                                   double h, double kappa = 10.0,
                                   double value_bound = 1e6);

/// Closed-graph falsifier: a graph sample (x, y) with x near x0 whose value
/// point y stays far from K(x0) refutes closedness at grid scale.
PropertyVerdict falsify_closed_graph(const SetValuedMap& K, const ConvexRegion& R,
                                     double h, std::uint64_t seed = 0,
                                     double probe_radius = 0.0);

/// Upper-semicontinuity falsifier for x -> f(x, y): fine-scale difference
/// quotients are compared against a coarse-scale slope estimate, so smooth
/// data passes at any moderate gradient while jumps fire.
PropertyVerdict falsify_usc_first_arg(const Bifunction& f, const ConvexRegion& R,
                                      double h, long budget, std::uint64_t seed);

/// Deterministic sample pool shared by the bifunction checkers: region grid
/// points plus seeded projected-uniform fill.
std::vector<Vec> sample_pool(const ConvexRegion& R, long budget, std::uint64_t seed,
                             const CheckOptions& opts = {});

}  // namespace qeq::properties
