#pragma once

#include "qeq/common.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qeq {

struct Halfspace {
  Vec a;     // normal, non-zero
  double b;  // a.dot(x) <= b
};

struct Ball {
  Vec center;
  double radius;  // > 0
};

/// Intersection of a coordinate box (bounds may be infinite), finitely many
/// halfspaces and closed balls. Instance files admit at most one ball; the
/// in-memory type keeps a list so that ball restriction composes exactly.
class ConvexRegion {
 public:
  ConvexRegion() = default;
  explicit ConvexRegion(Eigen::Index dim);

  static ConvexRegion whole_space(Eigen::Index dim);
  static ConvexRegion box(Vec lo, Vec hi);
  static ConvexRegion interval(double lo, double hi);
  static ConvexRegion closed_ball(Vec center, double radius);
  static ConvexRegion singleton(const Vec& p);
  static ConvexRegion empty(Eigen::Index dim);

  Eigen::Index dim() const { return lo_.size(); }
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Ball>& balls() const { return balls_; }
  bool certified_empty() const { return certified_empty_; }

  ConvexRegion& add_halfspace(Vec a, double b);
  ConvexRegion& add_ball(Vec center, double radius);

  /// Intersect with the origin-centred closed ball of the given radius.
  /// Origin balls merge into one by taking the smaller radius.
  ConvexRegion intersect_origin_ball(double radius) const;

  /// Exact intersection: boxes merge coordinatewise, other pieces concatenate.
  ConvexRegion intersect(const ConvexRegion& other) const;

  /// Membership up to a residual tolerance on every constraint.
  bool contains(const Vec& p, double eps = tol::contains) const;

  /// Largest constraint residual at p (<= 0 when inside).
  double residual(const Vec& p) const;

  /// Nearest point of the region. Exact clamp for pure boxes, Dykstra's
  /// corrected alternating projection otherwise. Throws EmptyRegion on a
  /// certified-empty region and NonConvergence past the cycle cap.
  Vec project(const Vec& p) const;

  /// Emptiness probe: certified flag, cheap box/ball checks, then a
  /// projection probe (a non-converging or infeasible projection is treated
  /// as empty).
  bool is_empty() const;

  /// All points of the origin-anchored lattice with spacing h lying in the
  /// region and in the origin ball of radius `bound`, in lexicographic
  /// order. Throws ExplosionGuard when the candidate lattice exceeds
  /// kGridGuard points.
  std::vector<Vec> grid_points(double h, double bound) const;

  /// Coordinatewise bounds implied by box, balls and axis-aligned
  /// halfspaces. Entries may be infinite.
  std::pair<Vec, Vec> outer_box() const;

  bool bounded() const;

  /// Radius of an origin ball covering the region; requires bounded().
  double outer_radius() const;

 private:
  Vec lo_, hi_;
  std::vector<Halfspace> halfspaces_;
  std::vector<Ball> balls_;
  bool certified_empty_ = false;

  void refresh_empty_flag();
};

/// `count` seeded samples from the convex hull of `points`, each paired with
/// the simplex weights that generated it (Sum(w_i * p_i) reproduces the
/// sample to machine precision).
std::vector<std::pair<Vec, Vec>> co_sample_with_weights(
    const std::vector<Vec>& points, int count, std::uint64_t seed);

/// Hull samples only.
std::vector<Vec> co_sampler(const std::vector<Vec>& points, int count,
                            std::uint64_t seed);

}  // namespace qeq
