#pragma once

#include "qeq/common.hpp"
#include "qeq/game.hpp"
#include "qeq/operator.hpp"
#include "qeq/region.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace qeq {

struct FinitePointSet {
  std::vector<Vec> points;
};

/// Value of a set-valued map at a point: a convex region or a finite list of
/// points (finite values are never convexified implicitly).
using MapValue = std::variant<ConvexRegion, FinitePointSet>;

bool value_is_empty(const MapValue& v);
bool value_contains(const MapValue& v, const Vec& p, double eps = tol::contains);

/// Euclidean distance from p to the value set (projection-based for regions).
double value_dist(const MapValue& v, const Vec& p);

/// Grid sample of the value set within the origin ball of radius `bound`.
/// Finite values are filtered, regions are lattice-enumerated.
std::vector<Vec> value_grid(const MapValue& v, double h, double bound);

/// Largest norm attainable in the value set according to outer bounds
/// (exact for finite values, outer-box bound for regions; may be +inf).
double value_norm_sup(const MapValue& v);

class SetValuedMap {
 public:
  struct Constant {
    ConvexRegion region;
  };
  /// Coordinatewise box with clamped-affine bounds lo_i(x), hi_i(x).
  struct MovingBox {
    std::vector<ClampedAffine> lo;
    std::vector<ClampedAffine> hi;
  };
  struct BallRestricted {
    std::shared_ptr<const SetValuedMap> inner;
    double radius;
  };
  /// Product across coordinate blocks; each factor sees the full input point
  /// and yields a region in its own block.
  struct Product {
    struct Block {
      Eigen::Index offset;
      Eigen::Index size;
      std::shared_ptr<const SetValuedMap> map;
    };
    std::vector<Block> blocks;
  };
  /// inner on the closed set A, outer elsewhere.
  struct Glued {
    ConvexRegion domain;
    std::shared_ptr<const SetValuedMap> inner;
    std::shared_ptr<const SetValuedMap> outer;
  };
  /// x -> {M_j x + q_j}: a finite, affinely moving point set.
  struct FinitePoints {
    std::vector<AffineMap> maps;
  };

  using Node = std::variant<Constant, MovingBox, BallRestricted, Product, Glued,
                            FinitePoints>;

  /// Zero-dimensional constant placeholder.
  SetValuedMap() : SetValuedMap(Constant{ConvexRegion(0)}, 0, 0) {}

  SetValuedMap(Node node, Eigen::Index dim_in, Eigen::Index dim_out)
      : node_(std::move(node)), dim_in_(dim_in), dim_out_(dim_out) {}

  static SetValuedMap constant(ConvexRegion region, Eigen::Index dim_in = -1);
  static SetValuedMap moving_box(std::vector<ClampedAffine> lo,
                                 std::vector<ClampedAffine> hi,
                                 Eigen::Index dim_in);
  static SetValuedMap finite_points(std::vector<AffineMap> maps);

  const Node& node() const { return node_; }
  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }

  MapValue evaluate(const Vec& x) const;

  /// True when every value is convex by construction (no finite point set
  /// with more than one generator anywhere in the tree).
  bool convex_valued() const;

 private:
  Node node_;
  Eigen::Index dim_in_;
  Eigen::Index dim_out_;
};

MapValue evaluate_map(const SetValuedMap& map, const Vec& x);

/// Wrap a map so that every value is intersected with the origin ball of
/// radius rho.
SetValuedMap restrict_to_ball(const SetValuedMap& map, double rho);

struct GlueOptions {
  double sample_h = 0.25;   // validation grid spacing on A
  double bound = 8.0;       // validation window radius
  double value_h = 0.25;    // sampling resolution inside inner values
};

/// Build the piecewise map (inner on A, outer elsewhere) after validating
/// inner(x) is included in outer(x) on a grid sample of A. Throws
/// InclusionViolated with the offending x otherwise.
SetValuedMap glue_maps(const ConvexRegion& A, const SetValuedMap& inner,
                       const SetValuedMap& outer, const GlueOptions& opts = {});

}  // namespace qeq
