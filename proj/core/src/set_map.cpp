#include "qeq/set_map.hpp"

#include <algorithm>
#include <cmath>

namespace qeq {

bool value_is_empty(const MapValue& v) {
  if (const auto* fin = std::get_if<FinitePointSet>(&v)) return fin->points.empty();
  return std::get<ConvexRegion>(v).is_empty();
}

bool value_contains(const MapValue& v, const Vec& p, double eps) {
  if (const auto* fin = std::get_if<FinitePointSet>(&v)) {
    for (const auto& q : fin->points)
      if ((q - p).lpNorm<Eigen::Infinity>() <= eps) return true;
    return false;
  }
  return std::get<ConvexRegion>(v).contains(p, eps);
}

double value_dist(const MapValue& v, const Vec& p) {
  if (const auto* fin = std::get_if<FinitePointSet>(&v)) {
    double best = kInf;
    for (const auto& q : fin->points) best = std::min(best, (q - p).norm());
    return best;
  }
  const auto& region = std::get<ConvexRegion>(v);
  if (region.certified_empty()) return kInf;
  try {
    return (region.project(p) - p).norm();
  } catch (const NonConvergence&) {
    return kInf;  // cyclic projection stalls only on an empty intersection
  }
}

std::vector<Vec> value_grid(const MapValue& v, double h, double bound) {
  if (const auto* fin = std::get_if<FinitePointSet>(&v)) {
    std::vector<Vec> out;
    for (const auto& q : fin->points)
      if (q.norm() <= bound + tol::contains) out.push_back(q);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }
  return std::get<ConvexRegion>(v).grid_points(h, bound);
}

double value_norm_sup(const MapValue& v) {
  if (const auto* fin = std::get_if<FinitePointSet>(&v)) {
    double best = 0.0;
    for (const auto& q : fin->points) best = std::max(best, q.norm());
    return best;
  }
  const auto& region = std::get<ConvexRegion>(v);
  if (region.is_empty()) return 0.0;
  if (!region.bounded()) return kInf;
  return region.outer_radius();
}

SetValuedMap SetValuedMap::constant(ConvexRegion region, Eigen::Index dim_in) {
  const Eigen::Index out = region.dim();
  return SetValuedMap(Constant{std::move(region)}, dim_in < 0 ? out : dim_in, out);
}

SetValuedMap SetValuedMap::moving_box(std::vector<ClampedAffine> lo,
                                      std::vector<ClampedAffine> hi,
                                      Eigen::Index dim_in) {
  if (lo.size() != hi.size()) throw DimensionMismatch("moving box bound counts differ");
  const Eigen::Index out = static_cast<Eigen::Index>(lo.size());
  for (const auto& c : lo)
    if (c.a.size() != dim_in) throw DimensionMismatch("moving box coefficient size");
  for (const auto& c : hi)
    if (c.a.size() != dim_in) throw DimensionMismatch("moving box coefficient size");
  return SetValuedMap(MovingBox{std::move(lo), std::move(hi)}, dim_in, out);
}

SetValuedMap SetValuedMap::finite_points(std::vector<AffineMap> maps) {
  if (maps.empty()) throw Error("finite point map needs at least one generator");
  const Eigen::Index in = maps.front().M.cols();
  const Eigen::Index out = maps.front().q.size();
  return SetValuedMap(FinitePoints{std::move(maps)}, in, out);
}

namespace {

struct Evaluator {
  const Vec& x;
  const SetValuedMap& self;

  MapValue operator()(const SetValuedMap::Constant& c) const { return c.region; }

  MapValue operator()(const SetValuedMap::MovingBox& mb) const {
    const Eigen::Index n = static_cast<Eigen::Index>(mb.lo.size());
    Vec lo(n), hi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      lo[i] = mb.lo[static_cast<std::size_t>(i)](x);
      hi[i] = mb.hi[static_cast<std::size_t>(i)](x);
    }
    return ConvexRegion::box(std::move(lo), std::move(hi));
  }

  MapValue operator()(const SetValuedMap::BallRestricted& br) const {
    MapValue inner = br.inner->evaluate(x);
    if (auto* fin = std::get_if<FinitePointSet>(&inner)) {
      FinitePointSet kept;
      for (auto& p : fin->points)
        if (p.norm() <= br.radius + tol::contains) kept.points.push_back(std::move(p));
      return kept;
    }
    return std::get<ConvexRegion>(inner).intersect_origin_ball(br.radius);
  }

  MapValue operator()(const SetValuedMap::Product& pr) const {
    const Eigen::Index n = self.dim_out();
    Vec lo = Vec::Constant(n, -kInf), hi = Vec::Constant(n, kInf);
    std::vector<std::pair<Vec, double>> lifted;
    bool empty = false;
    for (const auto& block : pr.blocks) {
      MapValue v = block.map->evaluate(x);
      const auto* region = std::get_if<ConvexRegion>(&v);
      if (!region)
        throw Error("product blocks must evaluate to convex regions");
      if (region->is_empty()) empty = true;
      const auto [blo, bhi] = region->outer_box();
      lo.segment(block.offset, block.size) = blo;
      hi.segment(block.offset, block.size) = bhi;
      for (const auto& hs : region->halfspaces()) {
        Vec a = Vec::Zero(n);
        a.segment(block.offset, block.size) = hs.a;
        lifted.emplace_back(std::move(a), hs.b);
      }
      if (!region->balls().empty())
        throw Error("product blocks must be ball-free regions");
    }
    if (empty) return ConvexRegion::empty(n);
    ConvexRegion out = ConvexRegion::box(std::move(lo), std::move(hi));
    for (auto& [a, b] : lifted) out.add_halfspace(std::move(a), b);
    return out;
  }

  MapValue operator()(const SetValuedMap::Glued& g) const {
    return g.domain.contains(x) ? g.inner->evaluate(x) : g.outer->evaluate(x);
  }

  MapValue operator()(const SetValuedMap::FinitePoints& fp) const {
    FinitePointSet out;
    out.points.reserve(fp.maps.size());
    for (const auto& m : fp.maps) out.points.push_back(m(x));
    return out;
  }
};

}  // namespace

MapValue SetValuedMap::evaluate(const Vec& x) const {
  if (x.size() != dim_in_) throw DimensionMismatch("map evaluation: point size");
  return std::visit(Evaluator{x, *this}, node_);
}

bool SetValuedMap::convex_valued() const {
  struct Visitor {
    bool operator()(const Constant&) const { return true; }
    bool operator()(const MovingBox&) const { return true; }
    bool operator()(const BallRestricted& br) const { return br.inner->convex_valued(); }
    bool operator()(const Product& pr) const {
      for (const auto& b : pr.blocks)
        if (!b.map->convex_valued()) return false;
      return true;
    }
    bool operator()(const Glued& g) const {
      return g.inner->convex_valued() && g.outer->convex_valued();
    }
    bool operator()(const FinitePoints& fp) const { return fp.maps.size() <= 1; }
  };
  return std::visit(Visitor{}, node_);
}

MapValue evaluate_map(const SetValuedMap& map, const Vec& x) {
  return map.evaluate(x);
}

SetValuedMap restrict_to_ball(const SetValuedMap& map, double rho) {
  if (!(rho > 0.0)) throw Error("restriction radius must be positive");
  return SetValuedMap(
      SetValuedMap::BallRestricted{std::make_shared<SetValuedMap>(map), rho},
      map.dim_in(), map.dim_out());
}

SetValuedMap glue_maps(const ConvexRegion& A, const SetValuedMap& inner,
                       const SetValuedMap& outer, const GlueOptions& opts) {
  if (inner.dim_in() != outer.dim_in() || inner.dim_out() != outer.dim_out())
    throw DimensionMismatch("glued maps disagree in dimension");
  if (A.dim() != inner.dim_in()) throw DimensionMismatch("glue domain dimension");

  for (const Vec& x : A.grid_points(opts.sample_h, opts.bound)) {
    const MapValue sv = inner.evaluate(x);
    const MapValue tv = outer.evaluate(x);
    const double value_bound =
        std::min(opts.bound * 4, value_norm_sup(sv) + 1.0);
    for (const Vec& y : value_grid(sv, opts.value_h, value_bound)) {
      if (!value_contains(tv, y, tol::violation))
        throw InclusionViolated("glued inner value escapes the outer value", x);
    }
  }
  return SetValuedMap(
      SetValuedMap::Glued{A, std::make_shared<SetValuedMap>(inner),
                          std::make_shared<SetValuedMap>(outer)},
      inner.dim_in(), inner.dim_out());
}

}  // namespace qeq
