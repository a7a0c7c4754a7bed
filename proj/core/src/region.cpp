#include "qeq/region.hpp"

#include <algorithm>
#include <cmath>

namespace qeq {

ConvexRegion::ConvexRegion(Eigen::Index dim)
    : lo_(Vec::Constant(dim, -kInf)), hi_(Vec::Constant(dim, kInf)) {}

ConvexRegion ConvexRegion::whole_space(Eigen::Index dim) {
  return ConvexRegion(dim);
}

ConvexRegion ConvexRegion::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size()) throw DimensionMismatch("box bounds differ in size");
  ConvexRegion r(lo.size());
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  r.refresh_empty_flag();
  return r;
}

ConvexRegion ConvexRegion::interval(double lo, double hi) {
  return box(Vec::Constant(1, lo), Vec::Constant(1, hi));
}

ConvexRegion ConvexRegion::closed_ball(Vec center, double radius) {
  ConvexRegion r(center.size());
  r.add_ball(std::move(center), radius);
  return r;
}

ConvexRegion ConvexRegion::singleton(const Vec& p) {
  return box(p, p);
}

ConvexRegion ConvexRegion::empty(Eigen::Index dim) {
  ConvexRegion r(dim);
  r.certified_empty_ = true;
  return r;
}

ConvexRegion& ConvexRegion::add_halfspace(Vec a, double b) {
  if (a.size() != dim()) throw DimensionMismatch("halfspace normal size");
  if (a.lpNorm<Eigen::Infinity>() == 0.0) throw Error("halfspace normal is zero");
  halfspaces_.push_back({std::move(a), b});
  return *this;
}

ConvexRegion& ConvexRegion::add_ball(Vec center, double radius) {
  if (center.size() != dim()) throw DimensionMismatch("ball center size");
  if (!(radius > 0.0)) throw Error("ball radius must be positive");
  balls_.push_back({std::move(center), radius});
  return *this;
}

ConvexRegion ConvexRegion::intersect_origin_ball(double radius) const {
  if (!(radius > 0.0)) throw Error("restriction radius must be positive");
  ConvexRegion r = *this;
  for (auto& ball : r.balls_) {
    if (ball.center.lpNorm<Eigen::Infinity>() == 0.0) {
      ball.radius = std::min(ball.radius, radius);
      return r;
    }
  }
  r.balls_.push_back({Vec::Zero(dim()), radius});
  return r;
}

ConvexRegion ConvexRegion::intersect(const ConvexRegion& other) const {
  if (other.dim() != dim()) throw DimensionMismatch("region intersection dims");
  ConvexRegion r = *this;
  r.lo_ = lo_.cwiseMax(other.lo_);
  r.hi_ = hi_.cwiseMin(other.hi_);
  r.halfspaces_.insert(r.halfspaces_.end(), other.halfspaces_.begin(),
                       other.halfspaces_.end());
  r.balls_.insert(r.balls_.end(), other.balls_.begin(), other.balls_.end());
  r.certified_empty_ = certified_empty_ || other.certified_empty_;
  r.refresh_empty_flag();
  return r;
}

void ConvexRegion::refresh_empty_flag() {
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (lo_[i] > hi_[i]) {
      certified_empty_ = true;
      return;
    }
  }
}

bool ConvexRegion::contains(const Vec& p, double eps) const {
  if (p.size() != dim()) throw DimensionMismatch("contains: point size");
  if (certified_empty_) return false;
  return residual(p) <= eps;
}

double ConvexRegion::residual(const Vec& p) const {
  double worst = -kInf;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (std::isfinite(lo_[i])) worst = std::max(worst, lo_[i] - p[i]);
    if (std::isfinite(hi_[i])) worst = std::max(worst, p[i] - hi_[i]);
  }
  for (const auto& hs : halfspaces_) worst = std::max(worst, hs.a.dot(p) - hs.b);
  for (const auto& ball : balls_)
    worst = std::max(worst, (p - ball.center).norm() - ball.radius);
  return worst == -kInf ? 0.0 : worst;  // whole space: residual 0 everywhere
}

namespace {

Vec clamp_to_box(const Vec& p, const Vec& lo, const Vec& hi) {
  Vec q = p;
  for (Eigen::Index i = 0; i < p.size(); ++i) q[i] = clamp(q[i], lo[i], hi[i]);
  return q;
}

Vec project_halfspace(const Vec& p, const Halfspace& hs) {
  const double excess = hs.a.dot(p) - hs.b;
  if (excess <= 0.0) return p;
  return p - (excess / hs.a.squaredNorm()) * hs.a;
}

Vec project_ball(const Vec& p, const Ball& ball) {
  const Vec d = p - ball.center;
  const double norm = d.norm();
  if (norm <= ball.radius) return p;
  return ball.center + d * (ball.radius / norm);
}

}  // namespace

Vec ConvexRegion::project(const Vec& p) const {
  if (p.size() != dim()) throw DimensionMismatch("project: point size");
  if (certified_empty_) throw EmptyRegion("projection onto certified-empty region");

  const bool has_box = lo_.unaryExpr([](double v) { return std::isfinite(v) ? 1.0 : 0.0; }).sum() > 0 ||
                       hi_.unaryExpr([](double v) { return std::isfinite(v) ? 1.0 : 0.0; }).sum() > 0;
  if (halfspaces_.empty() && balls_.empty()) {
    return has_box ? clamp_to_box(p, lo_, hi_) : p;
  }
  if (!has_box && halfspaces_.empty() && balls_.size() == 1) {
    return project_ball(p, balls_[0]);
  }
  if (!has_box && balls_.empty() && halfspaces_.size() == 1) {
    return project_halfspace(p, halfspaces_[0]);
  }

  // Dykstra's corrected cyclic projection onto the intersection of pieces.
  const std::size_t pieces = 1 + halfspaces_.size() + balls_.size();
  std::vector<Vec> correction(pieces, Vec::Zero(dim()));
  Vec x = p;
  for (int cycle = 0; cycle < kProjectionCap; ++cycle) {
    const Vec x_before = x;
    std::size_t k = 0;
    auto apply = [&](auto&& projector) {
      const Vec target = x + correction[k];
      const Vec z = projector(target);
      correction[k] = target - z;
      x = z;
      ++k;
    };
    apply([&](const Vec& v) { return clamp_to_box(v, lo_, hi_); });
    for (const auto& hs : halfspaces_)
      apply([&](const Vec& v) { return project_halfspace(v, hs); });
    for (const auto& ball : balls_)
      apply([&](const Vec& v) { return project_ball(v, ball); });

    const double moved = (x - x_before).lpNorm<Eigen::Infinity>();
    if (moved <= 1e-13 && residual(x) <= tol::projection) return x;
  }
  if (residual(x) <= tol::projection) return x;
  throw NonConvergence("projection did not converge within the cycle cap");
}

bool ConvexRegion::is_empty() const {
  if (certified_empty_) return true;
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (lo_[i] > hi_[i]) return true;
  // Cheap certificate: a single ball versus the box.
  Vec probe = Vec::Zero(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) {
    double v = 0.0;
    v = clamp(v, std::isfinite(lo_[i]) ? lo_[i] : v, std::isfinite(hi_[i]) ? hi_[i] : v);
    probe[i] = v;
  }
  for (const auto& ball : balls_) {
    const Vec nearest = clamp_to_box(ball.center, lo_, hi_);
    if ((nearest - ball.center).norm() > ball.radius + tol::contains) return true;
  }
  try {
    const Vec q = project(probe);
    return !contains(q, tol::projection * 10);
  } catch (const NonConvergence&) {
    return true;
  }
}

std::vector<Vec> ConvexRegion::grid_points(double h, double bound) const {
  if (!(h > 0.0)) throw Error("grid spacing must be positive");
  if (!(bound > 0.0)) throw Error("grid bound must be positive");
  if (certified_empty_) return {};

  const auto [outer_lo, outer_hi] = outer_box();
  const Eigen::Index n = dim();
  std::vector<long> k_lo(static_cast<std::size_t>(n));
  std::vector<long> k_hi(static_cast<std::size_t>(n));
  std::int64_t count = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lo = std::max(outer_lo[i], -bound);
    const double hi = std::min(outer_hi[i], bound);
    if (lo > hi) return {};
    k_lo[static_cast<std::size_t>(i)] = static_cast<long>(std::ceil(lo / h - 1e-9));
    k_hi[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(hi / h + 1e-9));
    const std::int64_t span = k_hi[static_cast<std::size_t>(i)] -
                              k_lo[static_cast<std::size_t>(i)] + 1;
    if (span <= 0) return {};
    count *= span;
    if (count > kGridGuard)
      throw ExplosionGuard("candidate lattice exceeds " + std::to_string(kGridGuard) +
                           " points");
  }

  std::vector<Vec> out;
  std::vector<long> k(k_lo);
  Vec p(n);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i)
      p[i] = static_cast<double>(k[static_cast<std::size_t>(i)]) * h;
    if (p.norm() <= bound + tol::contains && contains(p)) out.push_back(p);
    // lexicographic successor: last coordinate fastest
    Eigen::Index j = n - 1;
    while (j >= 0) {
      if (++k[static_cast<std::size_t>(j)] <= k_hi[static_cast<std::size_t>(j)]) break;
      k[static_cast<std::size_t>(j)] = k_lo[static_cast<std::size_t>(j)];
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

std::pair<Vec, Vec> ConvexRegion::outer_box() const {
  Vec lo = lo_, hi = hi_;
  for (const auto& ball : balls_) {
    for (Eigen::Index i = 0; i < dim(); ++i) {
      lo[i] = std::max(lo[i], ball.center[i] - ball.radius);
      hi[i] = std::min(hi[i], ball.center[i] + ball.radius);
    }
  }
  for (const auto& hs : halfspaces_) {
    // Only axis-aligned halfspaces tighten the outer box.
    Eigen::Index nz = -1;
    bool single = true;
    for (Eigen::Index i = 0; i < dim(); ++i) {
      if (hs.a[i] != 0.0) {
        if (nz >= 0) { single = false; break; }
        nz = i;
      }
    }
    if (!single || nz < 0) continue;
    const double v = hs.b / hs.a[nz];
    if (hs.a[nz] > 0) hi[nz] = std::min(hi[nz], v);
    else lo[nz] = std::max(lo[nz], v);
  }
  return {lo, hi};
}

bool ConvexRegion::bounded() const {
  const auto [lo, hi] = outer_box();
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) return false;
  return true;
}

double ConvexRegion::outer_radius() const {
  if (!bounded()) throw Error("outer_radius of an unbounded region");
  const auto [lo, hi] = outer_box();
  double sq = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i)
    sq += std::max(lo[i] * lo[i], hi[i] * hi[i]);
  return std::sqrt(sq);
}

std::vector<std::pair<Vec, Vec>> co_sample_with_weights(
    const std::vector<Vec>& points, int count, std::uint64_t seed) {
  if (points.empty()) throw Error("co_sampler needs at least one point");
  const Eigen::Index n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw DimensionMismatch("co_sampler: mixed point sizes");

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(std::nextafter(0.0, 1.0), 1.0);
  std::vector<std::pair<Vec, Vec>> out;
  out.reserve(static_cast<std::size_t>(count));
  const std::size_t m = points.size();
  for (int s = 0; s < count; ++s) {
    // Dirichlet(1,...,1): normalized exponentials give uniform simplex weights.
    Vec w(static_cast<Eigen::Index>(m));
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[static_cast<Eigen::Index>(i)] = -std::log(unit(rng));
      total += w[static_cast<Eigen::Index>(i)];
    }
    w /= total;
    Vec q = Vec::Zero(n);
    for (std::size_t i = 0; i < m; ++i) q += w[static_cast<Eigen::Index>(i)] * points[i];
    out.emplace_back(std::move(q), std::move(w));
  }
  return out;
}

std::vector<Vec> co_sampler(const std::vector<Vec>& points, int count,
                            std::uint64_t seed) {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (auto& [q, w] : co_sample_with_weights(points, count, seed))
    out.push_back(std::move(q));
  return out;
}

}  // namespace qeq
