#pragma once

#include "qeq/common.hpp"
#include "qeq/region.hpp"

#include <vector>

namespace qeq {

/// Quadratic cost over the full joint variable: x^T A x + b^T x + c.
struct QuadraticCost {
  Mat A;
  Vec b;
  double c = 0.0;

  double operator()(const Vec& x) const { return x.dot(A * x) + b.dot(x) + c; }

  /// Gradient restricted to one coordinate block.
  Vec block_gradient(const Vec& x, Eigen::Index offset, Eigen::Index size) const {
    const Vec g = (A + A.transpose()) * x + b;
    return g.segment(offset, size);
  }
};

/// One clamped-affine bound: clamp(a.dot(x) + b, lo, hi). Clamp bounds may be
/// infinite.
struct ClampedAffine {
  Vec a;
  double b = 0.0;
  double lo = -kInf;
  double hi = kInf;

  double operator()(const Vec& x) const { return clamp(a.dot(x) + b, lo, hi); }
};

/// Finite-player game with quadratic costs and box constraint maps. Each
/// player controls one coordinate block; the constraint map of a player reads
/// only the rivals' blocks (its own-block coefficients are zero).
struct Game {
  struct Player {
    Eigen::Index offset = 0;
    Eigen::Index size = 0;
    QuadraticCost cost;
    // Per own coordinate, bounds evaluated at the full joint point.
    std::vector<ClampedAffine> box_lo;
    std::vector<ClampedAffine> box_hi;
    ConvexRegion domain;  // C_nu, in own-block coordinates
  };

  std::vector<Player> players;

  Eigen::Index dim() const {
    Eigen::Index n = 0;
    for (const auto& p : players) n += p.size;
    return n;
  }

  /// Constraint region of player `nu` (own-block coordinates) at joint x.
  ConvexRegion player_region(std::size_t nu, const Vec& x) const {
    const Player& p = players[nu];
    Vec lo(p.size), hi(p.size);
    for (Eigen::Index i = 0; i < p.size; ++i) {
      lo[i] = p.box_lo[static_cast<std::size_t>(i)](x);
      hi[i] = p.box_hi[static_cast<std::size_t>(i)](x);
    }
    return ConvexRegion::box(std::move(lo), std::move(hi));
  }

  /// Replace player nu's block of x with `own`.
  Vec compose(const Vec& x, std::size_t nu, const Vec& own) const {
    Vec y = x;
    y.segment(players[nu].offset, players[nu].size) = own;
    return y;
  }

  Vec own_block(const Vec& x, std::size_t nu) const {
    return x.segment(players[nu].offset, players[nu].size);
  }

  /// Product of the player domains C_nu.
  ConvexRegion joint_domain() const {
    const Eigen::Index n = dim();
    Vec lo = Vec::Constant(n, -kInf), hi = Vec::Constant(n, kInf);
    ConvexRegion joint = ConvexRegion::box(lo, hi);
    for (const auto& p : players) {
      const auto [dlo, dhi] = p.domain.outer_box();
      for (Eigen::Index i = 0; i < p.size; ++i) {
        lo[p.offset + i] = dlo[i];
        hi[p.offset + i] = dhi[i];
      }
    }
    joint = ConvexRegion::box(lo, hi);
    for (const auto& p : players) {
      for (const auto& hs : p.domain.halfspaces()) {
        Vec a = Vec::Zero(n);
        a.segment(p.offset, p.size) = hs.a;
        joint.add_halfspace(std::move(a), hs.b);
      }
      if (!p.domain.balls().empty())
        throw SchemaError("player domains must be box/halfspace regions");
    }
    return joint;
  }
};

}  // namespace qeq
