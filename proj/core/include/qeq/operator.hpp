#pragma once

#include "qeq/common.hpp"

#include <optional>
#include <vector>

namespace qeq {

/// Affine point map x -> M x + q.
struct AffineMap {
  Mat M;
  Vec q;

  Vec operator()(const Vec& x) const { return M * x + q; }
};

/// Set-valued operator whose value at x is the convex hull of finitely many
/// affinely moving vertices. An optional step makes the vertex list switch
/// across a hyperplane, which is the stock non-continuous specimen for the
/// sign-continuity falsifier.
struct PolytopeOperator {
  struct Step {
    Vec a;
    double b;  // use `below` when a.dot(x) <= b, else `above`
    std::vector<AffineMap> below;
    std::vector<AffineMap> above;
  };

  std::vector<AffineMap> vertices;
  std::optional<Step> step;

  Eigen::Index dim() const {
    if (step) return step->below.front().q.size();
    return vertices.front().q.size();
  }

  std::vector<Vec> vertices_at(const Vec& x) const {
    const std::vector<AffineMap>* maps = &vertices;
    if (step) maps = (step->a.dot(x) <= step->b) ? &step->below : &step->above;
    std::vector<Vec> out;
    out.reserve(maps->size());
    for (const auto& m : *maps) out.push_back(m(x));
    return out;
  }

  /// max over the value polytope of <x*, d>; attained at a vertex.
  double support(const Vec& x, const Vec& d) const {
    double best = -kInf;
    for (const auto& v : vertices_at(x)) best = std::max(best, v.dot(d));
    return best;
  }

  /// min over the value polytope of <x*, d>.
  double inf_support(const Vec& x, const Vec& d) const {
    double best = kInf;
    for (const auto& v : vertices_at(x)) best = std::min(best, v.dot(d));
    return best;
  }
};

}  // namespace qeq
