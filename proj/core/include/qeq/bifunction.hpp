#pragma once

#include "qeq/common.hpp"
#include "qeq/game.hpp"
#include "qeq/operator.hpp"

#include <memory>
#include <string>
#include <variant>

namespace qeq {

/// f(x, y) = x^T P x + y^T Q y + x^T R y + c^T x + d^T y + e.
struct QuadraticBifunction {
  Mat P, Q, R;
  Vec c, d;
  double e = 0.0;

  double operator()(const Vec& x, const Vec& y) const {
    return x.dot(P * x) + y.dot(Q * y) + x.dot(R * y) + c.dot(x) + d.dot(y) + e;
  }
};

/// Named special-purpose bifunctions used by negative controls.
enum class BuiltinBifunction {
  /// f(x, y) = min(|y|, 1): quasi-convex in y, not semi-strictly so.
  min_abs_one,
  /// f(x, y) = -1 when x = 0, +1 otherwise: an isolated violation spike.
  neg_spike_origin,
};

std::string builtin_name(BuiltinBifunction b);
BuiltinBifunction builtin_from_name(const std::string& name);

class Bifunction {
 public:
  struct OperatorDerived {
    std::shared_ptr<const PolytopeOperator> op;
  };
  struct GameDerived {
    std::shared_ptr<const Game> game;
  };
  struct Builtin {
    BuiltinBifunction which;
  };

  using Node = std::variant<QuadraticBifunction, OperatorDerived, GameDerived, Builtin>;

  /// Zero-dimensional zero placeholder.
  Bifunction() : Bifunction(QuadraticBifunction{}, 0) {}

  Bifunction(Node node, Eigen::Index dim) : node_(std::move(node)), dim_(dim) {}

  static Bifunction quadratic(QuadraticBifunction q);
  /// Constant f(x, y) = value.
  static Bifunction constant(Eigen::Index dim, double value);
  /// Support bifunction of a polytope operator: f(x, y) = max over
  /// x* in T(x) of <x*, y - x>.
  static Bifunction from_operator(std::shared_ptr<const PolytopeOperator> op);
  /// Cost-improvement aggregate of a game: the sum over players of
  /// theta_nu(y_nu, x_rest) - theta_nu(x).
  static Bifunction from_game(std::shared_ptr<const Game> game);
  static Bifunction builtin(Eigen::Index dim, BuiltinBifunction which);

  Eigen::Index dim() const { return dim_; }
  const Node& node() const { return node_; }

  double operator()(const Vec& x, const Vec& y) const { return eval(x, y); }
  double eval(const Vec& x, const Vec& y) const;

  /// Gradient of y -> f(x, y); sub-gradient of the active piece for the
  /// operator/builtin variants.
  Vec grad_y(const Vec& x, const Vec& y) const;

  /// Gradient of x -> f(x, y) (first slot), used by the dual-form polish.
  Vec grad_x(const Vec& x, const Vec& y) const;

 private:
  Node node_;
  Eigen::Index dim_;
};

double eval_bifunction(const Bifunction& f, const Vec& x, const Vec& y);

}  // namespace qeq
