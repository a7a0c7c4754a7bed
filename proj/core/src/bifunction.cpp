#include "qeq/bifunction.hpp"

#include <cmath>

namespace qeq {

std::string builtin_name(BuiltinBifunction b) {
  switch (b) {
    case BuiltinBifunction::min_abs_one: return "min_abs_one";
    case BuiltinBifunction::neg_spike_origin: return "neg_spike_origin";
  }
  throw Error("unreachable builtin");
}

BuiltinBifunction builtin_from_name(const std::string& name) {
  if (name == "min_abs_one") return BuiltinBifunction::min_abs_one;
  if (name == "neg_spike_origin") return BuiltinBifunction::neg_spike_origin;
  throw UnknownName("unknown builtin bifunction: " + name);
}

Bifunction Bifunction::quadratic(QuadraticBifunction q) {
  const Eigen::Index n = q.c.size();
  if (q.P.rows() != n || q.P.cols() != n || q.Q.rows() != n || q.Q.cols() != n ||
      q.R.rows() != n || q.R.cols() != n || q.d.size() != n)
    throw DimensionMismatch("quadratic bifunction blocks");
  return Bifunction(std::move(q), n);
}

Bifunction Bifunction::constant(Eigen::Index dim, double value) {
  QuadraticBifunction q;
  q.P = Mat::Zero(dim, dim);
  q.Q = Mat::Zero(dim, dim);
  q.R = Mat::Zero(dim, dim);
  q.c = Vec::Zero(dim);
  q.d = Vec::Zero(dim);
  q.e = value;
  return quadratic(std::move(q));
}

Bifunction Bifunction::from_operator(std::shared_ptr<const PolytopeOperator> op) {
  const Eigen::Index n = op->dim();
  return Bifunction(OperatorDerived{std::move(op)}, n);
}

Bifunction Bifunction::from_game(std::shared_ptr<const Game> game) {
  const Eigen::Index n = game->dim();
  return Bifunction(GameDerived{std::move(game)}, n);
}

Bifunction Bifunction::builtin(Eigen::Index dim, BuiltinBifunction which) {
  return Bifunction(Builtin{which}, dim);
}

namespace {

double eval_builtin(BuiltinBifunction which, const Vec& x, const Vec& y) {
  switch (which) {
    case BuiltinBifunction::min_abs_one:
      return std::min(y.norm(), 1.0);
    case BuiltinBifunction::neg_spike_origin:
      return x.lpNorm<Eigen::Infinity>() <= 1e-9 ? -1.0 : 1.0;
  }
  throw Error("unreachable builtin");
}

}  // namespace

double Bifunction::eval(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionMismatch("bifunction evaluation: point size");
  if (const auto* q = std::get_if<QuadraticBifunction>(&node_)) return (*q)(x, y);
  if (const auto* od = std::get_if<OperatorDerived>(&node_))
    return od->op->support(x, y - x);
  if (const auto* gd = std::get_if<GameDerived>(&node_)) {
    const Game& game = *gd->game;
    double total = 0.0;
    for (std::size_t nu = 0; nu < game.players.size(); ++nu) {
      const Vec swapped = game.compose(x, nu, game.own_block(y, nu));
      total += game.players[nu].cost(swapped) - game.players[nu].cost(x);
    }
    return total;
  }
  return eval_builtin(std::get<Builtin>(node_).which, x, y);
}

Vec Bifunction::grad_y(const Vec& x, const Vec& y) const {
  if (const auto* q = std::get_if<QuadraticBifunction>(&node_))
    return (q->Q + q->Q.transpose()) * y + q->R.transpose() * x + q->d;
  if (const auto* od = std::get_if<OperatorDerived>(&node_)) {
    // Active vertex of the support maximum.
    const Vec d = y - x;
    Vec best_vertex;
    double best = -kInf;
    for (const auto& v : od->op->vertices_at(x)) {
      const double val = v.dot(d);
      if (val > best) {
        best = val;
        best_vertex = v;
      }
    }
    return best_vertex;
  }
  if (const auto* gd = std::get_if<GameDerived>(&node_)) {
    const Game& game = *gd->game;
    Vec g = Vec::Zero(dim_);
    for (std::size_t nu = 0; nu < game.players.size(); ++nu) {
      const auto& p = game.players[nu];
      const Vec swapped = game.compose(x, nu, game.own_block(y, nu));
      g.segment(p.offset, p.size) = p.cost.block_gradient(swapped, p.offset, p.size);
    }
    return g;
  }
  const auto& b = std::get<Builtin>(node_);
  if (b.which == BuiltinBifunction::min_abs_one) {
    const double norm = y.norm();
    if (norm >= 1.0 || norm <= 1e-12) return Vec::Zero(dim_);
    return y / norm;
  }
  return Vec::Zero(dim_);
}

Vec Bifunction::grad_x(const Vec& x, const Vec& y) const {
  if (const auto* q = std::get_if<QuadraticBifunction>(&node_))
    return (q->P + q->P.transpose()) * x + q->R * y + q->c;
  // Derived and builtin forms fall back to central differences; the first
  // slot is only polished for quadratic data.
  const double h = 1e-6;
  Vec g(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (eval(xp, y) - eval(xm, y)) / (2 * h);
  }
  return g;
}

double eval_bifunction(const Bifunction& f, const Vec& x, const Vec& y) {
  return f.eval(x, y);
}

}  // namespace qeq
