#pragma once

#include "qeq/instance.hpp"
#include "qeq/properties.hpp"
#include "qeq/solver.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qeq::reductions {

/// Support bifunction of the operator: f_T(x, y) = max over the vertex
/// images v of T(x) of <v, y - x>.
Bifunction qvi_to_qep(std::shared_ptr<const PolytopeOperator> op);

struct QviCheck {
  bool ok = false;
  bool feasible = false;
  bool star_found = false;  // a single multiplier works for every grid y
  Vec star;
  double star_min = 0;  // min over grid y of <star, y - x0>
  /// Aggregate check failed as well, which refutes the candidate outright.
  bool refuted_via_ft = false;
  solver::SolutionCheck ft;
  std::string note;
};

/// Native check: x0 near K(x0) and some x* in T(x0) with
/// <x*, y - x0> >= -tol for all y in K(x0) cap window (grid plus a boundary
/// polish). The multiplier is the maximizer of the concave weight objective
/// over the vertex-image simplex: a ternary search for two images, a dense
/// sweep plus supergradient ascent otherwise. A miss with a passing
/// aggregate check is reported as not found, never as a refutation.
QviCheck check_qvi_solution(const PolytopeOperator& T, const SetValuedMap& K,
                            const Vec& x0, const ConvexRegion& window, double h,
                            double tol, double feas_tol = -1.0);

/// Simplex sampling with the universal over T(x_i) evaluated at vertices
/// (the vertex maximum realizes the supremum).
properties::PropertyVerdict check_operator_properly_quasi_monotone(
    const PolytopeOperator& T, const ConvexRegion& R, int m_max, long budget,
    std::uint64_t seed, const properties::CheckOptions& opts = {});

/// Segment sampling for upper sign-continuity: interior infima at vertices
/// nonnegative force a nonnegative supremum at the endpoint.
properties::PropertyVerdict check_operator_upper_sign_continuous(
    const PolytopeOperator& T, const ConvexRegion& R, long budget, int t_grid,
    std::uint64_t seed, const properties::CheckOptions& opts = {});

/// Aggregate cost-improvement bifunction of a game: the sum over players of
/// theta_nu(y_nu, x_rest) - theta_nu(x).
Bifunction nikaido_isoda(std::shared_ptr<const Game> game);

/// Joint constraint map: the product over players of the per-player moving
/// boxes, each reading only the rivals' blocks.
SetValuedMap product_map(const Game& game);

struct BestResponse {
  std::vector<Vec> argmins;  // grid points within tol of the minimum
  double min_value = kInf;
  Vec polished;  // best point found including descent polish
};

/// Player nu's optimal replies to the rivals' blocks of x: grid argmin set
/// over K_nu(x_rest) with descent polish.
BestResponse best_response(const Game& game, std::size_t nu, const Vec& x, double h,
                           double tol);

struct PlayerCertificate {
  std::size_t player = 0;
  bool feasible = false;
  double own_dist = 0;   // distance of the own block to K_nu(x_rest)
  double cost = 0;       // theta_nu at the candidate
  double best_cost = 0;  // best-response minimum
};

struct GnepCheck {
  bool ok = false;
  bool feasible = false;  // joint distance to the product map within h + tol
  std::vector<PlayerCertificate> players;
};

/// Equilibrium check: the candidate is feasible for the product map and no
/// player can improve by more than tol.
GnepCheck check_gnep_equilibrium(const Game& game, const Vec& xhat, double h,
                                 double tol);

/// Positive semidefiniteness of each player's own-block cost Hessian
/// (eigenvalue probe >= -1e-9).
properties::PropertyVerdict check_own_block_convexity(const Game& game);

ProblemInstance make_qvi_instance(std::string name, std::string description,
                                  ConvexRegion C, SetValuedMap K,
                                  std::shared_ptr<const PolytopeOperator> op,
                                  Numerics numerics);

ProblemInstance make_gnep_instance(std::string name, std::string description,
                                   std::shared_ptr<const Game> game,
                                   Numerics numerics);

enum class GnepRoute { a1, a2 };

std::string gnep_route_name(GnepRoute r);
GnepRoute gnep_route_from_name(const std::string& name);

struct GnepSolveReport {
  solver::SolveReport report;
  std::vector<GnepCheck> validations;  // one per reported solution
  bool all_validated = true;
};

/// Reduce the game to its aggregate quasi-equilibrium form and solve it
/// (route a1 via the selection-map case, a2 via the closed-graph case),
/// then re-validate every solution with the native equilibrium check.
GnepSolveReport gnep_solve(std::shared_ptr<const Game> game, GnepRoute route,
                           std::optional<double> rho, double h, double tol,
                           std::uint64_t seed);

}  // namespace qeq::reductions
