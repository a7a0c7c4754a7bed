#pragma once

#include "qeq/coercivity.hpp"
#include "qeq/instance.hpp"
#include "qeq/properties.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qeq::solver {

struct FixedPoint {
  Vec grid;     // lattice anchor with dist(x, K(x)) <= h + tol
  Vec refined;  // one projection step, kept when it is grid-consistent
};

struct FixedPointSet {
  std::vector<FixedPoint> points;
  double h = 0;
  double tol = 1e-9;
};

/// Grid fixed points of K over a bounded region: lattice points x with
/// dist(x, K(x)) <= h + 1e-9, each polished by one projection step.
/// Deterministic lexicographic order.
FixedPointSet fixed_point_set(const SetValuedMap& K, const ConvexRegion& region,
                              double h);

struct ValueCertificate {
  Vec argbest;   // best y found (grid plus descent polish)
  double value;  // f(x0, argbest), or f(argbest, x0) for the dual form
};

struct SolutionCheck {
  bool ok = false;
  bool feasible = false;
  ValueCertificate certificate;
};

/// Direct check: x0 within feas_tol of K(x0) and min over y in
/// K(x0) cap window of f(x0, y) >= -tol. The grid minimum is refined by 20
/// projected descent steps using the analytic y-gradient. feas_tol < 0 means
/// use tol.
SolutionCheck check_qep_solution(const ProblemInstance& inst, const Vec& x0,
                                 const ConvexRegion& window, double tol,
                                 double feas_tol = -1.0);

/// Dual form: max over y in K(x0) cap window of f(y, x0) <= tol, refined by
/// projected ascent in the first slot.
SolutionCheck check_mqep_solution(const ProblemInstance& inst, const Vec& x0,
                                  const ConvexRegion& window, double tol,
                                  double feas_tol = -1.0);

struct RestrictedSolve {
  std::vector<Vec> solutions;  // grid anchors passing the direct check
  std::size_t fixed_point_count = 0;
};

/// Fixed points of the ball-restricted map over C within the rho-ball,
/// filtered by the direct check at grid-consistent feasibility (h + tol) and
/// window 2 rho.
RestrictedSolve solve_restricted(const ProblemInstance& inst, double rho, double h,
                                 double tol);

enum class LiftStatus { certified_by_theorem, verified_on_ball, refuted };

std::string lift_status_name(LiftStatus s);

struct NamedVerdict {
  std::string name;
  properties::PropertyVerdict verdict;
};

struct HypothesisReport {
  std::string variant;
  std::vector<NamedVerdict> checks;
  std::vector<std::string> notes;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.verdict.pass) return false;
    return true;
  }
  const properties::PropertyVerdict* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c.verdict;
    return nullptr;
  }
};

struct LiftReport {
  Vec x0;
  LiftStatus status = LiftStatus::verified_on_ball;
  double checked_radius = 0;      // radius of the violation sweep window
  std::optional<Vec> refutation;  // y in K(x0) with f(x0, y) < -tol
  HypothesisReport conditions;    // lifting hypotheses
};

/// Decide whether a restricted solution solves the unrestricted problem:
/// sweep f(x0, .) over K(x0) within the ball of radius verify_factor * rho,
/// and grade the outcome by the lifting hypotheses (convex values, vanishing
/// diagonal on fixed points, implication condition via semi-strict
/// quasi-convexity with a direct sampled fallback). ucc_passed feeds the
/// certified grade.
LiftReport lift_solution(const ProblemInstance& inst, const Vec& x0, double rho,
                         double verify_factor, double tol, long budget,
                         std::uint64_t seed, bool ucc_passed);

enum class TheoremVariant { case1, case2, lassonde };

std::string variant_name(TheoremVariant v);
TheoremVariant variant_from_name(const std::string& name);

/// Falsifier battery for the selected existence route on the rho-ball data.
/// case1: pool monotonicity, upper sign, lower semi-continuity of the
/// positive-value selection map. case2: diagonal sign on fixed points,
/// lower semi-continuity and convexity of the negative-value selection map.
/// lassonde: closed graph, upper semi-continuity in x, quasi-convexity in y,
/// openness of the negative-infimum region, vanishing diagonal.
HypothesisReport verify_theorem_hypotheses(const ProblemInstance& inst,
                                           TheoremVariant variant, double rho,
                                           long budget, std::uint64_t seed);

struct SolveReport {
  std::string mode;  // case1 | case2 | lassonde | oracle
  std::optional<double> rho;
  std::vector<double> rho_tried;
  bool radius_found = false;
  bool empty_fixed_point_set = false;
  std::optional<coercivity::UccReport> ucc;
  HypothesisReport hypotheses;
  std::vector<Vec> solutions;
  std::vector<LiftReport> lifts;
  std::vector<std::string> notes;
  double grid_h = 0;
  double tol = 0;
  std::uint64_t seed = 0;
};

/// Full pipeline: coercive radius (given or doubling search), hypothesis
/// battery, restricted solve, per-solution lift on the 4 rho window. An
/// empty solution list with failed hypotheses is a legal outcome.
SolveReport solve(const ProblemInstance& inst, TheoremVariant variant,
                  std::optional<double> rho, double h, double tol,
                  std::uint64_t seed);

/// Independent brute force: grid points x of region with
/// dist(x, K(x)) <= h + tol and f(x, y) >= -tol for every grid y of
/// K(x) cap region. No polish, no shortcuts.
std::vector<Vec> oracle_enumerate(const ProblemInstance& inst,
                                  const ConvexRegion& region, double h, double tol);

/// Dual-form brute force: f(y, x) <= tol over grid y.
std::vector<Vec> oracle_enumerate_dual(const ProblemInstance& inst,
                                       const ConvexRegion& region, double h,
                                       double tol);

}  // namespace qeq::solver
