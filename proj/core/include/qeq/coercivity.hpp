#pragma once

#include "qeq/instance.hpp"
#include "qeq/properties.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qeq::coercivity {

/// Condition 1: every probed w in C has K(w) meeting the open ball B_rho.
struct Cond1Report {
  bool pass = true;
  std::optional<Vec> witness;  // w with K(w) missing the open ball
  long probed = 0;
};

/// Condition 2 at one fixed point z: outside some radius rho_z < rho, every
/// grid point x of K(z) within the closed rho-ball admits a strictly more
/// inward y in K(z) that the descent predicate accepts.
struct Cond2Entry {
  Vec z;
  bool vacuous = false;  // K(z) within the half-radius ball, nothing to scan
  std::optional<double> rho_z;
  bool pass = true;
  long scanned = 0;
  long witness_count = 0;
  long witness_free_count = 0;
  std::vector<Vec> witness_free;               // x with no accepted y (capped)
  std::vector<std::pair<Vec, Vec>> witnesses;  // accepted (x, y) pairs (capped)
};

inline constexpr std::size_t kEntryCap = 32;  // stored pairs per entry

struct UccReport {
  double rho = 0;
  double grid_h = 0;
  double probe_radius = 0;
  Cond1Report cond1;
  std::vector<Cond2Entry> cond2;
  bool pass = false;
};

/// Descent acceptance for the scan: given (x, y) with |y| < |x|, decide
/// whether y witnesses the required decrease.
using DescentPredicate = std::function<bool(const Vec& x, const Vec& y)>;

/// Grid verification of the uniform coerciveness condition for (C, K) with
/// an arbitrary descent predicate. Witness candidates are tried by
/// increasing norm (ties lexicographic), so the most inward witness is the
/// one reported.
UccReport ucc_verify_map(const ConvexRegion& C, const SetValuedMap& K,
                         const DescentPredicate& accepts, double rho, double h,
                         double probe_radius, long budget, std::uint64_t seed);

/// Full (uncapped) condition-2 scan at one fixed point.
Cond2Entry scan_fixed_point(const SetValuedMap& K, const DescentPredicate& accepts,
                            const Vec& z, double rho, double h, double probe_radius);

/// Uniform coerciveness of an instance: descent means f(x, y) <= tol.
UccReport ucc_verify(const ProblemInstance& inst, double rho, long budget,
                     std::uint64_t seed);

/// Variational form: descent means <x*, y - x> <= tol for every x* in T(x).
UccReport qvi_ucc_verify(const ProblemInstance& inst, double rho, long budget,
                         std::uint64_t seed);

/// Game form: descent means every player's cost improves,
/// theta_nu(y_nu, x_rest) <= theta_nu(x) + tol.
UccReport gnep_coercivity_verify(const Game& game, const Numerics& numerics,
                                 double rho, long budget, std::uint64_t seed);

struct RadiusSearch {
  std::optional<double> rho;
  std::vector<double> tried;
  std::optional<UccReport> report;  // report of the passing radius
};

/// Doubling sweep 1, 2, 4, ... <= rho_max; first radius whose verification
/// passes.
RadiusSearch find_coercive_radius(const ProblemInstance& inst, double rho_max,
                                  long budget, std::uint64_t seed);

/// One compact localization candidate (Z, W): values over W must stay in Z,
/// K must meet Z everywhere on Z, and points of Z outside W must admit
/// strict descent into K(x) within Z.
struct TzCandidate {
  ConvexRegion Z;
  ConvexRegion W;
};

struct TzCandidateReport {
  bool pass = false;
  std::string failed_condition;  // values_escape | intersection_empty | no_descent
  std::optional<Vec> witness_x;
  std::optional<Vec> witness_y;
};

struct TzReport {
  std::vector<TzCandidateReport> candidates;
  bool pass = false;  // some candidate passed every sampled condition
  std::string note;   // closedness of K(.) cap Z is not machine-checked
};

/// Default doubling boxes Z_k = C cap [-2^k, 2^k]^n with W_k the half-size
/// box, for k = 0..count-1.
std::vector<TzCandidate> default_tz_candidates(const ConvexRegion& C, int count);

TzReport tz_coercivity_check(const ProblemInstance& inst,
                             const std::vector<TzCandidate>& candidates,
                             long budget, std::uint64_t seed);

}  // namespace qeq::coercivity
