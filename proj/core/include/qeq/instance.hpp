#pragma once

#include "qeq/bifunction.hpp"
#include "qeq/region.hpp"
#include "qeq/set_map.hpp"

#include <memory>
#include <optional>
#include <string>

namespace qeq {

enum class ProblemKind { qep, qvi, gnep };

inline std::string kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::qep: return "qep";
    case ProblemKind::qvi: return "qvi";
    case ProblemKind::gnep: return "gnep";
  }
  throw Error("unreachable kind");
}

inline ProblemKind kind_from_name(const std::string& name) {
  if (name == "qep") return ProblemKind::qep;
  if (name == "qvi") return ProblemKind::qvi;
  if (name == "gnep") return ProblemKind::gnep;
  throw UnknownName("unknown problem kind: " + name);
}

struct Numerics {
  double grid_h = 0.01;
  double tol_feas = 1e-9;   // feasibility tolerance for candidate solutions
  double tol_sol = 1e-6;    // value tolerance for candidate solutions
  double probe_radius = 0;  // sampling window; 0 means 4 * rho at use sites
  std::optional<double> rho;          // preset restriction radius
  std::optional<std::uint64_t> seed;  // preset seed

  double probe_or(double rho_hint) const {
    return probe_radius > 0 ? probe_radius : 4.0 * rho_hint;
  }
};

/// A quasi-equilibrium problem on R^n: find x in K(x) with f(x, y) >= 0 for
/// every y in K(x). QVI and game instances carry the generating data and a
/// bifunction derived from it.
struct ProblemInstance {
  std::string name;
  std::string description;
  ProblemKind kind = ProblemKind::qep;
  Eigen::Index n = 0;
  ConvexRegion C;
  SetValuedMap K;
  Bifunction f;
  Numerics numerics;

  std::shared_ptr<const PolytopeOperator> op;  // kind == qvi
  std::shared_ptr<const Game> game;            // kind == gnep

  /// Same instance with K replaced by its restriction to the origin ball of
  /// radius rho.
  ProblemInstance restricted(double rho) const {
    ProblemInstance r = *this;
    r.K = restrict_to_ball(K, rho);
    return r;
  }
};

}  // namespace qeq
