#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qeq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr const char* kToolVersion = "0.1.0";

/// Shared numeric knobs. Membership and strict-inequality margins are
/// deliberately asymmetric (premises tight, violations loose) so that checks
/// do not flap on constraint boundaries.
namespace tol {
inline constexpr double contains = 1e-12;       // constraint residual for membership
inline constexpr double strict_margin = 1e-12;  // margin for strict norm comparisons
inline constexpr double premise = 1e-12;        // tight tolerance on check premises
inline constexpr double violation = 1e-9;       // loose threshold to flag a violation
inline constexpr double projection = 1e-9;      // alternating-projection residual target
}  // namespace tol

inline constexpr int kProjectionCap = 10000;       // alternating-projection cycle cap
inline constexpr std::int64_t kGridGuard = 10000000;  // candidate-lattice size guard

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct EmptyRegion : Error {
  using Error::Error;
};

struct NonConvergence : Error {
  using Error::Error;
};

/// Thrown when a candidate lattice would exceed kGridGuard points.
struct ExplosionGuard : Error {
  using Error::Error;
};

struct InclusionViolated : Error {
  InclusionViolated(const std::string& msg, Vec witness_point)
      : Error(msg), witness(std::move(witness_point)) {}
  Vec witness;
};

struct EmptyConstraint : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct UnknownName : Error {
  using Error::Error;
};

using Rng = std::mt19937_64;

inline bool lex_less(const Vec& a, const Vec& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

inline bool approx_equal(const Vec& a, const Vec& b, double eps) {
  if (a.size() != b.size()) return false;
  return (a - b).lpNorm<Eigen::Infinity>() <= eps;
}

inline double clamp(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

/// FNV-1a over a byte string; used to stamp reports with an input hash.
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace qeq
