#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qeq::cmd {

/// Shared flags. `instance` is read as a file when one exists at that path,
/// otherwise as a catalog name. Seed precedence: --seed, then the QEQ_SEED
/// environment variable, then the instance preset, then 0. Empty `out`
/// writes the report to stdout.
struct CommonOptions {
  std::string instance;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct SolveOptions {
  CommonOptions common;
  std::optional<double> rho;     // overrides the instance preset
  std::optional<double> grid_h;  // overrides the instance preset
  std::string variant;  // case1 | case2 | lassonde (games: a1 | a2); empty = default
};

struct VerifyOptions {
  CommonOptions common;
  std::string property;
  long budget = 10000;
};

struct CoercivityOptions {
  CommonOptions common;
  std::optional<double> rho;
  bool search = false;
  double rho_max = 64;
  bool tz = false;  // also run the compact-localization candidate sweep
};

struct OracleOptions {
  CommonOptions common;
  std::optional<double> window_radius;
  std::optional<double> grid_h;
};

/// Exit codes: 0 pass or solutions found, 1 input/schema/size failure,
/// 2 no solutions, 3 refuted (hypotheses, property, or coercivity).
int cmd_catalog(const std::string& out);
int cmd_solve(const SolveOptions& options);
int cmd_verify(const VerifyOptions& options);
int cmd_coercivity(const CoercivityOptions& options);
int cmd_oracle(const OracleOptions& options);

}  // namespace qeq::cmd
