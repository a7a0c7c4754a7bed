// Command-line front end: catalog listing, solve, property verification,
// coercivity checks, and the brute-force oracle. All reports are JSON on
// stdout (or --out) and deterministic for a fixed instance and seed.

#include "qeq/commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  CLI::App app{"grid solver and checker suite for quasi-equilibrium problems"};
  app.require_subcommand(1);

  std::string out;

  auto* catalog = app.add_subcommand("catalog", "list builtin instances");
  catalog->add_option("--out", out, "write the listing to a file");

  qeq::cmd::SolveOptions solve;
  auto* solve_cmd =
      app.add_subcommand("solve", "restricted solve with lifting verdicts");
  solve_cmd->add_option("instance", solve.common.instance,
                        "instance file or catalog name")
      ->required();
  solve_cmd->add_option("--rho", solve.rho, "restriction radius");
  solve_cmd->add_option("--grid-h", solve.grid_h, "grid step");
  solve_cmd->add_option("--variant", solve.variant,
                        "existence route: case1 | case2 | lassonde (games: a1 | a2)");
  solve_cmd->add_option("--seed", solve.common.seed, "sampling seed");
  solve_cmd->add_option("--out", solve.common.out, "write the report to a file");

  qeq::cmd::VerifyOptions verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "run one property checker or falsifier");
  verify_cmd->add_option("instance", verify.common.instance,
                         "instance file or catalog name")
      ->required();
  verify_cmd->add_option("--property", verify.property,
                         "quasiconvex-y | semistrict-quasiconvex-y | "
                         "pseudo-monotone | quasi-monotone | "
                         "properly-quasi-monotone | upper-sign | lsc | "
                         "closed-graph | usc-x | "
                         "operator-properly-quasi-monotone | operator-upper-sign")
      ->required();
  verify_cmd->add_option("--budget", verify.budget, "sample budget");
  verify_cmd->add_option("--seed", verify.common.seed, "sampling seed");
  verify_cmd->add_option("--out", verify.common.out, "write the report to a file");

  qeq::cmd::CoercivityOptions coercivity;
  auto* coercivity_cmd = app.add_subcommand(
      "coercivity", "verify the uniform coerciveness condition");
  coercivity_cmd
      ->add_option("instance", coercivity.common.instance,
                   "instance file or catalog name")
      ->required();
  coercivity_cmd->add_option("--rho", coercivity.rho, "radius to verify");
  coercivity_cmd->add_flag("--search", coercivity.search,
                           "doubling search for a passing radius");
  coercivity_cmd->add_option("--rho-max", coercivity.rho_max,
                             "largest radius the search tries");
  coercivity_cmd->add_flag("--tz", coercivity.tz,
                           "also sweep compact localization candidates");
  coercivity_cmd->add_option("--seed", coercivity.common.seed, "sampling seed");
  coercivity_cmd->add_option("--out", coercivity.common.out,
                             "write the report to a file");

  qeq::cmd::OracleOptions oracle;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "brute-force grid enumeration");
  oracle_cmd->add_option("instance", oracle.common.instance,
                         "instance file or catalog name")
      ->required();
  oracle_cmd->add_option("--window-radius", oracle.window_radius,
                         "origin ball the enumeration stays in");
  oracle_cmd->add_option("--grid-h", oracle.grid_h, "grid step");
  oracle_cmd->add_option("--seed", oracle.common.seed,
                         "seed recorded in the report envelope");
  oracle_cmd->add_option("--out", oracle.common.out, "write the report to a file");

  CLI11_PARSE(app, argc, argv);

  if (catalog->parsed()) return qeq::cmd::cmd_catalog(out);
  if (solve_cmd->parsed()) return qeq::cmd::cmd_solve(solve);
  if (verify_cmd->parsed()) return qeq::cmd::cmd_verify(verify);
  if (coercivity_cmd->parsed()) return qeq::cmd::cmd_coercivity(coercivity);
  if (oracle_cmd->parsed()) return qeq::cmd::cmd_oracle(oracle);
  return 1;
}
