#include "qeq/commands.hpp"

#include "qeq/catalog.hpp"
#include "qeq/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace qeq::cmd {
namespace {

constexpr long kBudget = 4000;  // falsifier budget for solve and coercivity

ProblemInstance load(const std::string& ref) {
  if (std::filesystem::exists(ref)) return io::load_instance_file(ref);
  return catalog_get(ref);
}

std::uint64_t resolve_seed(const CommonOptions& options,
                           const ProblemInstance& inst) {
  if (options.seed) return *options.seed;
  if (const char* env = std::getenv("QEQ_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && end && *end == '\0') return v;
  }
  if (inst.numerics.seed) return *inst.numerics.seed;
  return 0;
}

int emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::cerr << "cannot open output file " << out << "\n";
    return 1;
  }
  file << text;
  return file ? 0 : 1;
}

/// Probe region for the sampling checkers: the outer domain cut to the
/// instance probe window.
ConvexRegion probe_region(const ProblemInstance& inst) {
  const double rho_hint = inst.numerics.rho.value_or(1.0);
  return inst.C.intersect_origin_ball(inst.numerics.probe_or(rho_hint));
}

reductions::GnepRoute route_from_variant(const std::string& variant) {
  if (variant.empty() || variant == "a1" || variant == "case2")
    return reductions::GnepRoute::a1;
  if (variant == "a2" || variant == "lassonde") return reductions::GnepRoute::a2;
  throw UnknownName("unknown game route: " + variant);
}

}  // namespace

int cmd_catalog(const std::string& out) {
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& name : catalog_names())
    entries.emplace_back(name, catalog_description(name));
  return emit(out, io::catalog_listing_json(entries));
}

int cmd_solve(const SolveOptions& options) try {
  const ProblemInstance inst = load(options.common.instance);
  const std::uint64_t seed = resolve_seed(options.common, inst);
  const double h = options.grid_h.value_or(inst.numerics.grid_h);
  const double tol = inst.numerics.tol_sol;
  const std::optional<double> rho =
      options.rho ? options.rho : inst.numerics.rho;

  std::string text;
  bool refuted = false;
  bool empty = false;
  if (inst.kind == ProblemKind::gnep) {
    const auto route = route_from_variant(options.variant);
    const auto result = reductions::gnep_solve(inst.game, route, rho, h, tol, seed);
    text = io::solve_report_json(inst, seed, result.report, &result.validations);
    refuted = !result.report.hypotheses.all_pass();
    empty = result.report.solutions.empty();
  } else {
    const auto variant = options.variant.empty()
                             ? solver::TheoremVariant::case2
                             : solver::variant_from_name(options.variant);
    const auto report = solver::solve(inst, variant, rho, h, tol, seed);
    text = io::solve_report_json(inst, seed, report, nullptr);
    refuted = !report.hypotheses.all_pass();
    empty = report.solutions.empty();
  }
  if (const int rc = emit(options.common.out, text); rc != 0) return rc;
  if (refuted) return 3;
  return empty ? 2 : 0;
} catch (const std::exception& e) {
  std::cerr << "solve: " << e.what() << "\n";
  return 1;
}

int cmd_verify(const VerifyOptions& options) try {
  const ProblemInstance inst = load(options.common.instance);
  const std::uint64_t seed = resolve_seed(options.common, inst);
  const long budget = options.budget;
  const ConvexRegion R = probe_region(inst);
  const double h = inst.numerics.grid_h;
  const std::string& name = options.property;

  properties::PropertyVerdict verdict = properties::PropertyVerdict::passed(0);
  if (name == "quasiconvex-y") {
    verdict = properties::check_quasiconvex_y(inst.f, R, budget, seed);
  } else if (name == "semistrict-quasiconvex-y") {
    verdict = properties::check_semistrict_quasiconvex_y(inst.f, R, budget, seed);
  } else if (name == "pseudo-monotone") {
    verdict = properties::check_pseudo_monotone(inst.f, R, budget, seed);
  } else if (name == "quasi-monotone") {
    verdict = properties::check_quasi_monotone(inst.f, R, budget, seed);
  } else if (name == "properly-quasi-monotone") {
    verdict = properties::check_properly_quasi_monotone(inst.f, R, 3, budget, seed);
  } else if (name == "upper-sign") {
    verdict = properties::check_upper_sign(inst.f, R, budget, seed);
  } else if (name == "lsc") {
    verdict = properties::falsify_lsc(inst.K, R, h, 10.0, seed);
  } else if (name == "closed-graph") {
    verdict = properties::falsify_closed_graph(inst.K, R, h, seed);
  } else if (name == "usc-x") {
    verdict = properties::falsify_usc_first_arg(inst.f, R, h, budget, seed);
  } else if (name == "operator-properly-quasi-monotone") {
    if (!inst.op) {
      std::cerr << "verify: " << name << " needs an operator instance\n";
      return 1;
    }
    verdict = reductions::check_operator_properly_quasi_monotone(*inst.op, R, 3,
                                                                 budget, seed);
  } else if (name == "operator-upper-sign") {
    if (!inst.op) {
      std::cerr << "verify: " << name << " needs an operator instance\n";
      return 1;
    }
    verdict = reductions::check_operator_upper_sign_continuous(*inst.op, R,
                                                               budget, 9, seed);
  } else {
    std::cerr << "verify: unknown property " << name << "\n";
    return 1;
  }

  const std::string text =
      io::verify_report_json(inst, seed, name, budget, verdict);
  if (const int rc = emit(options.common.out, text); rc != 0) return rc;
  return verdict.pass ? 0 : 3;
} catch (const std::exception& e) {
  std::cerr << "verify: " << e.what() << "\n";
  return 1;
}

int cmd_coercivity(const CoercivityOptions& options) try {
  const ProblemInstance inst = load(options.common.instance);
  const std::uint64_t seed = resolve_seed(options.common, inst);

  std::optional<coercivity::UccReport> ucc;
  std::optional<coercivity::RadiusSearch> search;
  std::optional<coercivity::TzReport> tz;
  bool pass = false;

  const std::optional<double> rho =
      options.rho ? options.rho : inst.numerics.rho;
  if (options.search || !rho) {
    search = coercivity::find_coercive_radius(inst, options.rho_max, kBudget, seed);
    pass = search->rho.has_value();
  } else {
    switch (inst.kind) {
      case ProblemKind::qep:
        ucc = coercivity::ucc_verify(inst, *rho, kBudget, seed);
        break;
      case ProblemKind::qvi:
        ucc = coercivity::qvi_ucc_verify(inst, *rho, kBudget, seed);
        break;
      case ProblemKind::gnep:
        ucc = coercivity::gnep_coercivity_verify(*inst.game, inst.numerics, *rho,
                                                 kBudget, seed);
        break;
    }
    pass = ucc->pass;
  }
  if (options.tz) {
    tz = coercivity::tz_coercivity_check(
        inst, coercivity::default_tz_candidates(inst.C, 20), kBudget, seed);
  }

  const std::string text = io::coercivity_report_json(
      inst, seed, ucc ? &*ucc : nullptr, search ? &*search : nullptr,
      tz ? &*tz : nullptr);
  if (const int rc = emit(options.common.out, text); rc != 0) return rc;
  return pass ? 0 : 3;
} catch (const std::exception& e) {
  std::cerr << "coercivity: " << e.what() << "\n";
  return 1;
}

int cmd_oracle(const OracleOptions& options) try {
  const ProblemInstance inst = load(options.common.instance);
  const std::uint64_t seed = resolve_seed(options.common, inst);
  const double h = options.grid_h.value_or(inst.numerics.grid_h);
  const double tol = inst.numerics.tol_sol;
  double window = 0;
  if (options.window_radius) {
    window = *options.window_radius;
  } else if (inst.numerics.rho) {
    window = 2.0 * *inst.numerics.rho;
  } else {
    window = inst.numerics.probe_or(1.0);
  }

  const ConvexRegion region = inst.C.intersect_origin_ball(window);
  const std::vector<Vec> solutions = solver::oracle_enumerate(inst, region, h, tol);
  const std::string text =
      io::oracle_report_json(inst, seed, h, tol, window, solutions);
  return emit(options.common.out, text);
} catch (const std::exception& e) {
  std::cerr << "oracle: " << e.what() << "\n";
  return 1;
}

}  // namespace qeq::cmd
