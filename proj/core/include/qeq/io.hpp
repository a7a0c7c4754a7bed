#pragma once

#include "qeq/coercivity.hpp"
#include "qeq/instance.hpp"
#include "qeq/properties.hpp"
#include "qeq/reductions.hpp"
#include "qeq/solver.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qeq::io {

/// Parse an instance document. The schema is strict: unknown fields are
/// rejected with SchemaError. Box bounds accept the strings "inf"/"-inf".
ProblemInstance parse_instance(const std::string& json_text);

ProblemInstance load_instance_file(const std::string& path);

/// Canonical serialization (sorted keys, two-space indent, trailing newline).
/// parse(serialize(inst)) reproduces the instance, and serialize is the
/// identity on canonical documents.
std::string serialize_instance(const ProblemInstance& inst);

/// FNV-1a hash of the canonical serialization, as a hex string.
std::string instance_hash(const ProblemInstance& inst);

/// Report documents: a fixed envelope (schema_version, tool_version, command,
/// instance, input_hash, seed, numerics) around a command-specific payload.
/// No timestamps anywhere, so identical inputs give identical bytes.
std::string coercivity_report_json(const ProblemInstance& inst, std::uint64_t seed,
                                   const coercivity::UccReport* ucc,
                                   const coercivity::RadiusSearch* search,
                                   const coercivity::TzReport* tz);

std::string solve_report_json(const ProblemInstance& inst, std::uint64_t seed,
                              const solver::SolveReport& report,
                              const std::vector<reductions::GnepCheck>* validations);

std::string verify_report_json(const ProblemInstance& inst, std::uint64_t seed,
                               const std::string& property, long budget,
                               const properties::PropertyVerdict& verdict);

std::string oracle_report_json(const ProblemInstance& inst, std::uint64_t seed,
                               double h, double tol, double window_radius,
                               const std::vector<Vec>& solutions);

std::string catalog_listing_json(
    const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace qeq::io
