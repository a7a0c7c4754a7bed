#pragma once

#include "qeq/instance.hpp"

#include <string>
#include <vector>

namespace qeq {

/// Names of the builtin instances, in listing order.
std::vector<std::string> catalog_names();

/// Builds the named builtin instance. Throws UnknownName for anything else.
ProblemInstance catalog_get(const std::string& name);

/// One-line description used by the catalog listing.
std::string catalog_description(const std::string& name);

}  // namespace qeq
