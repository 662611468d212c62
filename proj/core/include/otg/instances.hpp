#pragma once

#include <string>
#include <vector>

#include "otg/oracle.hpp"

namespace otg {

/// Stable names of the bundled instances: "pfa8", "pfa16", "dlog8-a3", "z2z4".
const std::vector<std::string>& builtin_instance_names();
bool is_builtin_instance(const std::string& name);
/// Throws ConfigError for unknown names. Each instance annotates a natural
/// intermediate subgroup K, used when the caller does not pass one.
OracleSpec builtin_instance(const std::string& name);

} // namespace otg
