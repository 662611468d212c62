#pragma once

namespace otg::cli {

/// Parses and executes one CLI invocation. Exit codes: 0 success (recovered
/// subgroup equals the declared one where applicable), 1 recovery mismatch,
/// 2 configuration error, 3 oracle validation failure, 4 factorization
/// failure, 5 internal error.
int dispatch(int argc, const char* const* argv);

} // namespace otg::cli
