#pragma once

#include <stdexcept>
#include <string>

namespace otg {

// Bad user input: malformed config, unknown instance, unparsable files.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Oracle table inconsistent with its declared hidden subgroup, or a witness
// whose table conditions fail.
struct OracleValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A witness that does not factor the state it was applied to. Carries the
// measured Bell-block fidelity as a diagnostic.
struct FactorizationError : std::runtime_error {
    double fidelity;
    explicit FactorizationError(const std::string& what, double fid = 0.0)
        : std::runtime_error(what), fidelity(fid) {}
};

// Density matrix failed a sanity check (negative eigenvalue, trace drift, ...).
struct InvalidStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace otg
