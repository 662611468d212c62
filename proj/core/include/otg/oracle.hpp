#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otg/group.hpp"

namespace otg {

enum class OracleAccess { open_circuit, black_box };

/**
 * Indicator function f : G -> S of a hidden-subgroup instance, as an explicit
 * table over group indices with values in [0, 2^m). The declared hidden
 * subgroup is ground truth for verification; validate() checks the defining
 * property f(g) = f(g') <=> g and g' share an H-coset.
 */
struct OracleSpec {
    AbelianGroup group;
    uint32_t codomain_bits = 1;
    std::vector<uint32_t> table;
    Subgroup hidden;

    // Optional structure annotations.
    std::optional<uint32_t> period;
    std::vector<GroupElement> k_generators; // known intermediate subgroup, if any
    OracleAccess access = OracleAccess::open_circuit;

    uint32_t domain_qubits() const { return group.qubits(); }
    uint32_t codomain_size() const { return 1u << codomain_bits; }
    void validate() const;
};

/// f(x) = fbar(x mod r) on Z/N with values in Z/M; fbar injective on one
/// period. Hidden subgroup <r>.
OracleSpec make_periodic_oracle(uint32_t domain_size, uint32_t codomain_size, const std::vector<uint32_t>& fbar,
                                uint32_t period);

/// Discrete-logarithm instance on G = Z/N x Z/N with f(i,j) = i - a*j mod N
/// stored as the exponent of the codomain generator. Hidden subgroup <(a,1)>.
OracleSpec make_dlog_oracle(uint32_t cyclic_order, uint32_t a);

/// Canonical indicator that maps g to the rank of its H-coset; minimal
/// power-of-two codomain. Handy for entropy scans over arbitrary subgroups.
OracleSpec make_coset_oracle(const Subgroup& hidden);

OracleSpec parse_oracle(const std::string& text);
std::string serialize_oracle(const OracleSpec& oracle);

} // namespace otg
