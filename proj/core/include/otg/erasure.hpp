#pragma once

#include <cstdint>
#include <optional>

#include "otg/group.hpp"
#include "otg/hsp.hpp"
#include "otg/ledger.hpp"
#include "otg/state.hpp"
#include "otg/witness.hpp"

namespace otg {

/// Largest number of Bell pairs extractable between main and auxiliary
/// register after the oracle: log2(|G|/|H|).
uint32_t max_bell_pairs(const AbelianGroup& g, const Subgroup& h);

struct FactorResult {
    /// State of the non-Bell block (registers G1, S1); absent when the
    /// witness consumes every qubit.
    std::optional<QuantumState> rest;
    uint32_t bell_count = 0;
    double bell_fidelity = 1.0;
};

/**
 * Applies U_G ⊗ U_S and checks that the state factors into a (G1,S1) block
 * times `bell_pairs` perfect Bell pairs on (G2,S2): Bell-block fidelity at
 * least 1-1e-9 and product reconstruction within 1e-9 trace distance.
 * Throws FactorizationError (with the measured fidelity) otherwise.
 */
FactorResult verify_factorization(const QuantumState& s, const FactorizationWitness& w);

/// Resets S to |0..0> by a fixed map, ledger += m. The reduced G state is
/// untouched by construction.
QuantumState erase_brute_force(const QuantumState& s, WorkLedger& ledger);

/**
 * On-the-go erasure using the witness: transform, rotate each Bell pair to
 * |00> (CNOT + Hadamard), reverse-erase the G-side qubits (ledger -1 each),
 * erase the remaining S1 qubits outright (ledger += m - ell), undo U_G.
 * Net ledger change m - 2*ell; the reduced G state is preserved.
 */
QuantumState erase_side_info(const QuantumState& s, const FactorizationWitness& w, WorkLedger& ledger);

/// Information-theoretic optimum H(S|G) in bits for erasing S given G.
double erasure_bound_bits(const QuantumState& s);

/**
 * Runs the extraction procedure of the full-information no-go: reads off the
 * coset tag of |0>, then enumerates U_G†|j>⊗|[0]> over the G1 basis. When
 * U_G factors the main register along a subgroup this returns exactly that
 * subgroup; otherwise a FactorizationError is raised.
 */
Subgroup subgroup_from_factorizer(const AbelianGroup& g, const BasisPermutation& u_g, uint32_t bell_pairs);

/**
 * Swaps every factored Bell pair into an information battery instead of
 * erasing it: (G2[i], S2[i]) against one depleted ("Bd") and one fueled
 * ("Bf") battery qubit, between U_G ⊗ U_S and its inverse. The battery
 * ledger gains one fueled-qubit credit (-1) per pair. Reduced G unchanged.
 */
QuantumState battery_swap(const QuantumState& s, const FactorizationWitness& w, WorkLedger& battery_ledger);

} // namespace otg
