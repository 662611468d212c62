#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otg/group.hpp"
#include "otg/state.hpp"

namespace otg {

struct OracleSpec;

/**
 * Local basis permutations (U_G, U_S) that compress the post-oracle
 * entanglement into `bell_pairs` Bell pairs. After U_G the main register
 * splits into G1 (top main_qubits - bell_pairs qubits) and G2 (bottom
 * bell_pairs qubits); likewise S1/S2 for the auxiliary register after U_S.
 * The pairs form between G2[i] and S2[i].
 */
struct FactorizationWitness {
    uint32_t main_qubits;
    uint32_t aux_qubits;
    uint32_t bell_pairs;
    BasisPermutation u_g;
    BasisPermutation u_s;

    FactorizationWitness(uint32_t n, uint32_t m, uint32_t ell, BasisPermutation ug, BasisPermutation us);
    static FactorizationWitness identity(uint32_t n, uint32_t m, uint32_t ell);
};

/**
 * Builds the witness promised by an intermediate subgroup H <= K <= G:
 * U_G maps |g> to |rank of k_g in K> ⊗ |coset of g>, and U_S reorders the
 * codomain so the bottom bell_pairs qubits of S carry the same coset tag in
 * the same binary encoding. bell_pairs = log2(|G|/|K|). Prefers the
 * table-aligned labeling (so instances whose encoding already matches K come
 * out as identity transformations).
 */
FactorizationWitness witness_from_subgroup(const OracleSpec& oracle, const Subgroup& k);

/// Checks the two table conditions a factoring witness must satisfy:
///   (1) f(g) = f(g') implies equal G2 tags,
///   (2) the S1 part of f depends only on the G1 part, and the S2 part equals
///       the G2 part bit for bit.
/// Throws OracleValidationError naming the violated condition.
void validate_witness(const OracleSpec& oracle, const FactorizationWitness& w);

enum class TransformComplexity { qubit_swaps, general_permutation };

struct WitnessComplexity {
    TransformComplexity u_g;
    TransformComplexity u_s;
    TransformComplexity overall;
    std::string bound_label; // "O(log|K|)" or "O(n*2^n)"
};

/// Qubit-wire relabelings cost O(log|K|) swap gates; anything else is a
/// general basis permutation at O(n*2^n) CNOTs.
WitnessComplexity classify_witness(const FactorizationWitness& w);

FactorizationWitness parse_witness(const std::string& text);
std::string serialize_witness(const FactorizationWitness& w);

} // namespace otg
