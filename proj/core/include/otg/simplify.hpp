#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "otg/erasure.hpp"
#include "otg/group.hpp"
#include "otg/hsp.hpp"
#include "otg/ledger.hpp"
#include "otg/oracle.hpp"
#include "otg/witness.hpp"

namespace otg {

/**
 * Oracle rebuilt around an intermediate subgroup K: the algorithm runs over K
 * with 2*bell_pairs fewer variable qubits and still recovers H. The reduced
 * instance is a first-class HSP oracle over the abstract form of K; with
 * open circuit access it is run directly on the smaller registers, while in
 * black-box mode the original oracle is conjugated (U_G† before, U_G ⊗ U_S
 * after) and the bypassed qubits provably stay |0>.
 */
struct SimplifiedOracle {
    OracleSpec base;
    FactorizationWitness witness;
    Subgroup k_domain;
    std::optional<SubgroupBasis> k_basis;  // absent for the degenerate K = {0}
    std::optional<OracleSpec> reduced;     // instance over k_basis->abstract_group
    uint32_t qubit_savings = 0;            // 2 * bell_pairs
};

/// Recovers K from the witness (erroring out for witnesses that do not split
/// along a subgroup), builds the reduced table, and asserts exactly that the
/// 2*ell bypassed qubits of the conjugated oracle stay |0> on every input the
/// algorithm can feed it.
SimplifiedOracle build_simplified(const OracleSpec& oracle, const FactorizationWitness& w);
SimplifiedOracle build_simplified(const OracleSpec& oracle, const Subgroup& k);

/// The conjugated oracle (U_G ⊗ U_S) ∘ O_f ∘ (U_G† ⊗ 1) as one basis
/// permutation over all n+m qubits (main register in the transformed frame).
BasisPermutation simplified_oracle_permutation(const SimplifiedOracle& so);

/// Runs the reduced algorithm (respecting base.access) and reports samples,
/// recovered subgroup and distribution embedded back into the parent group.
HspRunResult run_simplified(const SimplifiedOracle& so, const RunOptions& opt);

enum class Strategy { brute, side_info, battery };

/// Full pipeline with on-the-go erasure spliced in after the oracle; the
/// ledger records what the chosen strategy paid or gained.
struct StrategyOutcome {
    HspRunResult result;
    WorkLedger ledger;
};
StrategyOutcome run_with_strategy(const OracleSpec& oracle, Strategy strategy,
                                  const std::optional<FactorizationWitness>& w, const RunOptions& opt);

struct StrategySummary {
    std::string name;
    uint32_t qubits_used = 0;
    uint32_t oracle_calls = 0;
    double ledger_total = 0.0;
    WorkLedger ledger;
    Subgroup recovered;
    std::vector<double> distribution;
};

/**
 * Runs brute-force, side-information and simplified pipelines on the same
 * instance. The simplified ledger books the brute-force erasure of its
 * smaller auxiliary register (m - ell) plus the reverse erasure of the ell
 * freed pure main qubits (-ell), which is what makes the two optimized
 * routes land on the same m - 2*ell total. Throws if the accounting or the
 * recovered subgroups disagree.
 */
struct StrategyComparison {
    StrategySummary brute, side_info, simplified;
};
StrategyComparison compare_strategies(const OracleSpec& oracle, const Subgroup& k, const RunOptions& opt);

} // namespace otg
