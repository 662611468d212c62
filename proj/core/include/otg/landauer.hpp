#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace otg::landauer {

/// Heat bath of `qubit_count` two-level systems at inverse temperature beta,
/// qubit ell carrying gap ell*Delta. Only the dimensionless product
/// beta*Delta enters.
struct BathSpec {
    uint32_t qubit_count = 1;
    double beta_delta = 1.0;

    /// Thermal excited population of bath qubit ell: e^{-x}/(1+e^{-x}) with
    /// x = ell*beta*Delta.
    double excited_population(uint32_t ell) const;
    void validate() const;
};

/// Truncated work-storage ladder: levels level_min..level_max in units of
/// Delta, level 0 the start level.
struct LadderSpec {
    int level_min = 0;
    int level_max = 0;

    /// [-sum(ell), +sum(ell)]: wide enough that no population ever reaches a
    /// boundary during the N-step protocol.
    static LadderSpec for_protocol(uint32_t bath_qubits);
    int level_count() const { return level_max - level_min + 1; }
};

struct StepRecord {
    uint32_t bath_index;         // ell
    double p_excited;            // system excited population after the step
    double storage_energy_delta; // expected storage change this step, units of Delta
};

struct ErasureTrace {
    std::vector<StepRecord> steps;
    double residual_excited = 0.0;
    double total_storage_energy_delta = 0.0; // units of Delta
    double total_work_kbt_ln2 = 0.0;         // work paid = -delta_E, in k_B T ln2
};

/// The step-ell swap: exchanges |E_{k+ell},1_S,0_ell> with |E_k,0_S,1_ell>,
/// identity on aligned pairs and at the truncation boundary. Basis index
/// ((k - level_min)*2 + s)*2 + b. Real 0/1 matrix; commutes with the joint
/// Hamiltonian exactly.
Eigen::MatrixXd swap_unitary(uint32_t ell, const LadderSpec& ladder);
/// Diagonal of the joint Hamiltonian (storage + bath qubit ell), units of Delta.
Eigen::VectorXd joint_hamiltonian_diagonal(uint32_t ell, const LadderSpec& ladder);

/**
 * Exact evolution of the full joint distribution (storage x system x all bath
 * qubits). Every state in the protocol is diagonal in the energy basis --
 * the initial state is diagonal and the swaps permute basis states -- so the
 * joint density matrix is stored as its diagonal. Asserts the boundary
 * population stays below 1e-12. Practical up to ~8 bath qubits.
 */
ErasureTrace run_quantum(const BathSpec& bath, double p_init, const LadderSpec& ladder);
ErasureTrace run_quantum(const BathSpec& bath, double p_init);

/// Population recursion p_ell = q_ell with step work ell*(p_{ell-1} - q_ell)
/// in Delta units; scales to millions of bath qubits.
ErasureTrace run_classical(const BathSpec& bath, double p_init);

/// Partial-mixedness shortcut: skip every bath qubit hotter than the system
/// (start at the first ell with q_ell <= p_init). Converges to the binary
/// entropy H(p_init) in k_B T ln2 as the grid refines.
ErasureTrace run_truncated(const BathSpec& bath, double p_init);

/// Swap ladder run backwards on a pure |0> system: extracts work (up to
/// -1 k_B T ln2 in the quasi-static limit) while the system thermalizes
/// toward fully mixed. `p_start` admits feeding in the residual of a forward
/// run, closing the erase/extract cycle.
ErasureTrace run_reverse(const BathSpec& bath, double p_start = 0.0);

/// Binary entropy in bits.
double binary_entropy(double p);

} // namespace otg::landauer
