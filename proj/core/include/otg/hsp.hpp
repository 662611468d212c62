#pragma once

#include <cstdint>
#include <vector>

#include "otg/group.hpp"
#include "otg/oracle.hpp"
#include "otg/state.hpp"

namespace otg {

struct RunOptions {
    uint32_t shots = 0;  // 0 = default budget of 8 * log2|G|
    uint64_t seed = 0;
    // Stop early once the kernel intersection has survived this many
    // consecutive samples unchanged.
    uint32_t stability_window = 12;
};

struct HspRunResult {
    std::vector<GroupElement> samples;
    Subgroup recovered;
    uint32_t oracle_calls = 0;
    uint32_t qubits_used = 0;
    std::vector<double> final_distribution; // indexed by group element index
};

/// Generalized Fourier transform of a group register: column g is the
/// character state |chi_g> = |G|^{-1/2} sum_h chi_g(h) |h>.
Matrix qft_matrix(const AbelianGroup& g);

/// O_f |g,s> = |g, s XOR f(g)> as a basis permutation over the G and S registers.
BasisPermutation oracle_permutation(const OracleSpec& oracle);
RegisterLayout oracle_layout(const OracleSpec& oracle); // {G: n, S: m}
QuantumState apply_oracle(const QuantumState& s, const OracleSpec& oracle);

/// |0,0> -> (Q_G ⊗ 1) -> O_f. The state every erasure strategy starts from.
QuantumState post_oracle_state(const OracleSpec& oracle);

/// Exact measurement distribution of the G register after the full circuit
/// (oracle, trace-out of S, second Fourier transform).
std::vector<double> hsp_distribution(const OracleSpec& oracle);

struct SolveLoopResult {
    std::vector<uint32_t> sample_indices;
    Subgroup recovered;
    uint32_t shots_used = 0;
};

/// Classical post-processing: samples characters from `dist` and intersects
/// their kernels. Entries below 1e-12 are treated as exact zeros so samples
/// always land in the distribution's support.
SolveLoopResult solve_loop(const AbelianGroup& g, const std::vector<double>& dist, const RunOptions& opt);

HspRunResult run_standard(const OracleSpec& oracle, const RunOptions& opt);

} // namespace otg
