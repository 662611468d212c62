#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "otg/layout.hpp"

namespace otg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense density matrices only; 2^12 is the desk-scale ceiling.
inline constexpr uint32_t kMaxQubits = 12;

/// Permutation of computational-basis indices on some qubit subset.
struct BasisPermutation {
    std::vector<uint32_t> map; // image of each basis index; size is a power of two

    explicit BasisPermutation(std::vector<uint32_t> image);
    static BasisPermutation identity(uint32_t size);

    uint32_t size() const { return static_cast<uint32_t>(map.size()); }
    uint32_t qubits() const;
    BasisPermutation inverse() const;
    /// Composition: first this, then `next`.
    BasisPermutation then(const BasisPermutation& next) const;
    Matrix to_matrix() const;
    bool is_identity() const;
    /// True iff the permutation just relabels qubit wires (a bit permutation).
    bool is_qubit_relabeling() const;
};

/// Exact density matrix over a labeled register layout. Treated as an
/// immutable value: operations return new states.
struct QuantumState {
    RegisterLayout layout;
    Matrix rho;

    static QuantumState zero(RegisterLayout layout);
    static QuantumState from_pure(RegisterLayout layout, const Vector& amplitudes);
    static QuantumState from_density(RegisterLayout layout, Matrix density);
    static QuantumState maximally_mixed(RegisterLayout layout);

    Eigen::Index dim() const { return rho.rows(); }
    uint32_t qubit_count() const { return layout.total_qubits(); }
    double purity() const { return rho.squaredNorm(); }
    /// Trace, Hermiticity and eigenvalue-floor checks; throws InvalidStateError.
    void validate(double tol = 1e-10) const;
};

QuantumState tensor(const QuantumState& a, const QuantumState& b);

QuantumState apply_unitary(const QuantumState& s, const Matrix& u, const std::vector<uint32_t>& targets);
QuantumState apply_unitary(const QuantumState& s, const Matrix& u, std::string_view reg);
QuantumState apply_permutation(const QuantumState& s, const BasisPermutation& p, const std::vector<uint32_t>& targets);
QuantumState apply_permutation(const QuantumState& s, const BasisPermutation& p, std::string_view reg);

QuantumState partial_trace(const QuantumState& s, const std::vector<std::string>& keep);

enum class ResetMode { to_zero, to_mixed };
/// Replaces the given qubits by |0..0> or the maximally mixed state,
/// discarding their correlations; the rest of the state is untouched.
QuantumState reset_qubits(const QuantumState& s, const std::vector<uint32_t>& qubits, ResetMode mode);

/// -Tr(rho log2 rho); eigenvalues in [-1e-9, 0) are clamped to zero, anything
/// below that raises InvalidStateError.
double entropy_bits(const QuantumState& s);
/// H(of|given) = H(of,given) - H(given), in bits.
double conditional_entropy_bits(const QuantumState& s, const std::vector<std::string>& of,
                                const std::vector<std::string>& given);
/// Computational-basis probabilities of one register (diagonal of its reduced state).
std::vector<double> measure_distribution(const QuantumState& s, std::string_view reg);
/// Seeded i.i.d. sampling; identical (probs, seed) gives identical output.
std::vector<uint32_t> sample_distribution(const std::vector<double>& probs, uint64_t seed, size_t count);

double trace_distance(const QuantumState& a, const QuantumState& b);
double fidelity(const QuantumState& a, const QuantumState& b);

/// Debug dump of the matrix with its register header. Not a stable format.
std::string to_text(const QuantumState& s);

Matrix hadamard_gate();
Matrix cnot_gate(); // control = more significant qubit of the pair
Matrix swap_gate();
Matrix identity_gate(Eigen::Index dim);

namespace bits {
// Qubit q of an n-qubit index sits at bit position n-1-q.
uint32_t target_mask(uint32_t n, const std::vector<uint32_t>& targets);
std::vector<uint32_t> scatter_table(uint32_t n, const std::vector<uint32_t>& targets);
std::vector<uint32_t> rest_indices(uint32_t n, uint32_t mask);
uint32_t extract(uint32_t index, uint32_t n, const std::vector<uint32_t>& targets);
} // namespace bits

} // namespace otg
