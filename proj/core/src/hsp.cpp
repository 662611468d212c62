#include "otg/hsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "otg/errors.hpp"

namespace otg {

Matrix qft_matrix(const AbelianGroup& g) {
    const uint32_t n = g.order();
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    Matrix q(n, n);
    for (uint32_t col = 0; col < n; ++col)
        for (uint32_t row = 0; row < n; ++row) q(row, col) = norm * g.character(col, row);
    return q;
}

RegisterLayout oracle_layout(const OracleSpec& oracle) {
    return RegisterLayout::contiguous({{"G", oracle.domain_qubits()}, {"S", oracle.codomain_bits}});
}

BasisPermutation oracle_permutation(const OracleSpec& oracle) {
    const uint32_t m = oracle.codomain_bits;
    std::vector<uint32_t> image(static_cast<size_t>(oracle.group.order()) << m);
    for (uint32_t g = 0; g < oracle.group.order(); ++g)
        for (uint32_t s = 0; s < oracle.codomain_size(); ++s)
            image[(g << m) | s] = (g << m) | (s ^ oracle.table[g]);
    return BasisPermutation(std::move(image));
}

QuantumState apply_oracle(const QuantumState& s, const OracleSpec& oracle) {
    if (!s.layout.has("G") || !s.layout.has("S"))
        throw std::invalid_argument("apply_oracle: layout must have G and S registers");
    if (s.layout.reg("G").qubits.size() != oracle.domain_qubits() ||
        s.layout.reg("S").qubits.size() != oracle.codomain_bits)
        throw std::invalid_argument("apply_oracle: register sizes do not match the oracle");
    std::vector<uint32_t> targets = s.layout.reg("G").qubits;
    const auto& sq = s.layout.reg("S").qubits;
    targets.insert(targets.end(), sq.begin(), sq.end());
    return apply_permutation(s, oracle_permutation(oracle), targets);
}

QuantumState post_oracle_state(const OracleSpec& oracle) {
    QuantumState s = QuantumState::zero(oracle_layout(oracle));
    s = apply_unitary(s, qft_matrix(oracle.group), "G");
    return apply_oracle(s, oracle);
}

std::vector<double> hsp_distribution(const OracleSpec& oracle) {
    QuantumState s = post_oracle_state(oracle);
    QuantumState g_only = partial_trace(s, {"G"});
    g_only = apply_unitary(g_only, qft_matrix(oracle.group), "G");
    return measure_distribution(g_only, "G");
}

SolveLoopResult solve_loop(const AbelianGroup& g, const std::vector<double>& dist, const RunOptions& opt) {
    if (dist.size() != g.order()) throw std::invalid_argument("solve_loop: distribution size mismatch");
    const uint32_t budget = opt.shots ? opt.shots : 8 * g.qubits();

    // Clip numerical dust so sampling stays inside the true support.
    std::vector<double> cleaned(dist.size(), 0.0);
    double sum = 0.0;
    for (size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] > 1e-12) {
            cleaned[i] = dist[i];
            sum += dist[i];
        }
    }
    for (double& p : cleaned) p /= sum;

    const std::vector<uint32_t> draws = sample_distribution(cleaned, opt.seed, budget);

    std::vector<bool> kernel(g.order(), true); // current intersection of character kernels
    uint32_t live = g.order();
    uint32_t stable = 0;
    SolveLoopResult result{{}, Subgroup::full(g), 0};
    for (uint32_t shot = 0; shot < budget; ++shot) {
        const uint32_t sample = draws[shot];
        result.sample_indices.push_back(sample);
        ++result.shots_used;
        uint32_t removed = 0;
        for (uint32_t h = 0; h < g.order(); ++h) {
            if (kernel[h] && g.character_exponent(h, sample) != 0) {
                kernel[h] = false;
                ++removed;
            }
        }
        live -= removed;
        stable = removed == 0 ? stable + 1 : 0;
        if (stable >= opt.stability_window) break;
    }

    std::vector<uint32_t> members;
    members.reserve(live);
    for (uint32_t h = 0; h < g.order(); ++h)
        if (kernel[h]) members.push_back(h);
    result.recovered = Subgroup::from_indices(g, std::move(members));
    return result;
}

HspRunResult run_standard(const OracleSpec& oracle, const RunOptions& opt) {
    // The circuit state is shot-independent; only the measurement draw varies.
    // Compute the exact distribution once and sample per shot.
    const std::vector<double> dist = hsp_distribution(oracle);
    SolveLoopResult loop = solve_loop(oracle.group, dist, opt);

    std::vector<GroupElement> samples;
    samples.reserve(loop.sample_indices.size());
    for (uint32_t idx : loop.sample_indices) samples.push_back(GroupElement::from_index(oracle.group, idx));
    return HspRunResult{std::move(samples), std::move(loop.recovered), loop.shots_used,
                        oracle.domain_qubits() + oracle.codomain_bits, dist};
}

} // namespace otg
