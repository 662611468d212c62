#include "otg/landauer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace otg::landauer {

namespace {
constexpr double kLn2 = std::numbers::ln2;
}

double BathSpec::excited_population(uint32_t ell) const {
    const double e = std::exp(-beta_delta * static_cast<double>(ell));
    return e / (1.0 + e);
}

void BathSpec::validate() const {
    if (qubit_count < 1) throw std::invalid_argument("bath: need at least one qubit");
    if (!(beta_delta > 0.0)) throw std::invalid_argument("bath: beta*Delta must be positive");
}

LadderSpec LadderSpec::for_protocol(uint32_t bath_qubits) {
    const int span = static_cast<int>(bath_qubits) * (static_cast<int>(bath_qubits) + 1) / 2;
    return {-span, span};
}

Eigen::MatrixXd swap_unitary(uint32_t ell, const LadderSpec& ladder) {
    if (ell == 0) throw std::invalid_argument("swap_unitary: bath index starts at 1");
    if (ladder.level_count() <= static_cast<int>(ell))
        throw std::invalid_argument("swap_unitary: ladder truncation too narrow for a shift of " +
                                    std::to_string(ell));
    const int levels = ladder.level_count();
    const int dim = levels * 4;
    auto idx = [&](int k, int s, int b) { return ((k - ladder.level_min) * 2 + s) * 2 + b; };

    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = ladder.level_min; k <= ladder.level_max; ++k) {
        // Aligned states are untouched.
        u(idx(k, 0, 0), idx(k, 0, 0)) = 1.0;
        u(idx(k, 1, 1), idx(k, 1, 1)) = 1.0;
        // |E_k,0_S,1_ell> <-> |E_{k+ell},1_S,0_ell>, identity where the
        // partner falls off the ladder.
        if (k + static_cast<int>(ell) <= ladder.level_max) {
            u(idx(k + ell, 1, 0), idx(k, 0, 1)) = 1.0;
            u(idx(k, 0, 1), idx(k + ell, 1, 0)) = 1.0;
        } else {
            u(idx(k, 0, 1), idx(k, 0, 1)) = 1.0;
        }
        if (k - static_cast<int>(ell) < ladder.level_min) u(idx(k, 1, 0), idx(k, 1, 0)) = 1.0;
    }
    return u;
}

Eigen::VectorXd joint_hamiltonian_diagonal(uint32_t ell, const LadderSpec& ladder) {
    const int levels = ladder.level_count();
    Eigen::VectorXd h(levels * 4);
    for (int k = ladder.level_min; k <= ladder.level_max; ++k)
        for (int s = 0; s < 2; ++s)
            for (int b = 0; b < 2; ++b)
                h(((k - ladder.level_min) * 2 + s) * 2 + b) = static_cast<double>(k) + b * static_cast<double>(ell);
    return h;
}

ErasureTrace run_quantum(const BathSpec& bath, double p_init, const LadderSpec& ladder) {
    bath.validate();
    if (p_init < 0.0 || p_init > 1.0) throw std::invalid_argument("run_quantum: p_init must be a probability");
    const uint32_t n = bath.qubit_count;
    const int levels = ladder.level_count();
    if (ladder.level_min > 0 || ladder.level_max < 0)
        throw std::invalid_argument("run_quantum: ladder must contain level 0");
    const uint64_t dim = static_cast<uint64_t>(levels) * 2u * (uint64_t{1} << n);
    if (dim > (uint64_t{1} << 21))
        throw std::invalid_argument("run_quantum: joint dimension too large; use run_classical");

    // Joint distribution over (storage level, system bit, bath bits); all
    // states stay diagonal in the energy basis.
    const uint64_t bath_dim = uint64_t{1} << n;
    auto idx = [&](int k, uint32_t s, uint64_t b) {
        return ((static_cast<uint64_t>(k - ladder.level_min) * 2 + s) << n) | b;
    };
    std::vector<double> p(dim, 0.0);
    for (uint32_t s = 0; s < 2; ++s) {
        const double ps = s ? p_init : 1.0 - p_init;
        if (ps == 0.0) continue;
        for (uint64_t b = 0; b < bath_dim; ++b) {
            double pb = ps;
            for (uint32_t ell = 1; ell <= n; ++ell) {
                const double q = bath.excited_population(ell);
                pb *= ((b >> (ell - 1)) & 1u) ? q : 1.0 - q;
            }
            p[idx(0, s, b)] = pb;
        }
    }

    auto storage_energy = [&]() {
        double e = 0.0;
        for (int k = ladder.level_min; k <= ladder.level_max; ++k)
            for (uint32_t s = 0; s < 2; ++s)
                for (uint64_t b = 0; b < bath_dim; ++b) e += static_cast<double>(k) * p[idx(k, s, b)];
        return e;
    };
    auto excited = [&]() {
        double e = 0.0;
        for (int k = ladder.level_min; k <= ladder.level_max; ++k)
            for (uint64_t b = 0; b < bath_dim; ++b) e += p[idx(k, 1, b)];
        return e;
    };

    ErasureTrace trace;
    double energy_before = storage_energy();
    const double energy_start = energy_before;
    for (uint32_t ell = 1; ell <= n; ++ell) {
        const uint64_t bath_bit = uint64_t{1} << (ell - 1);
        for (int k = ladder.level_min; k <= ladder.level_max; ++k) {
            for (uint64_t b = 0; b < bath_dim; ++b) {
                if (b & bath_bit) continue; // enumerate each pair once, from its (s=0,b=1) side
                const uint64_t from = idx(k, 0, b | bath_bit);
                if (k + static_cast<int>(ell) > ladder.level_max) {
                    if (p[from] > 1e-12)
                        throw std::invalid_argument("run_quantum: boundary population, widen the ladder");
                    continue;
                }
                const uint64_t to = idx(k + static_cast<int>(ell), 1, b);
                std::swap(p[from], p[to]);
            }
        }
        // States whose downward partner fell off the ladder were left alone;
        // they must carry no weight either.
        for (int k = ladder.level_min; k < ladder.level_min + static_cast<int>(ell) && k <= ladder.level_max; ++k)
            for (uint64_t b = 0; b < bath_dim; ++b)
                if (!(b & bath_bit) && p[idx(k, 1, b)] > 1e-12)
                    throw std::invalid_argument("run_quantum: boundary population, widen the ladder");
        const double energy_after = storage_energy();
        trace.steps.push_back({ell, excited(), energy_after - energy_before});
        energy_before = energy_after;
    }
    trace.residual_excited = excited();
    trace.total_storage_energy_delta = energy_before - energy_start;
    trace.total_work_kbt_ln2 = -trace.total_storage_energy_delta * bath.beta_delta / kLn2;
    return trace;
}

ErasureTrace run_quantum(const BathSpec& bath, double p_init) {
    return run_quantum(bath, p_init, LadderSpec::for_protocol(bath.qubit_count));
}

namespace {

ErasureTrace ladder_walk(const BathSpec& bath, double p_init, uint32_t first_step) {
    ErasureTrace trace;
    double p = p_init;
    for (uint32_t ell = first_step; ell <= bath.qubit_count; ++ell) {
        const double q = bath.excited_population(ell);
        const double delta = static_cast<double>(ell) * (q - p); // storage gains when q > p
        trace.steps.push_back({ell, q, delta});
        trace.total_storage_energy_delta += delta;
        p = q;
    }
    trace.residual_excited = p;
    trace.total_work_kbt_ln2 = -trace.total_storage_energy_delta * bath.beta_delta / kLn2;
    return trace;
}

} // namespace

ErasureTrace run_classical(const BathSpec& bath, double p_init) {
    bath.validate();
    if (p_init < 0.0 || p_init > 1.0) throw std::invalid_argument("run_classical: p_init must be a probability");
    return ladder_walk(bath, p_init, 1);
}

ErasureTrace run_truncated(const BathSpec& bath, double p_init) {
    bath.validate();
    if (p_init < 0.0 || p_init > 0.5)
        throw std::invalid_argument("run_truncated: p_init must lie in [0, 1/2]");
    // First bath qubit at least as cold as the system.
    uint32_t first = bath.qubit_count + 1;
    for (uint32_t ell = 1; ell <= bath.qubit_count; ++ell) {
        if (bath.excited_population(ell) <= p_init) {
            first = ell;
            break;
        }
    }
    ErasureTrace trace = ladder_walk(bath, p_init, first);
    if (trace.steps.empty()) trace.residual_excited = p_init;
    return trace;
}

ErasureTrace run_reverse(const BathSpec& bath, double p_start) {
    bath.validate();
    if (p_start < 0.0 || p_start > 1.0) throw std::invalid_argument("run_reverse: p_start must be a probability");
    ErasureTrace trace;
    double p = p_start;
    for (uint32_t ell = bath.qubit_count; ell >= 1; --ell) {
        const double q = bath.excited_population(ell);
        const double delta = static_cast<double>(ell) * (q - p);
        trace.steps.push_back({ell, q, delta});
        trace.total_storage_energy_delta += delta;
        p = q;
    }
    trace.residual_excited = p;
    trace.total_work_kbt_ln2 = -trace.total_storage_energy_delta * bath.beta_delta / kLn2;
    return trace;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

} // namespace otg::landauer
