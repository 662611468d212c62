#include "otg/erasure.hpp"

#include <algorithm>
#include <cmath>

#include "otg/errors.hpp"

namespace otg {

uint32_t max_bell_pairs(const AbelianGroup& g, const Subgroup& h) {
    if (!(h.parent() == g)) throw std::invalid_argument("max_bell_pairs: subgroup of a different group");
    return g.qubits() - log2_exact(h.order());
}

namespace {

void check_registers(const QuantumState& s, const FactorizationWitness& w) {
    if (!s.layout.has("G") || !s.layout.has("S"))
        throw std::invalid_argument("witness ops: layout must have G and S registers");
    if (s.layout.reg("G").qubits.size() != w.main_qubits || s.layout.reg("S").qubits.size() != w.aux_qubits)
        throw std::invalid_argument("witness ops: register widths do not match the witness");
}

QuantumState apply_witness(const QuantumState& s, const FactorizationWitness& w, bool inverse) {
    QuantumState t = apply_permutation(s, inverse ? w.u_g.inverse() : w.u_g, "G");
    return apply_permutation(t, inverse ? w.u_s.inverse() : w.u_s, "S");
}

/// Same qubits, new names: G -> G1|G2 and S -> S1|S2 (empty blocks omitted).
RegisterLayout split_layout(const RegisterLayout& base, const FactorizationWitness& w) {
    const uint32_t ell = w.bell_pairs;
    std::vector<RegisterLayout::Register> regs;
    for (const auto& r : base.registers) {
        if (r.name == "G") {
            if (w.main_qubits > ell)
                regs.push_back({"G1", {r.qubits.begin(), r.qubits.end() - ell}});
            if (ell > 0) regs.push_back({"G2", {r.qubits.end() - ell, r.qubits.end()}});
        } else if (r.name == "S") {
            if (w.aux_qubits > ell)
                regs.push_back({"S1", {r.qubits.begin(), r.qubits.end() - ell}});
            if (ell > 0) regs.push_back({"S2", {r.qubits.end() - ell, r.qubits.end()}});
        } else {
            regs.push_back(r);
        }
    }
    return RegisterLayout(std::move(regs));
}

/// The target of the factorization: ell Bell pairs laid out as [G2, S2].
QuantumState bell_block_state(uint32_t ell) {
    RegisterLayout layout = RegisterLayout::contiguous({{"G2", ell}, {"S2", ell}});
    Vector amp = Vector::Zero(Eigen::Index(1) << (2 * ell));
    const double a = std::pow(2.0, -0.5 * ell);
    for (uint32_t c = 0; c < (1u << ell); ++c) amp[(c << ell) | c] = a;
    return QuantumState::from_pure(std::move(layout), amp);
}

double bell_block_fidelity(const QuantumState& split_state, uint32_t ell) {
    QuantumState marginal = partial_trace(split_state, {"G2", "S2"});
    Vector amp = Vector::Zero(marginal.dim());
    const double a = std::pow(2.0, -0.5 * ell);
    for (uint32_t c = 0; c < (1u << ell); ++c) amp[(c << ell) | c] = a;
    return (amp.adjoint() * marginal.rho * amp)(0, 0).real();
}

/// Re-orders registers (by name) into the given sequence, renumbering qubits.
QuantumState reorder_registers(const QuantumState& s, const std::vector<std::string>& order) {
    std::vector<RegisterLayout::Register> regs;
    uint32_t next = 0;
    for (const auto& name : order) {
        const auto& r = s.layout.reg(name);
        RegisterLayout::Register nr{name, {}};
        for (size_t i = 0; i < r.qubits.size(); ++i) nr.qubits.push_back(next++);
        regs.push_back(std::move(nr));
    }
    RegisterLayout target(std::move(regs));
    if (target.total_qubits() != s.qubit_count())
        throw std::invalid_argument("reorder_registers: order must cover every register");

    const uint32_t n = s.qubit_count();
    const uint32_t d = static_cast<uint32_t>(s.dim());
    std::vector<uint32_t> src(d, 0);
    for (const auto& name : order) {
        const auto& src_q = s.layout.reg(name).qubits;
        const auto& dst_q = target.reg(name).qubits;
        for (uint32_t i = 0; i < d; ++i) {
            const uint32_t v = bits::extract(i, n, dst_q);
            uint32_t part = 0;
            for (size_t b = 0; b < src_q.size(); ++b)
                part |= ((v >> (src_q.size() - 1 - b)) & 1u) << (n - 1 - src_q[b]);
            src[i] |= part;
        }
    }
    Matrix out(d, d);
    for (uint32_t j = 0; j < d; ++j)
        for (uint32_t i = 0; i < d; ++i) out(i, j) = s.rho(src[i], src[j]);
    return {std::move(target), std::move(out)};
}

} // namespace

FactorResult verify_factorization(const QuantumState& s, const FactorizationWitness& w) {
    check_registers(s, w);
    const uint32_t ell = w.bell_pairs;
    QuantumState t = apply_witness(s, w, false);
    QuantumState split{split_layout(t.layout, w), std::move(t.rho)};

    FactorResult result;
    result.bell_count = ell;

    std::vector<std::string> rest_names;
    if (split.layout.has("G1")) rest_names.push_back("G1");
    if (split.layout.has("S1")) rest_names.push_back("S1");

    if (ell == 0) {
        result.rest = partial_trace(split, rest_names);
        return result;
    }

    result.bell_fidelity = bell_block_fidelity(split, ell);
    if (result.bell_fidelity < 1.0 - 1e-9)
        throw FactorizationError("factorization failed: Bell-block fidelity " +
                                     std::to_string(result.bell_fidelity),
                                 result.bell_fidelity);

    QuantumState bell = bell_block_state(ell);
    QuantumState reconstructed = [&]() {
        if (rest_names.empty()) return bell;
        QuantumState rest = partial_trace(split, rest_names);
        return tensor(rest, bell);
    }();
    std::vector<std::string> layout_order;
    for (const auto& r : split.layout.registers) layout_order.push_back(r.name);
    reconstructed = reorder_registers(reconstructed, layout_order);

    // Cheap certificate first: TD <= (1/2) sqrt(dim) * Frobenius norm.
    const double fro = (reconstructed.rho - split.rho).norm();
    double td_bound = 0.5 * std::sqrt(static_cast<double>(split.dim())) * fro;
    if (td_bound > 1e-9) {
        const double td = trace_distance(reconstructed, split);
        if (td > 1e-9)
            throw FactorizationError("factorization failed: product reconstruction off by trace distance " +
                                         std::to_string(td),
                                     result.bell_fidelity);
    }

    if (!rest_names.empty()) result.rest = partial_trace(split, rest_names);
    return result;
}

QuantumState erase_brute_force(const QuantumState& s, WorkLedger& ledger) {
    const auto& sq = s.layout.reg("S").qubits;
    QuantumState out = reset_qubits(s, sq, ResetMode::to_zero);
    ledger.add("brute-force erasure of S", static_cast<double>(sq.size()));
    return out;
}

QuantumState erase_side_info(const QuantumState& s, const FactorizationWitness& w, WorkLedger& ledger) {
    check_registers(s, w);
    const uint32_t m = w.aux_qubits, ell = w.bell_pairs;

    QuantumState t = apply_witness(s, w, false);
    if (ell > 0) {
        const double fid = bell_block_fidelity({split_layout(t.layout, w), t.rho}, ell);
        if (fid < 1.0 - 1e-9)
            throw FactorizationError("erase_side_info: witness does not factor this state (fidelity " +
                                         std::to_string(fid) + ")",
                                     fid);
    }

    const std::vector<uint32_t> gq = t.layout.reg("G").qubits;
    const std::vector<uint32_t> sq = t.layout.reg("S").qubits;
    const std::vector<uint32_t> g2(gq.end() - ell, gq.end());
    const std::vector<uint32_t> s2(sq.end() - ell, sq.end());

    // Rotate each Bell pair to |00>, then trade the pure G-side qubit back to
    // the bath (reverse erasure, one unit gained per pair).
    for (uint32_t i = 0; i < ell; ++i) {
        t = apply_unitary(t, cnot_gate(), std::vector<uint32_t>{g2[i], s2[i]});
        t = apply_unitary(t, hadamard_gate(), std::vector<uint32_t>{g2[i]});
        ledger.add("side-information erasure of Bell pair " + std::to_string(i), -1.0);
    }
    if (ell > 0) {
        t = reset_qubits(t, s2, ResetMode::to_zero);
        t = reset_qubits(t, g2, ResetMode::to_mixed);
    }
    if (m > ell) {
        std::vector<uint32_t> s1(sq.begin(), sq.end() - ell);
        t = reset_qubits(t, s1, ResetMode::to_zero);
        ledger.add("standard erasure of S1", static_cast<double>(m - ell));
    }
    return apply_permutation(t, w.u_g.inverse(), "G");
}

double erasure_bound_bits(const QuantumState& s) { return conditional_entropy_bits(s, {"S"}, {"G"}); }

Subgroup subgroup_from_factorizer(const AbelianGroup& g, const BasisPermutation& u_g, uint32_t bell_pairs) {
    if (u_g.size() != g.order()) throw std::invalid_argument("subgroup_from_factorizer: permutation size mismatch");
    if (bell_pairs > g.qubits()) throw std::invalid_argument("subgroup_from_factorizer: too many Bell pairs");
    const uint32_t ell = bell_pairs;
    const uint32_t low_mask = (1u << ell) - 1u;
    const uint32_t tag0 = u_g.map[0] & low_mask;
    const BasisPermutation inv = u_g.inverse();
    std::vector<uint32_t> members;
    for (uint32_t j = 0; j < (g.order() >> ell); ++j) members.push_back(inv.map[(j << ell) | tag0]);
    try {
        return Subgroup::from_indices(g, std::move(members));
    } catch (const std::invalid_argument&) {
        throw FactorizationError("subgroup_from_factorizer: the factorizer image is not a subgroup");
    }
}

QuantumState battery_swap(const QuantumState& s, const FactorizationWitness& w, WorkLedger& battery_ledger) {
    check_registers(s, w);
    const uint32_t ell = w.bell_pairs;
    if (!s.layout.has("Bd") || !s.layout.has("Bf"))
        throw std::invalid_argument("battery_swap: layout must have Bd (depleted) and Bf (fueled) registers");
    const auto& bd = s.layout.reg("Bd").qubits;
    const auto& bf = s.layout.reg("Bf").qubits;
    if (bd.size() < ell || bf.size() < ell)
        throw std::invalid_argument("battery_swap: battery too small for " + std::to_string(ell) + " Bell pairs");

    QuantumState t = apply_witness(s, w, false);
    if (ell > 0) {
        const double fid = bell_block_fidelity({split_layout(t.layout, w), t.rho}, ell);
        if (fid < 1.0 - 1e-9)
            throw FactorizationError("battery_swap: witness does not factor this state (fidelity " +
                                         std::to_string(fid) + ")",
                                     fid);
    }

    const std::vector<uint32_t> gq = t.layout.reg("G").qubits;
    const std::vector<uint32_t> sq = t.layout.reg("S").qubits;
    const std::vector<uint32_t> bdq = bd, bfq = bf;
    const BasisPermutation swap_pair({0, 2, 1, 3});
    for (uint32_t i = 0; i < ell; ++i) {
        t = apply_permutation(t, swap_pair, std::vector<uint32_t>{gq[gq.size() - ell + i], bdq[i]});
        t = apply_permutation(t, swap_pair, std::vector<uint32_t>{sq[sq.size() - ell + i], bfq[i]});
        battery_ledger.add("banked Bell pair " + std::to_string(i) + " as one fueled qubit", -1.0);
    }
    return apply_witness(t, w, true);
}

} // namespace otg
