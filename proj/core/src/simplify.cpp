#include "otg/simplify.hpp"

#include <algorithm>
#include <cmath>

#include "otg/errors.hpp"

namespace otg {

namespace {

HspRunResult map_result_to_parent(const HspRunResult& abs_result, const SubgroupBasis& kb, uint32_t qubits_used) {
    const AbelianGroup& g = kb.sub.parent();
    std::vector<double> dist(g.order(), 0.0);
    for (uint32_t a = 0; a < kb.abstract_group.order(); ++a)
        dist[kb.abstract_to_parent[a]] = abs_result.final_distribution[a];
    std::vector<GroupElement> samples;
    for (const auto& s : abs_result.samples)
        samples.push_back(GroupElement::from_index(g, kb.abstract_to_parent[s.index()]));
    std::vector<uint32_t> members;
    for (uint32_t a : abs_result.recovered.element_indices()) members.push_back(kb.abstract_to_parent[a]);
    return HspRunResult{std::move(samples), Subgroup::from_indices(g, std::move(members)), abs_result.oracle_calls,
                        qubits_used, std::move(dist)};
}

HspRunResult degenerate_trivial_result(const OracleSpec& oracle, uint32_t qubits_used) {
    std::vector<double> dist(oracle.group.order(), 0.0);
    dist[0] = 1.0;
    return HspRunResult{{}, Subgroup::trivial(oracle.group), 0, qubits_used, std::move(dist)};
}

/// Q_K expressed in the rank basis used by U_G's K sub-register.
Matrix qft_rank_basis(const SubgroupBasis& kb) {
    const uint32_t n = kb.abstract_group.order();
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    Matrix q(n, n);
    for (uint32_t col = 0; col < n; ++col)
        for (uint32_t row = 0; row < n; ++row)
            q(row, col) = norm * kb.abstract_group.character(kb.rank_to_abstract[col], kb.rank_to_abstract[row]);
    return q;
}

} // namespace

BasisPermutation simplified_oracle_permutation(const SimplifiedOracle& so) {
    const uint32_t n = so.witness.main_qubits;
    const uint32_t m = so.witness.aux_qubits;
    const BasisPermutation ug_inv = so.witness.u_g.inverse();
    std::vector<uint32_t> image(size_t{1} << (n + m));
    for (uint32_t gt = 0; gt < (1u << n); ++gt) {
        const uint32_t g = ug_inv.map[gt];
        for (uint32_t s = 0; s < (1u << m); ++s)
            image[(gt << m) | s] = (gt << m) | so.witness.u_s.map[s ^ so.base.table[g]];
    }
    return BasisPermutation(std::move(image));
}

SimplifiedOracle build_simplified(const OracleSpec& oracle, const FactorizationWitness& w) {
    validate_witness(oracle, w);
    Subgroup k = subgroup_from_factorizer(oracle.group, w.u_g, w.bell_pairs);
    if (!oracle.hidden.is_subgroup_of(k))
        throw OracleValidationError("build_simplified: recovered K does not contain the hidden subgroup");

    SimplifiedOracle so{oracle, w, k, std::nullopt, std::nullopt, 2 * w.bell_pairs};
    const uint32_t ell = w.bell_pairs;
    const uint32_t m = w.aux_qubits;

    if (k.order() > 1) {
        SubgroupBasis kb = subgroup_basis(k);
        std::vector<uint32_t> table(k.order());
        for (uint32_t a = 0; a < k.order(); ++a) table[a] = w.u_s.map[oracle.table[kb.abstract_to_parent[a]]] >> ell;
        std::vector<uint32_t> hidden_abs;
        for (uint32_t h : oracle.hidden.element_indices())
            hidden_abs.push_back(kb.rank_to_abstract[k.rank_of_index(h)]);
        OracleSpec reduced{kb.abstract_group, std::max(1u, m - ell), std::move(table),
                           Subgroup::from_indices(kb.abstract_group, std::move(hidden_abs))};
        reduced.validate();
        so.k_basis = std::move(kb);
        so.reduced = std::move(reduced);
    }

    // The conjugated oracle must keep the bypassed 2*ell qubits at |0> for
    // every input reachable in the reduced algorithm (aux starts at |0>).
    // Exact integer check, no tolerance.
    const BasisPermutation composed = simplified_oracle_permutation(so);
    const uint32_t s2_mask = (ell == 0) ? 0u : ((1u << ell) - 1u);
    for (uint32_t rank = 0; rank < k.order(); ++rank) {
        const uint32_t in = (rank << ell) << m;
        const uint32_t out = composed.map[in];
        if ((out >> m) != (rank << ell))
            throw OracleValidationError("build_simplified: conjugated oracle moved the main register");
        if ((out & s2_mask) != 0)
            throw OracleValidationError("build_simplified: bypassed S2 qubits left |0>");
        if (so.reduced && ((out >> ell) & ((1u << (m - ell)) - 1u)) != so.reduced->table[
                so.k_basis->rank_to_abstract[rank]])
            throw OracleValidationError("build_simplified: reduced table mismatch");
    }
    return so;
}

SimplifiedOracle build_simplified(const OracleSpec& oracle, const Subgroup& k) {
    return build_simplified(oracle, witness_from_subgroup(oracle, k));
}

HspRunResult run_simplified(const SimplifiedOracle& so, const RunOptions& opt) {
    const uint32_t n = so.witness.main_qubits;
    const uint32_t m = so.witness.aux_qubits;
    const uint32_t ell = so.witness.bell_pairs;
    const bool black_box = so.base.access == OracleAccess::black_box;
    const uint32_t open_qubits = (n - ell) + (m - ell);
    const uint32_t qubits_used = black_box ? n + m : open_qubits;

    if (so.k_domain.order() == 1) return degenerate_trivial_result(so.base, qubits_used);
    const SubgroupBasis& kb = *so.k_basis;

    if (!black_box) {
        HspRunResult abs_result = run_standard(*so.reduced, opt);
        return map_result_to_parent(abs_result, kb, qubits_used);
    }

    // Black box: full-width circuit around the conjugated oracle; the main
    // register carries K in U_G's rank encoding.
    std::vector<std::pair<std::string, uint32_t>> spec;
    spec.emplace_back("K", n - ell);
    if (ell > 0) spec.emplace_back("G2", ell);
    if (m - ell > 0) spec.emplace_back("S1", m - ell);
    if (ell > 0) spec.emplace_back("S2", ell);
    QuantumState state = QuantumState::zero(RegisterLayout::contiguous(spec));

    const Matrix qk = qft_rank_basis(kb);
    state = apply_unitary(state, qk, "K");
    std::vector<uint32_t> all_qubits(state.qubit_count());
    for (uint32_t q = 0; q < state.qubit_count(); ++q) all_qubits[q] = q;
    state = apply_permutation(state, simplified_oracle_permutation(so), all_qubits);
    QuantumState k_only = partial_trace(state, {"K"});
    k_only = apply_unitary(k_only, qk, "K");
    const std::vector<double> dist_rank = measure_distribution(k_only, "K");

    std::vector<double> dist_abs(kb.abstract_group.order(), 0.0);
    for (uint32_t r = 0; r < dist_rank.size(); ++r) dist_abs[kb.rank_to_abstract[r]] = dist_rank[r];
    SolveLoopResult loop = solve_loop(kb.abstract_group, dist_abs, opt);

    std::vector<GroupElement> samples;
    for (uint32_t idx : loop.sample_indices) samples.push_back(GroupElement::from_index(kb.abstract_group, idx));
    HspRunResult abs_result{std::move(samples), std::move(loop.recovered), loop.shots_used, qubits_used,
                            std::move(dist_abs)};
    return map_result_to_parent(abs_result, kb, qubits_used);
}

StrategyOutcome run_with_strategy(const OracleSpec& oracle, Strategy strategy,
                                  const std::optional<FactorizationWitness>& w, const RunOptions& opt) {
    const uint32_t n = oracle.domain_qubits();
    const uint32_t m = oracle.codomain_bits;
    if ((strategy == Strategy::side_info || strategy == Strategy::battery) && !w)
        throw std::invalid_argument("run_with_strategy: this strategy needs a factorization witness");

    QuantumState state = [&]() {
        if (strategy != Strategy::battery) return post_oracle_state(oracle);
        const uint32_t ell = w->bell_pairs;
        RegisterLayout layout = RegisterLayout::contiguous(
            {{"G", n}, {"S", m}, {"Bd", std::max(1u, ell)}, {"Bf", std::max(1u, ell)}});
        QuantumState s = QuantumState::zero(layout);
        s = reset_qubits(s, layout.reg("Bd").qubits, ResetMode::to_mixed);
        s = apply_unitary(s, qft_matrix(oracle.group), "G");
        return apply_oracle(s, oracle);
    }();

    WorkLedger ledger;
    uint32_t qubits_used = n + m;
    switch (strategy) {
        case Strategy::brute:
            state = erase_brute_force(state, ledger);
            break;
        case Strategy::side_info:
            state = erase_side_info(state, *w, ledger);
            break;
        case Strategy::battery:
            state = battery_swap(state, *w, ledger);
            qubits_used += 2 * w->bell_pairs;
            break;
    }

    QuantumState g_only = partial_trace(state, {"G"});
    g_only = apply_unitary(g_only, qft_matrix(oracle.group), "G");
    const std::vector<double> dist = measure_distribution(g_only, "G");

    SolveLoopResult loop = solve_loop(oracle.group, dist, opt);
    std::vector<GroupElement> samples;
    for (uint32_t idx : loop.sample_indices) samples.push_back(GroupElement::from_index(oracle.group, idx));
    return StrategyOutcome{HspRunResult{std::move(samples), std::move(loop.recovered), loop.shots_used, qubits_used,
                                        dist},
                           std::move(ledger)};
}

StrategyComparison compare_strategies(const OracleSpec& oracle, const Subgroup& k, const RunOptions& opt) {
    const uint32_t m = oracle.codomain_bits;
    const FactorizationWitness w = witness_from_subgroup(oracle, k);
    const uint32_t ell = w.bell_pairs;

    auto summarize = [](std::string name, const StrategyOutcome& o) {
        return StrategySummary{std::move(name),       o.result.qubits_used,
                               o.result.oracle_calls, o.ledger.total(),
                               o.ledger,              o.result.recovered,
                               o.result.final_distribution};
    };

    SimplifiedOracle so = build_simplified(oracle, w);
    WorkLedger simp_ledger;
    if (m > ell) simp_ledger.add("brute-force erasure of simplified aux", static_cast<double>(m - ell));
    if (ell > 0) simp_ledger.add("reverse erasure of freed pure main qubits", -static_cast<double>(ell));

    StrategyComparison cmp{
        summarize("brute", run_with_strategy(oracle, Strategy::brute, std::nullopt, opt)),
        summarize("side-info", run_with_strategy(oracle, Strategy::side_info, w, opt)),
        summarize("simplified", StrategyOutcome{run_simplified(so, opt), std::move(simp_ledger)}),
    };

    const double expected = static_cast<double>(m) - 2.0 * ell;
    if (std::abs(cmp.side_info.ledger_total - expected) > 1e-12 ||
        std::abs(cmp.simplified.ledger_total - expected) > 1e-12)
        throw std::logic_error("compare_strategies: optimized ledgers do not equal m - 2*ell");
    if (!(cmp.brute.recovered == cmp.side_info.recovered) || !(cmp.brute.recovered == cmp.simplified.recovered))
        throw std::logic_error("compare_strategies: strategies recovered different subgroups");
    return cmp;
}

} // namespace otg
