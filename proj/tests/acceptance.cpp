// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "otg/erasure.hpp"
#include "otg/errors.hpp"
#include "otg/hsp.hpp"
#include "otg/instances.hpp"
#include "otg/landauer.hpp"
#include "otg/simplify.hpp"

using namespace otg;

namespace {

struct Check {
    size_t passed = 0;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (ok)
            ++passed;
        else
            failures.push_back(what);
    }
    void require_close(double got, double want, double tol, const std::string& what) {
        std::ostringstream msg;
        msg << what << " (got " << got << ", want " << want << ", tol " << tol << ")";
        require(std::abs(got - want) <= tol, msg.str());
    }
    void require_int(double got, long want, const std::string& what) {
        std::ostringstream msg;
        msg << what << " (got " << got << ", want exactly " << want << ")";
        require(std::llround(got) == want && std::abs(got - static_cast<double>(want)) < 1e-12, msg.str());
    }
};

std::vector<Subgroup> z88_sample() {
    AbelianGroup g({8, 8});
    auto span2 = [&](std::vector<uint32_t> a, std::vector<uint32_t> b) {
        return Subgroup::span(g, {GroupElement(g, std::move(a)), GroupElement(g, std::move(b))});
    };
    return {Subgroup::full(g),
            span2({1, 0}, {0, 2}),                        // order 32
            Subgroup::span(g, {GroupElement(g, {3, 1})}), // order 8
            Subgroup::span(g, {GroupElement(g, {4, 4})}), // order 2
            Subgroup::trivial(g)};
}

// --- criterion bodies ------------------------------------------------------

void criterion_1(Check& c) {
    std::vector<Subgroup> cases;
    for (const auto& g : {AbelianGroup({4}), AbelianGroup({8}), AbelianGroup({16}), AbelianGroup({2, 4})})
        for (auto& h : enumerate_subgroups(g)) cases.push_back(std::move(h));
    for (auto& h : z88_sample()) cases.push_back(std::move(h));

    for (const auto& h : cases) {
        OracleSpec oracle = make_coset_oracle(h);
        const double got = -erasure_bound_bits(post_oracle_state(oracle));
        const double want = std::log2(static_cast<double>(h.parent().order()) / h.order());
        c.require_close(got, want, 1e-9,
                        h.parent().to_string() + " H of order " + std::to_string(h.order()) + ": -H(S|G)");
    }
}

void criterion_2(Check& c) {
    for (const auto& name : builtin_instance_names()) {
        OracleSpec oracle = builtin_instance(name);
        const QuantumState state = post_oracle_state(oracle);
        const long m = oracle.codomain_bits;
        for (const auto& k : intermediate_subgroups(oracle.hidden)) {
            const long ell = oracle.group.qubits() - log2_exact(k.order());
            WorkLedger ledger;
            erase_side_info(state, witness_from_subgroup(oracle, k), ledger);
            c.require_int(ledger.total(), m - 2 * ell,
                          std::string(name) + " K of order " + std::to_string(k.order()) + ": side-info ledger");
        }
    }
    // The single-Bell-pair example.
    RegisterLayout layout = RegisterLayout::contiguous({{"G", 1}, {"S", 1}});
    Vector amp = Vector::Zero(4);
    amp[0] = amp[3] = 1.0 / std::sqrt(2.0);
    WorkLedger ledger;
    erase_side_info(QuantumState::from_pure(layout, amp), FactorizationWitness::identity(1, 1, 1), ledger);
    c.require_int(ledger.total(), -1, "Bell-pair erasure ledger");
}

void criterion_3(Check& c) {
    const uint32_t qubit_cap = 11; // battery pipelines live within the dense-engine budget
    for (const auto& name : builtin_instance_names()) {
        OracleSpec oracle = builtin_instance(name);
        const std::vector<double> baseline = hsp_distribution(oracle);
        auto check_dist = [&](const std::vector<double>& got, const std::string& what) {
            double worst = 0.0;
            for (size_t i = 0; i < baseline.size(); ++i) worst = std::max(worst, std::abs(got[i] - baseline[i]));
            c.require(worst <= 1e-9, std::string(name) + " " + what + " distribution drift " + std::to_string(worst));
        };

        check_dist(run_with_strategy(oracle, Strategy::brute, std::nullopt, {0, 1}).result.final_distribution,
                   "brute");
        uint32_t best_battery_ell = 0;
        std::optional<FactorizationWitness> battery_witness;
        for (const auto& k : intermediate_subgroups(oracle.hidden)) {
            FactorizationWitness w = witness_from_subgroup(oracle, k);
            check_dist(run_with_strategy(oracle, Strategy::side_info, w, {0, 1}).result.final_distribution,
                       "side-info(|K|=" + std::to_string(k.order()) + ")");
            const uint32_t width = oracle.group.qubits() + oracle.codomain_bits + 2 * w.bell_pairs;
            if (w.bell_pairs >= best_battery_ell && width <= qubit_cap) {
                best_battery_ell = w.bell_pairs;
                battery_witness = std::move(w);
            }
        }
        check_dist(run_with_strategy(oracle, Strategy::battery, battery_witness, {0, 1}).result.final_distribution,
                   "battery(l=" + std::to_string(best_battery_ell) + ")");
    }
}

void criterion_4(Check& c) {
    for (const auto& name : builtin_instance_names()) {
        OracleSpec oracle = builtin_instance(name);
        const uint32_t budget = 8 * oracle.group.qubits();
        for (uint64_t seed = 0; seed < 20; ++seed) {
            HspRunResult res = run_standard(oracle, {budget, seed});
            c.require(res.recovered == oracle.hidden && res.oracle_calls <= budget,
                      std::string(name) + " seed " + std::to_string(seed) + ": recovery within budget");
        }
    }
}

void criterion_5(Check& c) {
    for (const auto& name : builtin_instance_names()) {
        OracleSpec oracle = builtin_instance(name);
        const uint32_t n = oracle.group.qubits(), m = oracle.codomain_bits;
        for (const auto& k : intermediate_subgroups(oracle.hidden)) {
            const uint32_t ell = n - log2_exact(k.order());
            const std::string what = std::string(name) + " |K|=" + std::to_string(k.order());

            StrategyComparison cmp = compare_strategies(oracle, k, {0, 7});
            c.require(cmp.simplified.recovered == oracle.hidden, what + ": simplified recovers H");
            c.require(cmp.simplified.qubits_used == n + m - 2 * ell, what + ": open-circuit width is 2l smaller");
            c.require_int(cmp.simplified.ledger_total, std::llround(cmp.side_info.ledger_total),
                          what + ": simplified brute ledger equals side-info ledger");

            // Black-box route: bypassed qubits provably frozen at |0>.
            SimplifiedOracle so = build_simplified(oracle, k);
            const BasisPermutation composed = simplified_oracle_permutation(so);
            const uint32_t s2_mask = (1u << ell) - 1u;
            bool frozen = true;
            for (uint32_t rank = 0; rank < so.k_domain.order(); ++rank) {
                const uint32_t out = composed.map[(rank << ell) << m];
                frozen = frozen && (out >> m) == (rank << ell) && (out & s2_mask) == 0;
            }
            c.require(frozen, what + ": black-box bypassed qubits stay |0> exactly");
        }
    }
}

void criterion_6(Check& c) {
    for (const auto& name : builtin_instance_names()) {
        OracleSpec oracle = builtin_instance(name);
        FactorizationWitness w = witness_from_subgroup(oracle, oracle.hidden);
        c.require(subgroup_from_factorizer(oracle.group, w.u_g, w.bell_pairs) == oracle.hidden,
                  std::string(name) + ": factorizer at K = H reproduces H");
    }
}

void criterion_7(Check& c) {
    using namespace landauer;
    for (uint32_t n = 1; n <= 8; ++n) {
        for (double bd : {0.5, 1.0, 2.0}) {
            const double closed = std::exp(-bd * n) / (1.0 + std::exp(-bd * n));
            ErasureTrace q = run_quantum(BathSpec{n, bd}, 0.5);
            ErasureTrace cl = run_classical(BathSpec{n, bd}, 0.5);
            std::ostringstream tag;
            tag << "N=" << n << " bd=" << bd;
            c.require(std::abs(q.residual_excited - closed) <= 1e-10, tag.str() + ": quantum residual closed form");
            c.require(std::abs(cl.residual_excited - closed) <= 1e-10, tag.str() + ": classical residual closed form");
            bool agree = std::abs(q.total_work_kbt_ln2 - cl.total_work_kbt_ln2) <= 1e-10;
            for (size_t i = 0; i < q.steps.size(); ++i) {
                agree = agree && std::abs(q.steps[i].p_excited - cl.steps[i].p_excited) <= 1e-10 &&
                        std::abs(q.steps[i].storage_energy_delta - cl.steps[i].storage_energy_delta) <= 1e-10;
            }
            c.require(agree, tag.str() + ": engines agree step by step");
        }
    }
    const uint32_t big = 10000;
    const double bd = 1e-3;
    const double closed = std::exp(-bd * big) / (1.0 + std::exp(-bd * big));
    c.require(std::abs(landauer::run_classical({big, bd}, 0.5).residual_excited - closed) <= 1e-10,
              "N=1e4 classical residual closed form");
}

void criterion_8(Check& c) {
    using namespace landauer;
    // Refine the grid at a fixed ladder budget N*betaDelta = 10, ending at the
    // pinned point (N = 1e4, betaDelta = 1e-3).
    const double budget = 10.0;
    double prev = 1e12, final_work = 0.0;
    bool monotone = true;
    for (uint32_t n : {10u, 100u, 1000u, 10000u}) {
        final_work = run_classical(BathSpec{n, budget / n}, 0.5).total_work_kbt_ln2;
        monotone = monotone && final_work < prev;
        prev = final_work;
    }
    c.require(monotone, "work decreases monotonically toward the Landauer limit");
    c.require(final_work <= 1.02,
              "work at (N=1e4, bd=1e-3) within 2% above 1.0 (got " + std::to_string(final_work) + ")");
    c.require(final_work >= 0.98,
              "work at (N=1e4, bd=1e-3) within 2% below 1.0 (got " + std::to_string(final_work) + ")");

    const double h_quarter = binary_entropy(0.25);
    const double truncated = run_truncated(BathSpec{10000, 1e-3}, 0.25).total_work_kbt_ln2;
    c.require(truncated <= 1.02 * h_quarter,
              "truncated work within 2% of H(0.25) (got " + std::to_string(truncated) + ")");
    c.require(truncated >= 0.98 * h_quarter,
              "truncated work not below H(0.25) by more than 2% (got " + std::to_string(truncated) + ")");
}

void criterion_9(Check& c) {
    struct Pair {
        std::string instance;
        std::vector<std::string> k_gens;
    };
    const std::vector<Pair> pairs{{"pfa8", {"2"}},   {"pfa8", {"4"}},          {"pfa16", {"2"}},
                                  {"pfa16", {"4"}},  {"z2z4", {"1,2", "0,2"}}, {"dlog8-a3", {"3,1", "4,0"}}};

    auto make_state = [](const OracleSpec& oracle) {
        const uint32_t m = oracle.codomain_bits;
        Vector amp = Vector::Zero(Eigen::Index(oracle.group.order()) << m);
        const double a = 1.0 / std::sqrt(static_cast<double>(oracle.group.order()));
        for (uint32_t g = 0; g < oracle.group.order(); ++g) amp[(g << m) | oracle.table[g]] = a;
        return QuantumState::from_pure(oracle_layout(oracle), amp);
    };

    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 10; ++trial) {
        const Pair& p = pairs[trial % pairs.size()];
        OracleSpec oracle = builtin_instance(p.instance);
        std::vector<GroupElement> gens;
        for (const auto& t : p.k_gens) gens.push_back(GroupElement::parse(oracle.group, t));
        FactorizationWitness w = witness_from_subgroup(oracle, Subgroup::span(oracle.group, gens));
        const uint32_t ell = w.bell_pairs;
        const uint32_t low = (1u << ell) - 1u;

        // Unmutated witness factors with near-unit fidelity.
        FactorResult good = verify_factorization(make_state(oracle), w);
        c.require(good.bell_fidelity >= 1.0 - 1e-9,
                  p.instance + " trial " + std::to_string(trial) + ": clean witness fidelity");

        // Mutate one table entry so its S2 tag no longer matches its G2 tag
        // (even trials) or so a value repeats across differently tagged
        // elements (odd trials) -- breaking condition (2) or (1).
        OracleSpec mutated = oracle;
        const uint32_t g_star = static_cast<uint32_t>(rng() % oracle.group.order());
        const uint32_t tag = w.u_g.map[g_star] & low;
        uint32_t replacement = mutated.table[g_star];
        if (trial % 2 == 0) {
            for (uint32_t v = 0; v < oracle.codomain_size(); ++v) {
                const uint32_t cand = (v + static_cast<uint32_t>(rng())) % oracle.codomain_size();
                if ((w.u_s.map[cand] & low) != tag) {
                    replacement = cand;
                    break;
                }
            }
        } else {
            for (uint32_t g2 = 0; g2 < oracle.group.order(); ++g2) {
                const uint32_t cand = (g2 + static_cast<uint32_t>(rng())) % oracle.group.order();
                if ((w.u_g.map[cand] & low) != tag) {
                    replacement = oracle.table[cand];
                    break;
                }
            }
        }
        mutated.table[g_star] = replacement;

        bool table_flagged = false;
        try {
            validate_witness(mutated, w);
        } catch (const OracleValidationError&) {
            table_flagged = true;
        }
        c.require(table_flagged, p.instance + " trial " + std::to_string(trial) + ": mutated table fails validation");

        bool state_flagged = false;
        double fidelity_seen = 1.0;
        try {
            verify_factorization(make_state(mutated), w);
        } catch (const FactorizationError& e) {
            state_flagged = true;
            fidelity_seen = e.fidelity;
        }
        c.require(state_flagged && fidelity_seen < 1.0 - 1e-9,
                  p.instance + " trial " + std::to_string(trial) + ": mutated state fails factorization");
    }
}

struct Criterion {
    int id;
    std::string label;
    std::function<void(Check&)> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "entanglement bound: -H(S|G) = log2(|G|/|H|) across the subgroup lattice", criterion_1},
        {2, "side-information erasure ledger totals m - 2l exactly", criterion_2},
        {3, "erasure never disturbs the final measurement distribution", criterion_3},
        {4, "standard run recovers H on every instance for 20 seeds", criterion_4},
        {5, "simplified oracle: same H, 2l fewer qubits, equal ledger, frozen bypass", criterion_5},
        {6, "full-information factorizer solves the problem outright", criterion_6},
        {7, "ladder residual matches e^{-N bD}/(1+e^{-N bD}); engines agree", criterion_7},
        {8, "erasure work converges to the Landauer limit from above", criterion_8},
        {9, "broken witness conditions always trigger factorization failure", criterion_9},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("unexpected exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (check.failures.empty()) {
            std::printf("PASS criterion %d: %s (%zu checks, %.1fs)\n", criterion.id, criterion.label.c_str(),
                        check.passed, seconds);
        } else {
            ++failed;
            std::printf("FAIL criterion %d: %s (%zu checks passed, %zu failed, %.1fs)\n", criterion.id,
                        criterion.label.c_str(), check.passed, check.failures.size(), seconds);
            for (const auto& f : check.failures) std::printf("       - %s\n", f.c_str());
        }
        std::fflush(stdout);
    }
    if (failed == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
