#include <benchmark/benchmark.h>

#include "otg/erasure.hpp"
#include "otg/hsp.hpp"
#include "otg/instances.hpp"
#include "otg/landauer.hpp"
#include "otg/simplify.hpp"

using namespace otg;

namespace {

void bm_apply_qft(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    AbelianGroup g({1u << n});
    RegisterLayout layout = RegisterLayout::contiguous({{"G", n}, {"S", n}});
    QuantumState s = QuantumState::zero(layout);
    const Matrix q = qft_matrix(g);
    for (auto _ : state) {
        QuantumState t = apply_unitary(s, q, "G");
        benchmark::DoNotOptimize(t.rho.data());
    }
}
BENCHMARK(bm_apply_qft)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_oracle_permutation(benchmark::State& state) {
    OracleSpec oracle = builtin_instance("dlog8-a3");
    QuantumState s = apply_unitary(QuantumState::zero(oracle_layout(oracle)), qft_matrix(oracle.group), "G");
    for (auto _ : state) {
        QuantumState t = apply_oracle(s, oracle);
        benchmark::DoNotOptimize(t.rho.data());
    }
}
BENCHMARK(bm_oracle_permutation)->Unit(benchmark::kMillisecond);

void bm_partial_trace(benchmark::State& state) {
    OracleSpec oracle = builtin_instance("dlog8-a3");
    QuantumState s = post_oracle_state(oracle);
    for (auto _ : state) {
        QuantumState t = partial_trace(s, {"G"});
        benchmark::DoNotOptimize(t.rho.data());
    }
}
BENCHMARK(bm_partial_trace)->Unit(benchmark::kMillisecond);

void bm_entropy(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    QuantumState s = QuantumState::maximally_mixed(RegisterLayout::contiguous({{"G", n}}));
    for (auto _ : state) benchmark::DoNotOptimize(entropy_bits(s));
}
BENCHMARK(bm_entropy)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void bm_hsp_distribution(benchmark::State& state) {
    OracleSpec oracle = builtin_instance("dlog8-a3");
    for (auto _ : state) {
        auto dist = hsp_distribution(oracle);
        benchmark::DoNotOptimize(dist.data());
    }
}
BENCHMARK(bm_hsp_distribution)->Unit(benchmark::kMillisecond);

void bm_witness_build(benchmark::State& state) {
    OracleSpec oracle = builtin_instance("dlog8-a3");
    Subgroup k = Subgroup::span(oracle.group, oracle.k_generators);
    for (auto _ : state) {
        FactorizationWitness w = witness_from_subgroup(oracle, k);
        benchmark::DoNotOptimize(w.u_g.map.data());
    }
}
BENCHMARK(bm_witness_build)->Unit(benchmark::kMillisecond);

void bm_erase_side_info(benchmark::State& state) {
    OracleSpec oracle = builtin_instance("pfa16");
    QuantumState s = post_oracle_state(oracle);
    FactorizationWitness w = witness_from_subgroup(oracle, oracle.hidden);
    for (auto _ : state) {
        WorkLedger ledger;
        QuantumState t = erase_side_info(s, w, ledger);
        benchmark::DoNotOptimize(t.rho.data());
    }
}
BENCHMARK(bm_erase_side_info)->Unit(benchmark::kMillisecond);

void bm_landauer_classical(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        auto trace = landauer::run_classical({n, 10.0 / n}, 0.5);
        benchmark::DoNotOptimize(trace.total_work_kbt_ln2);
    }
}
BENCHMARK(bm_landauer_classical)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void bm_landauer_quantum(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        auto trace = landauer::run_quantum({n, 1.0}, 0.5);
        benchmark::DoNotOptimize(trace.total_work_kbt_ln2);
    }
}
BENCHMARK(bm_landauer_quantum)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
