#include <doctest.h>

#include <cmath>

#include "otg/landauer.hpp"

using namespace otg::landauer;

TEST_SUITE_BEGIN("landauer");

TEST_CASE("bath populations and validation") {
    BathSpec bath{4, 1.0};
    CHECK(bath.excited_population(1) == doctest::Approx(std::exp(-1.0) / (1.0 + std::exp(-1.0))).epsilon(1e-14));
    CHECK(bath.excited_population(4) < bath.excited_population(1)); // colder with the gap
    CHECK_THROWS_AS((BathSpec{0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BathSpec{1, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("swap unitary matrix elements") {
    const LadderSpec ladder = LadderSpec::for_protocol(3);
    const uint32_t ell = 3;
    Eigen::MatrixXd u = swap_unitary(ell, ladder);
    auto idx = [&](int k, int s, int b) { return ((k - ladder.level_min) * 2 + s) * 2 + b; };

    CHECK(u(idx(3, 1, 0), idx(0, 0, 1)) == 1.0);  // |E_0,0_S,1_l> -> |E_l,1_S,0_l>
    CHECK(u(idx(0, 0, 1), idx(3, 1, 0)) == 1.0);  // and back
    for (int k = ladder.level_min; k <= ladder.level_max; ++k) {
        CHECK(u(idx(k, 0, 0), idx(k, 0, 0)) == 1.0); // aligned states untouched
        CHECK(u(idx(k, 1, 1), idx(k, 1, 1)) == 1.0);
    }
    const int dim = ladder.level_count() * 4;
    CHECK((u * u.transpose() - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((u * u - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() == 0.0); // involution

    CHECK_THROWS_AS(swap_unitary(5, LadderSpec{0, 2}), std::invalid_argument);
}

TEST_CASE("every swap commutes with the joint Hamiltonian") {
    const LadderSpec ladder = LadderSpec::for_protocol(4);
    for (uint32_t ell = 1; ell <= 4; ++ell) {
        Eigen::MatrixXd u = swap_unitary(ell, ladder);
        Eigen::MatrixXd h = joint_hamiltonian_diagonal(ell, ladder).asDiagonal();
        CHECK((u * h - h * u).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("quantum engine: single-swap closed form") {
    ErasureTrace t = run_quantum(BathSpec{1, 1.0}, 0.5);
    const double q1 = std::exp(-1.0) / (1.0 + std::exp(-1.0));
    CHECK(t.residual_excited == doctest::Approx(q1).epsilon(1e-12));
    CHECK(t.residual_excited == doctest::Approx(0.26894).epsilon(1e-4));
}

TEST_CASE("quantum engine: near-zero-temperature bath erases in one step") {
    ErasureTrace t = run_quantum(BathSpec{1, 50.0}, 0.5);
    CHECK(t.residual_excited < 1e-20);
    // Work paid equals Delta * (p_init - residual) in energy units.
    CHECK(-t.total_storage_energy_delta == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("quantum and classical engines agree step by step") {
    for (uint32_t n : {1u, 2u, 4u, 6u}) {
        for (double bd : {0.5, 1.0, 2.0}) {
            ErasureTrace q = run_quantum(BathSpec{n, bd}, 0.5);
            ErasureTrace c = run_classical(BathSpec{n, bd}, 0.5);
            REQUIRE(q.steps.size() == c.steps.size());
            for (size_t i = 0; i < q.steps.size(); ++i) {
                CHECK(std::abs(q.steps[i].p_excited - c.steps[i].p_excited) <= 1e-10);
                CHECK(std::abs(q.steps[i].storage_energy_delta - c.steps[i].storage_energy_delta) <= 1e-10);
            }
            CHECK(std::abs(q.total_work_kbt_ln2 - c.total_work_kbt_ln2) <= 1e-10);
            CHECK(std::abs(q.residual_excited - c.residual_excited) <= 1e-10);
        }
    }
}

TEST_CASE("residual matches the closed form at any scale") {
    for (uint32_t n : {1u, 8u}) {
        const double bd = 1.0;
        const double closed = std::exp(-bd * n) / (1.0 + std::exp(-bd * n));
        CHECK(std::abs(run_quantum(BathSpec{n, bd}, 0.5).residual_excited - closed) <= 1e-10);
    }
    const uint32_t big = 10000;
    const double bd = 1e-3;
    const double closed = std::exp(-bd * big) / (1.0 + std::exp(-bd * big));
    CHECK(std::abs(run_classical(BathSpec{big, bd}, 0.5).residual_excited - closed) <= 1e-10);
}

TEST_CASE("too narrow a ladder is rejected at the boundary") {
    CHECK_THROWS_AS(run_quantum(BathSpec{3, 1.0}, 0.5, LadderSpec{-1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(run_quantum(BathSpec{16, 1.0}, 0.5), std::invalid_argument); // dimension guard
}

TEST_CASE("classical engine: no population transfer means no work") {
    BathSpec bath{1, 1.0};
    ErasureTrace t = run_classical(bath, bath.excited_population(1));
    CHECK(t.total_work_kbt_ln2 == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("classical engine approaches the Landauer limit on a fine grid") {
    ErasureTrace t = run_classical(BathSpec{10000, 1e-3}, 0.5);
    CHECK(t.total_work_kbt_ln2 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(t.total_work_kbt_ln2 <= 1.02);
}

TEST_CASE("work decreases monotonically in N at a fixed ladder budget, never below one bit") {
    // Budget N*betaDelta = 20: cold enough that the partial-erasure correction
    // stays far below the discretization overshoot.
    const double budget = 20.0;
    double prev = 1e9;
    for (uint32_t n : {20u, 100u, 1000u, 10000u}) {
        ErasureTrace t = run_classical(BathSpec{n, budget / n}, 0.5);
        CHECK(t.total_work_kbt_ln2 < prev);
        CHECK(t.total_work_kbt_ln2 >= 1.0);
        prev = t.total_work_kbt_ln2;
    }
}

TEST_CASE("work never beats the Landauer floor of the erasure actually achieved") {
    for (double bd : {1.0, 0.1, 1e-3}) {
        for (uint32_t n : {10u, 100u, 10000u}) {
            ErasureTrace t = run_classical(BathSpec{n, bd}, 0.5);
            const double floor = 1.0 - binary_entropy(t.residual_excited);
            CHECK(t.total_work_kbt_ln2 >= floor - 1e-12);
        }
    }
}

TEST_CASE("truncated protocol") {
    BathSpec fine{10000, 1e-3};
    CHECK(run_truncated(fine, 0.0).steps.empty());
    CHECK(run_truncated(fine, 0.0).total_work_kbt_ln2 == 0.0);

    // p = 1/2 starts at the first bath qubit, identical to the plain run.
    ErasureTrace half = run_truncated(fine, 0.5);
    ErasureTrace plain = run_classical(fine, 0.5);
    CHECK(half.steps.size() == plain.steps.size());
    CHECK(half.total_work_kbt_ln2 == doctest::Approx(plain.total_work_kbt_ln2).epsilon(1e-14));

    ErasureTrace quarter = run_truncated(fine, 0.25);
    CHECK(quarter.steps.front().bath_index > 1); // hotter qubits skipped
    CHECK(quarter.total_work_kbt_ln2 == doctest::Approx(binary_entropy(0.25)).epsilon(0.02));
    CHECK(quarter.total_work_kbt_ln2 <= 1.02 * binary_entropy(0.25));

    CHECK_THROWS_AS(run_truncated(fine, 0.7), std::invalid_argument);
}

TEST_CASE("truncated cost dominates the binary entropy and the gap shrinks") {
    const double budget = 20.0;
    double prev_gap = 1e9;
    for (uint32_t n : {100u, 1000u, 10000u}) {
        ErasureTrace t = run_truncated(BathSpec{n, budget / n}, 0.25);
        const double gap = t.total_work_kbt_ln2 - binary_entropy(0.25);
        CHECK(gap >= 0.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("reverse extraction") {
    // A single very cold bath qubit carries almost no entropy to extract.
    ErasureTrace cold = run_reverse(BathSpec{1, 50.0});
    CHECK(std::abs(cold.total_work_kbt_ln2) < 1e-9);

    ErasureTrace fine = run_reverse(BathSpec{10000, 1e-3});
    CHECK(fine.total_work_kbt_ln2 == doctest::Approx(-1.0).epsilon(0.02));
    CHECK(fine.residual_excited == doctest::Approx(0.5).epsilon(1e-3)); // ends close to fully mixed
}

TEST_CASE("forward then reverse never extracts net work") {
    // The reverse leg consumes the forward leg's residual, closing the cycle.
    for (double bd : {1.0, 0.1, 1e-2}) {
        for (uint32_t n : {10u, 100u, 1000u}) {
            const ErasureTrace forward = run_classical(BathSpec{n, bd}, 0.5);
            const ErasureTrace reverse = run_reverse(BathSpec{n, bd}, forward.residual_excited);
            CHECK(forward.total_work_kbt_ln2 + reverse.total_work_kbt_ln2 >= -1e-12);
        }
    }
}

TEST_SUITE_END();
