#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "phasekit/applications.hpp"
#include "phasekit/cost.hpp"
#include "phasekit/optstate.hpp"
#include "phasekit/povm.hpp"
#include "phasekit/spectrum.hpp"

using namespace phasekit;

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

TEST_CASE("symmetric model of balanced product states") {
    const double r = std::sqrt(0.5);
    const auto model = symmetric_model(2, {r, 0.0}, {r, 0.0});
    CHECK(model.q == 3);
    CHECK(model.amplitudes[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(model.amplitudes[1] == doctest::Approx(r).epsilon(1e-12));
    CHECK(model.amplitudes[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(model.support == std::vector<int>{0, 1, 2});
}

TEST_CASE("symmetric model absorbs per-level phases") {
    const double r = std::sqrt(0.5);
    const auto model = symmetric_model(2, {r, 0.0}, {0.0, r});  // b = i r
    CHECK(std::abs(model.phase_map[1] - std::complex<double>(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(model.phase_map[2] - std::complex<double>(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("symmetric model validates its inputs") {
    CHECK_THROWS_AS(symmetric_model(-1, {1.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_model(2, {1.0, 0.0}, {0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("skewed product states lose support symmetry") {
    const auto model = symmetric_model(2, {0.6, 0.0}, {0.8, 0.0});
    CHECK(model.amplitudes[0] == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(model.amplitudes[1] == doctest::Approx(std::sqrt(2.0) * 0.48).epsilon(1e-12));
    CHECK(model.amplitudes[2] == doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("product-state cost closed form") {
    CHECK(product_state_cost(1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(product_state_cost(2) ==
          doctest::Approx(std::pow(std::sin(kPi / 8.0), 2)).epsilon(1e-13));
    CHECK(product_state_cost(3) == doctest::Approx(0.0959936490538904).epsilon(1e-13));
    CHECK_THROWS_AS(product_state_cost(0), std::invalid_argument);
}

TEST_CASE("the best product state matches the balanced symmetric model") {
    // Its half-angle cost equals the Fourier-route average of that model.
    const double r = std::sqrt(0.5);
    for (int N : {1, 2, 3, 5}) {
        const auto model = symmetric_model(N, {r, 0.0}, {r, 0.0});
        const double direct = average_cost_fourier(model, all_ones_seed(model.q),
                                                   make_half_angle_cost(model.q));
        CHECK(product_state_cost(N) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("entanglement beats products from three qubits on") {
    CHECK(product_state_cost(2) ==
          doctest::Approx(closed_form_min_cost(CostKind::half_angle, 3)).epsilon(1e-12));
    for (int N : {3, 4, 6}) {
        CHECK(product_state_cost(N) > closed_form_min_cost(CostKind::half_angle, N + 1));
    }
}

TEST_CASE("shor multipliers are the binary powers") {
    const auto network = shor_multipliers(3);
    CHECK(network.multipliers() == std::vector<std::int64_t>{1, 2, 4});
    const auto table = subset_sum_spectrum(network);
    CHECK(table.size() == 8);
    for (auto m : table.multiplicities) CHECK(m == 1);
    CHECK(shor_multipliers(1).multipliers() == std::vector<std::int64_t>{1});
    CHECK_THROWS_AS(shor_multipliers(0), std::invalid_argument);
}

TEST_CASE("dihedral model from a complete ruler") {
    const DihedralInstance instance{3, {1, 2, 4}};
    CHECK(instance.total() == 7);
    CHECK(instance.dimension() == 8);
    const auto [model, table] = dihedral_model(instance);
    CHECK(model.q == 8);
    CHECK(table.multiplicities == std::vector<std::uint64_t>(8, 1));
    for (int j = 0; j < 8; ++j)
        CHECK(model.amplitudes[static_cast<std::size_t>(j)] ==
              doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("dihedral model handles zero samples and gaps") {
    const auto [model, table] = dihedral_model(DihedralInstance{1, {0, 1}});
    CHECK(table.multiplicities == std::vector<std::uint64_t>{2, 2});
    CHECK(model.amplitudes[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    const auto [gapped, gtable] = dihedral_model(DihedralInstance{2, {3, 3}});
    CHECK(gtable.multiplicities == std::vector<std::uint64_t>{1, 0, 0, 2, 0, 0, 1});
    CHECK(gapped.support == std::vector<int>{0, 3, 6});
}

TEST_CASE("dihedral samples must fit the declared bit length") {
    CHECK_THROWS_AS(dihedral_model(DihedralInstance{2, {4}}), std::invalid_argument);
    CHECK_THROWS_AS(dihedral_model(DihedralInstance{2, {-1}}), std::invalid_argument);
}

TEST_CASE("dihedral experiment is deterministic and well-formed") {
    const auto a = dihedral_estimate_experiment(2, 3, 4000, 77, 1);
    const auto b = dihedral_estimate_experiment(2, 3, 4000, 77, 3);
    CHECK(a.p_error_within_grid == b.p_error_within_grid);
    CHECK(a.p_error_within_target == b.p_error_within_target);
    CHECK(a.mean_dimension == b.mean_dimension);
    CHECK(a.error_histogram == b.error_histogram);

    CHECK(a.trials == 4000);
    CHECK(a.rng_seed == 77);
    CHECK(a.bit_length == 2);
    CHECK(a.sample_count == 3);
    CHECK(a.p_error_within_grid >= 0.0);
    CHECK(a.p_error_within_grid <= 1.0);
    CHECK(a.p_error_within_target >= 0.0);
    CHECK(a.p_error_within_target <= 1.0);
    CHECK(a.mean_dimension >= 1.0);
    CHECK(a.mean_dimension <= 10.0);  // q <= m(2^n - 1) + 1
    std::uint64_t total = 0;
    for (auto h : a.error_histogram) total += h;
    CHECK(total == a.trials);
}

TEST_CASE("dihedral experiment validates its parameters") {
    CHECK_THROWS_AS(dihedral_estimate_experiment(0, 3, 10, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(dihedral_estimate_experiment(2, 3, 0, 1, 1), std::invalid_argument);
    // worst-case dimension m(2^n - 1) + 1 beyond the cap
    CHECK_THROWS_AS(dihedral_estimate_experiment(16, 2, 10, 1, 1), std::invalid_argument);
}

TEST_CASE("phase circuit synthesizes e^{i phi k} per bit") {
    const auto circuit = phase_circuit(3, 1.0471976);
    REQUIRE(circuit.gates.size() == 3);
    for (int l = 0; l < 3; ++l) {
        CHECK(circuit.gates[static_cast<std::size_t>(l)].qubit == l);
        CHECK(circuit.gates[static_cast<std::size_t>(l)].multiple == (std::uint64_t{1} << l));
    }
    CHECK(circuit.verified);
    CHECK(circuit.max_phase_error <= 1e-12);
}

TEST_CASE("gate multiples of set bits sum to the eigenvalue") {
    const auto circuit = phase_circuit(6, 0.37);
    for (std::uint64_t k = 0; k < 64; ++k) {
        std::uint64_t total = 0;
        for (const auto& gate : circuit.gates)
            if ((k >> gate.qubit) & 1u) total += gate.multiple;
        CHECK(total == k);
    }
}

TEST_CASE("phase circuit validates the register width") {
    CHECK_THROWS_AS(phase_circuit(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(phase_circuit(21, 1.0), std::invalid_argument);
}

TEST_CASE("circular error folds onto [0, pi]") {
    CHECK(circular_error(0.1, 2.0 * kPi - 0.1) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(circular_error(1.0, 1.0) == 0.0);
    CHECK(circular_error(0.0, kPi) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(circular_error(5.0, 2.0) == circular_error(2.0, 5.0));
    CHECK(circular_error(-0.3, 0.3) == doctest::Approx(0.6).epsilon(1e-12));
}
