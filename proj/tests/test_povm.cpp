#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "phasekit/cost.hpp"
#include "phasekit/optstate.hpp"
#include "phasekit/povm.hpp"
#include "phasekit/spectrum.hpp"

using namespace phasekit;

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

TEST_CASE("all-ones and identity seeds are valid") {
    for (int q : {1, 2, 5}) {
        const auto ones = validate_seed(all_ones_seed(q));
        CHECK(ones.ok());
        // J_q has eigenvalues {q, 0, ..., 0}; for q = 1 the single eigenvalue is 1.
        CHECK(ones.min_eigenvalue == doctest::Approx(q == 1 ? 1.0 : 0.0).epsilon(1e-9));
        CHECK(validate_seed(identity_seed(q)).ok());
    }
    CHECK_THROWS_AS(all_ones_seed(0), std::invalid_argument);
}

TEST_CASE("optimal seed is the all-ones matrix for Holevo costs") {
    for (const auto& cost :
         {make_variance_cost(4), make_likelihood_cost(4), make_window_cost(0.1, 4)}) {
        const auto seed = optimal_seed(cost, 4);
        CHECK((seed.entries - Eigen::MatrixXcd::Ones(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    }
    // sign(0) = +1: coefficients beyond the truncation give +1 entries.
    const auto seed = optimal_seed(make_variance_cost(2), 5);
    CHECK(seed.entries(4, 0) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("alternating-sign seed is rank one and positive") {
    // c = (0, -1, 1): chi_hk = sign(c_{|h-k|}) = (-1)^{h-k}, i.e. vv^T with
    // v = (1, -1, 1), eigenvalues {3, 0, 0}.
    const auto cost = make_custom_cost({0.0, -1.0, 1.0}, 3);
    const auto seed = optimal_seed(cost, 3);
    CHECK(seed.entries(0, 1) == std::complex<double>(-1.0, 0.0));
    CHECK(seed.entries(0, 2) == std::complex<double>(1.0, 0.0));
    CHECK(seed.entries(1, 2) == std::complex<double>(-1.0, 0.0));
    const auto report = validate_seed(seed);
    CHECK(report.ok());
    CHECK(report.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("sign seed of c = (0,-1,-1) fails positivity") {
    // chi = 2I - J has eigenvalues {-1, 2, 2}: a sign pattern outside the
    // Holevo class need not produce a valid POVM seed.
    const auto cost = make_custom_cost({0.0, -1.0, -1.0}, 3);
    const auto report = validate_seed(optimal_seed(cost, 3));
    CHECK_FALSE(report.positive_semidefinite);
    CHECK_FALSE(report.ok());
    CHECK(report.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(report.hermitian);
    CHECK(report.unit_diagonal);
    CHECK(report.modulus_bounded);
    CHECK_FALSE(report.violations.empty());
}

TEST_CASE("validate_seed reports every violation") {
    SeedMatrix bad{2, Eigen::MatrixXcd(2, 2)};
    bad.entries << std::complex<double>(2.0, 0.0), std::complex<double>(0.0, 1.5),
        std::complex<double>(0.0, 1.5), std::complex<double>(1.0, 0.0);
    const auto report = validate_seed(bad);
    CHECK_FALSE(report.hermitian);       // chi(0,1) != conj(chi(1,0))
    CHECK_FALSE(report.unit_diagonal);   // chi(0,0) = 2
    CHECK_FALSE(report.modulus_bounded); // |2| > 1
    CHECK(report.violations.size() >= 3);

    SeedMatrix mismatched{3, Eigen::MatrixXcd::Ones(2, 2)};
    CHECK_THROWS_AS(validate_seed(mismatched), std::invalid_argument);
}

TEST_CASE("discrete measurement is an orthonormal basis") {
    for (int q : {1, 3, 4, 7}) {
        const auto m = discrete_measurement(q);
        const Eigen::MatrixXcd gram = m.states.adjoint() * m.states;
        CHECK((gram - Eigen::MatrixXcd::Identity(q, q)).cwiseAbs().maxCoeff() < 1e-13);
    }
    const auto m = discrete_measurement(4);
    // |phi_s> component k: e^{ik phi_s}/sqrt(q)
    CHECK(std::abs(m.states(1, 1) - std::polar(0.5, kPi / 2.0)) < 1e-14);
    CHECK(std::abs(m.states(3, 2) - std::polar(0.5, kPi)) < 1e-14);
}

TEST_CASE("outcome angles live on the uniform grid") {
    CHECK(outcome_angle(8, 0) == 0.0);
    CHECK(outcome_angle(8, 3) == doctest::Approx(0.75 * kPi).epsilon(1e-15));
    CHECK(outcome_angle(3, 2) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-15));
}

TEST_CASE("outcome distribution is a probability vector") {
    const auto model = model_from_amplitudes({0.5, std::sqrt(0.5), 0.5});
    for (double phi : {0.0, 0.9, 2.0, 5.5}) {
        const auto prob = outcome_distribution(model, phi);
        REQUIRE(prob.size() == 3);
        double total = 0.0;
        for (double p : prob) {
            CHECK(p >= 0.0);
            total += p;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("uniform state on a complete spectrum recovers grid phases exactly") {
    const auto model = model_from_amplitudes(closed_form_state(ClosedFormState::uniform, 8));
    for (int s0 : {0, 2, 7}) {
        const auto prob = outcome_distribution(model, outcome_angle(8, s0));
        CHECK(prob[static_cast<std::size_t>(s0)] == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("conditional density integrates to one") {
    const auto model = model_from_amplitudes({0.6, 0.0, 0.8});
    const int grid = 64;
    double total = 0.0;
    for (int j = 0; j < grid; ++j)
        total += conditional_density(model, 2.0 * kPi * j / grid);
    total *= 2.0 * kPi / grid;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // peak value at theta = 0 for the uniform state: q/(2pi)
    const auto uniform = model_from_amplitudes(closed_form_state(ClosedFormState::uniform, 5));
    CHECK(conditional_density(uniform, 0.0) == doctest::Approx(5.0 / (2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("continuous and discrete measurements share the average cost") {
    const auto model = model_from_amplitudes({0.5, std::sqrt(0.5), 0.5});
    const auto [cont, disc] = discretization_check(model, make_variance_cost(3));
    CHECK(cont == doctest::Approx(0.5857864376269049).epsilon(1e-12));
    CHECK(disc == doctest::Approx(cont).epsilon(1e-12));
}

TEST_CASE("discretization check truncates aliasing harmonics") {
    // c_3 on a q=3 model aliases onto c_0 through the 3-outcome measurement;
    // the check must compare like with like by cutting the series at l < q.
    const auto model = model_from_amplitudes({0.5, std::sqrt(0.5), 0.5});
    const auto cost = make_custom_cost({-1.0, 0.4, 0.2, 5.0}, 4);
    const auto [cont, disc] = discretization_check(model, cost);
    CHECK(cont == doctest::Approx(disc).epsilon(1e-12));
}
