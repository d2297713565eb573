#include "phasekit/povm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace phasekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = -1e-9;  // eigen-solver round-off on near-singular seeds

double sign_with_positive_zero(double c) { return c < 0.0 ? -1.0 : 1.0; }

}  // namespace

SeedMatrix all_ones_seed(int q) {
    if (q < 1) throw std::invalid_argument("seed dimension must be >= 1");
    return SeedMatrix{q, Eigen::MatrixXcd::Ones(q, q)};
}

SeedMatrix identity_seed(int q) {
    if (q < 1) throw std::invalid_argument("seed dimension must be >= 1");
    return SeedMatrix{q, Eigen::MatrixXcd::Identity(q, q)};
}

SeedMatrix optimal_seed(const CostSpec& cost, int q) {
    if (q < 1) throw std::invalid_argument("seed dimension must be >= 1");
    SeedMatrix seed{q, Eigen::MatrixXcd(q, q)};
    for (int h = 0; h < q; ++h) {
        seed.entries(h, h) = 1.0;
        for (int k = 0; k < h; ++k) {
            const double value = sign_with_positive_zero(cost.c(h - k));
            seed.entries(h, k) = value;
            seed.entries(k, h) = value;
        }
    }
    return seed;
}

SeedValidation validate_seed(const SeedMatrix& seed) {
    const auto& chi = seed.entries;
    if (chi.rows() != seed.dimension || chi.cols() != seed.dimension)
        throw std::invalid_argument("seed matrix shape does not match its dimension");

    SeedValidation report;
    std::ostringstream msg;

    const double asym = (chi - chi.adjoint()).cwiseAbs().maxCoeff();
    report.hermitian = asym <= kHermitianTol;
    if (!report.hermitian) {
        msg.str("");
        msg << "not Hermitian (max asymmetry " << asym << ")";
        report.violations.push_back(msg.str());
    }

    double diag_err = 0.0;
    for (int h = 0; h < seed.dimension; ++h)
        diag_err = std::max(diag_err, std::abs(chi(h, h) - std::complex<double>(1.0, 0.0)));
    report.unit_diagonal = diag_err <= kHermitianTol;
    if (!report.unit_diagonal) {
        msg.str("");
        msg << "diagonal deviates from 1 by " << diag_err;
        report.violations.push_back(msg.str());
    }

    const double max_mod = chi.cwiseAbs().maxCoeff();
    report.modulus_bounded = max_mod <= 1.0 + kHermitianTol;
    if (!report.modulus_bounded) {
        msg.str("");
        msg << "entry modulus " << max_mod << " exceeds 1";
        report.violations.push_back(msg.str());
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(chi, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("seed eigendecomposition failed to converge");
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    report.positive_semidefinite = report.min_eigenvalue >= kPsdTol;
    if (!report.positive_semidefinite) {
        msg.str("");
        msg << "not positive semidefinite (min eigenvalue " << report.min_eigenvalue << ")";
        report.violations.push_back(msg.str());
    }

    return report;
}

double outcome_angle(int q, int s) { return 2.0 * kPi * s / q; }

DiscreteMeasurement discrete_measurement(int q) {
    if (q < 1) throw std::invalid_argument("measurement dimension must be >= 1");
    DiscreteMeasurement m{q, Eigen::MatrixXcd(q, q)};
    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    for (int s = 0; s < q; ++s)
        for (int k = 0; k < q; ++k) {
            // reduce k*s mod q so the roots of unity are computed from exact angles
            const int r = static_cast<int>((static_cast<std::int64_t>(k) * s) % q);
            m.states(k, s) = norm * std::polar(1.0, 2.0 * kPi * r / q);
        }
    return m;
}

std::vector<double> outcome_distribution(const CanonicalModel& model, double phi) {
    const int q = model.q;
    std::vector<double> prob(q);
    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    for (int s = 0; s < q; ++s) {
        const double offset = phi - outcome_angle(q, s);
        std::complex<double> amp = 0.0;
        for (int k : model.support)
            amp += model.amplitudes[k] * std::polar(1.0, k * offset);
        prob[s] = std::norm(norm * amp);
    }
    return prob;
}

double conditional_density(const CanonicalModel& model, double theta) {
    std::complex<double> amp = 0.0;
    for (int k : model.support)
        amp += model.amplitudes[k] * std::polar(1.0, k * theta);
    return std::norm(amp) / (2.0 * kPi);
}

std::pair<double, double> discretization_check(const CanonicalModel& model,
                                               const CostSpec& cost) {
    const int q = model.q;
    // harmonics at l >= q would alias through the q-point measurement
    CostSpec truncated = cost;
    if (truncated.coefficients.size() > static_cast<std::size_t>(q))
        truncated.coefficients.resize(q);

    const int grid = 4 * q;
    const double continuous = average_cost_quadrature(model, truncated, std::max(grid, 2 * q));

    double discrete = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double phi = 2.0 * kPi * j / grid;
        const auto prob = outcome_distribution(model, phi);
        for (int s = 0; s < q; ++s)
            discrete += prob[s] * evaluate(truncated, outcome_angle(q, s) - phi);
    }
    discrete /= grid;

    return {continuous, discrete};
}

}  // namespace phasekit
