#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "phasekit/cost.hpp"
#include "phasekit/spectrum.hpp"

namespace phasekit {

/// Seed operator chi = 2*pi*D_0 of a covariant POVM, in the |k> basis.
/// A valid seed is Hermitian, positive semidefinite and has unit diagonal,
/// which bounds every entry by |chi_hk| <= 1.
struct SeedMatrix {
    int dimension = 0;
    Eigen::MatrixXcd entries;
};

struct SeedValidation {
    bool hermitian = false;
    bool unit_diagonal = false;
    bool positive_semidefinite = false;
    bool modulus_bounded = false;
    double min_eigenvalue = 0.0;
    std::vector<std::string> violations;

    bool ok() const {
        return hermitian && unit_diagonal && positive_semidefinite && modulus_bounded;
    }
};

/// chi_hk = sign(c_{|h-k|}) with sign(0) = 1; the all-ones matrix for
/// Holevo-class costs.  Positivity is not guaranteed for arbitrary
/// coefficients, so validate_seed afterwards.
SeedMatrix optimal_seed(const CostSpec& cost, int q);

SeedMatrix all_ones_seed(int q);
SeedMatrix identity_seed(int q);

/// Checks Hermiticity, unit diagonal, PSD (min eigenvalue >= -1e-9) and the
/// modulus bound; collects every violation instead of stopping at the first.
SeedValidation validate_seed(const SeedMatrix& seed);

/// The q orthonormal phase states |phi_s> with components e^{ik*phi_s}/sqrt(q),
/// phi_s = 2*pi*s/q.  This is the QFT basis; measuring in it reproduces the
/// average cost of the optimal continuous covariant POVM.
struct DiscreteMeasurement {
    int dimension = 0;
    Eigen::MatrixXcd states;  // column s holds |phi_s>
};

DiscreteMeasurement discrete_measurement(int q);

/// Estimate angle attached to outcome s; the single place phi_s is computed.
double outcome_angle(int q, int s);

/// Born-rule outcome probabilities of the discrete measurement:
/// Pr(s|phi) = |(1/sqrt(q)) sum_k x_k e^{ik(phi - phi_s)}|^2.
std::vector<double> outcome_distribution(const CanonicalModel& model, double phi);

/// Density of the continuous optimal POVM at estimate offset theta:
/// p(theta) = (1/2pi) |sum_k x_k e^{ik*theta}|^2.
double conditional_density(const CanonicalModel& model, double theta);

/// Evaluates the average cost through the continuous POVM and through the
/// q-point discrete measurement; the two agree for covariant POVMs under the
/// uniform prior.  Returns (continuous, discrete).
std::pair<double, double> discretization_check(const CanonicalModel& model,
                                               const CostSpec& cost);

}  // namespace phasekit
