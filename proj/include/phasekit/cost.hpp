#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasekit/spectrum.hpp"

namespace phasekit {

struct SeedMatrix;

enum class CostKind { variance, half_angle, likelihood, window, fidelity, custom };

std::string to_string(CostKind kind);
CostKind cost_kind_from_string(const std::string& name);

/// Even 2*pi-periodic cost function, stored as the truncated Fourier
/// series C(phi) = -sum_{l} c_l cos(l*phi).
struct CostSpec {
    CostKind label = CostKind::custom;
    std::vector<double> coefficients;       // c_0 .. c_{Lmax}
    std::optional<double> window_epsilon;

    double c(std::size_t l) const { return l < coefficients.size() ? coefficients[l] : 0.0; }
};

/// C_V(phi) = 4 sin^2(phi/2): c_0 = -2, c_1 = 2.
CostSpec make_variance_cost(int truncation_q);
/// sin^2(phi/2): c_0 = -1/2, c_1 = 1/2.
CostSpec make_half_angle_cost(int truncation_q);
/// Truncated series of -delta_{2pi}(phi): c_0 = 1/(2pi), c_l = 1/pi.
CostSpec make_likelihood_cost(int truncation_q);
/// Window of half-width epsilon: c_0 = eps/pi - 1, c_l = sin(l*eps)/(l*pi).
/// Holevo-class only for eps <= pi/q; larger eps is allowed for evaluation.
CostSpec make_window_cost(double epsilon, int truncation_q);
/// Fidelity error 1 - |<Psi0|U_phi|Psi0>|^2 of the given model:
/// c_0 = sum_k x_k^4 - 1, c_l = 2 sum_{h<k, k-h=l} x_h^2 x_k^2.
CostSpec make_fidelity_cost(const CanonicalModel& model, int truncation_q);
CostSpec make_custom_cost(std::vector<double> coefficients, int truncation_q);

struct CostParams {
    std::optional<double> epsilon;
    const CanonicalModel* model = nullptr;
    std::optional<std::vector<double>> custom_coefficients;
};

CostSpec make_cost(CostKind kind, const CostParams& params, int truncation_q);

/// -sum_l c_l cos(l*phi).
double evaluate(const CostSpec& cost, double phi);

/// True iff c_l >= 0 for all 1 <= l < q (Holevo class; the all-ones seed
/// is then the optimal covariant POVM seed).
bool is_holevo(const CostSpec& cost, int q);

/// Average cost of the covariant POVM with seed chi on the given model:
///   -c_0 - (1/2) sum_{l>=1} c_l sum_{|h-k|=l} x_h Re(chi_hk) x_k.
double average_cost_fourier(const CanonicalModel& model, const SeedMatrix& seed,
                            const CostSpec& cost);

/// Independent route: integrate conditional_density(model, theta) * C(theta)
/// over [0, 2pi) with the equispaced trapezoid rule, which is exact for the
/// trigonometric polynomials involved once grid_points >= 4q.
double average_cost_quadrature(const CanonicalModel& model, const CostSpec& cost,
                               int grid_points);

}  // namespace phasekit
