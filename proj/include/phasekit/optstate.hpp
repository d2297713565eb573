#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "phasekit/cost.hpp"

namespace phasekit {

/// Cost operator in the |k> basis: a real symmetric Toeplitz matrix with
/// diagonal -c_0 and entry -c_{|h-k|}/2 off the diagonal.
struct CostOperator {
    int dimension = 0;
    Eigen::MatrixXd entries;
};

CostOperator cost_operator(const CostSpec& cost, int q);

struct OptimalStateResult {
    int q = 0;
    CostKind cost_label = CostKind::custom;
    std::vector<double> amplitudes;  // normalized, nonnegative after sign fix
    double min_cost = 0.0;
    bool holevo_class = false;   // optimality guaranteed only in the Holevo class
    bool sign_ambiguous = false; // no nonnegative ground eigenvector was found
};

/// Minimum eigenpair of the cost operator; the eigenvector is the input
/// state of least average cost under the optimal covariant POVM.
OptimalStateResult optimal_state(const CostSpec& cost, int q);

enum class ClosedFormState { sine, uniform };

/// sine:    x_j = sqrt(2/(q+1)) sin((j+1) pi / (q+1))
/// uniform: x_j = 1/sqrt(q)
std::vector<double> closed_form_state(ClosedFormState kind, int q);

/// half_angle -> sin^2(pi/(2(q+1)));  variance -> 4 sin^2(pi/(2(q+1)));
/// window     -> 1 - eps (q+1)/(2 pi)   (narrow-window approximation).
double closed_form_min_cost(CostKind kind, int q, std::optional<double> epsilon = std::nullopt);

}  // namespace phasekit
