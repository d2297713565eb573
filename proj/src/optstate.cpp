#include "phasekit/optstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phasekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegeneracyTol = 1e-10;
constexpr int kMaxDenseDimension = 512;

// Flip the overall sign so the largest-magnitude entry is positive, then
// decide whether the vector is entrywise nonnegative up to round-off.
bool sign_fix(Eigen::VectorXd& v) {
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    return v.minCoeff() >= -kDegeneracyTol;
}

}  // namespace

CostOperator cost_operator(const CostSpec& cost, int q) {
    if (q < 1) throw std::invalid_argument("cost operator dimension must be >= 1");
    CostOperator op{q, Eigen::MatrixXd(q, q)};
    for (int h = 0; h < q; ++h) {
        op.entries(h, h) = -cost.c(0);
        for (int k = 0; k < h; ++k) {
            const double value = -0.5 * cost.c(h - k);
            op.entries(h, k) = value;
            op.entries(k, h) = value;
        }
    }
    return op;
}

OptimalStateResult optimal_state(const CostSpec& cost, int q) {
    if (q > kMaxDenseDimension)
        throw std::invalid_argument("optimal_state is limited to q <= 512");
    const CostOperator op = cost_operator(cost, q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.entries);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("cost operator eigendecomposition failed to converge");

    const auto& values = solver.eigenvalues();  // ascending
    const double min_value = values[0];

    OptimalStateResult result;
    result.q = q;
    result.cost_label = cost.label;
    result.min_cost = min_value;
    result.holevo_class = is_holevo(cost, q);

    // Among (near-)degenerate ground eigenvectors prefer one that is
    // entrywise nonnegative after the global sign fix.
    Eigen::VectorXd chosen;
    bool found_nonneg = false;
    for (int i = 0; i < q && values[i] <= min_value + kDegeneracyTol; ++i) {
        Eigen::VectorXd v = solver.eigenvectors().col(i);
        const bool nonneg = sign_fix(v);
        if (i == 0) chosen = v;
        if (nonneg) {
            chosen = v;
            found_nonneg = true;
            break;
        }
    }
    result.sign_ambiguous = !found_nonneg;

    chosen.normalize();
    result.amplitudes.resize(q);
    for (int k = 0; k < q; ++k)
        result.amplitudes[k] = (chosen[k] < 0.0 && chosen[k] >= -kDegeneracyTol) ? 0.0 : chosen[k];
    return result;
}

std::vector<double> closed_form_state(ClosedFormState kind, int q) {
    if (q < 1) throw std::invalid_argument("state dimension must be >= 1");
    std::vector<double> x(q);
    switch (kind) {
        case ClosedFormState::sine: {
            const double norm = std::sqrt(2.0 / (q + 1));
            for (int j = 0; j < q; ++j)
                x[j] = norm * std::sin((j + 1) * kPi / (q + 1));
            break;
        }
        case ClosedFormState::uniform: {
            const double value = 1.0 / std::sqrt(static_cast<double>(q));
            for (int j = 0; j < q; ++j) x[j] = value;
            break;
        }
    }
    return x;
}

double closed_form_min_cost(CostKind kind, int q, std::optional<double> epsilon) {
    if (q < 1) throw std::invalid_argument("dimension must be >= 1");
    const double s = std::sin(kPi / (2.0 * (q + 1)));
    switch (kind) {
        case CostKind::half_angle:
            return s * s;
        case CostKind::variance:
            return 4.0 * s * s;
        case CostKind::window:
            if (!epsilon) throw std::invalid_argument("window minimum cost requires epsilon");
            return 1.0 - *epsilon * (q + 1) / (2.0 * kPi);
        default:
            throw std::invalid_argument("no closed-form minimum cost for this kind");
    }
}

}  // namespace phasekit
