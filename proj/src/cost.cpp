#include "phasekit/cost.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "phasekit/povm.hpp"

namespace phasekit {

namespace {

constexpr double kPi = std::numbers::pi;

void check_truncation(int truncation_q) {
    if (truncation_q < 1) throw std::invalid_argument("truncation_q must be >= 1");
}

void truncate(std::vector<double>& coeffs, int truncation_q) {
    if (coeffs.size() > static_cast<std::size_t>(truncation_q))
        coeffs.resize(truncation_q);
}

}  // namespace

std::string to_string(CostKind kind) {
    switch (kind) {
        case CostKind::variance: return "variance";
        case CostKind::half_angle: return "half_angle";
        case CostKind::likelihood: return "likelihood";
        case CostKind::window: return "window";
        case CostKind::fidelity: return "fidelity";
        case CostKind::custom: return "custom";
    }
    throw std::invalid_argument("unknown cost kind");
}

CostKind cost_kind_from_string(const std::string& name) {
    if (name == "variance") return CostKind::variance;
    if (name == "half_angle") return CostKind::half_angle;
    if (name == "likelihood") return CostKind::likelihood;
    if (name == "window") return CostKind::window;
    if (name == "fidelity") return CostKind::fidelity;
    if (name == "custom") return CostKind::custom;
    throw std::invalid_argument("unknown cost kind: " + name);
}

CostSpec make_variance_cost(int truncation_q) {
    check_truncation(truncation_q);
    CostSpec spec{CostKind::variance, {-2.0, 2.0}, std::nullopt};
    truncate(spec.coefficients, truncation_q);
    return spec;
}

CostSpec make_half_angle_cost(int truncation_q) {
    check_truncation(truncation_q);
    CostSpec spec{CostKind::half_angle, {-0.5, 0.5}, std::nullopt};
    truncate(spec.coefficients, truncation_q);
    return spec;
}

CostSpec make_likelihood_cost(int truncation_q) {
    check_truncation(truncation_q);
    CostSpec spec{CostKind::likelihood, {}, std::nullopt};
    spec.coefficients.resize(truncation_q, 1.0 / kPi);
    spec.coefficients[0] = 1.0 / (2.0 * kPi);
    return spec;
}

CostSpec make_window_cost(double epsilon, int truncation_q) {
    check_truncation(truncation_q);
    if (!(epsilon > 0.0) || epsilon > kPi)
        throw std::invalid_argument("window epsilon must satisfy 0 < eps <= pi");
    CostSpec spec{CostKind::window, {}, epsilon};
    spec.coefficients.resize(truncation_q);
    spec.coefficients[0] = epsilon / kPi - 1.0;
    for (int l = 1; l < truncation_q; ++l)
        spec.coefficients[l] = std::sin(l * epsilon) / (l * kPi);
    return spec;
}

CostSpec make_fidelity_cost(const CanonicalModel& model, int truncation_q) {
    check_truncation(truncation_q);
    CostSpec spec{CostKind::fidelity, {}, std::nullopt};
    const int q = model.q;
    spec.coefficients.resize(q, 0.0);
    double quartic = 0.0;
    for (int k = 0; k < q; ++k) {
        const double xk2 = model.amplitudes[k] * model.amplitudes[k];
        quartic += xk2 * xk2;
        for (int h = 0; h < k; ++h) {
            const double xh2 = model.amplitudes[h] * model.amplitudes[h];
            spec.coefficients[k - h] += 2.0 * xh2 * xk2;
        }
    }
    spec.coefficients[0] = quartic - 1.0;
    truncate(spec.coefficients, truncation_q);
    return spec;
}

CostSpec make_custom_cost(std::vector<double> coefficients, int truncation_q) {
    check_truncation(truncation_q);
    for (double c : coefficients)
        if (!std::isfinite(c)) throw std::invalid_argument("cost coefficients must be finite");
    CostSpec spec{CostKind::custom, std::move(coefficients), std::nullopt};
    truncate(spec.coefficients, truncation_q);
    return spec;
}

CostSpec make_cost(CostKind kind, const CostParams& params, int truncation_q) {
    switch (kind) {
        case CostKind::variance: return make_variance_cost(truncation_q);
        case CostKind::half_angle: return make_half_angle_cost(truncation_q);
        case CostKind::likelihood: return make_likelihood_cost(truncation_q);
        case CostKind::window:
            if (!params.epsilon) throw std::invalid_argument("window cost requires epsilon");
            return make_window_cost(*params.epsilon, truncation_q);
        case CostKind::fidelity:
            if (!params.model) throw std::invalid_argument("fidelity cost requires a model");
            return make_fidelity_cost(*params.model, truncation_q);
        case CostKind::custom:
            if (!params.custom_coefficients)
                throw std::invalid_argument("custom cost requires coefficients");
            return make_custom_cost(*params.custom_coefficients, truncation_q);
    }
    throw std::invalid_argument("unknown cost kind");
}

double evaluate(const CostSpec& cost, double phi) {
    double value = 0.0;
    for (std::size_t l = 0; l < cost.coefficients.size(); ++l)
        value -= cost.coefficients[l] * std::cos(static_cast<double>(l) * phi);
    return value;
}

bool is_holevo(const CostSpec& cost, int q) {
    const std::size_t limit = std::min<std::size_t>(cost.coefficients.size(), q);
    for (std::size_t l = 1; l < limit; ++l)
        if (cost.coefficients[l] < 0.0) return false;
    return true;
}

double average_cost_fourier(const CanonicalModel& model, const SeedMatrix& seed,
                            const CostSpec& cost) {
    const int q = model.q;
    if (seed.dimension != q)
        throw std::invalid_argument("seed dimension does not match model dimension");
    double value = -cost.c(0);
    const auto& x = model.amplitudes;
    for (int l = 1; l < q; ++l) {
        const double cl = cost.c(l);
        if (cl == 0.0) continue;
        double pair_sum = 0.0;  // over ordered pairs |h-k| = l
        for (int k = 0; k + l < q; ++k)
            pair_sum += 2.0 * x[k + l] * seed.entries(k + l, k).real() * x[k];
        value -= 0.5 * cl * pair_sum;
    }
    return value;
}

double average_cost_quadrature(const CanonicalModel& model, const CostSpec& cost,
                               int grid_points) {
    if (grid_points < 2 * model.q)
        throw std::invalid_argument("quadrature grid must have at least 2q points");
    const double step = 2.0 * kPi / grid_points;
    double sum = 0.0;
    for (int j = 0; j < grid_points; ++j) {
        const double theta = step * j;
        sum += conditional_density(model, theta) * evaluate(cost, theta);
    }
    return sum * step;
}

}  // namespace phasekit
