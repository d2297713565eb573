#include "phasekit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phasekit {

namespace {

// 2^L multiplicities must stay exact in 64 bits.
constexpr int kMaxSpectrumQubits = 63;
// State vectors of 2^L complex doubles; 24 qubits = 256 MiB.
constexpr int kMaxCanonicalizeQubits = 24;

}  // namespace

PhaseNetwork::PhaseNetwork(std::vector<std::int64_t> multipliers)
    : multipliers_(std::move(multipliers)) {
    total_ = 0;
    for (std::int64_t n : multipliers_) {
        if (n < 1) throw std::invalid_argument("phase network multipliers must be >= 1");
        total_ += n;
    }
}

bool CanonicalModel::in_support(int k) const {
    return std::binary_search(support.begin(), support.end(), k);
}

std::vector<std::uint64_t> subset_sum_multiplicities(std::span<const std::int64_t> values) {
    if (values.size() > kMaxSpectrumQubits)
        throw std::invalid_argument("subset-sum multiplicities overflow 64 bits beyond 63 elements");
    std::int64_t total = 0;
    for (std::int64_t v : values) {
        if (v < 0) throw std::invalid_argument("subset-sum values must be nonnegative");
        total += v;
    }
    std::vector<std::uint64_t> mult(static_cast<std::size_t>(total) + 1, 0);
    mult[0] = 1;
    std::int64_t reached = 0;
    for (std::int64_t v : values) {
        if (v == 0) {
            for (std::int64_t j = 0; j <= reached; ++j) mult[j] *= 2;
            continue;
        }
        reached += v;
        for (std::int64_t j = reached; j >= v; --j) mult[j] += mult[j - v];
    }
    return mult;
}

SpectrumTable subset_sum_spectrum(const PhaseNetwork& network) {
    return SpectrumTable{subset_sum_multiplicities(network.multipliers())};
}

CanonicalModel canonicalize(const PhaseNetwork& network,
                            std::span<const std::complex<double>> input_amplitudes) {
    const int L = network.qubit_count();
    if (L > kMaxCanonicalizeQubits)
        throw std::invalid_argument("canonicalize supports at most 24 qubits");
    const std::size_t dim = std::size_t{1} << L;
    if (input_amplitudes.size() != dim)
        throw std::invalid_argument("input state length must be 2^L");

    double norm2 = 0.0;
    for (const auto& a : input_amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("input state is not normalized");

    const int q = static_cast<int>(network.total()) + 1;
    std::vector<double> p(q, 0.0);
    std::vector<std::complex<double>> lead(q, std::complex<double>(1.0, 0.0));
    std::vector<double> lead_mag(q, 0.0);

    const auto& n = network.multipliers();
    for (std::size_t b = 0; b < dim; ++b) {
        std::int64_t k = 0;
        for (int l = 0; l < L; ++l)
            if ((b >> l) & 1u) k += n[l];
        const double w = std::norm(input_amplitudes[b]);
        p[k] += w;
        if (w > lead_mag[k]) {
            lead_mag[k] = w;
            lead[k] = input_amplitudes[b] / std::abs(input_amplitudes[b]);
        }
    }

    CanonicalModel model;
    model.q = q;
    model.amplitudes.resize(q, 0.0);
    model.phase_map.assign(q, std::complex<double>(1.0, 0.0));
    for (int k = 0; k < q; ++k) {
        if (p[k] > kSupportTol) {
            model.support.push_back(k);
            model.amplitudes[k] = std::sqrt(p[k]);
            model.phase_map[k] = lead[k];
        }
    }
    return model;
}

CanonicalModel model_from_amplitudes(std::vector<double> amplitudes) {
    if (amplitudes.empty()) throw std::invalid_argument("amplitude vector is empty");
    double norm2 = 0.0;
    for (double x : amplitudes) {
        if (x < 0.0) throw std::invalid_argument("canonical amplitudes must be nonnegative");
        norm2 += x * x;
    }
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("amplitude vector is not normalized");
    const double scale = 1.0 / std::sqrt(norm2);

    CanonicalModel model;
    model.q = static_cast<int>(amplitudes.size());
    model.amplitudes = std::move(amplitudes);
    model.phase_map.assign(model.q, std::complex<double>(1.0, 0.0));
    for (int k = 0; k < model.q; ++k) {
        model.amplitudes[k] *= scale;
        if (model.amplitudes[k] * model.amplitudes[k] > kSupportTol)
            model.support.push_back(k);
        else
            model.amplitudes[k] = 0.0;
    }
    return model;
}

double wrap_angle(double phi) {
    double r = std::fmod(phi, 2.0 * std::numbers::pi);
    if (r < 0.0) r += 2.0 * std::numbers::pi;
    return r;
}

std::vector<std::complex<double>> apply_phase(const CanonicalModel& model, double phi) {
    const double reduced = wrap_angle(phi);
    std::vector<std::complex<double>> out(model.q);
    for (int k = 0; k < model.q; ++k)
        out[k] = model.amplitudes[k] * std::polar(1.0, reduced * k);
    return out;
}

}  // namespace phasekit
