#include "phasekit/applications.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "phasekit/povm.hpp"
#include "phasekit/rng.hpp"
#include "phasekit/simulate.hpp"
#include "parallel.hpp"

namespace phasekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxSymmetricQubits = 1000;
constexpr int kMaxCircuitBits = 20;

// Row of binomial coefficients; exact in doubles up to N = 56 and accurate
// to ~1e-15 relative beyond.
std::vector<double> binomial_row(int n) {
    std::vector<double> row(n + 1);
    row[0] = 1.0;
    for (int k = 0; k < n; ++k) row[k + 1] = row[k] * (n - k) / (k + 1);
    return row;
}

}  // namespace

double circular_error(double a, double b) {
    const double d = wrap_angle(a - b);
    return d > kPi ? kTwoPi - d : d;
}

CanonicalModel symmetric_model(int N, std::complex<double> a, std::complex<double> b) {
    if (N < 0 || N > kMaxSymmetricQubits)
        throw std::invalid_argument("qubit count out of range");
    const double na = std::norm(a), nb = std::norm(b);
    if (std::abs(na + nb - 1.0) > 1e-9)
        throw std::invalid_argument("(a, b) is not normalized");

    const int q = N + 1;
    const auto binom = binomial_row(N);
    const double arg_a = std::arg(a), arg_b = std::arg(b);

    CanonicalModel model;
    model.q = q;
    model.amplitudes.resize(q, 0.0);
    model.phase_map.assign(q, std::complex<double>(1.0, 0.0));
    double norm2 = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double xk = std::sqrt(binom[k]) * std::pow(std::abs(a), N - k) * std::pow(std::abs(b), k);
        model.amplitudes[k] = xk;
        norm2 += xk * xk;
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (int k = 0; k <= N; ++k) {
        model.amplitudes[k] *= scale;
        if (model.amplitudes[k] * model.amplitudes[k] > kSupportTol) {
            model.support.push_back(k);
            model.phase_map[k] = std::polar(1.0, (N - k) * arg_a + k * arg_b);
        } else {
            model.amplitudes[k] = 0.0;
        }
    }
    return model;
}

double product_state_cost(int N) {
    if (N < 1 || N > kMaxSymmetricQubits)
        throw std::invalid_argument("qubit count out of range");
    const auto binom = binomial_row(N);
    double sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::sqrt(binom[k] * binom[k + 1]);
    return 0.5 - std::ldexp(sum, -(N + 1));
}

PhaseNetwork shor_multipliers(int L) {
    if (L < 1 || L > 62) throw std::invalid_argument("qubit count out of range");
    std::vector<std::int64_t> multipliers(L);
    for (int l = 0; l < L; ++l) multipliers[l] = std::int64_t{1} << l;
    return PhaseNetwork(std::move(multipliers));
}

std::int64_t DihedralInstance::total() const {
    std::int64_t sum = 0;
    for (std::int64_t k : samples) sum += k;
    return sum;
}

int DihedralInstance::dimension() const { return static_cast<int>(total()) + 1; }

std::pair<CanonicalModel, SpectrumTable> dihedral_model(const DihedralInstance& instance) {
    const std::int64_t limit = std::int64_t{1} << instance.bit_length;
    for (std::int64_t k : instance.samples)
        if (k < 0 || k >= limit)
            throw std::invalid_argument("dihedral sample out of {0 .. 2^n - 1}");

    SpectrumTable table{subset_sum_multiplicities(instance.samples)};
    const int q = static_cast<int>(table.size());
    const double total = std::ldexp(1.0, static_cast<int>(instance.samples.size()));

    CanonicalModel model;
    model.q = q;
    model.amplitudes.resize(q, 0.0);
    model.phase_map.assign(q, std::complex<double>(1.0, 0.0));
    for (int j = 0; j < q; ++j) {
        if (table.multiplicities[j] == 0) continue;
        model.support.push_back(j);
        model.amplitudes[j] = std::sqrt(static_cast<double>(table.multiplicities[j]) / total);
    }
    return {std::move(model), std::move(table)};
}

DihedralReport dihedral_estimate_experiment(int n, int m, std::uint64_t trials,
                                            std::uint64_t seed, int threads) {
    if (n < 1 || n > 30) throw std::invalid_argument("bit length out of range");
    if (m < 0) throw std::invalid_argument("sample count must be nonnegative");
    if (trials < 1) throw std::invalid_argument("at least one trial is required");
    const std::int64_t worst_q = static_cast<std::int64_t>(m) * ((std::int64_t{1} << n) - 1) + 1;
    if (worst_q > kDihedralDimensionCap)
        throw std::invalid_argument("instance dimension exceeds the 2^16 cap");

    struct Block {
        std::uint64_t within_grid = 0;
        std::uint64_t within_target = 0;
        double dim_sum = 0.0;
        std::vector<std::uint64_t> histogram = std::vector<std::uint64_t>(kErrorHistogramBins, 0);
    };
    const std::uint64_t blocks = (trials + detail::kBlockSize - 1) / detail::kBlockSize;
    std::vector<Block> acc(blocks);
    const double target = kTwoPi / std::ldexp(1.0, n);

    detail::run_blocks(trials, threads,
                       [&](std::uint64_t block, std::uint64_t first, std::uint64_t last) {
        auto engine = seeded_engine(seed, block);
        Block& a = acc[block];
        DihedralInstance instance;
        instance.bit_length = n;
        instance.samples.resize(m);
        for (std::uint64_t t = first; t < last; ++t) {
            for (int j = 0; j < m; ++j)
                instance.samples[j] =
                    static_cast<std::int64_t>(uniform_index(engine, std::uint64_t{1} << n));
            const double phi = kTwoPi * uniform_double(engine);
            const auto [model, table] = dihedral_model(instance);
            const Outcome outcome = sample_outcome(model, phi, engine);
            const double err = circular_error(outcome.angle, phi);
            const double grid = kTwoPi / model.q;
            if (err <= kPi / model.q) ++a.within_grid;
            if (err <= target) ++a.within_target;
            a.dim_sum += model.q;
            const auto bin = std::min<std::uint64_t>(
                static_cast<std::uint64_t>(err / (0.5 * grid)), kErrorHistogramBins - 1);
            ++a.histogram[bin];
        }
    });

    DihedralReport report;
    report.bit_length = n;
    report.sample_count = m;
    report.trials = trials;
    report.rng_seed = seed;
    report.error_histogram.assign(kErrorHistogramBins, 0);
    std::uint64_t within_grid = 0, within_target = 0;
    double dim_sum = 0.0;
    for (const auto& a : acc) {
        within_grid += a.within_grid;
        within_target += a.within_target;
        dim_sum += a.dim_sum;
        for (int b = 0; b < kErrorHistogramBins; ++b) report.error_histogram[b] += a.histogram[b];
    }
    report.p_error_within_grid = static_cast<double>(within_grid) / static_cast<double>(trials);
    report.p_error_within_target = static_cast<double>(within_target) / static_cast<double>(trials);
    report.mean_dimension = dim_sum / static_cast<double>(trials);
    return report;
}

PhaseCircuit phase_circuit(int bits, double phi) {
    if (bits < 1 || bits > kMaxCircuitBits)
        throw std::invalid_argument("bit count out of range");

    PhaseCircuit circuit;
    circuit.gates.reserve(bits);
    for (int l = 0; l < bits; ++l)
        circuit.gates.push_back(PhaseGate{l, std::uint64_t{1} << l});

    // Check the per-bit phases against e^{i phi k}; the reference angle is
    // reduced in extended precision so it does not dominate the error.
    const std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t k = 0; k < count; ++k) {
        std::complex<double> acc(1.0, 0.0);
        for (const auto& gate : circuit.gates)
            if ((k >> gate.qubit) & 1u)
                acc *= std::polar(1.0, phi * static_cast<double>(gate.multiple));
        const long double angle =
            std::fmod(static_cast<long double>(phi) * static_cast<long double>(k),
                      2.0L * std::numbers::pi_v<long double>);
        const std::complex<double> ref(static_cast<double>(std::cos(angle)),
                                       static_cast<double>(std::sin(angle)));
        circuit.max_phase_error = std::max(circuit.max_phase_error, std::abs(acc - ref));
    }
    circuit.verified = circuit.max_phase_error <= 1e-12;
    return circuit;
}

}  // namespace phasekit
