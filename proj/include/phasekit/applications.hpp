#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "phasekit/spectrum.hpp"

namespace phasekit {

/// Canonical model of N qubits prepared in (a|0> + b|1>)^{tensor N}: the
/// symmetric-multiplet reduction with q = N+1 and binomial amplitudes
/// x_k = sqrt(C(N,k)) |a|^{N-k} |b|^k.  The absorbed phases
/// (N-k) arg(a) + k arg(b) land in phase_map.
CanonicalModel symmetric_model(int N, std::complex<double> a, std::complex<double> b);

/// Half-angle cost of the best product state (a = b = 1/sqrt(2)):
/// 1/2 - 2^{-(N+1)} sum_k sqrt(C(N,k) C(N,k+1)).
double product_state_cost(int N);

/// Multipliers n_l = 2^{l-1}: every subset sum is hit exactly once and the
/// canonical dimension is q = 2^L.
PhaseNetwork shor_multipliers(int L);

/// Phase-estimation instance arising from the dihedral hidden subgroup
/// reduction: m qubits |0> + e^{i k_j phi} |1> with known integers k_j.
struct DihedralInstance {
    int bit_length = 0;                  // k_j are drawn from {0 .. 2^n - 1}
    std::vector<std::int64_t> samples;   // the k_j

    std::int64_t total() const;
    int dimension() const;               // q = sum k_j + 1
};

/// Model with x_j = sqrt(n_j / 2^m) where n_j counts the subset sums of the
/// k_j equal to j; also returns the multiplicity table.
std::pair<CanonicalModel, SpectrumTable> dihedral_model(const DihedralInstance& instance);

inline constexpr int kDihedralDimensionCap = 1 << 16;
inline constexpr int kErrorHistogramBins = 17;  // width 0.5 in units of 2pi/q, last bin overflow

struct DihedralReport {
    int bit_length = 0;
    int sample_count = 0;
    std::uint64_t trials = 0;
    std::uint64_t rng_seed = 0;
    double p_error_within_grid = 0.0;    // circular error <= pi/q
    double p_error_within_target = 0.0;  // circular error <= 2pi/2^n
    double mean_dimension = 0.0;
    std::vector<std::uint64_t> error_histogram;  // normalized error, bins of 0.5 grid units
};

/// Repeatedly draw an instance and a phase, measure with the optimal
/// discrete measurement in the canonical basis, and score the circular
/// estimation error.
DihedralReport dihedral_estimate_experiment(int n, int m, std::uint64_t trials,
                                            std::uint64_t seed, int threads = 1);

struct PhaseGate {
    int qubit = 0;
    std::uint64_t multiple = 1;  // applies u_phi^multiple
};

struct PhaseCircuit {
    std::vector<PhaseGate> gates;
    double max_phase_error = 0.0;
    bool verified = false;
};

/// Per-bit decomposition of |k> -> e^{i phi k} |k> for k represented in
/// `bits` binary digits: gate (l, 2^l) on each bit line.  The returned
/// report checks the accumulated phase against e^{i phi k} for every k.
PhaseCircuit phase_circuit(int bits, double phi);

/// Smallest circular distance between two angles, in [0, pi].
double circular_error(double a, double b);

}  // namespace phasekit
