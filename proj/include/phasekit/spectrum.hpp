#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace phasekit {

/// Tolerance below which a squared projection weight p_k counts as zero.
inline constexpr double kSupportTol = 1e-12;

/// A network of single-qubit phase gates u_phi^{n_l} acting on L qubits.
/// The network is fully described by the integer multipliers {n_l}.
class PhaseNetwork {
public:
    PhaseNetwork() = default;
    explicit PhaseNetwork(std::vector<std::int64_t> multipliers);

    const std::vector<std::int64_t>& multipliers() const { return multipliers_; }
    int qubit_count() const { return static_cast<int>(multipliers_.size()); }
    std::int64_t total() const { return total_; }

private:
    std::vector<std::int64_t> multipliers_;
    std::int64_t total_ = 0;
};

/// Multiplicities of the integer eigenvalues of the shift operator:
/// entry j counts the bitstrings b with sum_l b_l n_l = j.
struct SpectrumTable {
    std::vector<std::uint64_t> multiplicities;

    std::size_t size() const { return multiplicities.size(); }
};

/// Reduced non-degenerate estimation model on span{|k>, k in S} with
/// nonnegative amplitudes x_k.  Entries outside the support are kept as
/// explicit zeros, so S is implicitly completed to Z_q.
struct CanonicalModel {
    int q = 0;
    std::vector<int> support;                       // sorted, x_k > 0 exactly here
    std::vector<double> amplitudes;                 // length q, x_k >= 0
    std::vector<std::complex<double>> phase_map;    // length q, unit modulus

    bool in_support(int k) const;
};

/// Multiplicity table of subset sums of the multipliers, computed by
/// dynamic programming in O(L * N).  An empty network yields [1].
SpectrumTable subset_sum_spectrum(const PhaseNetwork& network);

/// Subset-sum DP over an arbitrary nonnegative multiset (zeros allowed;
/// each zero doubles every multiplicity).
std::vector<std::uint64_t> subset_sum_multiplicities(std::span<const std::int64_t> values);

/// Project a normalized L-qubit input state onto the eigenspaces of the
/// shift operator and reduce to the canonical model: x_k = sqrt(p_k),
/// S = {k : p_k > kSupportTol}.  phase_map[k] records the phase of the
/// largest-magnitude component of the projection, so a non-degenerate
/// component is reconstructible as x_k * phase_map[k].
CanonicalModel canonicalize(const PhaseNetwork& network,
                            std::span<const std::complex<double>> input_amplitudes);

/// Wrap a nonnegative amplitude vector (normalized within 1e-9) into a
/// canonical model with trivial phases.
CanonicalModel model_from_amplitudes(std::vector<double> amplitudes);

/// Component k of exp(iH*phi)|Psi0>, i.e. x_k * e^{ik*phi}.  phi is
/// reduced mod 2*pi first.
std::vector<std::complex<double>> apply_phase(const CanonicalModel& model, double phi);

/// Reduce an angle to [0, 2*pi).
double wrap_angle(double phi);

}  // namespace phasekit
