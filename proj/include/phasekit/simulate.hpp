#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "phasekit/cost.hpp"
#include "phasekit/spectrum.hpp"

namespace phasekit {

enum class PriorKind { uniform, point_mass, discrete };

/// Prior distribution of the true phase.  Uniform is the canonical case;
/// point-mass and discrete priors exist to exercise the uniformization
/// wrapper against adversarial choices.
struct PriorSpec {
    PriorKind kind = PriorKind::uniform;
    std::vector<std::pair<double, double>> support;  // (phi, weight)

    static PriorSpec uniform();
    static PriorSpec point_mass(double phi);
    static PriorSpec discrete(std::vector<std::pair<double, double>> support);
};

void validate_prior(const PriorSpec& prior);

/// Measurement outcome together with its estimate angle phi_s; consumers
/// must not recompute phi_s on their own.
struct Outcome {
    int index = 0;
    double angle = 0.0;
};

/// Draw an outcome from the Born-rule distribution Pr(s|phi).
Outcome sample_outcome(const CanonicalModel& model, double phi, std::mt19937_64& engine);

struct EstimateSample {
    double estimate = 0.0;  // in [0, 2pi)
    Outcome raw;
};

/// Phase-randomized estimation: draw phi_r uniformly on a mesh of
/// mesh_points values of [0, 2pi) (mesh_points == 1 forces phi_r = 0 and
/// consumes no randomness), measure at phi + phi_r, report phi_s - phi_r.
/// This makes the mean cost independent of the prior.
EstimateSample uniformized_sample(const CanonicalModel& model, double phi,
                                  std::mt19937_64& engine,
                                  std::uint64_t mesh_points = std::uint64_t{1} << 20);

double uniformized_estimate(const CanonicalModel& model, double phi,
                            std::mt19937_64& engine,
                            std::uint64_t mesh_points = std::uint64_t{1} << 20);

struct TrialReport {
    std::uint64_t trials = 0;
    double mean_cost = 0.0;
    double std_error = 0.0;
    std::vector<std::uint64_t> outcome_histogram;
    std::uint64_t rng_seed = 0;
};

struct TraceRow {
    double phi = 0.0;
    int outcome = 0;
    double outcome_angle = 0.0;
    double cost = 0.0;
};

struct SimOptions {
    bool uniformize = false;
    std::uint64_t mesh_points = std::uint64_t{1} << 20;
    int threads = 1;
    std::vector<TraceRow>* trace = nullptr;
};

/// Monte Carlo estimate of the average cost: draw phi from the prior,
/// measure, score C(phi_s - phi).  Trials are split into fixed-size blocks
/// with per-block RNG streams and merged in block order, so the report is
/// bit-identical for a given seed regardless of thread count.
TrialReport monte_carlo(const CanonicalModel& model, const CostSpec& cost,
                        const PriorSpec& prior, std::uint64_t trials,
                        std::uint64_t seed, const SimOptions& options = {});

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);

}  // namespace phasekit
