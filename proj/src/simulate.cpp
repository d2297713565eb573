#include "phasekit/simulate.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "phasekit/povm.hpp"
#include "phasekit/rng.hpp"
#include "parallel.hpp"

namespace phasekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double draw_phase(const PriorSpec& prior, std::mt19937_64& engine) {
    switch (prior.kind) {
        case PriorKind::uniform:
            return kTwoPi * uniform_double(engine);
        case PriorKind::point_mass:
            return prior.support.front().first;
        case PriorKind::discrete: {
            const double u = uniform_double(engine);
            double acc = 0.0;
            for (const auto& [phi, weight] : prior.support) {
                acc += weight;
                if (u < acc) return phi;
            }
            return prior.support.back().first;
        }
    }
    throw std::invalid_argument("unknown prior kind");
}

struct BlockAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<std::uint64_t> histogram;
    std::vector<TraceRow> trace;
};

}  // namespace

PriorSpec PriorSpec::uniform() { return PriorSpec{PriorKind::uniform, {}}; }

PriorSpec PriorSpec::point_mass(double phi) {
    return PriorSpec{PriorKind::point_mass, {{wrap_angle(phi), 1.0}}};
}

PriorSpec PriorSpec::discrete(std::vector<std::pair<double, double>> support) {
    PriorSpec prior{PriorKind::discrete, std::move(support)};
    validate_prior(prior);
    return prior;
}

void validate_prior(const PriorSpec& prior) {
    if (prior.kind == PriorKind::uniform) return;
    if (prior.support.empty())
        throw std::invalid_argument("non-uniform prior needs support points");
    if (prior.kind == PriorKind::point_mass && prior.support.size() != 1)
        throw std::invalid_argument("point-mass prior has exactly one support point");
    double total = 0.0;
    for (const auto& [phi, weight] : prior.support) {
        if (weight < 0.0) throw std::invalid_argument("prior weights must be nonnegative");
        total += weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("prior weights must sum to 1");
}

Outcome sample_outcome(const CanonicalModel& model, double phi, std::mt19937_64& engine) {
    const auto prob = outcome_distribution(model, phi);
    const double u = uniform_double(engine);
    double acc = 0.0;
    int s = model.q - 1;
    for (int i = 0; i < model.q; ++i) {
        acc += prob[i];
        if (u < acc) {
            s = i;
            break;
        }
    }
    return Outcome{s, outcome_angle(model.q, s)};
}

EstimateSample uniformized_sample(const CanonicalModel& model, double phi,
                                  std::mt19937_64& engine, std::uint64_t mesh_points) {
    if (mesh_points == 0) throw std::invalid_argument("mesh must have at least one point");
    double phi_r = 0.0;
    if (mesh_points > 1)
        phi_r = kTwoPi * static_cast<double>(uniform_index(engine, mesh_points)) /
                static_cast<double>(mesh_points);
    const Outcome raw = sample_outcome(model, wrap_angle(phi + phi_r), engine);
    return EstimateSample{wrap_angle(raw.angle - phi_r), raw};
}

double uniformized_estimate(const CanonicalModel& model, double phi,
                            std::mt19937_64& engine, std::uint64_t mesh_points) {
    return uniformized_sample(model, phi, engine, mesh_points).estimate;
}

TrialReport monte_carlo(const CanonicalModel& model, const CostSpec& cost,
                        const PriorSpec& prior, std::uint64_t trials,
                        std::uint64_t seed, const SimOptions& options) {
    if (trials < 1) throw std::invalid_argument("at least one trial is required");
    if (cost.label == CostKind::likelihood)
        throw std::invalid_argument(
            "the truncated likelihood series is not a pointwise cost; it cannot be simulated");
    validate_prior(prior);

    const std::uint64_t blocks = (trials + detail::kBlockSize - 1) / detail::kBlockSize;
    std::vector<BlockAccumulator> acc(blocks);

    detail::run_blocks(trials, options.threads,
                       [&](std::uint64_t block, std::uint64_t first, std::uint64_t last) {
        auto engine = seeded_engine(seed, block);
        BlockAccumulator& a = acc[block];
        a.histogram.assign(model.q, 0);
        if (options.trace) a.trace.reserve(last - first);
        for (std::uint64_t t = first; t < last; ++t) {
            const double phi = draw_phase(prior, engine);
            double estimate;
            Outcome raw;
            if (options.uniformize) {
                const EstimateSample es = uniformized_sample(model, phi, engine, options.mesh_points);
                estimate = es.estimate;
                raw = es.raw;
            } else {
                raw = sample_outcome(model, phi, engine);
                estimate = raw.angle;
            }
            const double c = evaluate(cost, estimate - phi);
            a.sum += c;
            a.sum_sq += c * c;
            ++a.histogram[raw.index];
            if (options.trace) a.trace.push_back(TraceRow{phi, raw.index, raw.angle, c});
        }
    });

    TrialReport report;
    report.trials = trials;
    report.rng_seed = seed;
    report.outcome_histogram.assign(model.q, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& a : acc) {
        sum += a.sum;
        sum_sq += a.sum_sq;
        for (int s = 0; s < model.q; ++s) report.outcome_histogram[s] += a.histogram[s];
        if (options.trace)
            options.trace->insert(options.trace->end(), a.trace.begin(), a.trace.end());
    }
    const double n = static_cast<double>(trials);
    report.mean_cost = sum / n;
    if (trials > 1) {
        const double var = std::max(0.0, (sum_sq - n * report.mean_cost * report.mean_cost) / (n - 1.0));
        report.std_error = std::sqrt(var / n);
    }
    return report;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
    out << "phi,outcome,outcome_angle,cost\n";
    out << std::setprecision(17);
    for (const auto& row : rows)
        out << row.phi << ',' << row.outcome << ',' << row.outcome_angle << ',' << row.cost << '\n';
}

}  // namespace phasekit
