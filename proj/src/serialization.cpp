#include "phasekit/serialization.hpp"

#include <stdexcept>

namespace phasekit {

using nlohmann::json;

void to_json(json& j, const PhaseNetwork& network) { j = network.multipliers(); }

void from_json(const json& j, PhaseNetwork& network) {
    network = PhaseNetwork(j.get<std::vector<std::int64_t>>());
}

void to_json(json& j, const SpectrumTable& table) { j = table.multiplicities; }

void to_json(json& j, const CanonicalModel& model) {
    j = json{{"q", model.q}, {"support", model.support}, {"amplitudes", model.amplitudes}};
}

void from_json(const json& j, CanonicalModel& model) {
    std::vector<double> amplitudes = j.at("amplitudes").get<std::vector<double>>();
    if (j.at("q").get<int>() != static_cast<int>(amplitudes.size()))
        throw std::invalid_argument("model dimension does not match amplitude count");
    model = model_from_amplitudes(std::move(amplitudes));
    if (j.contains("support") && j.at("support").get<std::vector<int>>() != model.support)
        throw std::invalid_argument("model support does not match its amplitudes");
}

void to_json(json& j, const CostSpec& cost) {
    j = json{{"label", to_string(cost.label)},
             {"coefficients", cost.coefficients},
             {"epsilon", nullptr}};
    if (cost.window_epsilon) j["epsilon"] = *cost.window_epsilon;
}

void from_json(const json& j, CostSpec& cost) {
    cost.label = cost_kind_from_string(j.at("label").get<std::string>());
    cost.coefficients = j.at("coefficients").get<std::vector<double>>();
    cost.window_epsilon.reset();
    if (j.contains("epsilon") && !j.at("epsilon").is_null())
        cost.window_epsilon = j.at("epsilon").get<double>();
}

void to_json(json& j, const SeedMatrix& seed) {
    json rows = json::array();
    for (int h = 0; h < seed.dimension; ++h)
        for (int k = 0; k < seed.dimension; ++k)
            rows.push_back(json::array({seed.entries(h, k).real(), seed.entries(h, k).imag()}));
    j = json{{"dimension", seed.dimension}, {"entries", std::move(rows)}};
}

void from_json(const json& j, SeedMatrix& seed) {
    seed.dimension = j.at("dimension").get<int>();
    const auto& rows = j.at("entries");
    if (rows.size() != static_cast<std::size_t>(seed.dimension) * seed.dimension)
        throw std::invalid_argument("seed entry count does not match dimension^2");
    seed.entries.resize(seed.dimension, seed.dimension);
    std::size_t i = 0;
    for (int h = 0; h < seed.dimension; ++h)
        for (int k = 0; k < seed.dimension; ++k, ++i)
            seed.entries(h, k) = {rows[i][0].get<double>(), rows[i][1].get<double>()};
}

void to_json(json& j, const SeedValidation& report) {
    j = json{{"ok", report.ok()},
             {"hermitian", report.hermitian},
             {"unit_diagonal", report.unit_diagonal},
             {"positive_semidefinite", report.positive_semidefinite},
             {"modulus_bounded", report.modulus_bounded},
             {"min_eigenvalue", report.min_eigenvalue},
             {"violations", report.violations}};
}

void to_json(json& j, const DiscreteMeasurement& measurement) {
    j = json{{"dimension", measurement.dimension}};
}

void to_json(json& j, const OptimalStateResult& result) {
    j = json{{"q", result.q},
             {"cost_label", to_string(result.cost_label)},
             {"amplitudes", result.amplitudes},
             {"min_cost", result.min_cost},
             {"holevo_class", result.holevo_class},
             {"sign_ambiguous", result.sign_ambiguous}};
}

void to_json(json& j, const TrialReport& report) {
    j = json{{"trials", report.trials},
             {"mean_cost", report.mean_cost},
             {"std_error", report.std_error},
             {"outcome_histogram", report.outcome_histogram},
             {"rng_seed", report.rng_seed}};
}

void to_json(json& j, const DihedralReport& report) {
    j = json{{"bit_length", report.bit_length},
             {"sample_count", report.sample_count},
             {"trials", report.trials},
             {"rng_seed", report.rng_seed},
             {"p_error_within_grid", report.p_error_within_grid},
             {"p_error_within_target", report.p_error_within_target},
             {"mean_dimension", report.mean_dimension},
             {"error_histogram", report.error_histogram}};
}

void to_json(json& j, const PhaseCircuit& circuit) {
    json gates = json::array();
    for (const auto& gate : circuit.gates)
        gates.push_back(json{{"qubit", gate.qubit}, {"multiple", gate.multiple}});
    j = json{{"gates", std::move(gates)},
             {"max_phase_error", circuit.max_phase_error},
             {"verified", circuit.verified}};
}

void from_json(const json& j, PriorSpec& prior) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "uniform") {
        prior = PriorSpec::uniform();
        return;
    }
    if (kind != "point_mass" && kind != "discrete")
        throw std::invalid_argument("unknown prior kind: " + kind);
    std::vector<std::pair<double, double>> support;
    for (const auto& row : j.at("support"))
        support.emplace_back(row[0].get<double>(), row[1].get<double>());
    if (kind == "point_mass") {
        if (support.size() != 1)
            throw std::invalid_argument("point-mass prior has exactly one support point");
        prior = PriorSpec::point_mass(support[0].first);
    } else {
        prior = PriorSpec::discrete(std::move(support));
    }
}

}  // namespace phasekit
