// phasekit: command-line front end for the phase-estimation toolkit.
//
// Subcommands: analyze, optimal, cost, simulate, example1, shor, dihedral,
// circuit, selftest.  Every command is deterministic given its full flag set
// (including --seed); outputs are JSON by default, CSV where a command has a
// natural table.  Exit codes: 0 success, 2 validation error, 3 numerical
// failure.

#include <charconv>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phasekit/applications.hpp"
#include "phasekit/cost.hpp"
#include "phasekit/optstate.hpp"
#include "phasekit/povm.hpp"
#include "phasekit/selftest.hpp"
#include "phasekit/serialization.hpp"
#include "phasekit/simulate.hpp"
#include "phasekit/spectrum.hpp"

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

using nlohmann::json;

json parse_json_arg(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw std::invalid_argument(std::string(what) + " is not valid JSON: " + text);
    }
    return j;
}

std::vector<std::int64_t> parse_multipliers(const std::string& text) {
    const json j = parse_json_arg(text, "--multipliers");
    if (!j.is_array()) throw std::invalid_argument("--multipliers must be a JSON array");
    return j.get<std::vector<std::int64_t>>();
}

std::vector<double> parse_real_vector(const std::string& text, const char* what) {
    const json j = parse_json_arg(text, what);
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be a JSON array");
    return j.get<std::vector<double>>();
}

/// State vectors accept plain reals or [re, im] pairs.
std::vector<std::complex<double>> parse_complex_vector(const std::string& text, const char* what) {
    const json j = parse_json_arg(text, what);
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be a JSON array");
    std::vector<std::complex<double>> out;
    out.reserve(j.size());
    for (const auto& entry : j) {
        if (entry.is_number()) {
            out.emplace_back(entry.get<double>(), 0.0);
        } else if (entry.is_array() && entry.size() == 2) {
            out.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        } else {
            throw std::invalid_argument(std::string(what) +
                                        " entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

/// PHASEKIT_THREADS overrides the --threads flag when set.
int resolve_threads(int flag_value) {
    if (const char* env = std::getenv("PHASEKIT_THREADS")) {
        const std::string text(env);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
            throw std::invalid_argument("PHASEKIT_THREADS must be a positive integer, got \"" +
                                        text + "\"");
        }
        return value;
    }
    if (flag_value < 1) throw std::invalid_argument("--threads must be >= 1");
    return flag_value;
}

/// Radians by default; --turns reads all angle flags as fractions of 2*pi.
double to_radians(double value, bool turns) { return turns ? value * kTwoPi : value; }

struct CostFlags {
    std::string kind = "half_angle";
    double epsilon = 0.0;
    bool epsilon_set = false;
    std::string coefficients;

    void attach(CLI::App* cmd, const std::string& default_kind) {
        kind = default_kind;
        cmd->add_option("--cost,--kind", kind,
                        "cost kind: variance|half_angle|likelihood|window|fidelity|custom")
            ->capture_default_str();
        cmd->add_option("--eps", epsilon, "window half-width (window cost only)")
            ->each([this](const std::string&) { epsilon_set = true; });
        cmd->add_option("--coefficients", coefficients,
                        "JSON array of Fourier coefficients c_0.. (custom cost only)");
    }

    phasekit::CostSpec build(int q, const phasekit::CanonicalModel* model) const {
        const auto label = phasekit::cost_kind_from_string(kind);
        phasekit::CostParams params;
        if (epsilon_set) params.epsilon = epsilon;
        params.model = model;
        if (!coefficients.empty()) {
            params.custom_coefficients = parse_real_vector(coefficients, "--coefficients");
        }
        return phasekit::make_cost(label, params, q);
    }
};

std::string spectrum_csv(const phasekit::SpectrumTable& table) {
    std::ostringstream os;
    os << "level,multiplicity\n";
    for (std::size_t j = 0; j < table.multiplicities.size(); ++j) {
        os << j << ',' << table.multiplicities[j] << '\n';
    }
    return os.str();
}

std::string amplitudes_csv(const std::vector<double>& amplitudes) {
    std::ostringstream os;
    os << "k,amplitude\n";
    os.precision(17);
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
        os << k << ',' << amplitudes[k] << '\n';
    }
    return os.str();
}

std::string coefficients_csv(const phasekit::CostSpec& cost) {
    std::ostringstream os;
    os << "l,c_l\n";
    os.precision(17);
    for (std::size_t l = 0; l < cost.coefficients.size(); ++l) {
        os << l << ',' << cost.coefficients[l] << '\n';
    }
    return os.str();
}

/// Histogram bins are 0.5 grid units (2*pi/q) wide; the last bin collects
/// everything beyond.
std::string histogram_csv(const std::vector<std::uint64_t>& histogram) {
    std::ostringstream os;
    os << "bin_low,bin_high,count\n";
    for (std::size_t b = 0; b < histogram.size(); ++b) {
        os << 0.5 * static_cast<double>(b) << ',';
        if (b + 1 == histogram.size()) {
            os << "inf";
        } else {
            os << 0.5 * static_cast<double>(b + 1);
        }
        os << ',' << histogram[b] << '\n';
    }
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"phase-estimation toolkit"};
    app.require_subcommand(1);

    // ---- analyze ----------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "spectrum and canonical model of a network");
    std::string an_multipliers;
    std::string an_state;
    std::string an_format = "json";
    std::string an_output;
    analyze->add_option("--multipliers", an_multipliers, "JSON array of integer multipliers")
        ->required();
    analyze->add_option("--state", an_state,
                        "input state amplitudes (JSON array, reals or [re,im]; length 2^L)");
    analyze->add_option("--format", an_format)->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--output,-o", an_output, "write to file instead of stdout");

    // ---- optimal ----------------------------------------------------------
    auto* optimal = app.add_subcommand("optimal", "optimal input state for a cost");
    CostFlags opt_cost;
    int opt_q = 0;
    std::string opt_format = "json";
    std::string opt_output;
    opt_cost.attach(optimal, "half_angle");
    optimal->add_option("--q", opt_q, "canonical dimension")->required();
    optimal->add_option("--format", opt_format)->check(CLI::IsMember({"json", "csv"}));
    optimal->add_option("--output,-o", opt_output, "write to file instead of stdout");

    // ---- cost -------------------------------------------------------------
    auto* costcmd = app.add_subcommand("cost", "Fourier coefficients and evaluations of a cost");
    CostFlags cost_cost;
    int cost_q = 0;
    std::string cost_amplitudes;
    double cost_phi = 0.0;
    bool cost_phi_set = false;
    bool cost_turns = false;
    std::string cost_format = "json";
    std::string cost_output;
    cost_cost.attach(costcmd, "half_angle");
    costcmd->add_option("--q", cost_q, "truncation dimension")->required();
    costcmd->add_option("--amplitudes", cost_amplitudes,
                        "canonical amplitudes (JSON array); enables average-cost output");
    costcmd->add_option("--phi", cost_phi, "evaluate C(phi)")
        ->each([&cost_phi_set](const std::string&) { cost_phi_set = true; });
    costcmd->add_flag("--turns", cost_turns, "angles are fractions of 2*pi");
    costcmd->add_option("--format", cost_format)->check(CLI::IsMember({"json", "csv"}));
    costcmd->add_option("--output,-o", cost_output, "write to file instead of stdout");

    // ---- simulate ---------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimation experiment");
    CostFlags sim_cost;
    std::string sim_amplitudes;
    std::string sim_state = "sine";
    int sim_q = 0;
    std::string sim_prior = "uniform";
    double sim_phi = 0.0;
    std::string sim_support;
    std::uint64_t sim_trials = 100000;
    std::uint64_t sim_seed = 0;
    bool sim_uniformize = false;
    std::uint64_t sim_mesh = std::uint64_t{1} << 20;
    int sim_threads = 1;
    bool sim_turns = false;
    std::string sim_trace;
    std::string sim_output;
    sim_cost.attach(simulate, "variance");
    simulate->add_option("--amplitudes", sim_amplitudes,
                         "canonical amplitudes (JSON array); overrides --state/--q");
    simulate->add_option("--state", sim_state, "input state: sine|uniform|optimal")
        ->check(CLI::IsMember({"sine", "uniform", "optimal"}))
        ->capture_default_str();
    simulate->add_option("--q", sim_q, "canonical dimension for --state");
    simulate->add_option("--prior", sim_prior, "phase prior: uniform|point|discrete")
        ->check(CLI::IsMember({"uniform", "point", "discrete"}))
        ->capture_default_str();
    simulate->add_option("--phi", sim_phi, "phase of the point-mass prior");
    simulate->add_option("--support", sim_support,
                         "JSON array of [phi, weight] pairs (discrete prior)");
    simulate->add_option("--trials", sim_trials)->capture_default_str();
    simulate->add_option("--seed", sim_seed)->capture_default_str();
    simulate->add_flag("--uniformize", sim_uniformize, "apply the phase-randomization wrapper");
    simulate->add_option("--mesh", sim_mesh, "uniformization mesh size")->capture_default_str();
    simulate->add_option("--threads", sim_threads, "worker threads (PHASEKIT_THREADS overrides)")
        ->capture_default_str();
    simulate->add_flag("--turns", sim_turns, "angles are fractions of 2*pi");
    simulate->add_option("--trace", sim_trace, "write per-trial CSV trace to this file");
    simulate->add_option("--output,-o", sim_output, "write to file instead of stdout");

    // ---- example1 ---------------------------------------------------------
    auto* example1 = app.add_subcommand("example1", "product vs optimal N-qubit comparison");
    int ex_N = 2;
    std::string ex_output;
    example1->add_option("--N", ex_N, "number of qubits")->required();
    example1->add_option("--output,-o", ex_output, "write to file instead of stdout");

    // ---- shor -------------------------------------------------------------
    auto* shor = app.add_subcommand("shor", "power-of-two multiplier network");
    int shor_L = 1;
    std::string shor_format = "json";
    std::string shor_output;
    shor->add_option("--L", shor_L, "number of qubits (1..20)")->required();
    shor->add_option("--format", shor_format)->check(CLI::IsMember({"json", "csv"}));
    shor->add_option("--output,-o", shor_output, "write to file instead of stdout");

    // ---- dihedral ---------------------------------------------------------
    auto* dihedral = app.add_subcommand("dihedral", "hidden-subgroup estimation experiment");
    int dih_n = 3;
    int dih_m = 6;
    std::uint64_t dih_trials = 10000;
    std::uint64_t dih_seed = 0;
    int dih_threads = 1;
    std::string dih_histogram;
    std::string dih_output;
    dihedral->add_option("--n", dih_n, "bit length of the samples")->required();
    dihedral->add_option("--m", dih_m, "samples per instance")->required();
    dihedral->add_option("--trials", dih_trials)->capture_default_str();
    dihedral->add_option("--seed", dih_seed)->capture_default_str();
    dihedral->add_option("--threads", dih_threads, "worker threads (PHASEKIT_THREADS overrides)")
        ->capture_default_str();
    dihedral->add_option("--histogram", dih_histogram, "write the error histogram CSV here");
    dihedral->add_option("--output,-o", dih_output, "write to file instead of stdout");

    // ---- circuit ----------------------------------------------------------
    auto* circuit = app.add_subcommand("circuit", "per-bit phase-gate decomposition");
    int circ_bits = 1;
    double circ_phi = 0.0;
    bool circ_turns = false;
    std::int64_t circ_k = -1;
    std::string circ_output;
    circuit->add_option("--bits", circ_bits, "register width")->required();
    circuit->add_option("--phi", circ_phi, "phase per unit eigenvalue")->required();
    circuit->add_flag("--turns", circ_turns, "angles are fractions of 2*pi");
    circuit->add_option("--k", circ_k, "report the accumulated phase on basis state k");
    circuit->add_option("--output,-o", circ_output, "write to file instead of stdout");

    // ---- selftest ---------------------------------------------------------
    auto* selftest = app.add_subcommand("selftest", "run the full verification suite");
    bool st_json = false;
    std::string st_output;
    selftest->add_flag("--json", st_json, "emit machine-readable results");
    selftest->add_option("--output,-o", st_output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (analyze->parsed()) {
        const phasekit::PhaseNetwork network(parse_multipliers(an_multipliers));
        const auto table = phasekit::subset_sum_spectrum(network);
        if (an_format == "csv") {
            write_output(an_output, spectrum_csv(table));
            return 0;
        }
        json j;
        j["multipliers"] = network;
        j["q"] = table.size();
        j["spectrum"] = table;
        if (an_state.empty()) {
            j["model"] = nullptr;
        } else {
            const auto state = parse_complex_vector(an_state, "--state");
            j["model"] = phasekit::canonicalize(network, state);
        }
        write_output(an_output, render_json(j));
        return 0;
    }

    if (optimal->parsed()) {
        if (opt_cost.kind == "fidelity") {
            throw std::invalid_argument(
                "fidelity cost depends on the input state; use the cost command instead");
        }
        const auto cost = opt_cost.build(opt_q, nullptr);
        const auto result = phasekit::optimal_state(cost, opt_q);
        if (opt_format == "csv") {
            write_output(opt_output, amplitudes_csv(result.amplitudes));
            return 0;
        }
        json j = result;
        j["cost"] = cost;
        j["seed_validation"] = phasekit::validate_seed(phasekit::optimal_seed(cost, opt_q));
        write_output(opt_output, render_json(j));
        return 0;
    }

    if (costcmd->parsed()) {
        std::optional<phasekit::CanonicalModel> model;
        if (!cost_amplitudes.empty()) {
            model = phasekit::model_from_amplitudes(
                parse_real_vector(cost_amplitudes, "--amplitudes"));
        }
        const auto cost = cost_cost.build(cost_q, model ? &*model : nullptr);
        if (cost_format == "csv") {
            write_output(cost_output, coefficients_csv(cost));
            return 0;
        }
        json j;
        j["cost"] = cost;
        j["q"] = cost_q;
        j["holevo_class"] = phasekit::is_holevo(cost, cost_q);
        if (cost_phi_set) {
            const double phi = to_radians(cost_phi, cost_turns);
            j["phi"] = phi;
            j["value"] = phasekit::evaluate(cost, phi);
        }
        if (model) {
            j["average_cost"] =
                phasekit::average_cost_fourier(*model, phasekit::all_ones_seed(cost_q), cost);
            j["quadrature_check"] =
                phasekit::average_cost_quadrature(*model, cost, 4 * cost_q);
        }
        write_output(cost_output, render_json(j));
        return 0;
    }

    if (simulate->parsed()) {
        phasekit::CanonicalModel model;
        if (!sim_amplitudes.empty()) {
            model = phasekit::model_from_amplitudes(
                parse_real_vector(sim_amplitudes, "--amplitudes"));
        } else {
            if (sim_q < 1) {
                throw std::invalid_argument("--q is required when --amplitudes is not given");
            }
            if (sim_state == "sine") {
                model = phasekit::model_from_amplitudes(
                    phasekit::closed_form_state(phasekit::ClosedFormState::sine, sim_q));
            } else if (sim_state == "uniform") {
                model = phasekit::model_from_amplitudes(
                    phasekit::closed_form_state(phasekit::ClosedFormState::uniform, sim_q));
            } else {  // optimal
                if (sim_cost.kind == "fidelity") {
                    throw std::invalid_argument(
                        "--state optimal is circular for the fidelity cost");
                }
                const auto cost = sim_cost.build(sim_q, nullptr);
                model = phasekit::model_from_amplitudes(
                    phasekit::optimal_state(cost, sim_q).amplitudes);
            }
        }
        const auto cost = sim_cost.build(model.q, &model);

        phasekit::PriorSpec prior;
        if (sim_prior == "uniform") {
            prior = phasekit::PriorSpec::uniform();
        } else if (sim_prior == "point") {
            prior = phasekit::PriorSpec::point_mass(to_radians(sim_phi, sim_turns));
        } else {
            if (sim_support.empty()) {
                throw std::invalid_argument("--support is required for the discrete prior");
            }
            const json sj = parse_json_arg(sim_support, "--support");
            std::vector<std::pair<double, double>> support;
            for (const auto& entry : sj) {
                if (!entry.is_array() || entry.size() != 2) {
                    throw std::invalid_argument("--support entries must be [phi, weight] pairs");
                }
                support.emplace_back(to_radians(entry[0].get<double>(), sim_turns),
                                     entry[1].get<double>());
            }
            prior = phasekit::PriorSpec::discrete(std::move(support));
        }

        phasekit::SimOptions options;
        options.uniformize = sim_uniformize;
        options.mesh_points = sim_mesh;
        options.threads = resolve_threads(sim_threads);
        std::vector<phasekit::TraceRow> trace;
        if (!sim_trace.empty()) options.trace = &trace;

        const auto report =
            phasekit::monte_carlo(model, cost, prior, sim_trials, sim_seed, options);

        if (!sim_trace.empty()) {
            std::ofstream out(sim_trace);
            if (!out) throw std::invalid_argument("cannot open trace file: " + sim_trace);
            phasekit::write_trace_csv(out, trace);
        }

        json j = report;
        j["settings"] = {{"q", model.q},
                         {"cost_label", phasekit::to_string(cost.label)},
                         {"prior", sim_prior},
                         {"uniformize", sim_uniformize},
                         {"mesh_points", sim_mesh},
                         {"threads", options.threads}};
        write_output(sim_output, render_json(j));
        return 0;
    }

    if (example1->parsed()) {
        if (ex_N < 1) throw std::invalid_argument("--N must be >= 1");
        const int q = ex_N + 1;
        const double product = phasekit::product_state_cost(ex_N);
        const auto result = phasekit::optimal_state(phasekit::make_half_angle_cost(q), q);
        json j;
        j["N"] = ex_N;
        j["q"] = q;
        j["product_cost"] = product;
        j["optimal_cost"] = result.min_cost;
        j["gap"] = product - result.min_cost;
        write_output(ex_output, render_json(j));
        return 0;
    }

    if (shor->parsed()) {
        if (shor_L < 1 || shor_L > 20) throw std::invalid_argument("--L must be in 1..20");
        const auto network = phasekit::shor_multipliers(shor_L);
        const auto table = phasekit::subset_sum_spectrum(network);
        if (shor_format == "csv") {
            write_output(shor_output, spectrum_csv(table));
            return 0;
        }
        bool complete = true;
        for (const auto mult : table.multiplicities) complete = complete && mult == 1;
        json j;
        j["L"] = shor_L;
        j["multipliers"] = network;
        j["q"] = table.size();
        j["spectrum"] = table;
        j["complete"] = complete;
        write_output(shor_output, render_json(j));
        return 0;
    }

    if (dihedral->parsed()) {
        const auto report = phasekit::dihedral_estimate_experiment(
            dih_n, dih_m, dih_trials, dih_seed, resolve_threads(dih_threads));
        if (!dih_histogram.empty()) {
            write_output(dih_histogram, histogram_csv(report.error_histogram));
        }
        write_output(dih_output, render_json(json(report)));
        return 0;
    }

    if (circuit->parsed()) {
        const double phi = to_radians(circ_phi, circ_turns);
        const auto result = phasekit::phase_circuit(circ_bits, phi);
        json j = result;
        j["bits"] = circ_bits;
        j["phi"] = phi;
        if (circ_k >= 0) {
            if (circ_bits < 63 && circ_k >= (std::int64_t{1} << circ_bits)) {
                throw std::invalid_argument("--k must be < 2^bits");
            }
            j["k"] = circ_k;
            j["k_phase"] = phasekit::wrap_angle(static_cast<double>(circ_k) * phi);
        }
        write_output(circ_output, render_json(j));
        return 0;
    }

    if (selftest->parsed()) {
        const auto results = phasekit::run_acceptance_suite();
        int failures = 0;
        if (st_json) {
            json j = json::array();
            for (const auto& r : results) {
                j.push_back({{"id", r.id},
                             {"name", r.name},
                             {"passed", r.passed},
                             {"detail", r.detail}});
                if (!r.passed) ++failures;
            }
            write_output(st_output, render_json(j));
        } else {
            std::ostringstream os;
            failures = phasekit::print_acceptance_report(os, results);
            write_output(st_output, os.str());
        }
        return failures == 0 ? 0 : 3;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
