// End-to-end tests of the phasekit binary: spawn the real executable, parse
// its stdout, and check exit codes plus the shipped JSON schemas.  The binary
// path and schema directory come in through compile definitions so the tests
// run against the freshly built tool regardless of build layout.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

/// Run a shell command, capture stdout, and map the exit status.  stderr is
/// dropped so expected-error cases do not clutter the test log.
CliResult run_command(std::string command) {
    command += " 2>/dev/null";
    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.output.append(buffer, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

CliResult run_cli(const std::string& args) {
    return run_command(std::string(PHASEKIT_CLI) + " " + args);
}

json parse_output(const CliResult& result) {
    REQUIRE(result.exit_code == 0);
    return json::parse(result.output);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// ---- minimal JSON-Schema checker ------------------------------------------
// Supports exactly the subset the shipped schemas use: "type" (string or list
// of strings), "required", "properties", and a single "items" subschema.

bool matches_type(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    if (type == "null") return value.is_null();
    return false;
}

void collect_schema_errors(const json& value, const json& schema, const std::string& path,
                           std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const json& type = schema.at("type");
        bool ok = false;
        if (type.is_string()) {
            ok = matches_type(value, type.get<std::string>());
        } else {
            for (const auto& candidate : type) {
                ok = ok || matches_type(value, candidate.get<std::string>());
            }
        }
        if (!ok) {
            errors.push_back(path + ": expected type " + type.dump() + ", got " +
                             value.type_name());
            return;
        }
    }
    if (value.is_object() && schema.contains("required")) {
        for (const auto& key : schema.at("required")) {
            if (!value.contains(key.get<std::string>())) {
                errors.push_back(path + ": missing required key \"" + key.get<std::string>() +
                                 "\"");
            }
        }
    }
    if (value.is_object() && schema.contains("properties")) {
        for (const auto& [key, subschema] : schema.at("properties").items()) {
            if (value.contains(key)) {
                collect_schema_errors(value.at(key), subschema, path + "." + key, errors);
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            collect_schema_errors(value[i], schema.at("items"),
                                  path + "[" + std::to_string(i) + "]", errors);
        }
    }
}

json load_schema(const std::string& name) {
    const std::string path = std::string(PHASEKIT_SCHEMA_DIR) + "/" + name;
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "cannot open schema ", path);
    return json::parse(in);
}

void check_schema(const json& value, const std::string& schema_name) {
    std::vector<std::string> errors;
    collect_schema_errors(value, load_schema(schema_name), "$", errors);
    for (const auto& error : errors) {
        FAIL_CHECK(schema_name, ": ", error);
    }
    CHECK(errors.empty());
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

// ---- analyze ---------------------------------------------------------------

TEST_CASE("cli analyze reports the expected spectra") {
    const json doubling = parse_output(run_cli("analyze --multipliers '[1,2,4]'"));
    check_schema(doubling, "analyze.json");
    CHECK(doubling.at("q") == 8);
    CHECK(doubling.at("spectrum") == json::parse("[1,1,1,1,1,1,1,1]"));
    CHECK(doubling.at("model").is_null());

    const json empty = parse_output(run_cli("analyze --multipliers '[]'"));
    CHECK(empty.at("q") == 1);
    CHECK(empty.at("spectrum") == json::parse("[1]"));

    const json repeated = parse_output(run_cli("analyze --multipliers '[1,2,2]'"));
    CHECK(repeated.at("q") == 6);
    CHECK(repeated.at("spectrum") == json::parse("[1,1,2,2,1,1]"));
}

TEST_CASE("cli analyze canonicalizes a supplied state") {
    const json j = parse_output(
        run_cli("analyze --multipliers '[1,1]' --state '[0.5,0.5,0.5,0.5]'"));
    check_schema(j, "analyze.json");
    REQUIRE(j.at("model").is_object());
    const auto amplitudes = j.at("model").at("amplitudes").get<std::vector<double>>();
    REQUIRE(amplitudes.size() == 3);
    CHECK(amplitudes[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(amplitudes[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(amplitudes[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cli analyze csv has the documented header") {
    const auto result = run_cli("analyze --multipliers '[1,2,4]' --format csv");
    REQUIRE(result.exit_code == 0);
    const auto lines = split_lines(result.output);
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == "level,multiplicity");
    CHECK(lines[1] == "0,1");
    CHECK(lines[8] == "7,1");
}

// ---- optimal ----------------------------------------------------------------

TEST_CASE("cli optimal matches the closed-form minima") {
    const json half = parse_output(run_cli("optimal --cost half_angle --q 3"));
    check_schema(half, "optimal.json");
    CHECK(half.at("min_cost").get<double>() ==
          doctest::Approx(0.14644660940672624).epsilon(1e-9));
    CHECK(half.at("holevo_class") == true);
    const auto amplitudes = half.at("amplitudes").get<std::vector<double>>();
    REQUIRE(amplitudes.size() == 3);
    CHECK(amplitudes[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(amplitudes[1] == doctest::Approx(0.7071067811865476).epsilon(1e-8));
    CHECK(amplitudes[2] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(half.at("seed_validation").at("ok") == true);

    const json variance = parse_output(run_cli("optimal --cost variance --q 2"));
    CHECK(variance.at("min_cost").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    const json window = parse_output(run_cli("optimal --cost window --eps 0.001 --q 4"));
    CHECK(window.at("min_cost").get<double>() ==
          doctest::Approx(0.9992042255497985).epsilon(1e-6));
    for (const auto& a : window.at("amplitudes")) {
        CHECK(a.get<double>() == doctest::Approx(0.5).epsilon(1e-5));
    }
}

TEST_CASE("cli optimal csv lists amplitudes") {
    const auto result = run_cli("optimal --cost half_angle --q 3 --format csv");
    REQUIRE(result.exit_code == 0);
    const auto lines = split_lines(result.output);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "k,amplitude");
    CHECK(lines[1].rfind("0,0.5", 0) == 0);
}

TEST_CASE("cli optimal rejects the state-dependent fidelity cost") {
    CHECK(run_cli("optimal --cost fidelity --q 3").exit_code == 2);
}

// ---- cost -------------------------------------------------------------------

TEST_CASE("cli cost evaluates pointwise values with --turns") {
    const json j = parse_output(run_cli("cost --cost variance --q 4 --phi 0.5 --turns"));
    check_schema(j, "cost.json");
    CHECK(j.at("phi").get<double>() == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(j.at("value").get<double>() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(j.at("holevo_class") == true);
    CHECK(j.at("cost").at("coefficients") == json::parse("[-2.0,2.0]"));
}

TEST_CASE("cli cost averages a supplied state and cross-checks by quadrature") {
    const json j = parse_output(
        run_cli("cost --cost variance --q 3 --amplitudes '[0.5,0.7071067811865476,0.5]'"));
    check_schema(j, "cost.json");
    REQUIRE(j.contains("average_cost"));
    REQUIRE(j.contains("quadrature_check"));
    CHECK(j.at("average_cost").get<double>() ==
          doctest::Approx(0.5857864376269049).epsilon(1e-9));
    CHECK(j.at("quadrature_check").get<double>() ==
          doctest::Approx(j.at("average_cost").get<double>()).epsilon(1e-9));
}

TEST_CASE("cli cost csv lists fourier coefficients") {
    const auto result = run_cli("cost --cost variance --q 2 --format csv");
    REQUIRE(result.exit_code == 0);
    const auto lines = split_lines(result.output);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "l,c_l");
    CHECK(lines[1] == "0,-2");
}

TEST_CASE("cli cost requires amplitudes for the fidelity kind") {
    CHECK(run_cli("cost --cost fidelity --q 3").exit_code == 2);
    CHECK(run_cli("cost --cost fidelity --q 3 --amplitudes '[0.5,0.7071067811865476,0.5]'")
              .exit_code == 0);
}

// ---- simulate ---------------------------------------------------------------

TEST_CASE("cli simulate is reproducible and statistically sound") {
    const std::string args =
        "simulate --q 3 --state sine --cost variance --trials 40000 --seed 42";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);  // same seed, same bytes

    const json j = json::parse(first.output);
    check_schema(j, "simulate.json");
    CHECK(j.at("trials") == 40000);
    CHECK(j.at("rng_seed") == 42);
    CHECK(j.at("settings").at("q") == 3);
    CHECK(j.at("settings").at("cost_label") == "variance");

    std::uint64_t total = 0;
    for (const auto& count : j.at("outcome_histogram")) total += count.get<std::uint64_t>();
    CHECK(total == 40000);

    const double mean = j.at("mean_cost").get<double>();
    const double se = j.at("std_error").get<double>();
    CHECK(se > 0.0);
    CHECK(std::abs(mean - 0.5857864376269049) < 5.0 * se + 1e-9);
}

TEST_CASE("cli simulate physics is independent of the thread count") {
    const std::string args =
        "simulate --q 3 --state sine --cost variance --trials 30000 --seed 7";
    const json single = parse_output(run_cli(args));
    const json multi = parse_output(
        run_command(std::string("PHASEKIT_THREADS=4 ") + PHASEKIT_CLI + " " + args));
    CHECK(multi.at("settings").at("threads") == 4);
    CHECK(single.at("settings").at("threads") == 1);
    CHECK(single.at("mean_cost") == multi.at("mean_cost"));
    CHECK(single.at("std_error") == multi.at("std_error"));
    CHECK(single.at("outcome_histogram") == multi.at("outcome_histogram"));
}

TEST_CASE("cli simulate uniformizes a point prior") {
    const json j = parse_output(
        run_cli("simulate --q 3 --state sine --cost variance --prior point --phi 2.2 "
                "--uniformize --trials 50000 --seed 9"));
    const double mean = j.at("mean_cost").get<double>();
    const double se = j.at("std_error").get<double>();
    CHECK(std::abs(mean - 0.5857864376269049) < 5.0 * se + 1e-9);
    CHECK(j.at("settings").at("uniformize") == true);
}

TEST_CASE("cli simulate writes a per-trial trace") {
    const auto trace_path = temp_file("phasekit_cli_trace.csv");
    std::filesystem::remove(trace_path);
    const auto result = run_cli(
        "simulate --q 3 --state sine --cost variance --prior point --phi 1.25 --trials 50 "
        "--seed 1 --trace " + trace_path.string());
    REQUIRE(result.exit_code == 0);
    std::ifstream in(trace_path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto lines = split_lines(text);
    REQUIRE(lines.size() == 51);
    CHECK(lines[0] == "phi,outcome,outcome_angle,cost");
    CHECK(lines[1].rfind("1.25,", 0) == 0);
    std::filesystem::remove(trace_path);
}

TEST_CASE("cli simulate rejects what cannot be sampled") {
    CHECK(run_cli("simulate --q 3 --cost likelihood --trials 100").exit_code == 2);
    CHECK(run_cli("simulate --cost variance --trials 100").exit_code == 2);  // no --q
    CHECK(run_command(std::string("PHASEKIT_THREADS=abc ") + PHASEKIT_CLI +
                      " simulate --q 3 --trials 100")
              .exit_code == 2);
}

// ---- example1 / shor / dihedral ----------------------------------------------

TEST_CASE("cli example1 compares product and optimal strategies") {
    const json two = parse_output(run_cli("example1 --N 2"));
    check_schema(two, "example1.json");
    CHECK(two.at("q") == 3);
    CHECK(two.at("product_cost").get<double>() ==
          doctest::Approx(0.14644660940672624).epsilon(1e-9));
    CHECK(std::abs(two.at("gap").get<double>()) <= 1e-9);  // N = 2 product state is optimal

    const json three = parse_output(run_cli("example1 --N 3"));
    CHECK(three.at("product_cost").get<double>() ==
          doctest::Approx(0.0959936490538904).epsilon(1e-6));
    CHECK(three.at("optimal_cost").get<double>() ==
          doctest::Approx(0.09549150281252627).epsilon(1e-6));
    CHECK(three.at("gap").get<double>() > 0.0);
}

TEST_CASE("cli shor reports a complete power-of-two spectrum") {
    const json j = parse_output(run_cli("shor --L 3"));
    check_schema(j, "shor.json");
    CHECK(j.at("multipliers") == json::parse("[1,2,4]"));
    CHECK(j.at("q") == 8);
    CHECK(j.at("complete") == true);
    CHECK(run_cli("shor --L 0").exit_code == 2);
}

TEST_CASE("cli dihedral emits a report and an error histogram") {
    const auto hist_path = temp_file("phasekit_cli_dihedral.csv");
    std::filesystem::remove(hist_path);
    const std::string args = "dihedral --n 2 --m 3 --trials 2000 --seed 7 --histogram " +
                             hist_path.string();
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);

    const json j = json::parse(first.output);
    check_schema(j, "dihedral.json");
    CHECK(j.at("bit_length") == 2);
    CHECK(j.at("trials") == 2000);
    CHECK(j.at("p_error_within_grid").get<double>() >= 0.0);
    CHECK(j.at("p_error_within_grid").get<double>() <= 1.0);

    std::uint64_t total = 0;
    for (const auto& count : j.at("error_histogram")) total += count.get<std::uint64_t>();
    CHECK(total == 2000);

    std::ifstream in(hist_path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto lines = split_lines(text);
    REQUIRE(lines.size() == 18);  // header + 17 bins
    CHECK(lines[0] == "bin_low,bin_high,count");
    CHECK(lines[17].rfind("8,inf,", 0) == 0);
    std::filesystem::remove(hist_path);
}

// ---- circuit ------------------------------------------------------------------

TEST_CASE("cli circuit decomposes and tracks an accumulated phase") {
    const json j = parse_output(run_cli("circuit --bits 3 --phi 1.0471976 --k 5"));
    check_schema(j, "circuit.json");
    CHECK(j.at("gates").size() == 3);
    CHECK(j.at("verified") == true);
    CHECK(j.at("k") == 5);
    CHECK(j.at("k_phase").get<double>() == doctest::Approx(5.235988).epsilon(1e-9));
    CHECK(run_cli("circuit --bits 3 --phi 1.0 --k 8").exit_code == 2);
}

TEST_CASE("cli circuit accepts angles in turns") {
    const json j = parse_output(run_cli("circuit --bits 2 --phi 0.25 --turns"));
    CHECK(j.at("phi").get<double>() ==
          doctest::Approx(0.5 * std::numbers::pi).epsilon(1e-12));
}

// ---- selftest and error handling ------------------------------------------------

TEST_CASE("cli selftest passes and emits machine-readable results") {
    const auto result = run_cli("selftest --json");
    REQUIRE(result.exit_code == 0);
    const json j = json::parse(result.output);
    check_schema(j, "selftest.json");
    REQUIRE(j.size() == 11);
    for (const auto& criterion : j) CHECK(criterion.at("passed") == true);
}

TEST_CASE("cli maps usage problems to exit code 2") {
    CHECK(run_cli("analyze --multipliers 'nope'").exit_code == 2);       // bad JSON
    CHECK(run_cli("analyze --multipliers '[1]' --bogus").exit_code == 2);  // unknown flag
    CHECK(run_cli("optimal").exit_code == 2);                            // missing --q
    CHECK(run_cli("").exit_code == 2);                                   // missing subcommand
    CHECK(run_cli("--help").exit_code == 0);
}
