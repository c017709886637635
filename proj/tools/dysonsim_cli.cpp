#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dysonsim/config.hpp"
#include "dysonsim/errors.hpp"
#include "dysonsim/experiment.hpp"
#include "dysonsim/presets.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitCheck = 3;

struct Source {
    std::string config_path;
    std::string preset;
};

dysonsim::Json load_document(const Source& src) {
    if (!src.config_path.empty() && !src.preset.empty()) {
        throw dysonsim::ValidationError("cli", "give either --config or --preset, not both");
    }
    if (!src.preset.empty()) {
        return dysonsim::preset_json(src.preset);
    }
    if (src.config_path.empty()) {
        throw dysonsim::ValidationError("cli", "one of --config or --preset is required");
    }
    std::ifstream in(src.config_path);
    if (!in) {
        throw dysonsim::ValidationError("cli", "cannot open config file '" + src.config_path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return dysonsim::Json::parse(ss.str());
    } catch (const dysonsim::Json::parse_error& e) {
        throw dysonsim::ValidationError("config", src.config_path + ": malformed JSON: " + e.what());
    }
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const dysonsim::ValidationError& e) {
        std::cerr << "validation error [" << e.module() << "]: " << e.what() << '\n';
        return kExitValidation;
    } catch (const dysonsim::NumericalError& e) {
        std::cerr << "numerical error [" << e.module() << "]: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative quantum dynamics by Dyson-series sampling of unitary correlators"};
    app.require_subcommand(1);

    Source src;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<int> orders;
    std::optional<double> epsilon;
    std::optional<int> oracle_steps;
    std::string output;
    bool quiet = false;
    bool check = false;

    auto* run = app.add_subcommand("run", "Run an experiment and write report.json and series.csv");
    run->add_option("--config", src.config_path, "JSON config file");
    run->add_option("--preset", src.preset, "Built-in preset name");
    run->add_option("--seed", seed, "Random seed (overrides the config)");
    run->add_option("--mode", mode, "shots | exact-mean | deterministic-quadrature");
    run->add_option("--orders", orders, "Truncation order K");
    run->add_option("--epsilon", epsilon, "Target total error");
    run->add_option("--output", output, "Output directory");
    run->add_option("--oracle-steps", oracle_steps, "RK4 steps per unit time for the oracle");
    run->add_flag("--quiet", quiet, "Suppress the summary table");
    run->add_flag("--check", check, "Exit with 3 if any estimate falls outside its bounds");

    auto* list = app.add_subcommand("list-presets", "List built-in presets");

    auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
    validate->add_option("--config", src.config_path, "JSON config file");
    validate->add_option("--preset", src.preset, "Built-in preset name");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        std::cout << dysonsim::list_presets();
        return kExitOk;
    }
    if (validate->parsed()) {
        return guarded([&] {
            const auto config = dysonsim::parse_config(load_document(src));
            std::cout << dysonsim::describe_config(config) << "ok\n";
            return kExitOk;
        });
    }
    return guarded([&] {
        dysonsim::Json doc = load_document(src);
        if (doc.is_object()) {
            if (seed) doc["seed"] = *seed;
            if (mode) doc["mode"] = *mode;
            if (orders) doc["orders"] = *orders;
            if (epsilon) doc["epsilon"] = *epsilon;
            if (oracle_steps) doc["oracle_steps_per_unit_time"] = *oracle_steps;
        }
        const auto config = dysonsim::parse_config(doc);
        const auto result = dysonsim::run_experiment(config);
        if (!output.empty()) {
            dysonsim::write_outputs(result, output);
        }
        if (!quiet) {
            std::cout << result.csv;
            if (!output.empty()) {
                std::cout << "wrote " << output << "/report.json and " << output << "/series.csv\n";
            }
        }
        if (check && !result.check_passed) {
            std::cerr << "check failed: an estimate lies outside its bound\n";
            return kExitCheck;
        }
        return kExitOk;
    });
}
