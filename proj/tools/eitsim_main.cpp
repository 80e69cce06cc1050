#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eitsim/eitsim.hpp"

namespace {

int run_config(const std::string& path) {
    const eitsim::Scenario scenario = eitsim::load_scenario(path);
    const eitsim::RunReport report = eitsim::run_scenario(scenario);
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << to_string(scenario.kind) << ": wrote " << report.rows << " rows to "
              << report.output_path << "\n";
    return 0;
}

int validate_config(const std::string& path) {
    const eitsim::Scenario scenario = eitsim::load_scenario(path);
    std::cout << path << ": valid " << to_string(scenario.kind) << " scenario\n";
    return 0;
}

int fit_file(const std::string& input, const std::string& output) {
    const eitsim::RunReport report = eitsim::run_fit_csv(input, output);
    std::cout << "fit: wrote " << report.rows << " rows to " << report.output_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"EIT spectra, transparency widths, and slow-light pulse delays for a "
                 "Doppler-broadened three-level medium"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "Run a scenario config and write its CSV");
    run->add_option("config", config_path, "Scenario config (JSON)")->required();

    std::string validate_path;
    CLI::App* validate =
        app.add_subcommand("validate", "Parse and validate a scenario config");
    validate->add_option("config", validate_path, "Scenario config (JSON)")->required();

    std::string fit_input, fit_output;
    CLI::App* fit = app.add_subcommand("fit", "Fit a spectrum or width CSV");
    fit->add_option("spectrum", fit_input, "Input CSV")->required();
    fit->add_option("--out", fit_output, "Output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_config(config_path);
        if (validate->parsed()) return validate_config(validate_path);
        if (fit->parsed()) return fit_file(fit_input, fit_output);
    } catch (const eitsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const eitsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
