#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atomphase/run.hpp"

namespace {

std::optional<atomphase::PhaseMethod> parse_method(const std::string& name) {
    if (name.empty()) return std::nullopt;
    if (name == "first_order") return atomphase::PhaseMethod::first_order;
    if (name == "retarded") return atomphase::PhaseMethod::retarded;
    throw CLI::ValidationError("--dp-method must be first_order or retarded");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamical van der Waals phases for multi-arm atom interferometers near a plate"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string dp_method;
    std::string values_csv;
    std::string param;
    bool echo = false;

    CLI::App* validate = app.add_subcommand("validate", "Check a scenario config against all preconditions");
    validate->add_option("config", config_path, "JSON scenario file")->required();
    validate->add_flag("--echo", echo, "Print the normalized config after validating");

    CLI::App* run = app.add_subcommand("run", "Compute phases, coherence matrix and reports");
    run->add_option("config", config_path, "JSON scenario file")->required();
    run->add_option("--out", out_dir, "Output directory for CSV files")->required();
    run->add_option("--dp-method", dp_method, "Override dp_method: first_order|retarded");

    CLI::App* sweep = app.add_subcommand("sweep", "Re-run the scenario over a list of parameter values");
    sweep->add_option("config", config_path, "JSON scenario file")->required();
    sweep->add_option("--param", param,
                      "Dotted config path (e.g. trajectories.2.z0_m), scenario.dilatation, "
                      "or scenario.parallel_velocity")
        ->required();
    sweep->add_option("--values", values_csv, "Comma-separated list of values")->required();
    sweep->add_option("--out", out_dir, "Output directory for sweep.csv")->required();
    sweep->add_option("--dp-method", dp_method, "Override dp_method: first_order|retarded");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return atomphase::cmd_validate(config_path, std::cout, echo);
        if (run->parsed())
            return atomphase::cmd_run(config_path, out_dir, parse_method(dp_method), std::cout);
        if (sweep->parsed()) {
            std::vector<double> values;
            std::stringstream ss(values_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    values.push_back(std::stod(tok));
                } catch (...) {
                    std::cerr << "error: bad sweep value '" << tok << "'\n";
                    return atomphase::kExitValidation;
                }
            }
            return atomphase::cmd_sweep(config_path, param, values, out_dir, parse_method(dp_method),
                                        std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return atomphase::kExitValidation;
    }
    return atomphase::kExitOk;
}
