#ifndef ATOMPHASE_CONFIG_HPP
#define ATOMPHASE_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "atomphase/interferometer.hpp"

namespace atomphase {

// Run-time switches that live in the config but are not part of the physics
// scenario itself.
struct RunSettings {
    bool check_eom = false;
    double eom_tol = 1e-6;
};

struct ParsedConfig {
    Scenario scenario;
    RunSettings run;
};

// Parses the JSON scenario document. Field names carry SI unit suffixes;
// unknown keys are rejected so typos surface as errors, with the offending
// section and key named in the exception message.
ParsedConfig parse_config(const nlohmann::json& doc);
ParsedConfig load_config(const std::string& path);

// Normalized echo of a parsed config: parse(echo(parse(x))) == parse(x).
nlohmann::json echo_config(const nlohmann::json& doc);

// Sets the numeric field addressed by a dotted path, e.g.
// "trajectories.2.z0_m" or "atom.omega0_rad_s".
void set_config_value(nlohmann::json& doc, const std::string& dotted_path, double value);

// Rescales the whole scenario in time: every vertical profile z(t) becomes
// z(lambda t) and the window shrinks to T / lambda. First-order double-path
// phases are invariant under this map.
void apply_dilatation(nlohmann::json& doc, double lambda);

// Sets the same drift parallel to the plate on every arm (the phase
// formulas require a common drift, so sweeping it arm-by-arm would only
// produce validation failures).
void apply_common_parallel_velocity(nlohmann::json& doc, double v_parallel);

}  // namespace atomphase

#endif
