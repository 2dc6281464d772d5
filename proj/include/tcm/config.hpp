#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tcm/experiments.hpp"
#include "tcm/model.hpp"

namespace tcm {

/// Full run description, loaded from a flat [section] key = value file.
/// Unknown sections or keys are rejected; validation reports every problem,
/// not just the first.
struct RunConfig {
    // [grid]
    int n = 32;
    double box_length = 2.0 * std::numbers::pi;

    // [model]
    ModelParams params;

    // [integrator]
    double dt = 1e-3;
    bool adaptive = false;
    double safety = 0.5;
    double dt_cap = 0.1;
    double horizon = 2.0;
    double sample_every = 0.01;
    bool integrating_factor = true;

    // [initial_data]
    InitialDataSpec initial;

    // [diagnostics]
    std::string bmo_mode = "proxy"; // proxy | dyadic
    double c_pi = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    double epsilon = 0.0;

    // [experiments]
    double growth_factor = 10.0;

    // [output]
    std::string series_path = "series.csv";
    std::string checkpoint_path;
    std::string sweep_path = "sweep.csv";

    DiagnosticsOptions diagnostics_options() const;
    RunOptions run_options() const;
};

struct ConfigError : std::runtime_error {
    std::vector<std::string> errors;
    explicit ConfigError(std::vector<std::string> errs);
};

struct LoadedConfig {
    RunConfig config;
    /// Non-fatal notes, e.g. damping exponents outside [5/2, 4).
    std::vector<std::string> warnings;
};

/// Parses and validates; throws ConfigError carrying the full error list.
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config(const std::string& text, const std::string& origin);

std::vector<std::string> validate(const RunConfig& cfg);
std::vector<std::string> config_warnings(const RunConfig& cfg);

/// Canonical text form; parse(serialize(c)) == c and serialization is a
/// fixed point.
std::string serialize_config(const RunConfig& cfg);

} // namespace tcm
