#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "tcm/run.hpp"

namespace tcm {

struct RunConfig; // config.hpp

enum class InitialKind { taylor_green, random_band, single_mode };

struct InitialDataSpec {
    InitialKind kind = InitialKind::taylor_green;
    double amp_u = 1.0;
    double amp_v = 1.0;
    double amp_theta = 1.0;
    /// Desired || (u0,v0,theta0) ||_{hhalf}; all three fields are rescaled by
    /// one scalar to hit it.  Negative means "use the raw amplitudes".
    double target_h_half = -1.0;
    int band = 4;           // random_band kinds
    double spectrum_slope = -2.0;
    std::uint64_t seed = 1234;
};

struct InitialData {
    SimState state;
    double achieved_h_half = 0.0;
    /// ||u0||_{H^2} + ||v0||_{H^2} + ||theta0||_{H^2}, measured, not enforced.
    double h2_size = 0.0;
    std::uint64_t seed = 0;
};

InitialData make_initial_data(const std::shared_ptr<const Grid>& g,
                              const InitialDataSpec& spec);

struct ProtocolResult {
    RunResult run;
    MonotonicityReport monotonicity;
    double initial_l2 = 0.0, final_l2 = 0.0;
    double l2_decay_factor = 0.0; // final/initial (0 for zero data)
    double pi = 0.0, pi_tilde = 0.0;
    bool pi_over_t_nonincreasing = true;
    double c0 = 0.0;     // achieved hhalf triple norm at t=0
    double r_h2 = 0.0;   // measured H^2 size of the data
    std::string classification; // decay | growth | inconclusive
};

/// One small-data run with full reporting: monotonicity of the hhalf/h1
/// triple norms, L2 decay factor, blow-up integrals and their trend.
ProtocolResult run_small_data_protocol(const RunConfig& cfg);

struct SweepRow {
    double c0 = 0.0;
    double r_h2 = 0.0;
    std::size_t violations = 0;
    double l2_ratio = 0.0;
    double h2_ratio = 0.0;
    double pi = 0.0;
    double delta_sq_integral = 0.0;
    std::string classification;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// One protocol run per amplitude in c0_grid (shared seed), executed on a
/// pool of `workers` threads; rows come back in grid order regardless of
/// scheduling.
SweepResult amplitude_sweep(const RunConfig& cfg, std::span<const double> c0_grid,
                            int workers);

} // namespace tcm
