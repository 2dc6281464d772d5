#pragma once

#include <functional>
#include <string>

#include "tcm/diagnostics.hpp"
#include "tcm/model.hpp"

namespace tcm {

struct RunOptions {
    double dt = 1e-3;
    bool adaptive = false;
    double cfl_safety = 0.5;
    double dt_cap = 0.1;
    double horizon = 1.0;
    double sample_every = 0.01;
    bool integrating_factor = true;
    DiagnosticsOptions diag;
    /// Blow-up accumulator values carried in from a checkpoint on resume.
    double initial_pi = 0.0;
    double initial_pi_tilde = 0.0;
};

struct RunResult {
    SimState final_state;
    std::vector<DiagnosticsRecord> series;
    BlowupMonitor monitor;
    bool aborted = false;
    std::string abort_reason;
};

using SampleCallback =
    std::function<void(const SimState&, const DiagnosticsRecord&)>;

/// Steps the state to the horizon, sampling diagnostics every sample_every
/// model seconds (t = 0 included; a zero horizon yields an empty series).
/// On a non-finite state the run stops and returns the partial series with
/// the abort reason.
RunResult run(const SimState& initial, const ModelParams& params,
              const RunOptions& opts, const SampleCallback& on_sample = {});

} // namespace tcm
