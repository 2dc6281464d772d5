#include "tcm/run.hpp"

#include <cmath>
#include <stdexcept>

namespace tcm {

RunResult run(const SimState& initial, const ModelParams& params,
              const RunOptions& opts, const SampleCallback& on_sample) {
    if (!(opts.horizon >= 0.0))
        throw std::invalid_argument("run: horizon must be >= 0");
    if (!(opts.sample_every > 0.0))
        throw std::invalid_argument("run: sample_every must be positive");
    if (!opts.adaptive && !(opts.dt > 0.0))
        throw std::invalid_argument("run: dt must be positive");

    RunResult res;
    res.monitor.c_pi = opts.diag.c_pi;
    res.monitor.pi = opts.initial_pi;
    res.monitor.pi_tilde = opts.initial_pi_tilde;
    res.final_state = initial;
    if (opts.horizon <= initial.time) return res;

    const double t_end = opts.horizon;
    const double eps = 1e-9 * std::max(1.0, opts.sample_every);
    const StepOptions step_opts{opts.integrating_factor};

    SimState state = initial;
    SimState prev_state = state;

    DiagnosticsRecord rec = record(state, params, res.monitor, opts.diag);
    res.series.push_back(rec);
    if (on_sample) on_sample(state, rec);
    DiagnosticsRecord prev_rec = rec;

    long sample_idx =
        static_cast<long>(std::floor(state.time / opts.sample_every + eps)) + 1;
    double next_sample = sample_idx * opts.sample_every;

    while (state.time < t_end - eps) {
        double dt = opts.adaptive
                        ? cfl_dt(state, opts.cfl_safety, opts.dt_cap, params,
                                 opts.integrating_factor)
                        : opts.dt;
        dt = std::min({dt, next_sample - state.time, t_end - state.time});
        if (!(dt > 0.0)) {
            res.aborted = true;
            res.abort_reason = "nonpositive time step";
            break;
        }
        try {
            state = step(state, dt, params, step_opts);
        } catch (const std::exception& e) {
            res.aborted = true;
            res.abort_reason = e.what();
            break;
        }

        if (state.time >= next_sample - eps || state.time >= t_end - eps) {
            DiagnosticsRecord r = record(state, params, res.monitor, opts.diag);
            const double interval = r.time - prev_rec.time;
            update_blowup(res.monitor, prev_rec, r, interval, params);
            r.pi = res.monitor.pi;
            r.pi_tilde = res.monitor.pi_tilde;
            try {
                r.energy_residual =
                    energy_balance_residual(prev_state, state, interval, params);
            } catch (const std::exception&) {
                r.energy_residual = std::numeric_limits<double>::quiet_NaN();
            }
            res.series.push_back(r);
            if (on_sample) on_sample(state, r);
            prev_rec = r;
            prev_state = state;
            ++sample_idx;
            next_sample = sample_idx * opts.sample_every;
        }
    }

    res.final_state = state;
    return res;
}

} // namespace tcm
