#include "tcm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "tcm/config.hpp"
#include "tcm/inequality_lab.hpp"

namespace tcm {

namespace {

double triple_hhalf(const SimState& s) {
    const double a = sobolev_norm(s.u, 0.5, true);
    const double b = sobolev_norm(s.v, 0.5, true);
    const double c = sobolev_norm(s.theta, 0.5, true);
    return std::sqrt(a * a + b * b + c * c);
}

double h2_sum(const SimState& s) {
    return sobolev_norm(s.u, 2.0, false) + sobolev_norm(s.v, 2.0, false) +
           sobolev_norm(s.theta, 2.0, false);
}

} // namespace

InitialData make_initial_data(const std::shared_ptr<const Grid>& g,
                              const InitialDataSpec& spec) {
    SimState state(g);
    switch (spec.kind) {
    case InitialKind::taylor_green: {
        const double au = spec.amp_u, av = spec.amp_v, at = spec.amp_theta;
        state.u = vector_from_functions(
            g,
            [au](double x, double y, double z) {
                return au * std::sin(x) * std::cos(y) * std::cos(z);
            },
            [au](double x, double y, double z) {
                return -au * std::cos(x) * std::sin(y) * std::cos(z);
            },
            [](double, double, double) { return 0.0; });
        state.v = vector_from_functions(
            g,
            [av](double x, double y, double z) {
                return av * std::cos(x) * std::sin(y) * std::sin(z);
            },
            [av](double x, double y, double z) {
                return av * std::sin(x) * std::cos(y) * std::sin(z);
            },
            [av](double x, double y, double z) {
                return av * std::sin(x) * std::sin(y) * std::cos(z);
            });
        state.theta = field_from_function(g, [at](double x, double y, double z) {
            return at * std::cos(x) * std::cos(y) * std::cos(z);
        });
        break;
    }
    case InitialKind::random_band: {
        state.u = lab::random_band_limited_vector(g, spec.seed, spec.band,
                                                  spec.spectrum_slope, true);
        scale_inplace(state.u, spec.amp_u);
        state.v = lab::random_band_limited_vector(g, spec.seed + 7919, spec.band,
                                                  spec.spectrum_slope, false);
        scale_inplace(state.v, spec.amp_v);
        state.theta = lab::random_band_limited_field(g, spec.seed + 104729,
                                                     spec.band,
                                                     spec.spectrum_slope);
        scale_inplace(state.theta, spec.amp_theta);
        break;
    }
    case InitialKind::single_mode:
        set_hermitian_mode(state.theta, {1, 0, 0},
                           Complex{0.5 * spec.amp_theta, 0.0});
        break;
    }

    if (spec.target_h_half >= 0.0) {
        const double achieved = triple_hhalf(state);
        if (spec.target_h_half > 0.0 && achieved == 0.0)
            throw std::invalid_argument(
                "make_initial_data: zero field cannot be rescaled to a positive "
                "target");
        const double scale =
            achieved > 0.0 ? spec.target_h_half / achieved : 0.0;
        scale_inplace(state.u, scale);
        scale_inplace(state.v, scale);
        scale_inplace(state.theta, scale);
    }

    InitialData data;
    data.state = std::move(state);
    data.achieved_h_half = triple_hhalf(data.state);
    data.h2_size = h2_sum(data.state);
    data.seed = spec.seed;
    return data;
}

ProtocolResult run_small_data_protocol(const RunConfig& cfg) {
    const auto grid = Grid::make(cfg.n, cfg.box_length);
    const InitialData data = make_initial_data(grid, cfg.initial);

    ProtocolResult out;
    out.c0 = data.achieved_h_half;
    out.r_h2 = data.h2_size;
    out.run = run(data.state, cfg.params, cfg.run_options());

    const auto& series = out.run.series;
    if (series.size() >= 2) out.monotonicity = monotonicity_report(series);
    if (!series.empty()) {
        out.initial_l2 = series.front().l2_triple;
        out.final_l2 = series.back().l2_triple;
        out.l2_decay_factor =
            out.initial_l2 > 0.0 ? out.final_l2 / out.initial_l2 : 0.0;
        out.pi = series.back().pi;
        out.pi_tilde = series.back().pi_tilde;
        for (std::size_t i = 2; i < series.size(); ++i) {
            const double prev_avg = series[i - 1].pi / series[i - 1].time;
            const double cur_avg = series[i].pi / series[i].time;
            if (cur_avg > prev_avg * (1.0 + 1e-12))
                out.pi_over_t_nonincreasing = false;
        }
    }

    if (out.run.aborted) {
        out.classification = "inconclusive";
        return out;
    }
    const double h2_initial = series.empty() ? 0.0 : series.front().h2_triple;
    const double h2_final = series.empty() ? 0.0 : series.back().h2_triple;
    const bool grew = h2_initial > 0.0 &&
                      h2_final >= cfg.growth_factor * h2_initial;
    // zero data decays trivially (0 -> 0 with no violations)
    const bool decayed =
        (out.final_l2 < out.initial_l2 ||
         (out.initial_l2 == 0.0 && out.final_l2 == 0.0)) &&
        out.monotonicity.total_violations() == 0;
    if (grew)
        out.classification = "growth";
    else if (decayed)
        out.classification = "decay";
    else
        out.classification = "inconclusive";
    return out;
}

SweepResult amplitude_sweep(const RunConfig& cfg, std::span<const double> c0_grid,
                            int workers) {
    SweepResult result;
    result.rows.resize(c0_grid.size());
    if (c0_grid.empty()) return result;

    const int nworkers = std::max(
        1, std::min<int>(workers, static_cast<int>(c0_grid.size())));
    std::atomic<std::size_t> cursor{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= c0_grid.size()) return;
            RunConfig row_cfg = cfg;
            row_cfg.initial.target_h_half = c0_grid[i];
            const ProtocolResult p = run_small_data_protocol(row_cfg);
            SweepRow row;
            row.c0 = p.c0;
            row.r_h2 = p.r_h2;
            row.violations = p.monotonicity.total_violations();
            row.l2_ratio = p.l2_decay_factor;
            const auto& series = p.run.series;
            const double h2i = series.empty() ? 0.0 : series.front().h2_triple;
            const double h2f = series.empty() ? 0.0 : series.back().h2_triple;
            row.h2_ratio = h2i > 0.0 ? h2f / h2i : 0.0;
            row.pi = p.pi;
            row.delta_sq_integral = p.monotonicity.delta_sq_integral;
            row.classification = p.classification;
            result.rows[i] = std::move(row);
        }
    };

    if (nworkers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (int t = 0; t < nworkers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return result;
}

} // namespace tcm
