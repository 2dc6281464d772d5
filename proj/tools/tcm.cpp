// Command-line driver: simulate / sweep / verify / inequalities / plotdata.
//
// Exit codes: 0 success, 1 usage, 2 configuration error, 3 runtime failure
// (I/O, numeric abort, failed verification).

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcm/config.hpp"
#include "tcm/inequality_lab.hpp"
#include "tcm/io.hpp"
#include "tcm/oracles.hpp"
#include "tcm/run.hpp"

namespace {

using namespace tcm;

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_simulate(const std::string& config_path, const std::string& resume_path) {
    const LoadedConfig loaded = load_config(config_path);
    print_warnings(loaded.warnings);
    const RunConfig& cfg = loaded.config;

    SimState state;
    ModelParams params = cfg.params;
    RunOptions opts = cfg.run_options();

    if (!resume_path.empty()) {
        Checkpoint ck = read_checkpoint(resume_path);
        state = std::move(ck.state);
        params = ck.params;
        opts.initial_pi = ck.pi;
        opts.initial_pi_tilde = ck.pi_tilde;
    } else {
        const auto grid = Grid::make(cfg.n, cfg.box_length);
        state = make_initial_data(grid, cfg.initial).state;
    }

    const RunResult res = run(state, params, opts);
    write_series(res.series, cfg.series_path);
    if (!cfg.checkpoint_path.empty())
        write_checkpoint(res.final_state, params, cfg.checkpoint_path,
                         res.monitor.pi, res.monitor.pi_tilde);

    if (res.aborted) {
        std::cerr << "run aborted at t = " << res.final_state.time << ": "
                  << res.abort_reason << "\n";
        std::cerr << "partial series written to " << cfg.series_path << "\n";
        return 3;
    }
    std::cout << "t = " << res.final_state.time << ", samples = "
              << res.series.size() << ", pi = " << res.monitor.pi
              << ", series -> " << cfg.series_path << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& c0_list,
              int workers, std::string out_path) {
    const LoadedConfig loaded = load_config(config_path);
    print_warnings(loaded.warnings);
    const RunConfig& cfg = loaded.config;

    std::vector<double> c0s;
    {
        std::string item;
        std::istringstream ss(c0_list);
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(item, &pos);
                if (pos != item.size() || v < 0.0) throw std::invalid_argument("");
                c0s.push_back(v);
            } catch (...) {
                throw ConfigError({"--c0: cannot parse amplitude '" + item + "'"});
            }
        }
        if (c0s.empty()) throw ConfigError({"--c0: empty amplitude list"});
    }

    if (const char* env = std::getenv("TCM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) workers = n;
    }

    const SweepResult result = amplitude_sweep(cfg, c0s, workers);
    if (out_path.empty()) out_path = cfg.sweep_path;
    write_sweep_csv(result, out_path);

    std::cout << "c0          violations  l2_ratio    pi          class\n";
    for (const auto& row : result.rows) {
        std::printf("%-11.4g %-11zu %-11.4g %-11.4g %s\n", row.c0,
                    row.violations, row.l2_ratio, row.pi,
                    row.classification.c_str());
    }
    std::cout << "sweep -> " << out_path << "\n";
    return 0;
}

struct CheckTally {
    int passed = 0;
    int failed = 0;
    void report(const std::string& name, bool ok, double value,
                double threshold) {
        std::printf("[%s] %-38s value=%.3e threshold=%.3e\n", ok ? "PASS" : "FAIL",
                    name.c_str(), value, threshold);
        ok ? ++passed : ++failed;
    }
};

int cmd_verify(const std::string& config_path) {
    const LoadedConfig loaded = load_config(config_path);
    print_warnings(loaded.warnings);
    const RunConfig& cfg = loaded.config;
    CheckTally tally;

    // Linear oracle: diffusion is exact, (v,theta) mode matches the matrix
    // exponential.
    {
        const auto grid = Grid::make(16, cfg.box_length);
        ModelParams p = cfg.params;
        p.advection = false;
        p.damping = false;
        p.coupling = true;

        SimState state(grid);
        const std::array<std::array<int, 3>, 3> modes = {
            {{1, 0, 0}, {0, 2, 1}, {2, 1, 2}}};
        for (std::size_t m = 0; m < modes.size(); ++m) {
            set_hermitian_mode(state.u[0], modes[m], Complex{0.3, 0.1 * (m + 1)});
            set_hermitian_mode(state.v[1], modes[m], Complex{0.2, -0.05 * (m + 1)});
            set_hermitian_mode(state.theta, modes[m], Complex{-0.1, 0.2});
        }
        state.u = leray_project(state.u);
        const SimState start = state;

        const double T = 0.5, dt = 1e-3;
        SimState cur = state;
        const int steps = static_cast<int>(std::round(T / dt));
        for (int i = 0; i < steps; ++i) cur = step(cur, dt, p);

        double worst = 0.0;
        for (const auto& mk : modes) {
            const std::array<double, 3> kvec = {grid->dk() * mk[0],
                                                grid->dk() * mk[1],
                                                grid->dk() * mk[2]};
            const double k2 = kvec[0] * kvec[0] + kvec[1] * kvec[1] +
                              kvec[2] * kvec[2];
            // u: exact diffusion decay
            for (int i = 0; i < 3; ++i) {
                const Complex expect =
                    mode(start.u[i], mk) * std::exp(-p.nu * k2 * T);
                const Complex got = mode(cur.u[i], mk);
                const double scale = std::max(1e-30, std::abs(expect));
                worst = std::max(worst, std::abs(got - expect) / scale);
            }
            // (v, theta): 4x4 matrix exponential
            oracles::CVec<4> x0{mode(start.v[0], mk), mode(start.v[1], mk),
                                mode(start.v[2], mk), mode(start.theta, mk)};
            const auto xT = oracles::coupled_mode_solution(kvec, p.eta, p.mu, T, x0);
            const Complex got[4] = {mode(cur.v[0], mk), mode(cur.v[1], mk),
                                    mode(cur.v[2], mk), mode(cur.theta, mk)};
            double ref = 0.0;
            for (const auto& x : xT) ref = std::max(ref, std::abs(x));
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst, std::abs(got[i] - xT[i]) /
                                            std::max(ref, 1e-30));
        }
        tally.report("linear per-mode oracle", worst <= 1e-8, worst, 1e-8);
    }

    // Energy balance: Simpson residual small and falling at >= 8x per halving.
    {
        const auto grid = Grid::make(cfg.n, cfg.box_length);
        ModelParams p;
        p.nu = p.eta = p.mu = 3.0;
        p.sigma1 = p.sigma2 = 1.0;
        p.alpha = p.beta = 3.0;
        InitialDataSpec spec;
        spec.kind = InitialKind::taylor_green;
        spec.target_h_half = 0.05;
        SimState s = make_initial_data(grid, spec).state;
        for (int i = 0; i < 50; ++i) s = step(s, 1e-3, p);

        const double r1 =
            std::abs(energy_balance_residual(s, step(s, 1e-3, p), 1e-3, p));
        const double r2 =
            std::abs(energy_balance_residual(s, step(s, 5e-4, p), 5e-4, p));
        tally.report("energy balance residual", r1 <= 1e-4, r1, 1e-4);
        const double ratio = r2 > 0.0 ? r1 / r2 : lp_infinity;
        tally.report("energy residual dt-halving ratio", ratio >= 8.0, ratio, 8.0);
    }

    // Damping identity on a smooth band-limited field.
    {
        const auto grid = Grid::make(64, cfg.box_length);
        const SpectralVectorField u = vector_from_functions(
            grid,
            [](double, double y, double) { return std::sin(y); },
            [](double, double, double z) { return 2.0 + std::cos(z); },
            [](double x, double, double) { return std::cos(x); });
        double worst = 0.0;
        for (double alpha : {2.5, 3.0, 3.5})
            for (double sigma : {0.5, 1.0})
                worst = std::max(worst,
                                 damping_identity_residual(u, alpha, sigma));
        tally.report("damping identity residual", worst <= 1e-6, worst, 1e-6);
    }

    // Coupling cancellation, exact in spectral space.
    {
        const auto grid = Grid::make(cfg.n, cfg.box_length);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const auto v = lab::random_band_limited_vector(
                grid, cfg.initial.seed + i, grid->dealias_cutoff() / 2, -2.0,
                false);
            const auto th = lab::random_band_limited_field(
                grid, cfg.initial.seed + 1000 + i, grid->dealias_cutoff() / 2,
                -2.0);
            for (double s : {0.5, 1.5}) {
                const double res = coupling_cancellation_residual(v, th, s);
                const double scale = sobolev_norm(v, s + 1.0, true) *
                                         sobolev_norm(th, s, true) +
                                     1.0;
                worst = std::max(worst, std::abs(res) / scale);
            }
        }
        tally.report("coupling cancellation residual", worst <= 1e-12, worst,
                     1e-12);
    }

    std::printf("%d passed, %d failed\n", tally.passed, tally.failed);
    return tally.failed == 0 ? 0 : 3;
}

int cmd_inequalities(const std::string& config_path, int samples,
                     long long seed_arg, const std::string& out_path) {
    const LoadedConfig loaded = load_config(config_path);
    print_warnings(loaded.warnings);
    const RunConfig& cfg = loaded.config;

    const auto grid = Grid::make(cfg.n, cfg.box_length);
    const std::uint64_t seed =
        seed_arg >= 0 ? static_cast<std::uint64_t>(seed_arg) : cfg.initial.seed;
    const auto reports = lab::standard_ratio_sweep(grid, samples, seed);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << "instance,samples,max_ratio,mean_ratio,seed\n";
    std::printf("%-42s %8s %12s %12s\n", "instance", "samples", "max", "mean");
    for (const auto& r : reports) {
        out << r.instance << ',' << r.samples << ',' << format_float(r.max_ratio)
            << ',' << format_float(r.mean_ratio) << ',' << r.seed << '\n';
        std::printf("%-42s %8d %12.5g %12.5g\n", r.instance.c_str(), r.samples,
                    r.max_ratio, r.mean_ratio);
    }
    std::cout << "report -> " << out_path << "\n";
    return 0;
}

int cmd_plotdata(const std::string& series, const std::string& out_dir) {
    const auto files = write_plot_data(series, out_dir);
    for (const auto& f : files) std::cout << f << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral tropical climate model with velocity damping"};
    app.require_subcommand(1);

    std::string config_path, resume_path, c0_list, out_path, series_path, out_dir;
    int workers = 1;
    int samples = 200;
    long long seed = -1;

    auto* sim = app.add_subcommand("simulate", "advance a run and write the series");
    sim->add_option("--config", config_path, "config file")->required();
    sim->add_option("--resume", resume_path, "checkpoint to continue from");

    auto* sweep = app.add_subcommand("sweep", "amplitude sweep over c0 targets");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--c0", c0_list, "comma-separated hhalf targets")->required();
    sweep->add_option("--workers", workers, "worker pool size (TCM_THREADS overrides)");
    sweep->add_option("--out", out_path, "sweep CSV path (defaults to config)");

    auto* verify = app.add_subcommand("verify", "run the identity/oracle suite");
    verify->add_option("--config", config_path, "config file")->required();

    auto* ineq = app.add_subcommand("inequalities", "empirical inequality ratios");
    ineq->add_option("--config", config_path, "config file")->required();
    ineq->add_option("--samples", samples, "random fields per instance");
    ineq->add_option("--seed", seed, "rng seed (defaults to config seed)");
    ineq->add_option("--out", out_path, "report CSV path")
        ->default_val("ratio_report.csv");

    auto* plot = app.add_subcommand("plotdata", "split a series CSV for plotting");
    plot->add_option("--series", series_path, "series CSV")->required();
    plot->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        std::cerr << app.help() << "\n";
        return 1;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, resume_path);
        if (sweep->parsed()) return cmd_sweep(config_path, c0_list, workers, out_path);
        if (verify->parsed()) return cmd_verify(config_path);
        if (ineq->parsed()) return cmd_inequalities(config_path, samples, seed, out_path);
        if (plot->parsed()) return cmd_plotdata(series_path, out_dir);
    } catch (const tcm::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
