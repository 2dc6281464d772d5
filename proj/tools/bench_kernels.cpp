// Times the serial reference kernels against the OpenMP ones and the full
// right-hand side at a few grid sizes.  Build with tcm_bench; run with
// OMP_NUM_THREADS set to taste.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "tcm/experiments.hpp"
#include "tcm/kernels.hpp"

using namespace tcm;
namespace chrono = std::chrono;

namespace {

double seconds_per_call(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto t0 = chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = chrono::steady_clock::now();
    return chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* name, double serial, double omp) {
    std::printf("%-26s %12.3f %12.3f %9.2fx\n", name, serial * 1e6, omp * 1e6,
                serial / omp);
}

} // namespace

int main() {
    std::printf("%-26s %12s %12s %9s\n", "kernel", "serial [us]", "openmp [us]",
                "speedup");

    for (int n : {32, 64}) {
        const auto grid = Grid::make(n);
        const std::size_t size = grid->size();
        std::printf("-- n = %d (%zu modes)\n", n, size);

        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<kernels::Complex> c(size), out(size);
        std::vector<double> m(size), a(size), b(size), acc(size);
        for (std::size_t i = 0; i < size; ++i) {
            c[i] = {dist(rng), dist(rng)};
            m[i] = dist(rng);
            a[i] = dist(rng);
            b[i] = dist(rng);
        }
        std::vector<double> ox(size), oy(size), oz(size);

        struct Case {
            const char* name;
            std::function<void()> fn;
        };
        const std::vector<Case> cases = {
            {"apply_multiplier",
             [&] { kernels::apply_multiplier(out.data(), m.data(), size); }},
            {"mul_add",
             [&] { kernels::mul_add(a.data(), b.data(), acc.data(), size); }},
            {"damping (gamma=2.5)",
             [&] {
                 kernels::damping(a.data(), b.data(), acc.data(), 1.0, 2.5,
                                  ox.data(), oy.data(), oz.data(), size);
             }},
            {"sum_abs2_weighted",
             [&] { kernels::sum_abs2_weighted(c.data(), m.data(), size); }},
            {"sum_pow (p=3.5)",
             [&] { kernels::sum_pow(a.data(), 3.5, size); }},
        };

        for (const auto& cs : cases) {
            out = c;
            kernels::set_mode(kernels::Mode::Serial);
            const double ts = seconds_per_call(cs.fn, 20);
            out = c;
            kernels::set_mode(kernels::Mode::OpenMP);
            const double tp = seconds_per_call(cs.fn, 20);
            row(cs.name, ts, tp);
        }

        // whole tendency evaluation
        {
            InitialDataSpec spec;
            spec.kind = InitialKind::random_band;
            spec.band = grid->dealias_cutoff() / 2;
            spec.target_h_half = 0.1;
            SimState state = make_initial_data(grid, spec).state;
            ModelParams params;
            auto fn = [&] { (void)nonlinear_rhs(state, params); };
            kernels::set_mode(kernels::Mode::Serial);
            const double ts = seconds_per_call(fn, 3);
            kernels::set_mode(kernels::Mode::OpenMP);
            const double tp = seconds_per_call(fn, 3);
            row("nonlinear_rhs", ts, tp);
        }
        kernels::set_mode(kernels::Mode::OpenMP);
    }
    return 0;
}
