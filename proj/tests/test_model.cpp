#include <doctest.h>

#include <cmath>

#include "tcm/io.hpp"
#include "tcm/oracles.hpp"
#include "tcm/run.hpp"
#include "test_helpers.hpp"

using namespace tcm;
using namespace tcm::test;

TEST_CASE("damping_term") {
    auto g = Grid::make(16);

    SUBCASE("zero field maps to zero") {
        const auto out = damping_term(SpectralVectorField(g), 3.0, 1.0);
        for (int i = 0; i < 3; ++i) CHECK(max_coeff_mag(out[i]) == 0.0);
    }

    SUBCASE("constant field, cubic damping") {
        const double c = 1.7;
        const auto w = vector_from_functions(
            g, [&](double, double, double) { return c; },
            [](double, double, double) { return 0.0; },
            [](double, double, double) { return 0.0; });
        const auto out = damping_term(w, 3.0, 1.0);
        CHECK(std::abs(mode(out[0], {0, 0, 0}) - Complex{c * c * c, 0.0}) <
              1e-13);
        CHECK(max_coeff_mag(out[1]) < 1e-14);
    }

    SUBCASE("sin^3 expands into the 1 and 3 modes") {
        const auto w = vector_from_functions(
            g, [](double, double y, double) { return std::sin(y); },
            [](double, double, double) { return 0.0; },
            [](double, double, double) { return 0.0; });
        const auto out = damping_term(w, 3.0, 2.0);
        // 2 sin^3 = 2 (3/4 sin y - 1/4 sin 3y)
        const auto expect = field_from_function(g, [](double, double y, double) {
            return 2.0 * (0.75 * std::sin(y) - 0.25 * std::sin(3.0 * y));
        });
        CHECK(max_coeff_diff(out[0], expect) < 1e-13);
        CHECK(max_coeff_mag(out[1]) < 1e-14);
        CHECK(max_coeff_mag(out[2]) < 1e-14);
    }

    SUBCASE("fractional exponent homogeneity") {
        const auto w = vector_from_functions(
            g,
            [](double x, double y, double) {
                return std::sin(y) + 0.3 * std::cos(x);
            },
            [](double x, double, double z) {
                return std::cos(z) - 0.2 * std::sin(x);
            },
            [](double, double, double) { return 0.0; });
        const double gamma = 2.5;
        auto w2 = w;
        scale_inplace(w2, 2.0);
        const auto d1 = damping_term(w, gamma, 1.0);
        const auto d2 = damping_term(w2, gamma, 1.0);
        const double factor = std::pow(2.0, gamma);
        for (int i = 0; i < 3; ++i) {
            auto scaled = d1[i];
            scale_inplace(scaled, factor);
            CHECK(max_coeff_diff(scaled, d2[i]) /
                      std::max(max_coeff_mag(d2[i]), 1e-300) <
                  1e-12);
        }
    }

    SUBCASE("exponent below one is rejected") {
        CHECK_THROWS_AS((void)damping_term(SpectralVectorField(g), 0.5, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("nonlinear_rhs") {
    auto g = Grid::make(16);
    ModelParams params;

    SUBCASE("zero state gives exactly zero tendency") {
        const auto t = nonlinear_rhs(SimState(g), params);
        for (int i = 0; i < 3; ++i) {
            CHECK(max_coeff_mag(t.du[i]) == 0.0);
            CHECK(max_coeff_mag(t.dv[i]) == 0.0);
        }
        CHECK(max_coeff_mag(t.dtheta) == 0.0);
    }

    SUBCASE("temperature gradient drives v") {
        SimState s(g);
        s.theta = field_from_function(
            g, [](double x, double, double) { return std::sin(x); });
        const auto t = nonlinear_rhs(s, params);
        const auto expect = field_from_function(
            g, [](double x, double, double) { return -std::cos(x); });
        CHECK(max_coeff_diff(t.dv[0], expect) < 1e-13);
        CHECK(max_coeff_mag(t.dv[1]) < 1e-14);
        CHECK(max_coeff_mag(t.dtheta) < 1e-14); // v = 0, so div v drops out
        for (int i = 0; i < 3; ++i) CHECK(max_coeff_mag(t.du[i]) < 1e-14);
    }

    SUBCASE("shear flow does not self-advect") {
        ModelParams p;
        p.sigma1 = 0.0;
        SimState s(g);
        s.u = vector_from_functions(
            g, [](double, double y, double) { return std::sin(y); },
            [](double, double, double) { return 0.0; },
            [](double, double, double) { return 0.0; });
        const auto t = nonlinear_rhs(s, p);
        for (int i = 0; i < 3; ++i) CHECK(max_coeff_mag(t.du[i]) < 1e-14);
    }

    SUBCASE("explicit u tendency is divergence-free") {
        SimState s(g);
        s.u = leray_project(vector_from_functions(
            g,
            [](double x, double y, double z) {
                return std::sin(x) * std::cos(y) * std::cos(z);
            },
            [](double x, double y, double z) {
                return -std::cos(x) * std::sin(y) * std::cos(z);
            },
            [](double, double, double) { return 0.0; }));
        s.v = vector_from_functions(
            g, [](double, double y, double) { return std::sin(y); },
            [](double, double, double z) { return std::cos(z); },
            [](double x, double, double) { return std::sin(x); });
        const auto t = nonlinear_rhs(s, params);
        CHECK(l2_norm(divergence(t.du)) <= 1e-12 * std::max(1.0, l2_norm(t.du)));
    }
}

TEST_CASE("step") {
    SUBCASE("zero state stays exactly zero") {
        auto g = Grid::make(16);
        const auto next = step(SimState(g), 1e-2, ModelParams{});
        for (int i = 0; i < 3; ++i) {
            CHECK(max_coeff_mag(next.u[i]) == 0.0);
            CHECK(max_coeff_mag(next.v[i]) == 0.0);
        }
        CHECK(max_coeff_mag(next.theta) == 0.0);
        CHECK(next.time == doctest::Approx(1e-2));
    }

    SUBCASE("pure diffusion uses the exact factor") {
        auto g = Grid::make(16);
        ModelParams p;
        p.advection = false;
        p.damping = false;
        p.coupling = false;
        p.nu = 0.7;
        p.mu = 1.3;

        SimState s(g);
        set_hermitian_mode(s.u[1], {1, 0, 0}, Complex{0.25, 0.5});
        set_hermitian_mode(s.theta, {2, 1, 0}, Complex{0.1, -0.3});
        const double dt = 3e-3;
        const auto next = step(s, dt, p);

        const Complex eu = mode(s.u[1], {1, 0, 0}) * std::exp(-p.nu * 1.0 * dt);
        const Complex et = mode(s.theta, {2, 1, 0}) * std::exp(-p.mu * 5.0 * dt);
        CHECK(std::abs(mode(next.u[1], {1, 0, 0}) - eu) < 1e-15);
        CHECK(std::abs(mode(next.theta, {2, 1, 0}) - et) < 1e-15);
    }

    SUBCASE("coupled linear mode matches the matrix exponential") {
        auto g = Grid::make(16);
        ModelParams p;
        p.advection = false;
        p.damping = false;
        p.eta = 0.8;
        p.mu = 1.1;

        SimState s(g);
        const std::array<int, 3> mk{1, 2, 0};
        set_hermitian_mode(s.v[0], mk, Complex{0.3, -0.2});
        set_hermitian_mode(s.v[2], mk, Complex{-0.1, 0.4});
        set_hermitian_mode(s.theta, mk, Complex{0.2, 0.1});

        const double T = 0.1, dt = 1e-3;
        SimState cur = s;
        for (int i = 0; i < 100; ++i) cur = step(cur, dt, p);

        const std::array<double, 3> kvec{g->dk() * mk[0], g->dk() * mk[1],
                                         g->dk() * mk[2]};
        const oracles::CVec<4> x0{mode(s.v[0], mk), mode(s.v[1], mk),
                                  mode(s.v[2], mk), mode(s.theta, mk)};
        const auto xT = oracles::coupled_mode_solution(kvec, p.eta, p.mu, T, x0);
        double ref = 0.0;
        for (const auto& x : xT) ref = std::max(ref, std::abs(x));
        const Complex got[4] = {mode(cur.v[0], mk), mode(cur.v[1], mk),
                                mode(cur.v[2], mk), mode(cur.theta, mk)};
        for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - xT[i]) / ref < 1e-9);
        (void)T;
    }

    SUBCASE("plain rk4 without integrating factor converges on heat decay") {
        auto g = Grid::make(16);
        ModelParams p;
        p.advection = false;
        p.damping = false;
        p.coupling = false;
        SimState s(g);
        set_hermitian_mode(s.theta, {1, 0, 0}, Complex{0.5, 0.0});
        StepOptions opts;
        opts.integrating_factor = false;
        SimState cur = s;
        for (int i = 0; i < 100; ++i) cur = step(cur, 1e-3, p, opts);
        const Complex expect = mode(s.theta, {1, 0, 0}) * std::exp(-0.1);
        CHECK(std::abs(mode(cur.theta, {1, 0, 0}) - expect) < 1e-10);
    }
}

TEST_CASE("cfl_dt") {
    auto g = Grid::make(32);
    ModelParams params;

    SUBCASE("quiescent state returns the cap") {
        CHECK(cfl_dt(SimState(g), 0.5, 0.125, params) == 0.125);
    }

    SUBCASE("advective limit and velocity scaling") {
        SimState s(g);
        s.u = vector_from_functions(
            g, [](double, double y, double) { return std::sin(y); },
            [](double, double, double) { return 0.0; },
            [](double, double, double) { return 0.0; });
        const double expect = 0.5 * g->dx();
        CHECK(cfl_dt(s, 0.5, 10.0, params) ==
              doctest::Approx(expect).epsilon(1e-14));

        auto s2 = s;
        scale_inplace(s2.u, 2.0);
        CHECK(cfl_dt(s2, 0.5, 10.0, params) ==
              doctest::Approx(0.5 * expect).epsilon(1e-14));
    }

    SUBCASE("explicit diffusion cap applies without the integrating factor") {
        SimState s(g);
        const double kmax = g->dk() * (g->n() / 2);
        const double expect = 0.5 / (params.ell() * 3.0 * kmax * kmax);
        CHECK(cfl_dt(s, 0.5, 10.0, params, false) ==
              doctest::Approx(expect).epsilon(1e-14));
    }

    SUBCASE("bad safety factor is rejected") {
        CHECK_THROWS_AS((void)cfl_dt(SimState(g), 0.0, 0.1, params),
                        std::invalid_argument);
    }
}

TEST_CASE("run") {
    auto g = Grid::make(16);
    ModelParams params;

    SUBCASE("zero horizon: empty series, state unchanged") {
        SimState s(g);
        set_hermitian_mode(s.theta, {1, 0, 0}, Complex{0.5, 0.0});
        RunOptions opts;
        opts.horizon = 0.0;
        const auto res = run(s, params, opts);
        CHECK(res.series.empty());
        CHECK(max_coeff_diff(res.final_state.theta, s.theta) == 0.0);
        CHECK_FALSE(res.aborted);
    }

    SUBCASE("zero data: zero norms, pi grows linearly") {
        RunOptions opts;
        opts.horizon = 0.05;
        opts.sample_every = 0.01;
        opts.dt = 1e-3;
        opts.diag.c_pi = 2.0;
        const auto res = run(SimState(g), params, opts);
        REQUIRE(res.series.size() == 6);
        for (const auto& r : res.series) {
            CHECK(r.l2_triple == 0.0);
            CHECK(r.h2_triple == 0.0);
            CHECK(std::abs(r.pi - 2.0 * r.time) <= 1e-12 * std::max(1.0, r.time));
            CHECK(std::abs(r.pi_tilde - r.time) <=
                  1e-12 * std::max(1.0, r.time));
        }
        CHECK(max_coeff_mag(res.final_state.theta) == 0.0);
        CHECK(max_coeff_mag(res.final_state.u[0]) == 0.0);
    }

    SUBCASE("small data decays monotonically with div u preserved") {
        SimState s(g);
        s.u = leray_project(vector_from_functions(
            g,
            [](double x, double y, double z) {
                return 0.01 * std::sin(x) * std::cos(y) * std::cos(z);
            },
            [](double x, double y, double z) {
                return -0.01 * std::cos(x) * std::sin(y) * std::cos(z);
            },
            [](double, double, double) { return 0.0; }));
        set_hermitian_mode(s.theta, {1, 1, 0}, Complex{0.002, 0.001});

        RunOptions opts;
        opts.horizon = 0.1;
        opts.sample_every = 0.01;
        opts.dt = 1e-3;
        bool div_ok = true;
        const auto res = run(s, params, opts,
                             [&](const SimState& st, const DiagnosticsRecord& r) {
                                 if (divergence_defect(st) >
                                     1e-10 * std::max(1.0, r.l2_u))
                                     div_ok = false;
                             });
        CHECK(div_ok);
        REQUIRE(res.series.size() == 11);
        for (std::size_t i = 1; i < res.series.size(); ++i)
            CHECK(res.series[i].l2_triple < res.series[i - 1].l2_triple);
    }

    SUBCASE("identical runs produce identical csv bytes") {
        SimState s(g);
        set_hermitian_mode(s.theta, {1, 0, 0}, Complex{0.01, 0.0});
        set_hermitian_mode(s.v[1], {0, 1, 1}, Complex{0.004, -0.002});
        RunOptions opts;
        opts.horizon = 0.03;
        opts.sample_every = 0.01;
        opts.dt = 1e-3;
        const auto a = run(s, params, opts);
        const auto b = run(s, params, opts);
        CHECK(series_to_csv(a.series) == series_to_csv(b.series));
    }

    SUBCASE("instability aborts with a partial series") {
        SimState s(g);
        set_hermitian_mode(s.theta, {5, 0, 0}, Complex{50.0, 0.0});
        set_hermitian_mode(s.v[0], {5, 0, 0}, Complex{50.0, 0.0});
        RunOptions opts;
        opts.horizon = 50.0;
        opts.sample_every = 1.0;
        opts.dt = 1.0;
        opts.integrating_factor = false; // explicit diffusion, wildly unstable
        const auto res = run(s, params, opts);
        CHECK(res.aborted);
        CHECK_FALSE(res.abort_reason.empty());
        CHECK(res.series.size() >= 1);
    }

    SUBCASE("adaptive stepping reaches the horizon") {
        SimState s(g);
        s.u = leray_project(vector_from_functions(
            g, [](double, double y, double) { return std::sin(y); },
            [](double, double, double) { return 0.0; },
            [](double, double, double) { return 0.0; }));
        RunOptions opts;
        opts.adaptive = true;
        opts.cfl_safety = 0.5;
        opts.dt_cap = 0.05;
        opts.horizon = 0.1;
        opts.sample_every = 0.05;
        const auto res = run(s, params, opts);
        CHECK_FALSE(res.aborted);
        CHECK(res.final_state.time == doctest::Approx(0.1));
    }
}
