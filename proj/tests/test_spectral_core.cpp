#include <doctest.h>

#include <cmath>

#include "tcm/norms.hpp"
#include "tcm/operators.hpp"
#include "tcm/transform.hpp"
#include "test_helpers.hpp"

using namespace tcm;
using namespace tcm::test;

namespace {
const double two_pi = 2.0 * std::numbers::pi;
const double box_volume = two_pi * two_pi * two_pi;
} // namespace

TEST_CASE("forward transform: dc and single modes") {
    auto g = Grid::make(16);

    SUBCASE("constant field lands on the zero mode") {
        std::vector<double> samples(g->size(), 3.25);
        const auto f = forward_transform(g, samples);
        CHECK(std::abs(mode(f, {0, 0, 0}) - Complex{3.25, 0.0}) < 1e-13);
        double off = 0.0;
        for (std::size_t i = 1; i < f.coeffs.size(); ++i)
            off = std::max(off, std::abs(f.coeffs[i]));
        CHECK(off < 1e-13);
    }

    SUBCASE("cos(x1) splits into the +-1 modes") {
        const auto f = field_from_function(
            g, [](double x, double, double) { return std::cos(x); });
        CHECK(std::abs(mode(f, {1, 0, 0}) - Complex{0.5, 0.0}) < 1e-13);
        CHECK(std::abs(mode(f, {-1, 0, 0}) - Complex{0.5, 0.0}) < 1e-13);
        CHECK(std::abs(mode(f, {0, 1, 0})) < 1e-14);
    }

    SUBCASE("shape mismatch is rejected") {
        std::vector<double> wrong(g->size() - 1);
        CHECK_THROWS_AS((void)forward_transform(g, wrong), std::invalid_argument);
    }
}

TEST_CASE("round trip reproduces random fields") {
    for (int n : {8, 16, 32}) {
        auto g = Grid::make(n);
        std::mt19937_64 rng(7 + n);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> samples(g->size());
        for (auto& s : samples) s = dist(rng);
        const auto back = inverse_transform(forward_transform(g, samples));
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            worst = std::max(worst, std::abs(back[i] - samples[i]));
            scale = std::max(scale, std::abs(samples[i]));
        }
        CHECK(worst / scale < 1e-13);
    }
}

TEST_CASE("random real fields have hermitian coefficients") {
    auto g = Grid::make(16);
    const auto f = random_physical_field(g, 99);
    CHECK(hermitian_defect(f) < 1e-12);
    CHECK(is_finite(f));
}

TEST_CASE("lambda_pow") {
    auto g = Grid::make(16);

    SUBCASE("s = 0 is the identity, dc included") {
        const auto f = random_physical_field(g, 3);
        const auto out = lambda_pow(f, 0.0);
        CHECK(max_coeff_diff(out, f) == 0.0);
    }

    SUBCASE("half power scales cos(2 x1) by sqrt(2)") {
        const auto f = field_from_function(
            g, [](double x, double, double) { return std::cos(2.0 * x); });
        const auto out = lambda_pow(f, 0.5);
        const Complex expect = std::sqrt(2.0) * mode(f, {2, 0, 0});
        CHECK(std::abs(mode(out, {2, 0, 0}) - expect) < 1e-14);
    }

    SUBCASE("positive powers annihilate constants") {
        std::vector<double> samples(g->size(), 1.0);
        const auto f = forward_transform(g, samples);
        const auto out = lambda_pow(f, 1.0);
        CHECK(max_coeff_mag(out) < 1e-14);
    }

    SUBCASE("negative power on a field with mean is an error") {
        std::vector<double> samples(g->size(), 1.0);
        const auto f = forward_transform(g, samples);
        CHECK_THROWS_AS((void)lambda_pow(f, -0.5), std::invalid_argument);
    }

    SUBCASE("powers compose on mean-zero fields") {
        auto f = random_physical_field(g, 11);
        f.coeffs[0] = Complex{0.0, 0.0};
        for (auto [s, t] : {std::pair{0.5, 1.0}, {1.5, -0.5}, {-1.0, 2.0}}) {
            const auto once = lambda_pow(f, s + t);
            const auto twice = lambda_pow(lambda_pow(f, s), t);
            CHECK(max_coeff_diff(once, twice) /
                      std::max(max_coeff_mag(once), 1e-300) <
                  1e-12);
        }
    }
}

TEST_CASE("derivative operators") {
    auto g = Grid::make(16);

    SUBCASE("divergence of gradient equals laplacian") {
        const auto f = random_physical_field(g, 5);
        const auto lhs = divergence(gradient(f));
        const auto rhs = laplacian(f);
        CHECK(max_coeff_diff(lhs, rhs) / std::max(max_coeff_mag(rhs), 1e-300) <
              1e-12);
    }

    SUBCASE("gradient of sin(x2)") {
        const auto f = field_from_function(
            g, [](double, double y, double) { return std::sin(y); });
        const auto grad = gradient(f);
        const auto expect = field_from_function(
            g, [](double, double y, double) { return std::cos(y); });
        CHECK(max_coeff_diff(grad[1], expect) < 1e-13);
        CHECK(max_coeff_mag(grad[0]) < 1e-14);
        CHECK(max_coeff_mag(grad[2]) < 1e-14);
    }

    SUBCASE("laplacian eigenvalue at mode 3") {
        const auto f = field_from_function(
            g, [](double, double, double z) { return std::cos(3.0 * z); });
        const auto lap = laplacian(f);
        const Complex expect = -9.0 * mode(f, {0, 0, 3});
        CHECK(std::abs(mode(lap, {0, 0, 3}) - expect) < 1e-13);
    }

    SUBCASE("grid mismatch is rejected") {
        SpectralVectorField w(Grid::make(16));
        w[1] = SpectralScalarField(Grid::make(32));
        CHECK_THROWS_AS((void)divergence(w), std::invalid_argument);
    }
}

TEST_CASE("leray projection") {
    auto g = Grid::make(16);

    SUBCASE("gradients are annihilated") {
        auto phi = random_physical_field(g, 21);
        phi.coeffs[0] = Complex{0.0, 0.0};
        const auto w = leray_project(gradient(phi));
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) worst = std::max(worst, max_coeff_mag(w[i]));
        CHECK(worst < 1e-12 * std::max(1.0, max_coeff_mag(phi)));
    }

    SUBCASE("divergence-free shear flow is unchanged") {
        const auto w = vector_from_functions(
            g, [](double, double y, double) { return std::sin(y); },
            [](double, double, double) { return 0.0; },
            [](double, double, double) { return 0.0; });
        const auto p = leray_project(w);
        CHECK(max_coeff_diff(p[0], w[0]) < 1e-13);
        CHECK(max_coeff_mag(p[1]) < 1e-14);
    }

    SUBCASE("longitudinal single mode projects to zero") {
        const auto w = vector_from_functions(
            g, [](double x, double, double) { return std::sin(x); },
            [](double, double, double) { return 0.0; },
            [](double, double, double) { return 0.0; });
        const auto p = leray_project(w);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) worst = std::max(worst, max_coeff_mag(p[i]));
        CHECK(worst < 1e-13);
    }

    SUBCASE("idempotent with spectrally small divergence") {
        SpectralVectorField w(g);
        for (int i = 0; i < 3; ++i) w[i] = random_physical_field(g, 31 + i);
        const auto p = leray_project(w);
        const auto pp = leray_project(p);
        double worst = 0.0, scale = 0.0;
        for (int i = 0; i < 3; ++i) {
            worst = std::max(worst, max_coeff_diff(pp[i], p[i]));
            scale = std::max(scale, max_coeff_mag(p[i]));
        }
        CHECK(worst / scale < 1e-13);
        CHECK(l2_norm(divergence(p)) <= 1e-12 * l2_norm(p));
    }
}

TEST_CASE("dealiasing") {
    auto g = Grid::make(16);

    SUBCASE("band-limited fields pass through") {
        SpectralScalarField f(g);
        set_hermitian_mode(f, {2, -3, 1}, Complex{0.4, 0.7});
        const auto out = dealias(f);
        CHECK(max_coeff_diff(out, f) == 0.0);
    }

    SUBCASE("the nyquist mode is removed") {
        SpectralScalarField f(g);
        set_hermitian_mode(f, {8, 0, 0}, Complex{1.0, 0.0});
        const auto out = dealias(f);
        CHECK(max_coeff_mag(out) == 0.0);
    }

    SUBCASE("pseudo-spectral square of sin(x1) is exact") {
        const auto s = field_from_function(
            g, [](double x, double, double) { return std::sin(x); });
        const auto samples = inverse_transform(s);
        std::vector<double> prod(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            prod[i] = samples[i] * samples[i];
        const auto result = dealias(forward_transform(g, prod));
        const auto expect = field_from_function(g, [](double x, double, double) {
            return 0.5 * (1.0 - std::cos(2.0 * x));
        });
        CHECK(max_coeff_diff(result, expect) < 1e-13);
    }
}

TEST_CASE("norms") {
    auto g = Grid::make(16);
    const double amp = 1.7;
    const auto f = field_from_function(
        g, [&](double x, double, double) { return amp * std::cos(x); });

    SUBCASE("parseval on a single mode") {
        const double expect = std::sqrt(amp * amp * box_volume / 2.0);
        CHECK(rel_diff(l2_norm(f), expect) < 1e-13);
        CHECK(rel_diff(lp_norm(f, 2.0), expect) < 1e-13);
    }

    SUBCASE("hhalf equals l2 at |k| = 1") {
        CHECK(rel_diff(sobolev_norm(f, 0.5, true), l2_norm(f)) < 1e-13);
    }

    SUBCASE("homogeneous norms kill constants") {
        std::vector<double> samples(g->size(), 4.0);
        const auto c = forward_transform(g, samples);
        CHECK(sobolev_norm(c, 1.0, true) < 1e-13);
        CHECK(sobolev_norm(c, 0.5, true) < 1e-13);
        CHECK(sobolev_norm(c, 0.0, false) == doctest::Approx(l2_norm(c)));
    }

    SUBCASE("l2 quadrature matches the spectral norm on rough fields") {
        const auto r = random_physical_field(g, 77);
        CHECK(rel_diff(lp_norm(r, 2.0), sobolev_norm(r, 0.0, true)) < 1e-12);
    }

    SUBCASE("l4 and max norms against closed forms") {
        // int cos^4 = (3/8) (2 pi)^3
        const double l4 = std::pow(std::pow(amp, 4.0) * box_volume * 3.0 / 8.0,
                                   0.25);
        CHECK(rel_diff(lp_norm(f, 4.0), l4) < 1e-13);
        CHECK(rel_diff(lp_norm(f, lp_infinity), amp) < 1e-13);
        CHECK_THROWS_AS((void)lp_norm(f, 0.5), std::invalid_argument);
    }

    SUBCASE("norms stay finite and nonnegative on random data") {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const auto r = random_physical_field(g, seed);
            for (double s : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0}) {
                SpectralScalarField rz = r;
                rz.coeffs[0] = Complex{0, 0};
                const double v = sobolev_norm(rz, s, true);
                CHECK(std::isfinite(v));
                CHECK(v >= 0.0);
            }
            for (double p : {1.0, 2.5, 4.0})
                CHECK(std::isfinite(lp_norm(r, p)));
        }
    }
}

TEST_CASE("grid invariants") {
    auto g = Grid::make(16, two_pi);
    CHECK(g->dealias_cutoff() == 5);
    CHECK(g->k_int(8) == 8);   // self-conjugate mode kept positive
    CHECK(g->k_int(9) == -7);
    CHECK(g->dx() == doctest::Approx(two_pi / 16));
    CHECK_THROWS_AS((void)Grid::make(12), std::invalid_argument);
    CHECK_THROWS_AS((void)Grid::make(4), std::invalid_argument);

    int zero_modes = 0;
    for (std::size_t i = 0; i < g->size(); ++i)
        if (g->k2()[i] == 0.0) ++zero_modes;
    CHECK(zero_modes == 1);
}
