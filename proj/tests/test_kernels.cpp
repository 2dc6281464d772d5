#include <doctest.h>

#include <omp.h>

#include <random>
#include <vector>

#include "kernels_impl.hpp"

using namespace tcm::kernels;

namespace {

struct Arrays {
    std::vector<Complex> c, x, y, z, w, out_s, out_p;
    std::vector<double> a, b, m, acc_s, acc_p;
    std::vector<unsigned char> mask;

    explicit Arrays(std::size_t n, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        auto rc = [&] { return Complex{dist(rng), dist(rng)}; };
        c.resize(n); x.resize(n); y.resize(n); z.resize(n); w.resize(n);
        out_s.resize(n); out_p.resize(n);
        a.resize(n); b.resize(n); m.resize(n);
        acc_s.resize(n); acc_p.resize(n);
        mask.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = rc(); x[i] = rc(); y[i] = rc(); z[i] = rc(); w[i] = rc();
            a[i] = dist(rng); b[i] = dist(rng); m[i] = dist(rng);
            acc_s[i] = acc_p[i] = dist(rng);
            mask[i] = (i % 3) != 0;
        }
    }
};

template <class T>
bool identical(const std::vector<T>& a, const std::vector<T>& b) {
    return a == b;
}

} // namespace

TEST_CASE("openmp kernels match the serial reference bitwise") {
    // intentionally not a multiple of the reduction chunk
    const std::size_t n = 3 * reduce_chunk + 137;
    Arrays arr(n, 2024);

    SUBCASE("apply_multiplier") {
        auto cs = arr.c, cp = arr.c;
        serial::apply_multiplier(cs.data(), arr.m.data(), n);
        omp::apply_multiplier(cp.data(), arr.m.data(), n);
        CHECK(identical(cs, cp));
    }

    SUBCASE("apply_mask") {
        auto cs = arr.c, cp = arr.c;
        serial::apply_mask(cs.data(), arr.mask.data(), n);
        omp::apply_mask(cp.data(), arr.mask.data(), n);
        CHECK(identical(cs, cp));
    }

    SUBCASE("stage kernels") {
        serial::stage_scale_sum(arr.out_s.data(), arr.m.data(), arr.x.data(), 0.3,
                                arr.y.data(), n);
        omp::stage_scale_sum(arr.out_p.data(), arr.m.data(), arr.x.data(), 0.3,
                             arr.y.data(), n);
        CHECK(identical(arr.out_s, arr.out_p));

        serial::stage_scale_add(arr.out_s.data(), arr.m.data(), arr.x.data(), 0.3,
                                arr.y.data(), n);
        omp::stage_scale_add(arr.out_p.data(), arr.m.data(), arr.x.data(), 0.3,
                             arr.y.data(), n);
        CHECK(identical(arr.out_s, arr.out_p));

        serial::stage_scale_two(arr.out_s.data(), arr.m.data(), arr.x.data(), 0.7,
                                arr.a.data(), arr.y.data(), n);
        omp::stage_scale_two(arr.out_p.data(), arr.m.data(), arr.x.data(), 0.7,
                             arr.a.data(), arr.y.data(), n);
        CHECK(identical(arr.out_s, arr.out_p));

        serial::stage_final(arr.out_s.data(), arr.m.data(), arr.x.data(), 0.05,
                            arr.y.data(), arr.b.data(), arr.z.data(),
                            arr.w.data(), arr.c.data(), n);
        omp::stage_final(arr.out_p.data(), arr.m.data(), arr.x.data(), 0.05,
                         arr.y.data(), arr.b.data(), arr.z.data(), arr.w.data(),
                         arr.c.data(), n);
        CHECK(identical(arr.out_s, arr.out_p));
    }

    SUBCASE("pointwise real kernels") {
        std::vector<double> os(n), op(n);
        serial::mul(arr.a.data(), arr.b.data(), os.data(), n);
        omp::mul(arr.a.data(), arr.b.data(), op.data(), n);
        CHECK(identical(os, op));

        serial::mul_add(arr.a.data(), arr.b.data(), arr.acc_s.data(), n);
        omp::mul_add(arr.a.data(), arr.b.data(), arr.acc_p.data(), n);
        CHECK(identical(arr.acc_s, arr.acc_p));

        std::vector<double> sx(n), sy(n), sz(n), px(n), py(n), pz(n);
        for (double gamma : {1.0, 2.5, 3.0}) {
            serial::damping(arr.a.data(), arr.b.data(), arr.m.data(), 0.7, gamma,
                            sx.data(), sy.data(), sz.data(), n);
            omp::damping(arr.a.data(), arr.b.data(), arr.m.data(), 0.7, gamma,
                         px.data(), py.data(), pz.data(), n);
            CHECK(identical(sx, px));
            CHECK(identical(sy, py));
            CHECK(identical(sz, pz));
        }
    }

    SUBCASE("reductions") {
        CHECK(serial::sum_abs2(arr.c.data(), n) == omp::sum_abs2(arr.c.data(), n));
        CHECK(serial::sum_abs2_weighted(arr.c.data(), arr.m.data(), n) ==
              omp::sum_abs2_weighted(arr.c.data(), arr.m.data(), n));
        CHECK(serial::sum_pow(arr.a.data(), 2.5, n) ==
              omp::sum_pow(arr.a.data(), 2.5, n));
        CHECK(serial::sum_pow3(arr.a.data(), arr.b.data(), arr.m.data(), 3.5, n) ==
              omp::sum_pow3(arr.a.data(), arr.b.data(), arr.m.data(), 3.5, n));
        CHECK(serial::max_abs(arr.a.data(), n) == omp::max_abs(arr.a.data(), n));
        CHECK(serial::dot(arr.a.data(), arr.b.data(), n) ==
              omp::dot(arr.a.data(), arr.b.data(), n));
    }

    SUBCASE("spectral index kernels") {
        const int gn = 16;
        const std::size_t size = static_cast<std::size_t>(gn) * gn * gn;
        Arrays garr(size, 77);
        std::vector<double> kvals(gn);
        for (int i = 0; i < gn; ++i) kvals[i] = (i <= gn / 2) ? i : i - gn;

        std::vector<Complex> os(size), op(size);
        for (int axis = 0; axis < 3; ++axis) {
            serial::apply_ik(os.data(), garr.c.data(), kvals.data(), gn, axis);
            omp::apply_ik(op.data(), garr.c.data(), kvals.data(), gn, axis);
            CHECK(identical(os, op));
        }

        auto xs = garr.x, ys = garr.y, zs = garr.z;
        auto xp = garr.x, yp = garr.y, zp = garr.z;
        serial::leray(xs.data(), ys.data(), zs.data(), kvals.data(), gn);
        omp::leray(xp.data(), yp.data(), zp.data(), kvals.data(), gn);
        CHECK(identical(xs, xp));
        CHECK(identical(ys, yp));
        CHECK(identical(zs, zp));
    }
}

TEST_CASE("reductions are independent of the thread count") {
    const std::size_t n = 2 * reduce_chunk + 41;
    Arrays arr(n, 555);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double one = omp::sum_abs2_weighted(arr.c.data(), arr.m.data(), n);
    omp_set_num_threads(4);
    const double four = omp::sum_abs2_weighted(arr.c.data(), arr.m.data(), n);
    omp_set_num_threads(saved);
    CHECK(one == four);
}

TEST_CASE("damping kernel edge cases") {
    const double wx[2] = {0.0, 2.0}, wy[2] = {0.0, 0.0}, wz[2] = {0.0, 0.0};
    double ox[2], oy[2], oz[2];

    // gamma > 1 sends zero vectors to zero
    serial::damping(wx, wy, wz, 1.0, 3.0, ox, oy, oz, 2);
    CHECK(ox[0] == 0.0);
    CHECK(ox[1] == doctest::Approx(8.0)); // |w|^2 w = 4 * 2

    // gamma = 1 is plain scaling, zero vector included
    serial::damping(wx, wy, wz, 0.5, 1.0, ox, oy, oz, 2);
    CHECK(ox[0] == 0.0);
    CHECK(ox[1] == doctest::Approx(1.0));
}

TEST_CASE("dispatch honors the selected mode") {
    set_mode(Mode::Serial);
    CHECK(mode() == Mode::Serial);
    set_mode(Mode::OpenMP);
    CHECK(mode() == Mode::OpenMP);
}
