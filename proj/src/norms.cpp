#include "tcm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcm/kernels.hpp"
#include "tcm/transform.hpp"

namespace tcm {

double lp_norm(const SpectralScalarField& f, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must be >= 1");
    const auto samples = inverse_transform(f);
    const std::size_t n = samples.size();
    if (p == lp_infinity) return kernels::max_abs(samples.data(), n);
    const double s = kernels::sum_pow(samples.data(), p, n);
    return std::pow(s * f.grid->cell_volume(), 1.0 / p);
}

double lp_norm(const SpectralVectorField& w, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must be >= 1");
    const auto s = inverse_transform(w);
    const std::size_t n = s[0].size();
    if (p == lp_infinity) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m2 = s[0][i] * s[0][i] + s[1][i] * s[1][i] +
                              s[2][i] * s[2][i];
            m = std::max(m, m2);
        }
        return std::sqrt(m);
    }
    const double total =
        kernels::sum_pow3(s[0].data(), s[1].data(), s[2].data(), p, n);
    return std::pow(total * w.grid()->cell_volume(), 1.0 / p);
}

namespace {
double sobolev_sq(const SpectralScalarField& f, double s, bool homogeneous) {
    const Grid& g = *f.grid;
    if (homogeneous) {
        auto w = g.lambda_weights(s);
        return g.box_volume() *
               kernels::sum_abs2_weighted(f.coeffs.data(), w->data(), g.size());
    }
    // (1 + |k|^2)^s weights are cheap enough to form on the fly
    const auto& k2 = g.k2();
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::pow(1.0 + k2[i], s);
    return g.box_volume() *
           kernels::sum_abs2_weighted(f.coeffs.data(), w.data(), g.size());
}
} // namespace

double sobolev_norm(const SpectralScalarField& f, double s, bool homogeneous) {
    return std::sqrt(sobolev_sq(f, s, homogeneous));
}

double sobolev_norm(const SpectralVectorField& w, double s, bool homogeneous) {
    return std::sqrt(sobolev_sq(w[0], s, homogeneous) +
                     sobolev_sq(w[1], s, homogeneous) +
                     sobolev_sq(w[2], s, homogeneous));
}

double l2_norm(const SpectralScalarField& f) {
    return sobolev_norm(f, 0.0, true);
}

double l2_norm(const SpectralVectorField& w) {
    return sobolev_norm(w, 0.0, true);
}

double inner_product(const SpectralScalarField& f, const SpectralScalarField& g) {
    require_same_grid(f, g);
    const std::size_t n = f.grid->size();
    // chunked like the kernel reductions for determinism
    double total = 0.0;
    for (std::size_t lo = 0; lo < n; lo += kernels::reduce_chunk) {
        const std::size_t hi = std::min(n, lo + kernels::reduce_chunk);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const Complex a = f.coeffs[i];
            const Complex b = g.coeffs[i];
            s += a.real() * b.real() + a.imag() * b.imag();
        }
        total += s;
    }
    return f.grid->box_volume() * total;
}

double inner_product(const SpectralVectorField& a, const SpectralVectorField& b) {
    return inner_product(a[0], b[0]) + inner_product(a[1], b[1]) +
           inner_product(a[2], b[2]);
}

} // namespace tcm
