#include "tcm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcm/kernels.hpp"
#include "tcm/norms.hpp"

namespace tcm {

namespace {

std::vector<double> axis_wavenumbers(const Grid& g) {
    std::vector<double> k(g.n());
    for (int i = 0; i < g.n(); ++i) k[i] = g.k_axis(i);
    return k;
}

} // namespace

SpectralScalarField lambda_pow(const SpectralScalarField& f, double s) {
    const Grid& g = *f.grid;
    if (s < 0.0) {
        const double dc = std::abs(f.coeffs[0]);
        const double scale = std::sqrt(kernels::sum_abs2(f.coeffs.data(), g.size()));
        if (dc > 1e-12 * std::max(1.0, scale))
            throw std::invalid_argument(
                "lambda_pow: negative exponent on a field with nonzero mean");
    }
    SpectralScalarField out = f;
    if (s == 0.0) return out;
    auto w = g.lambda_weights(0.5 * s); // |k|^s
    kernels::apply_multiplier(out.coeffs.data(), w->data(), g.size());
    if (s < 0.0) out.coeffs[0] = Complex{0.0, 0.0};
    return out;
}

SpectralVectorField gradient(const SpectralScalarField& f) {
    const Grid& g = *f.grid;
    const auto kvals = axis_wavenumbers(g);
    SpectralVectorField out(f.grid);
    for (int axis = 0; axis < 3; ++axis)
        kernels::apply_ik(out[axis].coeffs.data(), f.coeffs.data(), kvals.data(),
                          g.n(), axis);
    return out;
}

SpectralScalarField divergence(const SpectralVectorField& w) {
    const Grid& g = *w.grid();
    require_same_grid(w[0], w[1]);
    require_same_grid(w[0], w[2]);
    const auto kvals = axis_wavenumbers(g);
    SpectralScalarField out(w.grid());
    std::vector<Complex> tmp(g.size());
    for (int axis = 0; axis < 3; ++axis) {
        kernels::apply_ik(tmp.data(), w[axis].coeffs.data(), kvals.data(), g.n(),
                          axis);
        for (std::size_t i = 0; i < g.size(); ++i) out.coeffs[i] += tmp[i];
    }
    return out;
}

SpectralScalarField laplacian(const SpectralScalarField& f) {
    const Grid& g = *f.grid;
    SpectralScalarField out = f;
    const auto& k2 = g.k2();
    for (std::size_t i = 0; i < g.size(); ++i) out.coeffs[i] *= -k2[i];
    return out;
}

SpectralVectorField leray_project(const SpectralVectorField& w) {
    const Grid& g = *w.grid();
    const auto kvals = axis_wavenumbers(g);
    SpectralVectorField out = w;
    kernels::leray(out[0].coeffs.data(), out[1].coeffs.data(),
                   out[2].coeffs.data(), kvals.data(), g.n());
    return out;
}

void dealias_inplace(SpectralScalarField& f) {
    const Grid& g = *f.grid;
    kernels::apply_mask(f.coeffs.data(), g.dealias_mask().data(), g.size());
}

void dealias_inplace(SpectralVectorField& w) {
    for (int i = 0; i < 3; ++i) dealias_inplace(w[i]);
}

SpectralScalarField dealias(SpectralScalarField f) {
    dealias_inplace(f);
    return f;
}

SpectralVectorField dealias(SpectralVectorField w) {
    dealias_inplace(w);
    return w;
}

} // namespace tcm
