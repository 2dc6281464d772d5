#include "tcm/field.hpp"

#include <cmath>
#include <stdexcept>

#include "tcm/transform.hpp"

namespace tcm {

SpectralScalarField zero_scalar(const std::shared_ptr<const Grid>& g) {
    return SpectralScalarField(g);
}

SpectralVectorField zero_vector(const std::shared_ptr<const Grid>& g) {
    return SpectralVectorField(g);
}

bool is_finite(const SpectralScalarField& f) {
    for (const auto& c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

bool is_finite(const SpectralVectorField& w) {
    return is_finite(w[0]) && is_finite(w[1]) && is_finite(w[2]);
}

double hermitian_defect(const SpectralScalarField& f) {
    const Grid& g = *f.grid;
    const int n = g.n();
    double max_defect = 0.0;
    double max_mag = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const int jx = (n - ix) % n;
        for (int iy = 0; iy < n; ++iy) {
            const int jy = (n - iy) % n;
            for (int iz = 0; iz < n; ++iz) {
                const int jz = (n - iz) % n;
                const Complex a = f.coeffs[g.index(ix, iy, iz)];
                const Complex b = f.coeffs[g.index(jx, jy, jz)];
                max_defect = std::max(max_defect, std::abs(a - std::conj(b)));
                max_mag = std::max(max_mag, std::abs(a));
            }
        }
    }
    return max_mag > 0.0 ? max_defect / max_mag : 0.0;
}

namespace {
int wrap_mode(int k, int n) {
    int idx = k % n;
    if (idx < 0) idx += n;
    return idx;
}
} // namespace

void set_hermitian_mode(SpectralScalarField& f, std::array<int, 3> k, Complex z) {
    const Grid& g = *f.grid;
    const int n = g.n();
    const int half = n / 2;
    for (int i = 0; i < 3; ++i)
        if (k[i] < -half + 1 || k[i] > half)
            throw std::invalid_argument("set_hermitian_mode: mode outside lattice");
    const std::size_t idx =
        g.index(wrap_mode(k[0], n), wrap_mode(k[1], n), wrap_mode(k[2], n));
    const std::size_t midx =
        g.index(wrap_mode(-k[0], n), wrap_mode(-k[1], n), wrap_mode(-k[2], n));
    f.coeffs[idx] = z;
    if (midx != idx) f.coeffs[midx] = std::conj(z);
}

Complex mode(const SpectralScalarField& f, std::array<int, 3> k) {
    const Grid& g = *f.grid;
    const int n = g.n();
    return f.coeffs[g.index(wrap_mode(k[0], n), wrap_mode(k[1], n),
                            wrap_mode(k[2], n))];
}

SpectralScalarField field_from_function(
    const std::shared_ptr<const Grid>& g,
    const std::function<double(double, double, double)>& fn) {
    const int n = g->n();
    const double h = g->dx();
    std::vector<double> samples(g->size());
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++idx)
                samples[idx] = fn(ix * h, iy * h, iz * h);
    return forward_transform(g, samples);
}

SpectralVectorField vector_from_functions(
    const std::shared_ptr<const Grid>& g,
    const std::function<double(double, double, double)>& fx,
    const std::function<double(double, double, double)>& fy,
    const std::function<double(double, double, double)>& fz) {
    SpectralVectorField w(g);
    w[0] = field_from_function(g, fx);
    w[1] = field_from_function(g, fy);
    w[2] = field_from_function(g, fz);
    return w;
}

void scale_inplace(SpectralScalarField& f, double a) {
    for (auto& c : f.coeffs) c *= a;
}

void scale_inplace(SpectralVectorField& w, double a) {
    for (int i = 0; i < 3; ++i) scale_inplace(w[i], a);
}

void require_same_grid(const SpectralScalarField& a, const SpectralScalarField& b) {
    if (!a.grid || !b.grid || !same_grid(*a.grid, *b.grid))
        throw std::invalid_argument("fields live on different grids");
}

} // namespace tcm
