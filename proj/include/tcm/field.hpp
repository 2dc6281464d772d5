#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "tcm/grid.hpp"

namespace tcm {

using Complex = std::complex<double>;

/// Real scalar field stored as Fourier coefficients on the full mode lattice,
/// with the convention f_hat(k) = (1/n^3) sum_j f(x_j) exp(-i k.x_j).
/// Real-valuedness corresponds to Hermitian symmetry of the coefficients.
struct SpectralScalarField {
    std::shared_ptr<const Grid> grid;
    std::vector<Complex> coeffs;

    SpectralScalarField() = default;
    explicit SpectralScalarField(std::shared_ptr<const Grid> g)
        : grid(std::move(g)), coeffs(grid->size(), Complex{0.0, 0.0}) {}
};

struct SpectralVectorField {
    std::array<SpectralScalarField, 3> comp;

    SpectralVectorField() = default;
    explicit SpectralVectorField(const std::shared_ptr<const Grid>& g)
        : comp{SpectralScalarField(g), SpectralScalarField(g), SpectralScalarField(g)} {}

    const std::shared_ptr<const Grid>& grid() const { return comp[0].grid; }
    SpectralScalarField& operator[](int i) { return comp[i]; }
    const SpectralScalarField& operator[](int i) const { return comp[i]; }
};

SpectralScalarField zero_scalar(const std::shared_ptr<const Grid>& g);
SpectralVectorField zero_vector(const std::shared_ptr<const Grid>& g);

bool is_finite(const SpectralScalarField& f);
bool is_finite(const SpectralVectorField& w);

/// Max deviation from Hermitian symmetry, relative to the largest coefficient.
double hermitian_defect(const SpectralScalarField& f);

/// Sets coefficient at integer mode k and the conjugate at -k.  For
/// self-conjugate modes (all components 0 or n/2) the imaginary part of z
/// must be zero for the field to stay real; it is stored as given.
void set_hermitian_mode(SpectralScalarField& f, std::array<int, 3> k, Complex z);

Complex mode(const SpectralScalarField& f, std::array<int, 3> k);

/// Sample a function of physical coordinates on the collocation grid and
/// transform.  Used for analytic initial data and test fields.
SpectralScalarField field_from_function(
    const std::shared_ptr<const Grid>& g,
    const std::function<double(double, double, double)>& fn);

SpectralVectorField vector_from_functions(
    const std::shared_ptr<const Grid>& g,
    const std::function<double(double, double, double)>& fx,
    const std::function<double(double, double, double)>& fy,
    const std::function<double(double, double, double)>& fz);

void scale_inplace(SpectralScalarField& f, double a);
void scale_inplace(SpectralVectorField& w, double a);

void require_same_grid(const SpectralScalarField& a, const SpectralScalarField& b);

} // namespace tcm
