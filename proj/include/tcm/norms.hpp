#pragma once

#include <limits>

#include "tcm/field.hpp"

namespace tcm {

inline constexpr double lp_infinity = std::numeric_limits<double>::infinity();

/// L^p norm by collocation quadrature with cell weight (box_length/n)^3;
/// p = lp_infinity gives max |f|.  Vector overloads use the pointwise
/// Euclidean magnitude.
double lp_norm(const SpectralScalarField& f, double p);
double lp_norm(const SpectralVectorField& w, double p);

/// Sobolev norm via Parseval: ||f||^2 = box_volume * sum w(k) |f_hat|^2 with
/// w = |k|^(2s) (homogeneous; k=0 contributes only at s=0) or (1+|k|^2)^s.
double sobolev_norm(const SpectralScalarField& f, double s, bool homogeneous);
double sobolev_norm(const SpectralVectorField& w, double s, bool homogeneous);

double l2_norm(const SpectralScalarField& f);
double l2_norm(const SpectralVectorField& w);

/// box_volume * Re sum conj(f_hat) g_hat  ==  integral of f*g over the box.
double inner_product(const SpectralScalarField& f, const SpectralScalarField& g);
double inner_product(const SpectralVectorField& a, const SpectralVectorField& b);

} // namespace tcm
