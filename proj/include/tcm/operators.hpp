#pragma once

#include "tcm/field.hpp"

namespace tcm {

/// Fractional Laplacian power: multiplies each coefficient by |k|^s.  The
/// zero mode passes through for s = 0, is annihilated for s > 0, and for
/// s < 0 a non-negligible mean is an error.
SpectralScalarField lambda_pow(const SpectralScalarField& f, double s);

SpectralVectorField gradient(const SpectralScalarField& f);
SpectralScalarField divergence(const SpectralVectorField& w);
SpectralScalarField laplacian(const SpectralScalarField& f);

/// Per-mode projection onto divergence-free fields, (I - k k^T/|k|^2); the
/// k=0 mode is left unchanged.  Idempotent.
SpectralVectorField leray_project(const SpectralVectorField& w);

void dealias_inplace(SpectralScalarField& f);
void dealias_inplace(SpectralVectorField& w);
SpectralScalarField dealias(SpectralScalarField f);
SpectralVectorField dealias(SpectralVectorField w);

} // namespace tcm
