#pragma once

#include <span>
#include <vector>

#include "tcm/field.hpp"

namespace tcm {

/// Forward DFT of real samples (flat index order (ix*n + iy)*n + iz), divided
/// by n^3 so that a constant field c has f_hat(0) = c.
SpectralScalarField forward_transform(const std::shared_ptr<const Grid>& g,
                                      std::span<const double> samples);

/// Unnormalized inverse DFT; returns the real part of the synthesis.  Exact
/// round trip with forward_transform up to roundoff.
std::vector<double> inverse_transform(const SpectralScalarField& f);

std::array<std::vector<double>, 3> inverse_transform(const SpectralVectorField& w);

SpectralVectorField forward_transform(const std::shared_ptr<const Grid>& g,
                                      std::span<const double> x,
                                      std::span<const double> y,
                                      std::span<const double> z);

// Buffer-level variants used by the time-stepper hot path; `out` must hold
// grid.size() entries.
void forward_transform_into(const Grid& g, const double* samples, Complex* out);
void inverse_transform_into(const Grid& g, const Complex* coeffs, double* out);

} // namespace tcm
