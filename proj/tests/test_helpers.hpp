#pragma once

#include <cmath>
#include <random>

#include "tcm/field.hpp"
#include "tcm/transform.hpp"

namespace tcm::test {

/// Full-spectrum random real field from seeded physical samples.
inline SpectralScalarField random_physical_field(
    const std::shared_ptr<const Grid>& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> samples(g->size());
    for (auto& s : samples) s = dist(rng);
    return forward_transform(g, samples);
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

inline double max_coeff_diff(const SpectralScalarField& a,
                             const SpectralScalarField& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        worst = std::max(worst, std::abs(a.coeffs[i] - b.coeffs[i]));
    return worst;
}

inline double max_coeff_mag(const SpectralScalarField& a) {
    double worst = 0.0;
    for (const auto& c : a.coeffs) worst = std::max(worst, std::abs(c));
    return worst;
}

} // namespace tcm::test
