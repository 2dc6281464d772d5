#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tcm/model.hpp"

namespace tcm {

struct DiagnosticsOptions {
    bool bmo_dyadic = false; // false: H^{3/2} proxy, true: dyadic estimator
    double c_pi = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    double epsilon = 0.0;
};

/// All norms and functionals sampled at one instant.  The triple norms are
/// root-sum-of-squares over (u, v, theta).
struct DiagnosticsRecord {
    double time = 0.0;

    double l2_u = 0, l2_v = 0, l2_theta = 0, l2_triple = 0;
    double hhalf_u = 0, hhalf_v = 0, hhalf_theta = 0, hhalf_triple = 0;
    double h1_u = 0, h1_v = 0, h1_theta = 0, h1_triple = 0;
    double h32_u = 0, h32_v = 0, h32_theta = 0, h32_triple = 0;
    double h2_u = 0, h2_v = 0, h2_theta = 0, h2_triple = 0;

    double lp_alpha_u = 0; // ||u||_{alpha+1}
    double lp_beta_v = 0;  // ||v||_{beta+1}

    double bmo_u = 0, bmo_v = 0, bmo_theta = 0; // selected estimator

    double pi = 0;       // damped-case blow-up integral
    double pi_tilde = 0; // no-damping variant

    double energy_residual = 0;
    double damping_res_u = 0, damping_res_v = 0;

    // smallness functionals and sign conditions
    double r_u = 0, r_v = 0;
    bool cond1 = false, cond2 = false;
    bool theory_applicable = false;
};

/// Trapezoidal accumulators for the blow-up integrals.  Pi integrates
/// c_pi*(1 + bmo_u^8 + bmo_v^8 + bmo_theta^2 + ||u||_{a+1}^{a+1}
/// + ||v||_{b+1}^{b+1}); Pi~ integrates 1 + bmo_u^2 + bmo_v^6 + bmo_theta^2.
struct BlowupMonitor {
    double c_pi = 1.0;
    double pi = 0.0;
    double pi_tilde = 0.0;
};

DiagnosticsRecord record(const SimState& state, const ModelParams& params,
                         const BlowupMonitor& monitor,
                         const DiagnosticsOptions& opts = {});

/// Residual of d/dt ||(u,v,theta)||^2 + 2*(dissipation + damping) = 0 across
/// one interval: [E(next)-E(prev)]/dt plus Simpson-in-time quadrature of the
/// drain, with the midpoint state obtained by a half step from prev.  The
/// returned value is relative to the drain magnitude.
double energy_balance_residual(const SimState& prev, const SimState& next,
                               double dt, const ModelParams& params);

/// Relative defect of
///   -sigma1 int |u|^(a-1) u . Lap u
///     = sigma1 || |u|^((a-1)/2) grad u ||^2
///       + (4 sigma1 (a-1)/(a+1)^2) || grad |u|^((a+1)/2) ||^2.
double damping_identity_residual(const SpectralVectorField& u, double alpha,
                                 double sigma1);

/// int L^s div v . L^s theta + int L^s grad theta . L^s v, which vanishes by
/// skew-adjointness; computed spectrally so the cancellation is exact.
double coupling_cancellation_residual(const SpectralVectorField& v,
                                      const SpectralScalarField& theta,
                                      double s);

struct BmoEstimate {
    double proxy = 0.0;  // H^{3/2} seminorm
    double dyadic = 0.0; // max over dyadic cubes (3 levels) of mean |f - avg|
};
BmoEstimate bmo_estimate(const SpectralScalarField& f);
BmoEstimate bmo_estimate(const SpectralVectorField& w);

void update_blowup(BlowupMonitor& monitor, const DiagnosticsRecord& prev,
                   const DiagnosticsRecord& next, double dt,
                   const ModelParams& params);

struct Smallness {
    double r_u = 0.0;
    double r_v = 0.0;
    bool cond1 = false;
    bool cond2 = false;
    bool applicable = false; // params in the 5/2 <= a,b < 4 regime
};
Smallness smallness_functionals(const SimState& state, const ModelParams& params,
                                const DiagnosticsOptions& opts = {});

struct MonotonicityReport {
    std::vector<std::size_t> hhalf_violations;
    std::vector<std::size_t> h1_violations;
    double sup_hhalf = 0.0;
    double sup_h1 = 0.0;
    /// Trapezoidal integral of h2_triple^2 over the series.
    double delta_sq_integral = 0.0;
    std::size_t total_violations() const {
        return hhalf_violations.size() + h1_violations.size();
    }
};

/// Flags every sample where the hhalf/h1 triple norm rose by more than
/// rel. tolerance 1e-8 over the previous sample.
MonotonicityReport monotonicity_report(std::span<const DiagnosticsRecord> series);

} // namespace tcm
