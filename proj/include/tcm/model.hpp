#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tcm/field.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"

namespace tcm {

/// Coupled system on the periodic box:
///
///   u_t + (u.grad)u - nu Lap u + sigma1 |u|^(alpha-1) u + grad pi + div(v (x) v) = 0
///   v_t + (u.grad)v - eta Lap v + sigma2 |v|^(beta-1) v + (v.grad)u + grad theta = 0
///   theta_t + (u.grad)theta - mu Lap theta + div v = 0
///   div u = 0
///
/// u: barotropic velocity mode (divergence-free), v: first baroclinic mode,
/// theta: temperature.  The pressure is eliminated by Leray projection.
struct ModelParams {
    double nu = 1.0;
    double eta = 1.0;
    double mu = 1.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double alpha = 3.0;
    double beta = 3.0;

    // Term toggles used by the linear/pure-diffusion oracles.
    bool advection = true; // all quadratic terms
    bool coupling = true;  // grad theta in v-eq, div v in theta-eq
    bool damping = true;   // sigma terms

    double ell() const { return std::min({nu, eta, mu}); }
    /// True iff 5/2 <= alpha, beta < 4, the regime the smallness conditions
    /// are formulated for.
    bool theory_regime() const {
        return alpha >= 2.5 && alpha < 4.0 && beta >= 2.5 && beta < 4.0;
    }
    std::vector<std::string> validate() const;
};

struct SimState {
    SpectralVectorField u;
    SpectralVectorField v;
    SpectralScalarField theta;
    double time = 0.0;

    SimState() = default;
    explicit SimState(const std::shared_ptr<const Grid>& g)
        : u(g), v(g), theta(g) {}
    const std::shared_ptr<const Grid>& grid() const { return u.grid(); }
};

SimState zero_state(const std::shared_ptr<const Grid>& g);
bool is_finite(const SimState& s);
/// ||div u||_L2, the incompressibility defect.
double divergence_defect(const SimState& s);

/// Explicit part of the tendency (everything except diffusion, which the
/// integrating-factor stepper applies exactly).  du is Leray-projected.
struct Tendency {
    SpectralVectorField du;
    SpectralVectorField dv;
    SpectralScalarField dtheta;
};

/// sigma * |w|^(gamma-1) w evaluated pointwise on the collocation grid,
/// transformed back and dealiased.  gamma >= 1.
SpectralVectorField damping_term(const SpectralVectorField& w, double gamma,
                                 double sigma);

Tendency nonlinear_rhs(const SimState& state, const ModelParams& params);

struct StepOptions {
    /// Exact e^(-c|k|^2 dt) treatment of diffusion.  When false, diffusion is
    /// folded into the explicit tendency (plain RK4).
    bool integrating_factor = true;
};

SimState step(const SimState& state, double dt, const ModelParams& params,
              const StepOptions& opts = {});

/// Advective time step limit: safety * min over axes of dx / max|w_i| with
/// w ranging over u and v.  Returns `cap` for a quiescent state.  When the
/// integrating factor is off, also capped by safety/(ell kmax^2).
double cfl_dt(const SimState& state, double safety, double cap,
              const ModelParams& params, bool integrating_factor = true);

} // namespace tcm
