#include "tcm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcm/kernels.hpp"
#include "tcm/transform.hpp"

namespace tcm {

namespace {

/// nu ||grad u||^2 + eta ||grad v||^2 + mu ||grad theta||^2
/// + sigma1 ||u||_{a+1}^{a+1} + sigma2 ||v||_{b+1}^{b+1}
double energy_drain(const SimState& s, const ModelParams& p) {
    const double gu = sobolev_norm(s.u, 1.0, true);
    const double gv = sobolev_norm(s.v, 1.0, true);
    const double gt = sobolev_norm(s.theta, 1.0, true);
    double d = p.nu * gu * gu + p.eta * gv * gv + p.mu * gt * gt;
    if (p.damping && p.sigma1 > 0.0)
        d += p.sigma1 * std::pow(lp_norm(s.u, p.alpha + 1.0), p.alpha + 1.0);
    if (p.damping && p.sigma2 > 0.0)
        d += p.sigma2 * std::pow(lp_norm(s.v, p.beta + 1.0), p.beta + 1.0);
    return d;
}

double dyadic_bmo(const SpectralScalarField& f) {
    const Grid& g = *f.grid;
    const int n = g.n();
    const auto samples = inverse_transform(f);
    double worst = 0.0;
    for (int level = 0; level < 3; ++level) {
        const int m = 1 << level; // cubes per axis
        const int c = n / m;      // points per cube axis
        const double inv_count = 1.0 / (static_cast<double>(c) * c * c);
        for (int cx = 0; cx < m; ++cx)
            for (int cy = 0; cy < m; ++cy)
                for (int cz = 0; cz < m; ++cz) {
                    double mean = 0.0;
                    for (int ix = cx * c; ix < (cx + 1) * c; ++ix)
                        for (int iy = cy * c; iy < (cy + 1) * c; ++iy)
                            for (int iz = cz * c; iz < (cz + 1) * c; ++iz)
                                mean += samples[g.index(ix, iy, iz)];
                    mean *= inv_count;
                    double dev = 0.0;
                    for (int ix = cx * c; ix < (cx + 1) * c; ++ix)
                        for (int iy = cy * c; iy < (cy + 1) * c; ++iy)
                            for (int iz = cz * c; iz < (cz + 1) * c; ++iz)
                                dev += std::abs(samples[g.index(ix, iy, iz)] - mean);
                    worst = std::max(worst, dev * inv_count);
                }
    }
    return worst;
}

} // namespace

BmoEstimate bmo_estimate(const SpectralScalarField& f) {
    return {sobolev_norm(f, 1.5, true), dyadic_bmo(f)};
}

BmoEstimate bmo_estimate(const SpectralVectorField& w) {
    BmoEstimate e;
    e.proxy = sobolev_norm(w, 1.5, true);
    e.dyadic = std::max({dyadic_bmo(w[0]), dyadic_bmo(w[1]), dyadic_bmo(w[2])});
    return e;
}

Smallness smallness_functionals(const SimState& state, const ModelParams& params,
                                const DiagnosticsOptions& opts) {
    Smallness out;
    out.applicable = params.theory_regime();
    if (!out.applicable) return out;

    auto functional = [](double hhalf, double h1, double gamma) {
        if (gamma <= 3.0) return std::pow(hhalf, 3.0 * gamma - 7.0);
        return std::pow(hhalf, 5.0 - gamma) * std::pow(h1, 2.0 * (gamma - 3.0));
    };
    const double hu = sobolev_norm(state.u, 0.5, true);
    const double hv = sobolev_norm(state.v, 0.5, true);
    const double ht = sobolev_norm(state.theta, 0.5, true);
    const double hhalf_triple = std::sqrt(hu * hu + hv * hv + ht * ht);
    out.r_u = functional(hu, sobolev_norm(state.u, 1.0, true), params.alpha);
    out.r_v = functional(hv, sobolev_norm(state.v, 1.0, true), params.beta);

    const double ell = params.ell();
    out.cond1 = ell - opts.c1 * (hhalf_triple - out.r_u - out.r_v) > 0.0;
    out.cond2 =
        2.0 * ell - opts.c2 * (opts.epsilon + hhalf_triple * hhalf_triple) > 0.0;
    return out;
}

DiagnosticsRecord record(const SimState& state, const ModelParams& params,
                         const BlowupMonitor& monitor,
                         const DiagnosticsOptions& opts) {
    DiagnosticsRecord r;
    r.time = state.time;

    auto triple = [](double a, double b, double c) {
        return std::sqrt(a * a + b * b + c * c);
    };

    r.l2_u = l2_norm(state.u);
    r.l2_v = l2_norm(state.v);
    r.l2_theta = l2_norm(state.theta);
    r.l2_triple = triple(r.l2_u, r.l2_v, r.l2_theta);

    auto fill = [&](double s, double& fu, double& fv, double& ft, double& tr) {
        fu = sobolev_norm(state.u, s, true);
        fv = sobolev_norm(state.v, s, true);
        ft = sobolev_norm(state.theta, s, true);
        tr = triple(fu, fv, ft);
    };
    fill(0.5, r.hhalf_u, r.hhalf_v, r.hhalf_theta, r.hhalf_triple);
    fill(1.0, r.h1_u, r.h1_v, r.h1_theta, r.h1_triple);
    fill(1.5, r.h32_u, r.h32_v, r.h32_theta, r.h32_triple);
    fill(2.0, r.h2_u, r.h2_v, r.h2_theta, r.h2_triple);

    r.lp_alpha_u = lp_norm(state.u, params.alpha + 1.0);
    r.lp_beta_v = lp_norm(state.v, params.beta + 1.0);

    if (opts.bmo_dyadic) {
        r.bmo_u = bmo_estimate(state.u).dyadic;
        r.bmo_v = bmo_estimate(state.v).dyadic;
        r.bmo_theta = bmo_estimate(state.theta).dyadic;
    } else {
        r.bmo_u = sobolev_norm(state.u, 1.5, true);
        r.bmo_v = sobolev_norm(state.v, 1.5, true);
        r.bmo_theta = sobolev_norm(state.theta, 1.5, true);
    }

    r.pi = monitor.pi;
    r.pi_tilde = monitor.pi_tilde;

    if (params.damping && params.alpha > 1.0 && params.sigma1 > 0.0)
        r.damping_res_u = damping_identity_residual(state.u, params.alpha,
                                                    params.sigma1);
    if (params.damping && params.beta > 1.0 && params.sigma2 > 0.0)
        r.damping_res_v = damping_identity_residual(state.v, params.beta,
                                                    params.sigma2);

    const Smallness sm = smallness_functionals(state, params, opts);
    r.r_u = sm.r_u;
    r.r_v = sm.r_v;
    r.cond1 = sm.cond1;
    r.cond2 = sm.cond2;
    r.theory_applicable = sm.applicable;
    return r;
}

double energy_balance_residual(const SimState& prev, const SimState& next,
                               double dt, const ModelParams& params) {
    if (!(dt > 0.0))
        throw std::invalid_argument("energy_balance_residual: dt must be positive");
    auto energy = [](const SimState& s) {
        const double nu2 = l2_norm(s.u), nv2 = l2_norm(s.v),
                     nt2 = l2_norm(s.theta);
        return nu2 * nu2 + nv2 * nv2 + nt2 * nt2;
    };
    const double e_prev = energy(prev);
    const double e_next = energy(next);

    // Simpson in time: the drain at prev, next, and a half-step midpoint.
    // The midpoint weight keeps the quadrature at the integrator's order, so
    // the residual vanishes as dt^4 instead of stalling at the dt^2 of a
    // two-point rule.
    const SimState mid = step(prev, 0.5 * dt, params);
    const double d_prev = energy_drain(prev, params);
    const double d_mid = energy_drain(mid, params);
    const double d_next = energy_drain(next, params);
    const double simpson = (d_prev + 4.0 * d_mid + d_next) / 6.0;

    const double raw = (e_next - e_prev) / dt + 2.0 * simpson;
    const double scale = 2.0 * simpson;
    return scale > 0.0 ? raw / scale : raw;
}

double damping_identity_residual(const SpectralVectorField& u, double alpha,
                                 double sigma1) {
    if (!(alpha > 1.0))
        throw std::invalid_argument(
            "damping_identity_residual: alpha must be > 1");
    const Grid& g = *u.grid();
    const std::size_t size = g.size();
    const auto up = inverse_transform(u);

    // |u|^(alpha-1) on the grid
    std::vector<double> mag_pow(size);
    for (std::size_t i = 0; i < size; ++i) {
        const double m2 = up[0][i] * up[0][i] + up[1][i] * up[1][i] +
                          up[2][i] * up[2][i];
        mag_pow[i] = m2 > 0.0 ? std::pow(m2, 0.5 * (alpha - 1.0)) : 0.0;
    }

    // left side: -sigma1 int |u|^(a-1) u . Lap u
    double lhs_sum = 0.0;
    {
        std::array<std::vector<double>, 3> lap;
        for (int i = 0; i < 3; ++i) lap[i] = inverse_transform(laplacian(u[i]));
        for (std::size_t i = 0; i < size; ++i) {
            const double dot = up[0][i] * lap[0][i] + up[1][i] * lap[1][i] +
                               up[2][i] * lap[2][i];
            lhs_sum += mag_pow[i] * dot;
        }
    }
    const double lhs = -sigma1 * lhs_sum * g.cell_volume();

    // first right-hand term: sigma1 int |u|^(a-1) |grad u|^2
    double grad_sum = 0.0;
    {
        for (int i = 0; i < 3; ++i) {
            const SpectralVectorField gi = gradient(u[i]);
            const auto gp = inverse_transform(gi);
            for (std::size_t m = 0; m < size; ++m) {
                const double g2 = gp[0][m] * gp[0][m] + gp[1][m] * gp[1][m] +
                                  gp[2][m] * gp[2][m];
                grad_sum += mag_pow[m] * g2;
            }
        }
    }
    const double rhs1 = sigma1 * grad_sum * g.cell_volume();

    // second term: (4 sigma1 (a-1)/(a+1)^2) || grad |u|^((a+1)/2) ||^2
    double rhs2;
    {
        std::vector<double> h(size);
        for (std::size_t i = 0; i < size; ++i) {
            const double m2 = up[0][i] * up[0][i] + up[1][i] * up[1][i] +
                              up[2][i] * up[2][i];
            h[i] = m2 > 0.0 ? std::pow(m2, 0.25 * (alpha + 1.0)) : 0.0;
        }
        const SpectralScalarField hf = forward_transform(u.grid(), h);
        const SpectralVectorField gh = gradient(hf);
        const auto ghp = inverse_transform(gh);
        double s = 0.0;
        for (std::size_t i = 0; i < size; ++i)
            s += ghp[0][i] * ghp[0][i] + ghp[1][i] * ghp[1][i] +
                 ghp[2][i] * ghp[2][i];
        rhs2 = 4.0 * sigma1 * (alpha - 1.0) / ((alpha + 1.0) * (alpha + 1.0)) * s *
               g.cell_volume();
    }

    const double rhs = rhs1 + rhs2;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

double coupling_cancellation_residual(const SpectralVectorField& v,
                                      const SpectralScalarField& theta,
                                      double s) {
    const SpectralScalarField div_s = lambda_pow(divergence(v), s);
    const SpectralScalarField theta_s = lambda_pow(theta, s);
    double total = inner_product(div_s, theta_s);
    const SpectralVectorField grad_theta = gradient(theta);
    for (int i = 0; i < 3; ++i)
        total += inner_product(lambda_pow(grad_theta[i], s), lambda_pow(v[i], s));
    return total;
}

void update_blowup(BlowupMonitor& monitor, const DiagnosticsRecord& prev,
                   const DiagnosticsRecord& next, double dt,
                   const ModelParams& params) {
    if (!(dt >= 0.0))
        throw std::invalid_argument("update_blowup: negative interval");
    auto pi_integrand = [&](const DiagnosticsRecord& r) {
        return monitor.c_pi *
               (1.0 + std::pow(r.bmo_u, 8.0) + std::pow(r.bmo_v, 8.0) +
                r.bmo_theta * r.bmo_theta +
                std::pow(r.lp_alpha_u, params.alpha + 1.0) +
                std::pow(r.lp_beta_v, params.beta + 1.0));
    };
    auto pi_tilde_integrand = [](const DiagnosticsRecord& r) {
        return 1.0 + r.bmo_u * r.bmo_u + std::pow(r.bmo_v, 6.0) +
               r.bmo_theta * r.bmo_theta;
    };
    monitor.pi += 0.5 * (pi_integrand(prev) + pi_integrand(next)) * dt;
    monitor.pi_tilde +=
        0.5 * (pi_tilde_integrand(prev) + pi_tilde_integrand(next)) * dt;
}

MonotonicityReport monotonicity_report(std::span<const DiagnosticsRecord> series) {
    if (series.size() < 2)
        throw std::invalid_argument("monotonicity_report: need >= 2 records");
    constexpr double rtol = 1e-8;
    MonotonicityReport rep;
    rep.sup_hhalf = series[0].hhalf_triple;
    rep.sup_h1 = series[0].h1_triple;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].hhalf_triple >
            series[i - 1].hhalf_triple * (1.0 + rtol))
            rep.hhalf_violations.push_back(i);
        if (series[i].h1_triple > series[i - 1].h1_triple * (1.0 + rtol))
            rep.h1_violations.push_back(i);
        rep.sup_hhalf = std::max(rep.sup_hhalf, series[i].hhalf_triple);
        rep.sup_h1 = std::max(rep.sup_h1, series[i].h1_triple);
        const double dt = series[i].time - series[i - 1].time;
        rep.delta_sq_integral +=
            0.5 *
            (series[i].h2_triple * series[i].h2_triple +
             series[i - 1].h2_triple * series[i - 1].h2_triple) *
            dt;
    }
    return rep;
}

} // namespace tcm
